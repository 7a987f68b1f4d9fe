"""The coherent-information lower bound on quantum capacity.

For a stabilizer code with subspace L and a Pauli channel, every error
vector carries a syndrome (which coset of perp(L) it lies in) and a logical
label (which coset of L inside that).  Binning the product channel measure
by these labels gives the probability array of the code; the bound is

    c_n = k - H(logical | syndrome).

For the unencoded qubit (n = k = 1) on the depolarizing channel this is the
classic hashing bound 1 - h(p) - p log2(3); the script reproduces it and
locates its zero crossing.
"""

import numpy as np

from qcap import catalog, coherent_bound, depolarizing

code = catalog("trivial1", 2)
print(" p      c_1 (base 2)")
for p in np.linspace(0.0, 0.25, 11):
    rep = coherent_bound(code, depolarizing(2, float(p)), base=2)
    print(f"{p:5.3f}   {rep.c_n:+.6f}")

lo, hi = 0.1, 0.3
while hi - lo > 1e-12:
    mid = 0.5 * (lo + hi)
    if coherent_bound(code, depolarizing(2, mid), base=2).c_n > 0:
        lo = mid
    else:
        hi = mid
print(f"\nthe bound crosses zero at p = {0.5 * (lo + hi):.9f}")

rep3 = coherent_bound(catalog("rep3", 2), depolarizing(2, 0.1), base=2)
print(f"\nthree-qubit repetition code at p = 0.1: c_3 = {rep3.c_n:.6f},"
      f" per symbol {rep3.per_symbol:.6f}")
print(f"syndrome entropy {rep3.H_syndrome:.6f}, conditional entropy {rep3.H_cond:.6f}")
