"""Superadditivity of the bound on a very noisy qutrit channel.

On the ternary depolarizing channel near p = 0.2552 the single-letter
bound c_1 is already negative, yet the 7-block repetition code keeps
c_7 > 0: multi-block stabilizer inputs strictly beat single-letter coherent
information.  The computation enumerates all 3^14 = 4 782 969 error vectors
per point, so expect a few seconds for the first point (index arrays are
cached and reused across the sweep).
"""

import time

import numpy as np

from qcap import catalog, coherent_bound, depolarizing

rep7 = catalog("rep7", 3)
triv = catalog("trivial1", 3)

print(" p         c_1 (base 3)     c_7 (base 3)    seconds")
for p in np.linspace(0.2552, 0.2557, 6):
    t0 = time.time()
    ch = depolarizing(3, float(p))
    c7 = coherent_bound(rep7, ch, base=3).c_n
    c1 = coherent_bound(triv, ch, base=3).c_n
    print(f"{p:.5f}   {c1:+.6e}   {c7:+.6e}   {time.time() - t0:5.1f}")

print("\nc_1 < 0 < c_7 across the window: the 7-block input space is strictly better.")
