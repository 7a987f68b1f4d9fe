"""Fields, symplectic pairings, and stabilizer codes.

Error operators on n prime-dimensional systems are indexed by vectors of
F_d^{2n} with interleaved (u_i, v_i) coordinates: u is the X power and v
the Z power at position i.  Two error operators commute exactly when the
symplectic pairing of their index vectors vanishes, so a commuting
stabilizer is the same thing as a self-orthogonal subspace.  This script
walks through the basic objects.
"""

from qcap import (
    FieldVector,
    Subspace,
    catalog,
    chi_coordinates,
    hyperbolic_complete,
    is_self_orthogonal,
    perp,
    symplectic_form,
)

x = FieldVector(3, (1, 2, 0, 1))
y = FieldVector(3, (2, 1, 1, 1))
print("over F_3:  <(1,2,0,1), (2,1,1,1)> =", int(symplectic_form(x, y)))
print("alternating:  <x, x> =", int(symplectic_form(x, x)))

# a one-generator code on two qutrits
L = Subspace(3, 4, [[1, 0, 1, 0]])
print("\nL = span{(1,0,1,0)} in F_3^4")
print("self-orthogonal:", is_self_orthogonal(L))
print("dim perp(L) =", perp(L).dim, "(= 4 - dim L)")

basis = hyperbolic_complete(L, rng_seed=0)
print("hyperbolic completion satisfies the pairing conditions:", basis.gram_ok())
w, z = chi_coordinates(basis, x)
print("chi coordinates of x: w =", w.coords, " z =", z.coords)

# the named catalog
for name, d in (("rep7", 3), ("five_qubit", 2), ("trivial2", 2)):
    code = catalog(name, d)
    print(f"\ncatalog {name} over F_{d}: n = {code.n}, k = {code.k}, "
          f"{code.generators.shape[0]} generators")
