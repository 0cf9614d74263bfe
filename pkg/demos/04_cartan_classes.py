"""Which two-qubit unitaries are useful?

Up to local unitaries a two-qubit unitary is N(a, b, g) =
exp(i a s1s1) exp(i b s2s2) exp(i g s3s3) = sum c_i s_i (x) s_i.  It is
useful exactly when two of the angles are pi/4 modulo pi/2, which is the
same as |c_i|^2 = 1/4 for every i.
"""

import numpy as np

from complementarity.cartan import (
    N3_PARAMS,
    cartan_coeffs,
    cartan_defect,
    cartan_n,
    classes,
    pauli_triplet,
    three_way,
)

np.set_printoptions(precision=3, suppress=True)

n3 = cartan_n(N3_PARAMS)
print("N(pi/4, pi/4, 0):")
print(n3)
print("coefficients c_i:", cartan_coeffs(N3_PARAMS).as_array())
print("images of I (x) s1, I (x) s2, I (x) s3:", [im.label() for im in pauli_triplet(n3)])

q = np.pi / 4
for p in [(0.3, q, q), (q, 1.0, 3 * q), (q, q, 0.2), (q, q, q), (q, 0.1, 0.2), (0.0, 0.0, 0.0)]:
    c = np.abs(cartan_coeffs(p).as_array()) ** 2
    print(f"angles {np.round(p, 3)}: classes {classes(p) or '-'}, |c|^2 {c}, defect {cartan_defect(p):.1e}")

grid = np.arange(20) * np.pi / 20
agree = sum(len(set(three_way((a, b, g)))) == 1 for a in grid for b in grid for g in grid)
print(f"\nthree criteria agree on {agree} of {len(grid) ** 3} grid points")
