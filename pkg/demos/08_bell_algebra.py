"""The Bell-diagonal algebra.

Operators diagonal in the Bell basis form a commutative algebra C spanned by
I, s1s1, s2s2, s3s3.  Its conditional expectation kills every local Pauli
operator, so C is complementary to both local factors, and this survives
conjugating a local factor by any unitary in C.
"""

import numpy as np

from complementarity.bell import bell_algebra, bell_complementarity_defect, bell_expectation, bell_unitary, c_form, kappa
from complementarity.linalg import SIGMA, rng_stream, tensor

np.set_printoptions(precision=3, suppress=True)

for k in (1, 2, 3):
    print(f"E_C(I (x) s{k}) == 0: {np.all(bell_expectation(tensor(SIGMA[0], SIGMA[k])) == 0)}  "
          f"E_C(s{k} (x) I) == 0: {np.all(bell_expectation(tensor(SIGMA[k], SIGMA[0])) == 0)}")

x = c_form(1, 2, 3, 4)
print("\nan element of C:\n", x.real)
print("eigenvalues on P+, P-, Q+, Q-:", kappa(x).real)
print("dim C =", bell_algebra().algebra.dim)

worst = max(bell_complementarity_defect(bell_unitary(rng_stream(0, "demo/bell", t).uniform(0, 2 * np.pi, 4))).max for t in range(100))
print(f"\n100 random unitaries M in C: worst defect between M (I (x) M2) M* and C is {worst:.1e}")
