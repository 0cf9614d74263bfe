"""Complementarity from the canonical anticommutation relations.

With Jordan-Wigner operators a_1 .. a_n on (C^2)^{(x) n}, the algebras
generated by two disjoint sets of modes are complementary, even though
they do not commute.
"""

import itertools

import numpy as np

from complementarity.fermion import V_CAR, car_partition_check, jordan_wigner

np.set_printoptions(precision=0, suppress=True)

s = jordan_wigner(2)
print("a_1 =\n", s.ops[0].real)
print("a_2 =\n", s.ops[1].real)
print("V a_1 V* == a_2:", np.allclose(V_CAR @ s.ops[0] @ V_CAR.conj().T, s.ops[1]))

for n in (2, 3, 4):
    sys_ = jordan_wigner(n)
    print(f"\nn = {n}, CAR defect {sys_.car_defect():.1e}")
    for r in range(1, n // 2 + 1):
        for j1 in itertools.combinations(range(1, n + 1), r):
            j2 = [m for m in range(1, n + 1) if m not in j1]
            if r == n - r and 1 not in j1:
                continue
            print(f"   {list(j1)} | {j2}: defect {car_partition_check(sys_, j1, j2):.1e}")
