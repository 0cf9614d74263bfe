"""Block unitaries that move a factor to a complementary position.

Write W as an n x n grid of m x m blocks W_ij.  Then W (I (x) M_m) W* is
complementary to I (x) M_m exactly when (m/n) sum_ij |W_ij><W_ij| = I, with
the trace inner product on blocks.  Weyl operators give such blocks in any
dimension.
"""

import numpy as np

from complementarity.blocks import (
    PAULI_W,
    PAULI_W2_PLUS_BLOCKS,
    SWAP_U,
    fourier_matrix,
    frame_defect,
    pauli_w2,
    split_blocks,
    usefulness_defect,
    weyl_block_unitary,
)
from complementarity.linalg import haar_unitary, is_unitary

np.set_printoptions(precision=3, suppress=True)

print("Pauli block unitary W:")
print(PAULI_W * np.sqrt(2))
print("usefulness defect:", usefulness_defect(split_blocks(PAULI_W, 2, 2)))

plus = np.block([[PAULI_W2_PLUS_BLOCKS[i, j] for j in range(2)] for i in range(2)])
print("\nblocks {-i s2, s1, s3, I}/sqrt(2) assembled as a matrix: unitary?", is_unitary(plus))
print("their frame defect:", frame_defect(PAULI_W2_PLUS_BLOCKS))
print("flipping the sign of the I block gives a unitary:", is_unitary(pauli_w2().w), "defect", usefulness_defect(pauli_w2()))

print("\nswap of the middle basis vectors, defect:", usefulness_defect(split_blocks(SWAP_U, 2, 2)))

for n in (3, 4, 5):
    bu = weyl_block_unitary(n, fourier_matrix(n))
    print(f"Weyl block unitary, n = {n}: defect {usefulness_defect(bu):.1e}")

defects = [usefulness_defect(split_blocks(haar_unitary(4, s), 2, 2)) for s in range(200)]
print(f"\n200 Haar unitaries: smallest defect {min(defects):.3f}, so generic unitaries are not useful")
