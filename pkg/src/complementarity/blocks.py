"""Block unitaries ``W = sum E_ij (x) W_ij`` and the usefulness criterion.

``W`` is *useful* when ``W (C I_n (x) M_m) W^*`` is complementary to
``C I_n (x) M_m``.  This is decided from the blocks alone: the frame
``F = sum_ij |W_ij><W_ij|`` on ``M_m`` (trace inner product) must satisfy
``(m/n) F = I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import OperatorAlgebra, local_algebra
from .linalg import DEFAULT_EPS, SIGMA, as_matrix, dagger, is_unitary
from .weyl import weyl_system


@dataclass(frozen=True)
class BlockUnitary:
    n: int
    m: int
    w: np.ndarray = field(repr=False)
    blocks: np.ndarray = field(repr=False)  # shape (n, n, m, m)

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i, j]

    def reassemble(self) -> np.ndarray:
        return np.block([[self.blocks[i, j] for j in range(self.n)] for i in range(self.n)])

    def column_identity_defect(self) -> float:
        """``max_j || sum_i W_ij^* W_ij - I ||``, zero for a unitary."""
        eye = np.eye(self.m)
        return max(
            float(np.linalg.norm(sum(dagger(self.blocks[i, j]) @ self.blocks[i, j] for i in range(self.n)) - eye))
            for j in range(self.n)
        )


def _blocks_of(w: np.ndarray, n: int, m: int) -> np.ndarray:
    return w.reshape(n, m, n, m).transpose(0, 2, 1, 3)


def split_blocks(w, n: int, m: int, eps: float = DEFAULT_EPS) -> BlockUnitary:
    """Cut ``w`` into its ``n x n`` grid of ``m x m`` blocks (row-major block order)."""
    w = as_matrix(w)
    if w.shape[0] != n * m:
        raise ValueError(f"matrix of size {w.shape[0]} is not {n}*{m}")
    if not is_unitary(w, eps * max(1, n * m)):
        raise ValueError("w is not unitary")
    return BlockUnitary(n, m, w, _blocks_of(w, n, m).copy())


def frame_operator(blocks: np.ndarray) -> np.ndarray:
    """``sum_ij |vec W_ij><vec W_ij|`` as an ``m^2 x m^2`` matrix."""
    n, _, m, _ = blocks.shape
    v = blocks.reshape(n * n, m * m)
    return v.T @ v.conj()


def frame_defect(blocks: np.ndarray) -> float:
    """``|| (m/n) F - I ||_F`` for a grid of blocks of shape ``(n, n, m, m)``.

    Works for any grid of blocks, unitary or not.
    """
    blocks = np.asarray(blocks, dtype=complex)
    n, _, m, _ = blocks.shape
    return float(np.linalg.norm(m / n * frame_operator(blocks) - np.eye(m * m)))


def usefulness_defect(bu: BlockUnitary) -> float:
    return frame_defect(bu.blocks)


def is_useful(w, n: int, m: int, eps: float = DEFAULT_EPS) -> bool:
    return usefulness_defect(split_blocks(w, n, m)) <= eps


def conjugated_algebra(w, n: int, m: int, eps: float = DEFAULT_EPS) -> OperatorAlgebra:
    """The factor ``w (C I_n (x) M_m) w^*``, remembering ``w`` as its conjugator."""
    w = as_matrix(w)
    if w.shape[0] != n * m:
        raise ValueError(f"matrix of size {w.shape[0]} is not {n}*{m}")
    if not is_unitary(w, eps * max(1, n * m)):
        raise ValueError("w is not unitary")
    return local_algebra(n, m, "right").conjugate(w)


def weyl_block_unitary(n: int, c, start: int = 0, eps: float = 1e-9) -> BlockUnitary:
    """Assemble ``W_ij = c_ij X^(i+start) Z^(j+start)``.

    ``c`` must be unitary with ``n |c_ij|^2 = 1``; then ``W`` is unitary and
    its blocks are an orthogonal basis of ``M_n``, so ``W`` is useful.
    """
    c = as_matrix(c)
    if c.shape != (n, n):
        raise ValueError(f"coefficient matrix must be {n}x{n}")
    if not is_unitary(c, eps):
        raise ValueError("coefficient matrix is not unitary")
    if np.abs(n * np.abs(c) ** 2 - 1).max() > eps:
        raise ValueError("coefficient moduli must all equal 1/sqrt(n)")
    sys = weyl_system(n)
    xp = [np.linalg.matrix_power(sys.x, (i + start) % n) for i in range(n)]
    zp = [np.linalg.matrix_power(sys.z, (j + start) % n) for j in range(n)]
    blocks = np.array([[c[i, j] * xp[i] @ zp[j] for j in range(n)] for i in range(n)])
    w = np.block([[blocks[i, j] for j in range(n)] for i in range(n)])
    return BlockUnitary(n, n, w, blocks)


def fourier_matrix(n: int) -> np.ndarray:
    idx = np.arange(n)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def adjoint_closure_check(w, n: int, m: int, eps: float = DEFAULT_EPS) -> bool:
    """True when ``w`` and ``w^*`` are both useful or both not useful."""
    w = as_matrix(w)
    return (usefulness_defect(split_blocks(w, n, m)) <= eps) == (usefulness_defect(split_blocks(dagger(w), n, m)) <= eps)


def relative_defect(w_new: np.ndarray, w_old: np.ndarray, n: int, m: int) -> float:
    """Usefulness defect of ``w_old^* w_new``.

    Zero exactly when ``w_new A w_new^*`` and ``w_old A w_old^*`` are
    complementary, ``A = C I_n (x) M_m``.
    """
    return usefulness_defect(BlockUnitary(n, m, None, _blocks_of(dagger(w_old) @ w_new, n, m)))


# Reference two-qubit unitaries
_S = SIGMA
PAULI_W = np.block([[_S[0], _S[3]], [_S[1], 1j * _S[2]]]) / np.sqrt(2)
# orthonormal blocks, but assembled as a matrix they are not unitary
PAULI_W2_PLUS_BLOCKS = np.array([[-1j * _S[2], _S[1]], [_S[3], _S[0]]]) / np.sqrt(2)
SWAP_U = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def pauli_w2() -> BlockUnitary:
    """Unitary built from the Pauli blocks {-i s2, s1, s3, -I}/sqrt(2).

    With ``c = [[1, 1], [1, -1]]/sqrt(2)`` and exponents starting at 1 the
    Weyl construction yields blocks ``{-i s2, s1, s3, -I}/sqrt(2)``.  The
    variant with ``+I`` in the corner has the same orthonormal
    blocks but is not unitary.
    """
    return weyl_block_unitary(2, np.array([[1, 1], [1, -1]]) / np.sqrt(2), start=1)
