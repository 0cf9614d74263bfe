"""Clock and shift unitaries and mutually unbiased bases built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .linalg import DEFAULT_EPS, commutator, dagger, pauli_word

Index = tuple[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class WeylSystem:
    """Shift ``x`` (``x e_i = e_{i+1}``) and clock ``z`` (``z e_i = q^i e_i``) in dimension ``n``."""

    n: int
    q: complex
    x: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Basis:
    """Orthonormal basis stored as the columns of ``vectors``."""

    vectors: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def projections(self) -> list[np.ndarray]:
        return [np.outer(v, v.conj()) for v in self.vectors.T]

    def orthonormality_defect(self) -> float:
        v = self.vectors
        return float(np.abs(dagger(v) @ v - np.eye(v.shape[1])).max())


def weyl_system(n: int) -> WeylSystem:
    if n < 2:
        raise ValueError("n must be >= 2")
    q = np.exp(2j * np.pi / n)
    x = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    z = np.diag(q ** np.arange(n))
    return WeylSystem(n=n, q=complex(q), x=x, z=z)


def weyl_s(sys: WeylSystem, j: int, k: int) -> np.ndarray:
    """``S_{j,k} = Z^j X^k``, with indices taken mod ``n``."""
    n = sys.n
    j, k = j % n, k % n
    return np.linalg.matrix_power(sys.z, j) @ np.linalg.matrix_power(sys.x, k)


def weyl_operator_basis(n: int) -> list[np.ndarray]:
    """All ``S_{j,k}``, an orthonormal basis of ``M_n`` under the normalized product."""
    sys = weyl_system(n)
    return [weyl_s(sys, j, k) for j in range(n) for k in range(n)]


def commuting_classes_prime(p: int) -> list[list[Index]]:
    """Split the nonzero points of ``Z_p x Z_p`` into the ``p+1`` punctured lines through 0.

    ``S_{j,k}`` and ``S_{u,v}`` commute iff ``k u = j v (mod p)``, i.e. iff
    the two points lie on a common line.  Classes are listed with direction
    ``(0, 1)`` first, then ``(1, s)`` for ``s = 0..p-1``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    directions = [(0, 1)] + [(1, s) for s in range(p)]
    return [[(t * a % p, t * b % p) for t in range(1, p)] for a, b in directions]


def _phase_key(lam: complex, tol: float) -> float:
    ang = float(np.angle(lam))
    # -pi and pi are the same phase; fold to +pi
    return np.pi if ang < -np.pi + tol else ang


def _fix_phase(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v) > 1e-8))
    return v * (abs(v[i]) / v[i])


def joint_eigenbasis(ops: Sequence[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """Orthonormal joint eigenbasis of pairwise commuting normal matrices.

    The first operator is diagonalized and its eigenspaces, ordered by the
    phase of the eigenvalue, are refined by the next operator, and so on.
    Each vector's first significant entry is made real positive.
    """
    n = ops[0].shape[0]
    blocks = [np.eye(n, dtype=complex)]
    for op in ops:
        refined = []
        for v in blocks:
            if v.shape[1] == 1:
                refined.append(v)
                continue
            t, q = scipy.linalg.schur(dagger(v) @ op @ v, output="complex")
            lam = np.diag(t)
            keys = np.array([_phase_key(x, tol) for x in lam])
            order = np.argsort(keys, kind="stable")
            groups: list[list[int]] = []
            for idx in order:
                if groups and abs(lam[idx] - lam[groups[-1][0]]) < tol:
                    groups[-1].append(idx)
                else:
                    groups.append([idx])
            for g in groups:
                w, _ = np.linalg.qr(v @ q[:, g])
                refined.append(w)
        blocks = refined
    cols = [_fix_phase(w[:, i]) for w in blocks for i in range(w.shape[1])]
    return np.column_stack(cols)


def eigenbasis_of_class(sys: WeylSystem, cls: Sequence[Index], eps: float = DEFAULT_EPS) -> Basis:
    ops = [weyl_s(sys, j, k) for j, k in cls]
    for a in ops:
        for b in ops:
            if np.linalg.norm(commutator(a, b)) > eps:
                raise ValueError("class elements do not commute")
    return Basis(joint_eigenbasis(ops))


def unbiasedness_deviation(b1: Basis, b2: Basis) -> float:
    """``max_{j,k} | |<e_j, f_k>|^2 - 1/n |``."""
    if b1.vectors.shape != b2.vectors.shape:
        raise ValueError("dimension mismatch")
    overlaps = np.abs(dagger(b1.vectors) @ b2.vectors) ** 2
    return float(np.abs(overlaps - 1.0 / b1.n).max())


def fourier_basis(n: int) -> Basis:
    idx = np.arange(n)
    return Basis(np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n))


def standard_basis(n: int) -> Basis:
    return Basis(np.eye(n, dtype=complex))


def mub_prime(p: int) -> list[Basis]:
    """The ``p + 1`` mutually unbiased bases for prime ``p``."""
    sys = weyl_system(p)
    return [eigenbasis_of_class(sys, c) for c in commuting_classes_prime(p)]


# Commuting triples of two-qubit Pauli words, given as (i, j) for sigma_i (x) sigma_j.
PAULI_PARTITION_DIM4 = (
    ((0, 1), (1, 0), (1, 1)),
    ((0, 2), (2, 0), (2, 2)),
    ((0, 3), (3, 0), (3, 3)),
    ((1, 2), (2, 3), (3, 1)),
    ((1, 3), (2, 1), (3, 2)),
)


def pauli_partition_dim4() -> list[Basis]:
    """Joint eigenbases of the five commuting Pauli triples; they are pairwise unbiased."""
    return [Basis(joint_eigenbasis([pauli_word(*w) for w in triple])) for triple in PAULI_PARTITION_DIM4]


def deviation_matrix(bases: Sequence[Basis]) -> np.ndarray:
    m = len(bases)
    out = np.zeros((m, m))
    for a in range(m):
        for b in range(m):
            if a != b:
                out[a, b] = unbiasedness_deviation(bases[a], bases[b])
    return out
