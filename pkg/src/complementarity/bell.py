"""The commutative algebra of operators diagonal in the Bell basis."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import COMMUTATIVE, OperatorAlgebra, algebra_from_span, local_algebra, quasi_orthogonality_defect
from .linalg import DEFAULT_EPS, as_matrix, dagger, is_unitary, pauli_word

_R2 = 1 / np.sqrt(2)
BELL_VECTORS = (
    np.array([1, 0, 0, 1], dtype=complex) * _R2,  # P+
    np.array([1, 0, 0, -1], dtype=complex) * _R2,  # P-
    np.array([0, 1, 1, 0], dtype=complex) * _R2,  # Q+
    np.array([0, 1, -1, 0], dtype=complex) * _R2,  # Q-
)


@dataclass(frozen=True)
class BellAlgebra:
    algebra: OperatorAlgebra = field(repr=False)
    projections: tuple = field(repr=False)  # (P+, P-, Q+, Q-)


def c_form(a, b, c, d) -> np.ndarray:
    """``[[a,0,0,b],[0,c,d,0],[0,d,c,0],[b,0,0,a]]``."""
    return np.array([[a, 0, 0, b], [0, c, d, 0], [0, d, c, 0], [b, 0, 0, a]], dtype=complex)


def kappa(x) -> np.ndarray:
    """Coordinates ``(a+b, a-b, c+d, c-d)`` of an element in C-form."""
    x = as_matrix(x)
    a, b, c, d = x[0, 0], x[0, 3], x[1, 1], x[1, 2]
    return np.array([a + b, a - b, c + d, c - d])


def bell_algebra() -> BellAlgebra:
    projs = tuple(np.outer(v, v.conj()) for v in BELL_VECTORS)
    alg = algebra_from_span([pauli_word(i, i) for i in (1, 2, 3)], COMMUTATIVE)
    return BellAlgebra(alg, projs)


def bell_expectation(x) -> np.ndarray:
    """Keep only the ``s_i (x) s_i`` Pauli coordinates of ``x``."""
    x = as_matrix(x)
    if x.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    return sum(np.trace(pauli_word(i, i) @ x) / 4 * pauli_word(i, i) for i in range(4))


def bell_unitary(phases) -> np.ndarray:
    """``sum_k exp(i phi_k) R_k`` over the Bell projections ``(P+, P-, Q+, Q-)``."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (4,):
        raise ValueError("need four phases")
    return sum(np.exp(1j * p) * np.outer(v, v.conj()) for p, v in zip(phases, BELL_VECTORS))


@dataclass
class BellDefects:
    vs_bell: float  # M (C I (x) M_2) M^*  against  C
    vs_bell_left: float  # M (M_2 (x) C I) M^*  against  C
    bell_vs_right: float  # C  against  C I (x) M_2
    bell_vs_left: float  # C  against  M_2 (x) C I

    @property
    def max(self) -> float:
        return max(self.vs_bell, self.vs_bell_left, self.bell_vs_right, self.bell_vs_left)


def bell_complementarity_defect(m, eps: float = DEFAULT_EPS) -> BellDefects:
    m = as_matrix(m)
    if not is_unitary(m, 1e-9):
        raise ValueError("m is not unitary")
    if np.linalg.norm(bell_expectation(m) - m) > 1e-9:
        raise ValueError("m is not in the Bell algebra")
    c = bell_algebra().algebra
    right, left = local_algebra(2, 2, "right"), local_algebra(2, 2, "left")
    return BellDefects(
        quasi_orthogonality_defect(right.conjugate(m), c),
        quasi_orthogonality_defect(left.conjugate(m), c),
        quasi_orthogonality_defect(c, right),
        quasi_orthogonality_defect(c, left),
    )
