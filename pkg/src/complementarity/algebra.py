"""Unital *-subalgebras of ``M_d`` stored as orthonormal operator bases.

An :class:`OperatorAlgebra` keeps a basis ``b_0 = I, b_1, ...`` that is
orthonormal for ``<a, b> = Tr(a^* b) / d``.  With that normalization the
trace-preserving conditional expectation is just the orthogonal projection
onto the span, and two subalgebras are complementary when their traceless
parts ``b_1, b_2, ...`` are mutually orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import DEFAULT_EPS, as_matrix, commutator, dagger, tensor
from .weyl import weyl_operator_basis

COMMUTATIVE = "commutative"
FACTOR = "factor"
GENERAL = "general"
STRUCTURE_TAGS = (COMMUTATIVE, FACTOR, GENERAL)

# rank decisions during orthonormalization, relative to the candidate's norm
RANK_RTOL = 1e-8


class UnsupportedStructureError(ValueError):
    """Raised when an operation needs a commutative or factor algebra."""


class SpanDeficiencyError(ValueError):
    """The supplied algebras do not span the ambient matrix algebra."""

    def __init__(self, achieved: int, required: int):
        super().__init__(f"algebras span dimension {achieved}, need {required}")
        self.achieved = achieved
        self.required = required


def _extend_orthonormal(rows: np.ndarray, candidates: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    """Append the new directions of ``candidates`` to the orthonormal ``rows``.

    Modified Gram-Schmidt with a second re-orthogonalization pass.  A
    candidate is kept when its residual exceeds ``rtol`` times its norm.
    """
    if candidates.size == 0:
        return rows
    norms = np.linalg.norm(candidates, axis=1)
    keep = norms > 0
    cands = candidates[keep] / norms[keep, None]
    for _ in range(2):
        if rows.shape[0]:
            cands = cands - (cands @ rows.conj().T) @ rows
    new = []
    for c in cands:
        for _ in range(2):
            for r in new:
                c = c - np.vdot(r, c) * r
        nrm = np.linalg.norm(c)
        if nrm > rtol:
            new.append(c / nrm)
    if not new:
        return rows
    return np.vstack([rows, np.array(new)])


@dataclass(frozen=True, eq=False)
class OperatorAlgebra:
    """Unital *-subalgebra of ``M_d``.

    ``vectors`` holds the vectorized basis, orthonormal in the Euclidean
    sense; row 0 is the normalized identity.  ``structure`` is declared by the
    caller.  Factors obtained by conjugating ``C I_n (x) M_m`` may carry the
    conjugating unitary and ``inner_dim = m``.
    """

    vectors: np.ndarray = field(repr=False)
    ambient_dim: int
    structure: str = GENERAL
    conjugator: np.ndarray | None = field(default=None, repr=False)
    inner_dim: int | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def basis(self) -> np.ndarray:
        """Basis matrices, orthonormal for the normalized trace; ``basis[0] = I``."""
        d = self.ambient_dim
        return self.vectors.reshape(-1, d, d) * np.sqrt(d)

    @property
    def traceless_vectors(self) -> np.ndarray:
        return self.vectors[1:]

    def contains(self, x, tol: float = 1e-8) -> bool:
        x = as_matrix(x)
        scale = max(np.linalg.norm(x), 1.0)
        return bool(np.linalg.norm(x - conditional_expectation(self, x)) <= tol * scale)

    def conjugate(self, u: np.ndarray) -> "OperatorAlgebra":
        """``u A u^*`` for a unitary ``u``; structure and stored conjugator follow along."""
        d = self.ambient_dim
        mats = self.vectors.reshape(-1, d, d)
        rotated = np.einsum("ij,kjl,ml->kim", u, mats, u.conj()).reshape(self.dim, -1)
        conj = None if self.conjugator is None else u @ self.conjugator
        return OperatorAlgebra(rotated, d, self.structure, conj, self.inner_dim)


def _identity_row(d: int) -> np.ndarray:
    return (np.eye(d, dtype=complex) / np.sqrt(d)).reshape(1, -1)


def _check_structure(alg: OperatorAlgebra, eps: float) -> None:
    if alg.structure not in STRUCTURE_TAGS:
        raise ValueError(f"unknown structure tag {alg.structure!r}")
    mats = alg.basis
    if alg.structure == COMMUTATIVE:
        for a in mats:
            for b in mats:
                if np.linalg.norm(commutator(a, b)) > 1e3 * eps:
                    raise ValueError("algebra declared commutative but basis elements do not commute")
    elif alg.structure == FACTOR and alg.dim * alg.ambient_dim**2 <= 2_000_000:
        # center must be C I: solve [sum_k a_k b_k, b_i] = 0 for all i
        k, d = alg.dim, alg.ambient_dim
        cols = [np.concatenate([commutator(bk, bi).ravel() for bi in mats]) for bk in mats]
        s = np.linalg.svd(np.array(cols).T, compute_uv=False)
        center = int(np.sum(s <= 1e-8 * max(s[0], 1.0))) + max(0, k - len(s))
        if center != 1:
            raise ValueError(f"algebra declared factor but its center has dimension {center}")


def algebra_from_span(
    mats: Sequence[np.ndarray],
    structure: str = GENERAL,
    *,
    verify: bool = True,
    eps: float = DEFAULT_EPS,
    conjugator: np.ndarray | None = None,
    inner_dim: int | None = None,
) -> OperatorAlgebra:
    """Algebra whose span is ``{I} U mats``, which must already be closed.

    With ``verify`` the span is checked for closure under products and
    adjoints, and the declared ``structure`` is checked where cheap.
    """
    mats = [as_matrix(m) for m in mats]
    d = mats[0].shape[0] if mats else 1
    rows = _extend_orthonormal(_identity_row(d), np.array([m.ravel() for m in mats]).reshape(len(mats), -1))
    alg = OperatorAlgebra(rows, d, structure, conjugator, inner_dim)
    if verify:
        b = alg.basis
        prods = np.einsum("aij,bjk->abik", b, b).reshape(-1, d * d)
        prods = np.vstack([prods, np.conj(np.transpose(b, (0, 2, 1))).reshape(-1, d * d)])
        resid = prods - (prods @ rows.conj().T) @ rows
        scale = np.maximum(np.linalg.norm(prods, axis=1), 1.0)
        if np.max(np.linalg.norm(resid, axis=1) / scale) > 1e-8:
            raise ValueError("span is not closed under multiplication and adjoint")
        _check_structure(alg, eps)
    return alg


def algebra_close(
    generators: Sequence[np.ndarray],
    structure: str = GENERAL,
    *,
    eps: float = DEFAULT_EPS,
    rtol: float = RANK_RTOL,
) -> OperatorAlgebra:
    """Smallest unital *-algebra containing ``generators``.

    Words in the generators and their adjoints are grown by left
    multiplication, only ever multiplying the newest layer, until the span
    stops growing.
    """
    gens = [as_matrix(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].shape[0]
    if any(g.shape != (d, d) for g in gens):
        raise ValueError("generators must share one dimension")
    letters = np.array(gens + [dagger(g) for g in gens])
    rows = _extend_orthonormal(_identity_row(d), letters.reshape(len(letters), -1), rtol)
    frontier = rows
    while frontier.shape[0]:
        words = np.einsum("gij,fjk->gfik", letters, frontier.reshape(-1, d, d)).reshape(-1, d * d)
        grown = _extend_orthonormal(rows, words, rtol)
        frontier = grown[rows.shape[0]:]
        rows = grown
    alg = OperatorAlgebra(rows, d, structure)
    _check_structure(alg, eps)
    return alg


def scalars(d: int) -> OperatorAlgebra:
    return OperatorAlgebra(_identity_row(d), d, COMMUTATIVE)


def full_algebra(d: int) -> OperatorAlgebra:
    return OperatorAlgebra(np.eye(d * d, dtype=complex), d, FACTOR)


def local_algebra(n: int, m: int, side: str = "right") -> OperatorAlgebra:
    """``C I_n (x) M_m`` (``side="right"``) or ``M_n (x) C I_m`` (``side="left"``)."""
    traceless = weyl_operator_basis(m if side == "right" else n)[1:]
    if side == "right":
        mats = [tensor(np.eye(n), s) for s in traceless]
        size = m
    elif side == "left":
        mats = [tensor(s, np.eye(m)) for s in traceless]
        size = n
    else:
        raise ValueError("side must be 'left' or 'right'")
    rows = _extend_orthonormal(_identity_row(n * m), np.array([x.ravel() for x in mats]))
    conj = np.eye(n * m, dtype=complex) if side == "right" else swap_operator(m, n)
    return OperatorAlgebra(rows, n * m, FACTOR, conj, size)


def swap_operator(m: int, n: int) -> np.ndarray:
    """Unitary ``P`` with ``P (a (x) b) P^* = b (x) a`` for ``a`` in ``M_m``, ``b`` in ``M_n``."""
    p = np.zeros((n * m, m * n), dtype=complex)
    for i in range(m):
        for j in range(n):
            p[j * m + i, i * n + j] = 1.0
    return p


def diagonal_algebra(vectors: np.ndarray) -> OperatorAlgebra:
    """Maximal Abelian algebra of operators diagonal in the columns of ``vectors``."""
    v = np.asarray(vectors, dtype=complex)
    d = v.shape[0]
    projs = [np.outer(v[:, i], v[:, i].conj()) for i in range(v.shape[1])]
    return algebra_from_span(projs, COMMUTATIVE, verify=False)


def _check_pair(a1: OperatorAlgebra, a2: OperatorAlgebra) -> None:
    if a1.ambient_dim != a2.ambient_dim:
        raise ValueError(f"dimension mismatch: {a1.ambient_dim} vs {a2.ambient_dim}")


def conditional_expectation(alg: OperatorAlgebra, x) -> np.ndarray:
    """Trace-preserving conditional expectation, i.e. the orthogonal projection onto ``alg``."""
    x = as_matrix(x)
    d = alg.ambient_dim
    if x.shape != (d, d):
        raise ValueError(f"dimension mismatch: {x.shape} vs algebra in M_{d}")
    v = alg.vectors
    return ((v.conj() @ x.ravel()) @ v).reshape(d, d)


def quasi_orthogonality_defect(a1: OperatorAlgebra, a2: OperatorAlgebra) -> float:
    """Largest ``|<a, b>|`` over traceless basis elements of the two algebras."""
    _check_pair(a1, a2)
    if a1.dim == 1 or a2.dim == 1:
        return 0.0
    # rows are normalized so Euclidean overlap equals the normalized HS product
    return float(np.abs(a1.traceless_vectors.conj() @ a2.traceless_vectors.T).max())


def trace_independence_defect(a1: OperatorAlgebra, a2: OperatorAlgebra) -> float:
    """``max |tau(b_i c_j) - tau(b_i) tau(c_j)|`` over basis pairs."""
    _check_pair(a1, a2)
    d = a1.ambient_dim
    b, c = a1.basis, a2.basis
    tau_bc = np.einsum("aij,bji->ab", b, c) / d
    tau_b = np.trace(b, axis1=1, axis2=2) / d
    tau_c = np.trace(c, axis1=1, axis2=2) / d
    return float(np.abs(tau_bc - np.outer(tau_b, tau_c)).max())


def commuting_square_defect(a1: OperatorAlgebra, a2: OperatorAlgebra) -> float:
    """``max ||E_1(c) - tau(c) I||`` over the basis ``c`` of ``a2`` (normalized HS norm)."""
    _check_pair(a1, a2)
    d = a1.ambient_dim
    worst = 0.0
    for c in a2.basis:
        r = conditional_expectation(a1, c) - np.trace(c) / d * np.eye(d)
        worst = max(worst, float(np.linalg.norm(r) / np.sqrt(d)))
    return worst


def _spectral_projections(h: np.ndarray, tol: float = 1e-7) -> list[np.ndarray]:
    w, v = np.linalg.eigh((h + dagger(h)) / 2)
    spread = max(float(w[-1] - w[0]), 1.0)
    groups: list[list[int]] = []
    for i in range(len(w)):
        if groups and w[i] - w[groups[-1][-1]] < tol * spread:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [v[:, g] @ dagger(v[:, g]) for g in groups]


def _random_hermitian_element(alg: OperatorAlgebra, rng: np.random.Generator) -> np.ndarray:
    b = alg.basis
    coeffs = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
    x = np.tensordot(coeffs, b, axes=1)
    return x + dagger(x)


def _require_supported(alg: OperatorAlgebra) -> None:
    if alg.structure not in (COMMUTATIVE, FACTOR):
        raise UnsupportedStructureError(f"operation needs a commutative or factor algebra, got {alg.structure!r}")


def minimal_projections(alg: OperatorAlgebra, samples: int = 4, seed: int = 0) -> list[np.ndarray]:
    """Minimal projections of a commutative algebra or factor.

    Commutative: the complete list of joint spectral projections.  Factor:
    a deterministic sample.  With a stored conjugator ``W`` these are
    ``W (I (x) |v><v|) W^*`` for ``v`` in the standard and Fourier bases plus
    ``samples`` seeded random vectors; otherwise the eigenprojections of
    ``samples`` seeded random Hermitian elements.
    """
    _require_supported(alg)
    d = alg.ambient_dim
    rng = np.random.default_rng(seed)
    if alg.dim == 1:
        return [np.eye(d, dtype=complex)]
    if alg.structure == COMMUTATIVE:
        for _ in range(8):
            projs = _spectral_projections(_random_hermitian_element(alg, rng))
            if len(projs) == alg.dim:
                return projs
        raise ArithmeticError("could not separate the minimal projections")
    if alg.conjugator is not None and alg.inner_dim:
        m = alg.inner_dim
        n = d // m
        idx = np.arange(m)
        vecs = list(np.eye(m, dtype=complex)) + list(np.exp(2j * np.pi * np.outer(idx, idx) / m).T / np.sqrt(m))
        for _ in range(samples):
            v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            vecs.append(v / np.linalg.norm(v))
        w = alg.conjugator
        return [w @ tensor(np.eye(n), np.outer(v, v.conj())) @ dagger(w) for v in vecs]
    out = []
    for _ in range(max(samples, 1)):
        out.extend(_spectral_projections(_random_hermitian_element(alg, rng)))
    return out


def is_homogeneous(alg: OperatorAlgebra, eps: float = 1e-8) -> bool:
    """True when all minimal projections have the same trace."""
    _require_supported(alg)
    if alg.structure == FACTOR:
        return True
    traces = [np.trace(p).real for p in minimal_projections(alg)]
    return bool(max(traces) - min(traces) <= eps)


def projection_independence_defect(ps: Sequence[np.ndarray], qs: Sequence[np.ndarray]) -> float:
    """``max |tau(PQ) - tau(P) tau(Q)|`` over the given projection lists."""
    d = ps[0].shape[0]
    tp = np.array([np.trace(p).real / d for p in ps])
    tq = np.array([np.trace(q).real / d for q in qs])
    tpq = np.einsum("aij,bji->ab", np.array(ps), np.array(qs)) / d
    return float(np.abs(tpq - np.outer(tp, tq)).max())


@dataclass
class Condition:
    holds: bool
    defect: float


@dataclass
class ComplementarityReport:
    """The four equivalent complementarity conditions for homogeneous algebras.

    ``cond_i`` (minimal projections) is ``None`` when it was not evaluated.
    """

    cond_i: Condition | None
    cond_ii: Condition
    cond_iii: Condition
    cond_iv: Condition

    def verdicts(self) -> list[bool]:
        conds = [self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv]
        return [c.holds for c in conds if c is not None]

    @property
    def agree(self) -> bool:
        v = self.verdicts()
        return all(v) or not any(v)

    @property
    def complementary(self) -> bool:
        return self.cond_ii.holds

    def to_dict(self) -> dict:
        def enc(c):
            return None if c is None else {"holds": c.holds, "defect": c.defect}

        return {
            "cond_i": enc(self.cond_i),
            "cond_ii": enc(self.cond_ii),
            "cond_iii": enc(self.cond_iii),
            "cond_iv": enc(self.cond_iv),
            "agree": self.agree,
            "complementary": self.complementary,
        }


def complementarity_report(
    a1: OperatorAlgebra,
    a2: OperatorAlgebra,
    samples: int = 4,
    seed: int = 0,
    *,
    with_cond_i: bool | None = None,
    eps: float = DEFAULT_EPS,
) -> ComplementarityReport:
    """Evaluate conditions (i)-(iv) with their numerical defects.

    ``with_cond_i=None`` evaluates the minimal-projection condition only when
    both algebras are commutative or factors; ``True`` demands it and raises
    :class:`UnsupportedStructureError` otherwise.
    """
    _check_pair(a1, a2)
    supported = all(a.structure in (COMMUTATIVE, FACTOR) for a in (a1, a2))
    if with_cond_i and not supported:
        raise UnsupportedStructureError("condition (i) needs commutative or factor algebras")
    cond_i = None
    if with_cond_i or (with_cond_i is None and supported):
        ps = minimal_projections(a1, samples, seed)
        qs = minimal_projections(a2, samples, seed + 1)
        dfc = projection_independence_defect(ps, qs)
        cond_i = Condition(dfc <= eps, dfc)
    q = quasi_orthogonality_defect(a1, a2)
    t = trace_independence_defect(a1, a2)
    e = commuting_square_defect(a1, a2)
    return ComplementarityReport(cond_i, Condition(q <= eps, q), Condition(t <= eps, t), Condition(e <= eps, e))


def span_rank(algebras: Sequence[OperatorAlgebra], rtol: float = RANK_RTOL) -> int:
    rows = np.vstack([a.vectors for a in algebras])
    s = np.linalg.svd(rows, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


def intersection_dim(a1: OperatorAlgebra, a2: OperatorAlgebra, rtol: float = RANK_RTOL) -> int:
    """Dimension of the linear intersection of the two spans."""
    _check_pair(a1, a2)
    return a1.dim + a2.dim - span_rank([a1, a2], rtol)


def spanning_decomposition(
    algebras: Sequence[OperatorAlgebra], x, eps: float = 1e-8
) -> list[np.ndarray]:
    """Components ``E_i(x)`` with ``x = -tau(x)(r-1) I + sum_i E_i(x)``.

    The algebras must be pairwise quasi-orthogonal and span ``M_d``; a
    :class:`SpanDeficiencyError` reports the achieved span dimension otherwise.
    """
    x = as_matrix(x)
    d = algebras[0].ambient_dim
    for i, a in enumerate(algebras):
        for b in algebras[i + 1:]:
            dfc = quasi_orthogonality_defect(a, b)
            if dfc > eps:
                raise ValueError(f"algebras are not pairwise quasi-orthogonal (defect {dfc:.3g})")
    achieved = span_rank(algebras)
    if achieved < d * d:
        raise SpanDeficiencyError(achieved, d * d)
    return [conditional_expectation(a, x) for a in algebras]


def reconstruct(components: Sequence[np.ndarray], x) -> np.ndarray:
    """``-tau(x)(r-1) I + sum_i E_i(x)``."""
    x = as_matrix(x)
    d = x.shape[0]
    r = len(components)
    return -np.trace(x) / d * (r - 1) * np.eye(d) + sum(components)


def max_maximal_abelian_family(n: int) -> int:
    """Upper bound ``n + 1`` on pairwise complementary maximal Abelian subalgebras of ``M_n``."""
    return (n * n - 1) // (n - 1)


def max_factor_family(n: int) -> int:
    """Upper bound ``n^2 + 1`` on pairwise complementary copies of ``M_n`` in ``M_{n^2}``."""
    return (n**4 - 1) // (n * n - 1)
