"""Measurement entropies and entropic uncertainty bounds (natural log throughout)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import DEFAULT_EPS, as_matrix, dagger, is_hermitian, is_projection
from .weyl import Basis, unbiasedness_deviation

# denominators below this are left out of the POVM bound's supremum
POVM_DENOMINATOR_FLOOR = 1e-12
BITS_PER_NAT = 1 / np.log(2)


def eta(t) -> np.ndarray:
    """``-t log t`` with ``eta(0) = 0``; arguments slightly below zero clamp to 0."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t > 0, -t * np.log(np.where(t > 0, t, 1.0)), 0.0)


def validate_state(rho, eps: float = 1e-9) -> np.ndarray:
    rho = as_matrix(rho)
    if not is_hermitian(rho, eps):
        raise ValueError("state is not Hermitian")
    if abs(np.trace(rho) - 1) > eps:
        raise ValueError("state does not have unit trace")
    if np.linalg.eigvalsh((rho + dagger(rho)) / 2).min() < -eps:
        raise ValueError("state is not positive semidefinite")
    return rho


def pure_state(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    phi = phi / np.linalg.norm(phi)
    return np.outer(phi, phi.conj())


@dataclass(frozen=True)
class Observable:
    """Spectral projections ``P_i`` of an observable; they sum to ``I``."""

    projections: tuple = field(repr=False)

    @classmethod
    def from_basis(cls, basis: Basis | np.ndarray) -> "Observable":
        v = basis.vectors if isinstance(basis, Basis) else np.asarray(basis, dtype=complex)
        return cls(tuple(np.outer(v[:, i], v[:, i].conj()) for i in range(v.shape[1])))

    @classmethod
    def from_hermitian(cls, a, tol: float = 1e-9) -> "Observable":
        w, v = np.linalg.eigh(as_matrix(a))
        groups: list[list[int]] = []
        for i in range(len(w)):
            if groups and w[i] - w[groups[-1][-1]] < tol:
                groups[-1].append(i)
            else:
                groups.append([i])
        return cls(tuple(v[:, g] @ dagger(v[:, g]) for g in groups))

    @property
    def dim(self) -> int:
        return self.projections[0].shape[0]

    def validate(self, eps: float = 1e-9) -> None:
        if not all(is_projection(p, eps) for p in self.projections):
            raise ValueError("observable contains a non-projection")
        if np.linalg.norm(sum(self.projections) - np.eye(self.dim)) > eps:
            raise ValueError("spectral projections do not sum to I")

    def is_rank_one(self, eps: float = 1e-9) -> bool:
        return all(abs(np.trace(p).real - 1) <= eps for p in self.projections)

    def conjugate(self, u) -> "Observable":
        u = as_matrix(u)
        return Observable(tuple(u @ p @ dagger(u) for p in self.projections))


@dataclass(frozen=True)
class Povm:
    effects: tuple = field(repr=False)

    def validate(self, eps: float = 1e-9) -> None:
        d = self.effects[0].shape[0]
        for e in self.effects:
            if not is_hermitian(e, eps) or np.linalg.eigvalsh((e + dagger(e)) / 2).min() < -eps:
                raise ValueError("POVM effect is not positive semidefinite")
        if np.linalg.norm(sum(self.effects) - np.eye(d)) > eps:
            raise ValueError("POVM effects do not sum to I")


def observable_entropy(a: Observable, rho) -> float:
    """``sum_i eta(Tr rho P_i)``."""
    rho = validate_state(rho)
    if rho.shape[0] != a.dim:
        raise ValueError("dimension mismatch")
    probs = np.array([np.trace(rho @ p).real for p in a.projections])
    return float(eta(probs).sum())


def _require_rank_one(*obs: Observable) -> None:
    for o in obs:
        if not o.is_rank_one():
            raise ValueError("observable must have rank-one spectral projections")


def mu_constant(a: Observable, b: Observable) -> float:
    """``c = sqrt(max_ij Tr P_i Q_j)`` for two nondegenerate observables."""
    _require_rank_one(a, b)
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    overlaps = np.einsum("aij,bji->ab", np.array(a.projections), np.array(b.projections)).real
    return float(np.sqrt(overlaps.max()))


def mu_slack(a: Observable, b: Observable, rho) -> float:
    """``H(A) + H(B) + 2 log c``; nonnegative by the Maassen-Uffink bound."""
    c = mu_constant(a, b)
    return observable_entropy(a, rho) + observable_entropy(b, rho) + 2 * np.log(c)


@dataclass
class PovmSlack:
    slack: float
    entropy_e: float
    entropy_f: float
    sup_ratio: float
    skipped_terms: list[tuple[int, int]]

    @property
    def flagged(self) -> bool:
        return bool(self.skipped_terms)


def povm_entropy(e: Povm, phi) -> float:
    phi = np.asarray(phi, dtype=complex)
    return float(eta([np.vdot(phi, x @ phi).real for x in e.effects]).sum())


def povm_slack(e: Povm, f: Povm, phi, eps: float = 1e-9) -> PovmSlack:
    """``H(E, phi) + H(F, phi) + 2 log sup_ij |<phi, E_i F_j phi>| / (<phi, E_i phi> <phi, F_j phi>)``.

    Pairs whose denominator factors fall below ``POVM_DENOMINATOR_FLOOR`` are
    left out of the supremum and listed in ``skipped_terms``.
    """
    e.validate(eps)
    f.validate(eps)
    phi = np.asarray(phi, dtype=complex)
    if abs(np.linalg.norm(phi) - 1) > eps:
        raise ValueError("phi must be a unit vector")
    pe = [np.vdot(phi, x @ phi).real for x in e.effects]
    pf = [np.vdot(phi, y @ phi).real for y in f.effects]
    best = 0.0
    skipped = []
    for i, x in enumerate(e.effects):
        for j, y in enumerate(f.effects):
            if pe[i] < POVM_DENOMINATOR_FLOOR or pf[j] < POVM_DENOMINATOR_FLOOR:
                skipped.append((i, j))
                continue
            best = max(best, abs(np.vdot(phi, x @ y @ phi)) / (pe[i] * pf[j]))
    he, hf = float(eta(pe).sum()), float(eta(pf).sum())
    return PovmSlack(he + hf + 2 * np.log(best), he, hf, best, skipped)


def sanchez_bound(n: int) -> float:
    return (n + 1) * np.log((n + 1) / 2)


def sanchez_slack(observables: Sequence[Observable], rho, eps: float = DEFAULT_EPS) -> float:
    """``sum_k H(A_k) - (n+1) log((n+1)/2)`` for ``n+1`` pairwise unbiased observables."""
    n = observables[0].dim
    if len(observables) != n + 1:
        raise ValueError(f"need {n + 1} observables in dimension {n}")
    _require_rank_one(*observables)
    bases = [Basis(np.column_stack([_unit_vector(p) for p in o.projections])) for o in observables]
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            dev = unbiasedness_deviation(bases[i], bases[j])
            if dev > 1e3 * eps:
                raise ValueError(f"observables {i} and {j} are not unbiased (deviation {dev:.3g})")
    return sum(observable_entropy(o, rho) for o in observables) - sanchez_bound(n)


def _unit_vector(p: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((p + dagger(p)) / 2)
    return v[:, -1]


def basis_state(n: int, i: int = 0) -> np.ndarray:
    e = np.zeros(n, dtype=complex)
    e[i] = 1.0
    return pure_state(e)
