"""Dense complex matrix helpers shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
inner product used throughout is the normalized Hilbert-Schmidt product
``<a, b> = Tr(a^* b) / dim``.
"""

from __future__ import annotations

import zlib
from typing import Sequence

import numpy as np

DEFAULT_EPS = 1e-10

SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex array, raising ``ValueError`` otherwise."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def hs_inner(a, b) -> complex:
    """Normalized Hilbert-Schmidt inner product ``Tr(a^* b) / dim``.

    Conjugate-linear in the first argument.
    """
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return complex(np.vdot(a, b) / a.shape[0])


def hs_norm(a) -> float:
    a = as_matrix(a)
    return float(np.linalg.norm(a) / np.sqrt(a.shape[0]))


def tensor(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = np.kron(out, as_matrix(f))
    return out


_PAULI_WORDS = np.array([[np.kron(a, b) for b in SIGMA] for a in SIGMA])
_PAULI_WORDS.setflags(write=False)


def pauli_word(i: int, j: int) -> np.ndarray:
    """``sigma_i (x) sigma_j`` with ``sigma_0 = I``."""
    return _PAULI_WORDS[i, j].copy()


def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1.0
    return e


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def is_unitary(a, eps: float = DEFAULT_EPS) -> bool:
    a = as_matrix(a)
    return bool(np.linalg.norm(dagger(a) @ a - np.eye(a.shape[0])) <= eps)


def is_hermitian(a, eps: float = DEFAULT_EPS) -> bool:
    a = as_matrix(a)
    return bool(np.linalg.norm(a - dagger(a)) <= eps)


def is_projection(a, eps: float = DEFAULT_EPS) -> bool:
    a = as_matrix(a)
    return is_hermitian(a, eps) and bool(np.linalg.norm(a @ a - a) <= eps)


def exp_sigma(k: int, theta: float) -> np.ndarray:
    """``exp(i theta sigma_k (x) sigma_k)`` in closed form.

    Uses ``(sigma_k (x) sigma_k)^2 = I``, so the exponential is
    ``cos(theta) I + i sin(theta) sigma_k (x) sigma_k``.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    return np.cos(theta) * np.eye(4, dtype=complex) + 1j * np.sin(theta) * pauli_word(k, k)


def rng_stream(seed: int, name: str = "", index: int = 0) -> np.random.Generator:
    """Independent generator for the named stream ``(name, index)`` under ``seed``.

    The name is hashed with CRC32 so streams are stable across interpreter runs.
    """
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFF, zlib.crc32(name.encode()), int(index)])
    return np.random.default_rng(ss)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary of size ``dim``.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved into
    ``Q`` so the distribution is exactly Haar.  ``seed`` may be an int or a
    ``numpy.random.Generator``; an int makes the result deterministic.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = _as_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state_vector(dim: int, seed=None) -> np.ndarray:
    rng = _as_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density_matrix(dim: int, seed=None, rank: int | None = None) -> np.ndarray:
    """Random mixed state ``G G^* / Tr(G G^*)`` with ``G`` Ginibre of the given rank."""
    rng = _as_rng(seed)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def random_matrix(dim: int, seed=None) -> np.ndarray:
    rng = _as_rng(seed)
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def matrix_to_json(a) -> dict:
    """Encode as ``{"dim": n, "re": [[...]], "im": [[...]]}`` (row-major)."""
    a = as_matrix(a)
    return {"dim": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix record: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"matrix record entries do not match dim={dim}")
    return re + 1j * im


def matrices_from_json(obj) -> list[np.ndarray]:
    """Decode a single record, a list of records, or ``{"generators": [...]}``."""
    if isinstance(obj, dict) and "generators" in obj:
        obj = obj["generators"]
    if isinstance(obj, dict):
        return [matrix_from_json(obj)]
    return [matrix_from_json(o) for o in obj]


def stack_vectors(mats: Sequence[np.ndarray]) -> np.ndarray:
    return np.array([np.asarray(m, dtype=complex).ravel() for m in mats])
