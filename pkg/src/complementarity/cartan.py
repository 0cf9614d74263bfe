"""Two-qubit nonlocal part ``N(alpha, beta, gamma)`` and the useful classes N1, N2, N3."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import intersection_dim, local_algebra
from .blocks import conjugated_algebra, split_blocks, usefulness_defect
from .linalg import DEFAULT_EPS, SIGMA, as_matrix, dagger, exp_sigma, pauli_word, tensor

# distance (radians) below which an angle counts as pi/4 mod pi/2
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class CartanParams:
    alpha: float
    beta: float
    gamma: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class CartanCoeffs:
    c0: complex
    c1: complex
    c2: complex
    c3: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2, self.c3])


def _params(p) -> CartanParams:
    return p if isinstance(p, CartanParams) else CartanParams(*map(float, p))


def cartan_n(p) -> np.ndarray:
    """``exp(i a s1s1) exp(i b s2s2) exp(i g s3s3)``."""
    p = _params(p)
    return exp_sigma(1, p.alpha) @ exp_sigma(2, p.beta) @ exp_sigma(3, p.gamma)


def cartan_coeffs(p) -> CartanCoeffs:
    """Coefficients of ``N = sum_i c_i sigma_i (x) sigma_i``."""
    p = _params(p)
    ca, cb, cg = np.cos(p.as_tuple())
    sa, sb, sg = np.sin(p.as_tuple())
    return CartanCoeffs(
        ca * cb * cg + 1j * sa * sb * sg,
        ca * sb * sg + 1j * sa * cb * cg,
        sa * cb * sg + 1j * ca * sb * cg,
        sa * sb * cg + 1j * ca * cb * sg,
    )


def n_from_coeffs(c: CartanCoeffs) -> np.ndarray:
    return sum(ci * pauli_word(i, i) for i, ci in enumerate(c.as_array()))


def is_quarter_odd(theta: float, tol: float = ANGLE_TOL) -> bool:
    """True when ``theta = pi/4 + k pi/2`` for an integer ``k``, within ``tol``."""
    r = (theta - np.pi / 4) % (np.pi / 2)
    return bool(min(r, np.pi / 2 - r) < tol)


def classes(p, tol: float = ANGLE_TOL) -> list[str]:
    """All of ``N1, N2, N3`` that ``p`` belongs to (several when all three angles qualify)."""
    flags = [is_quarter_odd(t, tol) for t in _params(p).as_tuple()]
    return [f"N{i + 1}" for i in range(3) if all(flags[j] for j in range(3) if j != i)]


def classify(p, tol: float = ANGLE_TOL) -> str:
    """``"N1"``, ``"N2"``, ``"N3"`` or ``"none"``; the lowest index wins on overlap."""
    found = classes(p, tol)
    return found[0] if found else "none"


def coefficient_defect(p) -> float:
    """``max_i | |c_i|^2 - 1/4 |``."""
    return float(np.abs(np.abs(cartan_coeffs(p).as_array()) ** 2 - 0.25).max())


def cartan_defect(p) -> float:
    return usefulness_defect(split_blocks(cartan_n(p), 2, 2))


@dataclass
class PauliImage:
    """Image ``w (I (x) sigma_k) w^*`` in Pauli coordinates ``coords[i, j]``.

    ``word`` is ``(sign, i, j)`` when the image is a single signed Pauli word.
    """

    coords: np.ndarray
    word: tuple[int, int, int] | None

    def label(self) -> str:
        if self.word is None:
            return "general"
        s, i, j = self.word
        return f"{'-' if s < 0 else '+'}s{i}s{j}"


def pauli_coordinates(x) -> np.ndarray:
    """Coefficients ``c_ij`` with ``x = sum c_ij sigma_i (x) sigma_j``."""
    x = as_matrix(x)
    return np.array([[np.trace(pauli_word(i, j) @ x) / 4 for j in range(4)] for i in range(4)])


def pauli_triplet(w, tol: float = 1e-9) -> list[PauliImage]:
    w = as_matrix(w)
    out = []
    for k in (1, 2, 3):
        c = pauli_coordinates(w @ tensor(SIGMA[0], SIGMA[k]) @ dagger(w))
        big = np.argwhere(np.abs(c) > tol)
        word = None
        if len(big) == 1:
            i, j = big[0]
            v = c[i, j]
            if abs(v.imag) < tol and abs(abs(v.real) - 1) < tol:
                word = (int(np.sign(v.real)), int(i), int(j))
        out.append(PauliImage(c, word))
    return out


def local_image_sign(p, eps: float = 1e-9) -> tuple[bool, int]:
    """For ``p`` in class ``N_i``, check ``N (I (x) s_i) N^* = +/- s_i (x) I``.

    Returns ``(holds, sign)``.
    """
    cls = classify(p)
    if cls == "none":
        raise ValueError("parameters are not in any useful class")
    i = int(cls[1])
    n = cartan_n(p)
    img = n @ tensor(SIGMA[0], SIGMA[i]) @ dagger(n)
    target = tensor(SIGMA[i], SIGMA[0])
    sign = 1 if np.real(np.trace(img @ target)) >= 0 else -1
    return bool(np.linalg.norm(img - sign * target) <= eps), sign


@dataclass
class IntersectionCheck:
    intersection_dim: int
    witness_in_algebra: bool
    witness_sign: int


def local_intersection_check(l1, l2, p) -> IntersectionCheck:
    """Intersection of ``(L1 (x) L2) N (C I (x) M_2) N^* (L1 (x) L2)^*`` with ``M_2 (x) C I``.

    Also confirms the witness ``+/- L1 s_i L1^* (x) I`` lies in the first algebra.
    """
    cls = classify(p)
    if cls == "none":
        raise ValueError("parameters are not in any useful class")
    i = int(cls[1])
    l1, l2 = as_matrix(l1), as_matrix(l2)
    w = tensor(l1, l2) @ cartan_n(p)
    a1 = conjugated_algebra(w, 2, 2)
    dim = intersection_dim(a1, local_algebra(2, 2, "left"))
    _, sign = local_image_sign(p)
    witness = sign * tensor(l1 @ SIGMA[i] @ dagger(l1), SIGMA[0])
    return IntersectionCheck(dim, a1.contains(witness), sign)


def random_class_member(rng: np.random.Generator, cls: str | None = None) -> CartanParams:
    """Random point of ``N1``/``N2``/``N3``: free angle uniform, the other two ``pi/4 + k pi/2``."""
    i = rng.integers(3) if cls is None else int(cls[1]) - 1
    angles = [np.pi / 4 + rng.integers(4) * np.pi / 2 for _ in range(3)]
    angles[i] = rng.uniform(0, 2 * np.pi)
    return CartanParams(*angles)


# Worked example: alpha = beta = pi/4, gamma = 0
N3_PARAMS = CartanParams(np.pi / 4, np.pi / 4, 0.0)
N3_MATRIX = np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex)
N3_IMAGES = (
    (1, 2, 3),  # N3 (I s1) N3^* = + s2 s3
    (-1, 1, 3),  # N3 (I s2) N3^* = - s1 s3
    (1, 3, 0),  # N3 (I s3) N3^* = + s3 I
)


# Four triplets spanning pairwise complementary copies of M_2 in M_2 (x) M_2
FOUR_TRIPLETS = (
    ((0, 1), (1, 3), (1, 2)),
    ((3, 1), (1, 1), (2, 0)),
    ((1, 0), (2, 2), (3, 2)),
    ((0, 2), (2, 3), (2, 1)),
)
COMMUTATIVE_COMPLEMENT = ((0, 3), (3, 0), (3, 3))


@dataclass
class FourFamily:
    triplet_algebras: list
    complement: object
    members: list[np.ndarray]


def four_family_dim4() -> FourFamily:
    """The four triplet factors, their conjugating unitaries, and the commutative complement."""
    from .algebra import COMMUTATIVE, FACTOR, algebra_from_span
    from .search import triplet_unitary

    algs, members = [], []
    for trip in FOUR_TRIPLETS:
        w = triplet_unitary(trip)
        members.append(w)
        algs.append(algebra_from_span([pauli_word(*t) for t in trip], FACTOR, conjugator=w, inner_dim=2))
    comp = algebra_from_span([pauli_word(*t) for t in COMMUTATIVE_COMPLEMENT], COMMUTATIVE)
    return FourFamily(algs, comp, members)


def n1_span_invariance(alpha: float, k1: int, k2: int) -> tuple[object, object]:
    """Conjugated algebras for ``(alpha, pi/4 + k1 pi/2, pi/4 + k2 pi/2)`` and for ``k1 = k2 = 0``."""
    p = CartanParams(alpha, np.pi / 4 + k1 * np.pi / 2, np.pi / 4 + k2 * np.pi / 2)
    p0 = CartanParams(alpha, np.pi / 4, np.pi / 4)
    return conjugated_algebra(cartan_n(p), 2, 2), conjugated_algebra(cartan_n(p0), 2, 2)


def three_way(p, eps: float = DEFAULT_EPS) -> tuple[bool, bool, bool]:
    """(class membership, all ``|c_i|^2 = 1/4``, usefulness) for ``p``."""
    return classify(p) != "none", coefficient_defect(p) <= eps, cartan_defect(p) <= eps
