"""Search for families of pairwise complementary conjugates of ``C I (x) M_n``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import FACTOR, OperatorAlgebra, algebra_from_span, quasi_orthogonality_defect
from .blocks import conjugated_algebra, relative_defect, weyl_block_unitary, fourier_matrix
from .cartan import FOUR_TRIPLETS, cartan_n, random_class_member, CartanParams
from .linalg import DEFAULT_EPS, SIGMA, dagger, haar_unitary, pauli_word, rng_stream

STRATEGIES = ("pauli-triplet", "cartan-random", "weyl-block")

Word = tuple[int, int]
Triplet = tuple[Word, Word, Word]


def _mul_index(a: int, b: int) -> int:
    if a == 0:
        return b
    if b == 0:
        return a
    return 0 if a == b else 6 - a - b


def words_anticommute(u: Word, v: Word) -> bool:
    clashes = sum(1 for a, b in zip(u, v) if a and b and a != b)
    return clashes % 2 == 1


def word_product(u: Word, v: Word) -> Word:
    return (_mul_index(u[0], v[0]), _mul_index(u[1], v[1]))


def enumerate_triplets() -> list[Triplet]:
    """All triples of pairwise anticommuting two-qubit Pauli words closed under products.

    Each spans, together with ``I``, a copy of ``M_2``.  The four-member
    family from the two-qubit decomposition is listed first, the rest follow
    in lexicographic order.
    """
    words = [(i, j) for i in range(4) for j in range(4) if (i, j) != (0, 0)]
    found = set()
    for u, v in itertools.combinations(words, 2):
        if words_anticommute(u, v):
            found.add(frozenset((u, v, word_product(u, v))))
    preferred = [tuple(t) for t in FOUR_TRIPLETS]
    pref_sets = {frozenset(t) for t in preferred}
    rest = sorted(tuple(sorted(t)) for t in found if t not in pref_sets)
    return preferred + rest


def triplet_unitary(trip: Sequence[Word]) -> np.ndarray:
    """Unitary ``W`` with ``W (I (x) s1) W^* = P1``, ``W (I (x) s2) W^* = P2`` for the first two words.

    The third image is ``-i P1 P2``, which is the third word up to sign.
    """
    p1, p2 = pauli_word(*trip[0]), pauli_word(*trip[1])
    p3 = -1j * p1 @ p2
    tset = set(trip)
    comm = [
        (i, j) for i in range(4) for j in range(4)
        if (i, j) != (0, 0) and (i, j) not in tset
        and not any(words_anticommute((i, j), t) for t in trip)
    ]
    q1, q2 = pauli_word(*comm[0]), pauli_word(*comm[1])
    q3 = -1j * q1 @ q2
    _, vecs = np.linalg.eigh(p3 + 2 * q3)
    v = vecs[:, -1]
    v = v * (abs(v[np.argmax(np.abs(v))]) / v[np.argmax(np.abs(v))])
    return np.column_stack([v, p1 @ v, q1 @ v, q1 @ p1 @ v])


@dataclass
class Family:
    """Pairwise complementary algebras ``members[j] (C I (x) M_n) members[j]^*``."""

    n: int
    members: list[np.ndarray] = field(repr=False)
    algebras: list[OperatorAlgebra] = field(repr=False)
    labels: list[str]

    def pairwise_defects(self) -> np.ndarray:
        k = len(self.algebras)
        out = np.zeros((k, k))
        for i in range(k):
            for j in range(i + 1, k):
                out[i, j] = out[j, i] = quasi_orthogonality_defect(self.algebras[i], self.algebras[j])
        return out

    def max_defect(self) -> float:
        return float(self.pairwise_defects().max()) if len(self.algebras) > 1 else 0.0


@dataclass
class SearchResult:
    success: bool
    strategy: str
    n: int
    k: int
    trials: int
    exhausted: bool
    family: Family | None

    def to_dict(self) -> dict:
        fam = self.family
        return {
            "success": self.success,
            "strategy": self.strategy,
            "n": self.n,
            "k": self.k,
            "trials": self.trials,
            "search_space_exhausted": self.exhausted,
            "best_size": 0 if fam is None else len(fam.algebras),
            "labels": [] if fam is None else fam.labels,
            "max_pairwise_defect": None if fam is None else fam.max_defect(),
        }


def _triplet_family(trips: Sequence[Triplet]) -> Family:
    members, algs, labels = [], [], []
    for t in trips:
        w = triplet_unitary(t)
        members.append(w)
        algs.append(algebra_from_span([pauli_word(*x) for x in t], FACTOR, verify=False, conjugator=w, inner_dim=2))
        labels.append(" ".join(f"s{i}s{j}" for i, j in t))
    return Family(2, members, algs, labels)


def _search_pauli_triplet(k: int, budget: int) -> SearchResult:
    cands = enumerate_triplets()
    sets = [frozenset(t) for t in cands]
    best: list[int] = []
    nodes = 0
    out_of_budget = False

    def dfs(start: int, chosen: list[int], used: frozenset) -> list[int] | None:
        nonlocal nodes, best, out_of_budget
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) == k:
            return list(chosen)
        for idx in range(start, len(cands)):
            if nodes >= budget:
                out_of_budget = True
                return None
            nodes += 1
            if used & sets[idx]:
                continue
            got = dfs(idx + 1, chosen + [idx], used | sets[idx])
            if got is not None:
                return got
        return None

    hit = dfs(0, [], frozenset())
    chosen = hit if hit is not None else best
    fam = _triplet_family([cands[i] for i in chosen]) if chosen else None
    return SearchResult(hit is not None, "pauli-triplet", 2, k, nodes, hit is None and not out_of_budget, fam)


def clifford_group_1q() -> list[np.ndarray]:
    """The 24 single-qubit Clifford unitaries modulo global phase."""
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    s = np.diag([1, 1j])

    def canon(u):
        i = np.argmax(np.abs(u.ravel()) > 1e-9)
        return u * (abs(u.ravel()[i]) / u.ravel()[i])

    def key(u):
        # integer grid avoids -0.0 and 0.0 hashing differently
        return np.rint(np.concatenate([u.real, u.imag]) * 1e6).astype(np.int64).tobytes()

    group = [np.eye(2, dtype=complex)]
    keys = {key(group[0])}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for gen in (h, s):
                u = canon(gen @ g)
                if key(u) not in keys:
                    keys.add(key(u))
                    group.append(u)
                    nxt.append(u)
        frontier = nxt
    return group


def _greedy(
    k: int,
    n: int,
    budget: int,
    sample,
    strategy: str,
    eps: float,
    patience: int,
) -> SearchResult:
    eye = np.eye(n * n, dtype=complex)
    best: list[np.ndarray] = [eye]
    members = [eye]
    stale = 0
    trials = 0
    while trials < budget and len(members) < k:
        trials += 1
        w = sample(trials)
        if all(relative_defect(w, m, n, n) <= eps for m in members):
            members.append(w)
            stale = 0
            if len(members) > len(best):
                best = list(members)
        else:
            stale += 1
            if stale >= patience:
                members, stale = [eye], 0
    chosen = members if len(members) >= k else best
    algs = [conjugated_algebra(w, n, n) for w in chosen]
    fam = Family(n, list(chosen), algs, [f"W{j}" for j in range(len(chosen))])
    return SearchResult(len(chosen) >= k, strategy, n, k, trials, False, fam)


def family_search(
    n: int,
    k: int,
    strategy: str = "pauli-triplet",
    seed: int = 0,
    budget: int = 10_000,
    *,
    dressing: str = "haar",
    eps: float = DEFAULT_EPS,
    patience: int = 500,
) -> SearchResult:
    """Look for ``k`` pairwise complementary conjugates of ``C I (x) M_n`` in ``M_n (x) M_n``.

    Strategies:

    * ``pauli-triplet`` (``n = 2``): depth-first search over the subalgebras
      spanned by anticommuting Pauli triplets.  Exhaustive, so failure within
      budget is a proof that no such Pauli family exists.
    * ``cartan-random`` (``n = 2``): greedy extension from ``W_0 = I`` with
      candidates ``(L1 (x) L2) N`` for ``N`` in the useful classes.
      ``dressing="haar"`` draws ``L1, L2`` Haar-randomly (beyond two members
      this only succeeds on a null set); ``"clifford"`` draws them from the
      single-qubit Clifford group and the free angle from multiples of pi/4.
    * ``weyl-block`` (any ``n``): greedy extension with Weyl block unitaries
      whose coefficient matrix is a phased, permuted Fourier matrix.

    Failure is reported in the result, never raised.
    """
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if strategy == "pauli-triplet":
        if n != 2:
            raise ValueError("pauli-triplet search is defined for n = 2 only")
        return _search_pauli_triplet(k, budget)
    if strategy == "cartan-random":
        if n != 2:
            raise ValueError("cartan-random search is defined for n = 2 only")
        cliff = clifford_group_1q()

        def sample(t):
            rng = rng_stream(seed, "family/cartan-random", t)
            if dressing == "clifford":
                i = rng.integers(3)
                angles = [np.pi / 4 + rng.integers(4) * np.pi / 2 for _ in range(3)]
                angles[i] = rng.integers(8) * np.pi / 4
                p = CartanParams(*angles)
                l1, l2 = cliff[rng.integers(24)], cliff[rng.integers(24)]
            else:
                p = random_class_member(rng)
                l1, l2 = haar_unitary(2, rng), haar_unitary(2, rng)
            return np.kron(l1, l2) @ cartan_n(p)

        return _greedy(k, n, budget, sample, strategy, eps, patience)

    f = fourier_matrix(n)

    def sample(t):
        rng = rng_stream(seed, "family/weyl-block", t)
        roots = np.exp(2j * np.pi * np.arange(n) / n)
        d1 = np.diag(roots[rng.integers(n, size=n)])
        d2 = np.diag(roots[rng.integers(n, size=n)])
        c = d1 @ f[rng.permutation(n)][:, rng.permutation(n)] @ d2
        return weyl_block_unitary(n, c).w

    return _greedy(k, n, budget, sample, strategy, eps, patience)
