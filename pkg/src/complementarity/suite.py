"""Bundled verification suite: one check per acceptance criterion."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import algebra as alg
from .bell import bell_algebra, bell_complementarity_defect, bell_expectation, bell_unitary
from .blocks import (
    PAULI_W,
    PAULI_W2_PLUS_BLOCKS,
    SWAP_U,
    adjoint_closure_check,
    conjugated_algebra,
    frame_defect,
    pauli_w2,
    split_blocks,
    usefulness_defect,
    weyl_block_unitary,
    fourier_matrix,
)
from .cartan import (
    N3_IMAGES,
    N3_MATRIX,
    N3_PARAMS,
    CartanParams,
    cartan_n,
    four_family_dim4,
    local_intersection_check,
    pauli_triplet,
    random_class_member,
    three_way,
)
from .entropy import Observable, basis_state, mu_slack, pure_state, sanchez_slack
from .fermion import V_CAR, car_partition_check, jordan_wigner, mode_algebra
from .linalg import (
    DEFAULT_EPS,
    SIGMA,
    dagger,
    haar_unitary,
    pauli_word,
    random_density_matrix,
    random_matrix,
    random_state_vector,
    rng_stream,
    tensor,
)
from .search import family_search
from .weyl import Basis, deviation_matrix, mub_prime, pauli_partition_dim4


@dataclass
class RunConfig:
    eps: float = DEFAULT_EPS
    seed: int = 0
    samples: int = 1000
    output: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.format not in ("json", "text"):
            raise ValueError("format must be 'json' or 'text'")


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: dict
    anchor: str
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        out = {"name": self.name, "verdict": "pass" if self.passed else "fail", "measured": self.measured, "anchor": self.anchor}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class SuiteReport:
    checks: list[CheckResult]
    seed: int
    eps: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "seed": self.seed,
            "eps": self.eps,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict(timing) for c in self.checks],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.anchor})" for c in self.checks]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _f(x: float) -> float:
    """Round measured defects so reports are reproducible byte for byte."""
    return float(f"{x:.6e}")


def check_mub(cfg: RunConfig) -> CheckResult:
    measured = {}
    ok = True
    for p in (2, 3, 5, 7):
        t0 = time.perf_counter()
        bases = mub_prime(p)
        dev = float(deviation_matrix(bases).max())
        dt = time.perf_counter() - t0
        bound = alg.max_maximal_abelian_family(p)
        good = len(bases) == p + 1 == bound and dev <= cfg.eps and dt < 1.0
        ok &= good
        measured[f"p={p}"] = {"count": len(bases), "bound": bound, "max_deviation": _f(dev), "under_1s": dt < 1.0}
    return CheckResult("mub_prime_dimensions", ok, measured, "p+1 unbiased bases from commuting Weyl classes in prime dimension")


def check_pauli_partition(cfg: RunConfig) -> CheckResult:
    bases = pauli_partition_dim4()
    devs = deviation_matrix(bases)
    pairs = [devs[i, j] for i, j in itertools.combinations(range(len(bases)), 2)]
    ok = len(bases) == 5 and len(pairs) == 10 and max(pairs) <= cfg.eps
    return CheckResult(
        "pauli_partition_dim4",
        ok,
        {"count": len(bases), "pairs": len(pairs), "max_deviation": _f(max(pairs))},
        "five commuting Pauli triples give five unbiased bases in dimension 4",
    )


def _equivalence_pairs(seed: int):
    """Yield ``(kind, a1, a2)`` homogeneous pairs, complementary and not."""
    a0 = alg.local_algebra(2, 2, "right")
    for t in range(50):
        rng = rng_stream(seed, "suite/equiv/factor", t)
        u = haar_unitary(4, rng)
        good = np.kron(haar_unitary(2, rng), haar_unitary(2, rng)) @ cartan_n(random_class_member(rng))
        bad = haar_unitary(4, rng)
        yield "factor/complementary", a0.conjugate(u), a0.conjugate(u @ good)
        yield "factor/non-complementary", a0.conjugate(u), a0.conjugate(u @ bad)
    for t in range(40):
        rng = rng_stream(seed, "suite/equiv/commutative", t)
        p = (2, 3, 5)[t % 3]
        bases = mub_prime(p)
        i, j = rng.choice(len(bases), 2, replace=False)
        u = haar_unitary(p, rng)
        d1 = alg.diagonal_algebra(u @ bases[i].vectors)
        yield "commutative/complementary", d1, alg.diagonal_algebra(u @ bases[j].vectors)
        yield "commutative/non-complementary", d1, alg.diagonal_algebra(u @ haar_unitary(p, rng))
    c = bell_algebra().algebra
    for t in range(20):
        rng = rng_stream(seed, "suite/equiv/mixed", t)
        m = bell_unitary(rng.uniform(0, 2 * np.pi, 4))
        yield "mixed/complementary", c, a0.conjugate(m)
        yield "mixed/non-complementary", c, a0.conjugate(haar_unitary(4, rng))
    a9 = alg.local_algebra(3, 3, "right")
    for t in range(10):
        rng = rng_stream(seed, "suite/equiv/weyl", t)
        u = haar_unitary(9, rng)
        w = weyl_block_unitary(3, np.diag(np.exp(1j * rng.uniform(0, 6.3, 3))) @ fourier_matrix(3)).w
        yield "factor9/complementary", a9.conjugate(u), a9.conjugate(u @ w)
        yield "factor9/non-complementary", a9.conjugate(u), a9.conjugate(u @ haar_unitary(9, rng))


def check_condition_equivalence(cfg: RunConfig) -> CheckResult:
    counts: dict[str, int] = {}
    disagreements = 0
    total = 0
    worst_true = 0.0
    best_false = np.inf
    for kind, a1, a2 in _equivalence_pairs(cfg.seed):
        if not (alg.is_homogeneous(a1) and alg.is_homogeneous(a2)):
            raise AssertionError("constructed pair is not homogeneous")
        rep = alg.complementarity_report(a1, a2, samples=4, seed=cfg.seed, eps=cfg.eps)
        total += 1
        counts[kind] = counts.get(kind, 0) + 1
        expected = kind.endswith("/complementary")
        conds = [rep.cond_i, rep.cond_ii, rep.cond_iii, rep.cond_iv]
        if not rep.agree or rep.cond_i is None or rep.complementary != expected:
            disagreements += 1
        if expected:
            worst_true = max(worst_true, max(c.defect for c in conds))
        else:
            best_false = min(best_false, min(c.defect for c in conds))
    ok = total >= 200 and disagreements == 0
    return CheckResult(
        "condition_equivalence",
        ok,
        {
            "pairs": total,
            "by_kind": counts,
            "disagreements": disagreements,
            "max_defect_complementary": _f(worst_true),
            "min_defect_non_complementary": _f(best_false),
        },
        "projection, orthogonality, trace and expectation conditions agree on homogeneous pairs",
    )


def check_useful_unitaries(cfg: RunConfig) -> CheckResult:
    d_w = usefulness_defect(split_blocks(PAULI_W, 2, 2))
    d_w2_plus = frame_defect(PAULI_W2_PLUS_BLOCKS)
    d_w2 = usefulness_defect(pauli_w2())
    d_u = usefulness_defect(split_blocks(SWAP_U, 2, 2))
    haar = [haar_unitary(4, rng_stream(cfg.seed, "suite/useful/haar", t)) for t in range(100)]
    haar_defects = [usefulness_defect(split_blocks(h, 2, 2)) for h in haar]
    tested = [PAULI_W, pauli_w2().w, SWAP_U] + haar
    for t in range(20):
        rng = rng_stream(cfg.seed, "suite/useful/local", t)
        tested.append(np.kron(haar_unitary(2, rng), haar_unitary(2, rng)) @ PAULI_W)
    closure = all(adjoint_closure_check(w, 2, 2, cfg.eps) for w in tested)
    ok = max(d_w, d_w2_plus, d_w2, d_u) <= cfg.eps and min(haar_defects) > 1e-3 and closure
    return CheckResult(
        "useful_unitaries",
        ok,
        {
            "pauli_w_defect": _f(d_w),
            "pauli_w2_plus_i_blocks_defect": _f(d_w2_plus),
            "pauli_w2_unitary_defect": _f(d_w2),
            "swap_u_defect": _f(d_u),
            "haar_min_defect": _f(min(haar_defects)),
            "adjoint_closure_all": closure,
            "adjoint_closure_tested": len(tested),
        },
        "block frame criterion for useful unitaries",
    )


def check_cartan(cfg: RunConfig) -> CheckResult:
    grid = np.arange(20) * np.pi / 20
    disagree = 0
    members = 0
    points = 0
    for p in itertools.product(grid, repeat=3):
        cls, coeff, use = three_way(p, cfg.eps)
        points += 1
        members += cls
        disagree += not (cls == coeff == use)
    for t in range(1000):
        rng = rng_stream(cfg.seed, "suite/cartan/random", t)
        p = random_class_member(rng) if t % 2 else CartanParams(*rng.uniform(0, 2 * np.pi, 3))
        cls, coeff, use = three_way(p, cfg.eps)
        points += 1
        members += cls
        disagree += not (cls == coeff == use)
    n3 = cartan_n(N3_PARAMS)
    n3_err = float(np.abs(n3 - N3_MATRIX).max())
    images_ok = True
    for k, (sign, i, j) in enumerate(N3_IMAGES, start=1):
        img = n3 @ tensor(SIGMA[0], SIGMA[k]) @ dagger(n3)
        images_ok &= float(np.abs(img - sign * pauli_word(i, j)).max()) <= cfg.eps
    labels = [x.label() for x in pauli_triplet(n3)]
    ok = disagree == 0 and n3_err <= cfg.eps and images_ok
    return CheckResult(
        "cartan_three_way",
        ok,
        {"points": points, "class_members": int(members), "disagreements": int(disagree), "n3_entry_error": _f(n3_err), "n3_images": labels, "n3_images_match": bool(images_ok)},
        "useful Cartan classes: two angles at pi/4 mod pi/2, |c_i|^2 = 1/4",
    )


def check_intersection_and_family(cfg: RunConfig) -> CheckResult:
    t0 = time.perf_counter()
    dims = []
    witnesses = True
    for t in range(100):
        rng = rng_stream(cfg.seed, "suite/intersection", t)
        res = local_intersection_check(haar_unitary(2, rng), haar_unitary(2, rng), random_class_member(rng))
        dims.append(res.intersection_dim)
        witnesses &= res.witness_in_algebra
    five = family_search(2, 5, "pauli-triplet", cfg.seed, budget=100_000)
    five_random = family_search(2, 5, "cartan-random", cfg.seed, budget=100_000, dressing="clifford")
    four = family_search(2, 4, "pauli-triplet", cfg.seed, budget=100_000)
    four_defects = four.family.pairwise_defects()[np.triu_indices(4, 1)] if four.success else np.array([np.inf])
    dt = time.perf_counter() - t0
    ok = (
        min(dims) >= 2 and witnesses and not five.success and not five_random.success
        and four.success and len(four_defects) == 6 and four_defects.max() <= cfg.eps and dt < 60
    )
    return CheckResult(
        "intersection_and_family_search",
        ok,
        {
            "min_intersection_dim": int(min(dims)),
            "witnesses_in_algebra": bool(witnesses),
            "k5_pauli_triplet": five.to_dict(),
            "k5_cartan_random": five_random.to_dict(),
            "k4": four.to_dict(),
            "k4_max_pairwise_defect": _f(float(four_defects.max())),
            "under_60s": dt < 60,
        },
        "useful two-qubit conjugates meet M2 (x) I; at most four complementary copies of M2",
    )


def _mub_pair(n: int) -> tuple[Observable, Observable, list[Observable]]:
    bases = pauli_partition_dim4() if n == 4 else mub_prime(n)
    obs = [Observable.from_basis(b) for b in bases]
    return obs[0], obs[1], obs


def check_uncertainty(cfg: RunConfig) -> CheckResult:
    count = max(cfg.samples, 1000)
    min_slack = np.inf
    attain = 0.0
    for n in (2, 3, 4, 5):
        a, b, _ = _mub_pair(n)
        for t in range(count):
            rng = rng_stream(cfg.seed, f"suite/mu/{n}", t)
            rho = pure_state(random_state_vector(n, rng)) if t % 2 == 0 else random_density_matrix(n, rng)
            min_slack = min(min_slack, mu_slack(a, b, rho))
        attain = max(attain, max(abs(mu_slack(a, b, proj)) for proj in a.projections))
    san_min = np.inf
    for n in (2, 3):
        _, _, obs = _mub_pair(n)
        for t in range(count):
            rng = rng_stream(cfg.seed, f"suite/sanchez/{n}", t)
            rho = pure_state(random_state_vector(n, rng)) if t % 2 == 0 else random_density_matrix(n, rng)
            san_min = min(san_min, sanchez_slack(obs, rho))
    _, _, obs2 = _mub_pair(2)
    v2 = sanchez_slack(obs2, basis_state(2, 0))
    expected = 2 * np.log(2) - 3 * np.log(1.5)
    ok = min_slack >= -1e-9 and attain <= 1e-9 and san_min >= -1e-9 and abs(v2 - expected) <= 1e-9
    return CheckResult(
        "uncertainty_bounds",
        ok,
        {
            "states_per_dim": count,
            "min_mu_slack": _f(min_slack),
            "basis_state_slack_abs": _f(attain),
            "min_sanchez_slack": _f(san_min),
            "sanchez_dim2_basis_state": _f(v2),
            "sanchez_dim2_expected": _f(expected),
        },
        "Maassen-Uffink and Sanchez entropic bounds",
    )


A1_FORM = lambda a, b, c, d: np.array([[a, 0, b, 0], [0, a, 0, b], [c, 0, d, 0], [0, c, 0, d]], dtype=complex)  # noqa: E731
A2_FORM = lambda a, b, c, d: np.array([[a, b, 0, 0], [c, d, 0, 0], [0, 0, a, -b], [0, 0, -c, d]], dtype=complex)  # noqa: E731


def _form_algebra(form) -> alg.OperatorAlgebra:
    return alg.algebra_from_span([form(*row) for row in np.eye(4)], alg.FACTOR)


def check_car(cfg: RunConfig) -> CheckResult:
    s2 = jordan_wigner(2)
    a1_expected = tensor([[0, 1], [0, 0]], np.eye(2))
    a2_expected = tensor(np.diag([1, -1]), [[0, 1], [0, 0]])
    op_err = max(float(np.abs(s2.ops[0] - a1_expected).max()), float(np.abs(s2.ops[1] - a2_expected).max()))
    alg1, alg2 = mode_algebra(s2, [1]), mode_algebra(s2, [2])
    form1, form2 = _form_algebra(A1_FORM), _form_algebra(A2_FORM)
    forms_ok = all(
        alg.intersection_dim(x, y) == 4 == x.dim == y.dim for x, y in ((alg1, form1), (alg2, form2))
    )
    v_maps = alg.intersection_dim(alg1.conjugate(V_CAR), alg2) == 4
    defects = {}
    for n in (2, 3, 4):
        sys = jordan_wigner(n)
        modes = list(range(1, n + 1))
        for r in range(1, n // 2 + 1):
            for j1 in itertools.combinations(modes, r):
                if r == n - r and 1 not in j1:
                    continue
                j2 = [m for m in modes if m not in j1]
                defects[f"n={n}:{','.join(map(str, j1))}|{','.join(map(str, j2))}"] = car_partition_check(sys, j1, j2)
    v_defect = usefulness_defect(split_blocks(V_CAR, 2, 2))
    ok = op_err <= cfg.eps and forms_ok and v_maps and max(defects.values()) <= cfg.eps and v_defect <= cfg.eps
    return CheckResult(
        "car_complementarity",
        ok,
        {
            "operator_entry_error": _f(op_err),
            "matrix_forms_match": bool(forms_ok),
            "v_maps_a1_onto_a2": bool(v_maps),
            "partition_defects": {k: _f(v) for k, v in defects.items()},
            "v_block_defect": _f(v_defect),
        },
        "disjoint fermionic mode sets generate complementary algebras",
    )


def check_bell(cfg: RunConfig) -> CheckResult:
    exact = True
    for k in (1, 2, 3):
        for x in (tensor(SIGMA[0], SIGMA[k]), tensor(SIGMA[k], SIGMA[0])):
            exact &= bool(np.all(bell_expectation(x) == 0))
    exact &= bool(np.all(bell_expectation(np.eye(4)) == np.eye(4)))
    worst = 0.0
    for t in range(100):
        rng = rng_stream(cfg.seed, "suite/bell", t)
        worst = max(worst, bell_complementarity_defect(bell_unitary(rng.uniform(0, 2 * np.pi, 4))).max)
    ok = exact and worst <= cfg.eps
    return CheckResult(
        "bell_algebra",
        ok,
        {"local_expectation_exact": exact, "max_defect_100_unitaries": _f(worst)},
        "Bell-diagonal algebra is complementary to conjugated local factors",
    )


def check_spanning(cfg: RunConfig) -> CheckResult:
    fam = four_family_dim4()
    algebras = fam.triplet_algebras + [fam.complement]
    pair_defect = max(alg.quasi_orthogonality_defect(a, b) for a, b in itertools.combinations(algebras, 2))
    span = alg.span_rank(algebras)
    err = 0.0
    for t in range(100):
        x = random_matrix(4, rng_stream(cfg.seed, "suite/spanning", t))
        comps = alg.spanning_decomposition(algebras, x)
        err = max(err, float(np.abs(alg.reconstruct(comps, x) - x).max()))
    ok = err <= 1e-9 and span == 16 and pair_defect <= cfg.eps
    return CheckResult(
        "spanning_decomposition",
        ok,
        {"span_dimension": span, "max_pairwise_defect": _f(pair_defect), "max_reconstruction_error": _f(err)},
        "reconstruction from pairwise complementary spanning algebras",
    )


CHECKS: list[Callable[[RunConfig], CheckResult]] = [
    check_mub,
    check_pauli_partition,
    check_condition_equivalence,
    check_useful_unitaries,
    check_cartan,
    check_intersection_and_family,
    check_uncertainty,
    check_car,
    check_bell,
    check_spanning,
]


def run_check(fn: Callable[[RunConfig], CheckResult], cfg: RunConfig) -> CheckResult:
    t0 = time.perf_counter()
    res = fn(cfg)
    res.seconds = time.perf_counter() - t0
    return res


def run_suite(cfg: RunConfig | None = None) -> SuiteReport:
    """Run every check; failures become report entries, never exceptions."""
    cfg = cfg or RunConfig()
    results = []
    for fn in CHECKS:
        try:
            results.append(run_check(fn, cfg))
        except Exception as exc:  # noqa: BLE001
            results.append(CheckResult(fn.__name__.removeprefix("check_"), False, {"error": repr(exc)}, ""))
    return SuiteReport(results, cfg.seed, cfg.eps)
