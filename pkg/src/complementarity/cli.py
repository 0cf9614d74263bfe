"""Command line entry point: ``complementarity <subcommand> [flags]``.

Exit status is 0 when the computed verdict holds, 1 when it does not, and 2
for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import algebra as alg
from .bell import bell_complementarity_defect, bell_unitary
from .blocks import adjoint_closure_check, split_blocks, usefulness_defect
from .cartan import (
    CartanParams,
    cartan_coeffs,
    cartan_defect,
    cartan_n,
    classes,
    classify,
    coefficient_defect,
    local_image_sign,
    pauli_triplet,
    random_class_member,
    three_way,
)
from .entropy import BITS_PER_NAT, Observable, mu_constant, mu_slack, pure_state
from .fermion import MAX_MODES, car_partition_check, jordan_wigner, parse_partition
from .linalg import (
    DEFAULT_EPS,
    haar_unitary,
    matrices_from_json,
    matrix_to_json,
    random_density_matrix,
    random_state_vector,
    rng_stream,
)
from .search import STRATEGIES, family_search
from .suite import RunConfig, run_suite
from .weyl import Basis, deviation_matrix, is_prime, mub_prime, pauli_partition_dim4

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload, args, text: str | None = None) -> None:
    out = text if text is not None else json.dumps(payload, indent=2, sort_keys=True, default=_jsonable)
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _load_matrices(path: str) -> list[np.ndarray]:
    try:
        data = json.loads(Path(path).read_text())
        return matrices_from_json(data)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot read matrices from {path}: {exc}") from exc


def _infer_algebra(gens: list[np.ndarray]) -> alg.OperatorAlgebra:
    """Close the generators, tagging the result with the narrowest structure that fits."""
    for tag in (alg.COMMUTATIVE, alg.FACTOR):
        try:
            return alg.algebra_close(gens, tag)
        except ValueError:
            pass
    return alg.algebra_close(gens, alg.GENERAL)


def _basis_json(b: Basis) -> dict:
    return matrix_to_json(b.vectors)


def cmd_mub(args) -> int:
    if args.dim4_pauli:
        bases, label = pauli_partition_dim4(), "pauli-partition-dim4"
    else:
        if args.dim is None:
            raise UsageError("mub needs --dim p or --dim4-pauli")
        if not is_prime(args.dim):
            hint = " (use `mub --dim4-pauli` for dimension 4)" if args.dim == 4 else ""
            raise UsageError(f"{args.dim} is not prime; the Weyl construction needs a prime dimension{hint}")
        bases, label = mub_prime(args.dim), "weyl"
    dev = deviation_matrix(bases)
    worst = float(dev.max())
    _emit(
        {
            "construction": label,
            "dim": bases[0].n,
            "count": len(bases),
            "bound": alg.max_maximal_abelian_family(bases[0].n),
            "max_deviation": worst,
            "deviation_matrix": dev,
            "bases": [_basis_json(b) for b in bases],
            "verdict": "pass" if worst <= args.eps else "fail",
        },
        args,
    )
    return EXIT_PASS if worst <= args.eps else EXIT_FAIL


def cmd_check(args) -> int:
    a1 = _infer_algebra(_load_matrices(args.alg1))
    a2 = _infer_algebra(_load_matrices(args.alg2))
    if a1.ambient_dim != a2.ambient_dim:
        raise UsageError("the two algebras live in different dimensions")
    rep = alg.complementarity_report(a1, a2, samples=max(args.samples, 1), seed=args.seed, eps=args.eps)
    out = rep.to_dict()
    out.update({"dim1": a1.dim, "dim2": a2.dim, "structure1": a1.structure, "structure2": a2.structure})
    _emit(out, args)
    return EXIT_PASS if rep.complementary and rep.agree else EXIT_FAIL


def cmd_useful(args) -> int:
    mats = _load_matrices(args.unitary)
    if len(mats) != 1:
        raise UsageError("expected exactly one matrix")
    try:
        bu = split_blocks(mats[0], args.n, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = usefulness_defect(bu)
    ok = d <= args.eps
    _emit(
        {
            "n": args.n,
            "m": args.m,
            "defect": d,
            "useful": ok,
            "adjoint_useful": adjoint_closure_check(bu.w, args.n, args.m, args.eps) == ok,
            "verdict": "pass" if ok else "fail",
        },
        args,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_family(args) -> int:
    n = math.isqrt(args.dim)
    if n * n != args.dim or n < 2:
        raise UsageError("--dim is the ambient dimension and must be a square n*n with n >= 2")
    try:
        res = family_search(n, args.count, args.strategy, args.seed, args.budget, dressing=args.dressing, eps=args.eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = res.to_dict()
    if res.success:
        out["members"] = [matrix_to_json(w) for w in res.family.members]
    _emit(out, args)
    return EXIT_PASS if res.success else EXIT_FAIL


def cmd_cartan(args) -> int:
    p = CartanParams(args.alpha, args.beta, args.gamma)
    c = cartan_coeffs(p).as_array()
    d = cartan_defect(p)
    cls = classify(p)
    out = {
        "params": [p.alpha, p.beta, p.gamma],
        "coefficients": [{"re": float(x.real), "im": float(x.imag)} for x in c],
        "coefficient_moduli_sq": [float(abs(x) ** 2) for x in c],
        "coefficient_defect": coefficient_defect(p),
        "class": cls,
        "all_classes": classes(p),
        "defect": d,
        "useful": d <= args.eps,
    }
    if cls != "none":
        out["triplet"] = [img.label() for img in pauli_triplet(cartan_n(p))]
        out["local_image_sign"] = local_image_sign(p)[1]
    _emit(out, args)
    return EXIT_PASS if d <= args.eps else EXIT_FAIL


def cmd_cartan_scan(args) -> int:
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    step = np.pi / args.grid
    points = [CartanParams(*(np.array(ijk) * step)) for ijk in np.ndindex(args.grid, args.grid, args.grid)]
    for t in range(args.samples):
        rng = rng_stream(args.seed, "cartan-scan", t)
        points.append(random_class_member(rng) if t % 2 else CartanParams(*rng.uniform(0, 2 * np.pi, 3)))
    members = disagreements = 0
    examples = []
    for p in points:
        trio = three_way(p, args.eps)
        members += trio[0]
        if len(set(trio)) > 1:
            disagreements += 1
            if len(examples) < 10:
                examples.append({"params": list(p.as_tuple()), "class_coeff_useful": list(trio)})
    _emit(
        {
            "grid": args.grid,
            "random_points": args.samples,
            "points": len(points),
            "class_members": members,
            "disagreements": disagreements,
            "disagreement_examples": examples,
            "verdict": "pass" if disagreements == 0 else "fail",
        },
        args,
    )
    return EXIT_PASS if disagreements == 0 else EXIT_FAIL


def _uncertainty_pair(n: int, kind: str, seed: int) -> tuple[Observable, Observable]:
    if kind == "mub":
        if n == 4:
            bases = pauli_partition_dim4()
        elif is_prime(n):
            bases = mub_prime(n)
        else:
            raise UsageError(f"no MUB construction for dimension {n}; use a prime or 4")
        return Observable.from_basis(bases[0]), Observable.from_basis(bases[1])
    rng = rng_stream(seed, "uncertainty/pair")
    return Observable.from_basis(haar_unitary(n, rng)), Observable.from_basis(haar_unitary(n, rng))


def cmd_uncertainty(args) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    a, b = _uncertainty_pair(args.dim, args.pair, args.seed)
    slacks = []
    for t in range(args.samples):
        rng = rng_stream(args.seed, "uncertainty", t)
        rho = pure_state(random_state_vector(args.dim, rng)) if t % 2 == 0 else random_density_matrix(args.dim, rng)
        slacks.append(mu_slack(a, b, rho))
    slacks = np.array(slacks)
    counts, edges = np.histogram(slacks, bins=10)
    witnesses = [{"state": f"eigenvector {i} of A", "slack": mu_slack(a, b, p)} for i, p in enumerate(a.projections)]
    ok = bool(slacks.min() >= -args.eps)
    _emit(
        {
            "dim": args.dim,
            "pair": args.pair,
            "samples": args.samples,
            "c": mu_constant(a, b),
            "min_slack": float(slacks.min()),
            "min_slack_bits": float(slacks.min() * BITS_PER_NAT),
            "histogram": {"counts": counts, "edges": edges},
            "attainment_witnesses": witnesses,
            "verdict": "pass" if ok else "fail",
        },
        args,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_car(args) -> int:
    if not 1 <= args.modes <= MAX_MODES:
        raise UsageError(f"--modes must be in 1..{MAX_MODES}")
    try:
        parts = parse_partition(args.partition)
    except ValueError as exc:
        raise UsageError(f"cannot parse partition {args.partition!r}") from exc
    if len(parts) != 2:
        raise UsageError("partition must have exactly two parts, e.g. '1;2,3'")
    sys_ = jordan_wigner(args.modes)
    try:
        d = car_partition_check(sys_, parts[0], parts[1])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = d <= args.eps
    _emit(
        {
            "modes": args.modes,
            "partition": parts,
            "car_defect": sys_.car_defect(),
            "defect": d,
            "verdict": "pass" if ok else "fail",
        },
        args,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_bell(args) -> int:
    try:
        phases = [float(x) for x in args.phases.split(",")]
        m = bell_unitary(phases)
        d = bell_complementarity_defect(m)
    except ValueError as exc:
        raise UsageError(f"bad --phases: {exc}") from exc
    ok = d.max <= args.eps
    _emit(
        {
            "phases": phases,
            "vs_bell": d.vs_bell,
            "vs_bell_left": d.vs_bell_left,
            "bell_vs_right": d.bell_vs_right,
            "bell_vs_left": d.bell_vs_left,
            "max_defect": d.max,
            "verdict": "pass" if ok else "fail",
        },
        args,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    cfg = RunConfig(eps=args.eps, seed=args.seed, samples=args.samples, output=args.out, format="json" if args.json else "text")
    rep = run_suite(cfg)
    _emit(None, args, rep.to_json() if args.json else rep.to_text())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _common(p: argparse.ArgumentParser, samples: int = 1000) -> None:
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="tolerance for pass/fail verdicts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--json", action="store_true", help="JSON output (the default for all but `suite`)")
    p.add_argument("--out", help="write the report to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complementarity", description="Construct and verify complementary subalgebras.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("mub", help="mutually unbiased bases from Weyl operators")
    p.add_argument("--dim", type=int)
    p.add_argument("--dim4-pauli", action="store_true", help="use the five commuting Pauli triples in dimension 4")
    _common(p)
    p.set_defaults(func=cmd_mub)

    p = sub.add_parser("check", help="complementarity report for two generated algebras")
    p.add_argument("--alg1", required=True)
    p.add_argument("--alg2", required=True)
    _common(p, samples=4)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("useful", help="usefulness defect of a block unitary")
    p.add_argument("--unitary", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_useful)

    p = sub.add_parser("family", help="search for pairwise complementary conjugates")
    p.add_argument("--dim", type=int, required=True, help="ambient dimension n*n")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="pauli-triplet")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--dressing", choices=("haar", "clifford"), default="haar")
    _common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("cartan", help="analyse N(alpha, beta, gamma)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_cartan)

    p = sub.add_parser("cartan-scan", help="three-way agreement over a grid and random points")
    p.add_argument("--grid", type=int, default=20)
    _common(p)
    p.set_defaults(func=cmd_cartan_scan)

    p = sub.add_parser("uncertainty", help="Maassen-Uffink slack statistics")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--pair", choices=("mub", "random"), default="mub")
    _common(p)
    p.set_defaults(func=cmd_uncertainty)

    p = sub.add_parser("car", help="complementarity of CAR subalgebras for a mode partition")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--partition", required=True, help="two mode sets, e.g. '1;2,3'")
    _common(p)
    p.set_defaults(func=cmd_car)

    p = sub.add_parser("bell", help="complementarity defects of a Bell-diagonal unitary")
    p.add_argument("--phases", required=True, help="four comma separated phases")
    _common(p)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("suite", help="run the bundled verification suite")
    _common(p)
    p.set_defaults(func=cmd_suite)
    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if not args.eps > 0 or args.samples < 1:
        print("error: --eps must be positive and --samples at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
