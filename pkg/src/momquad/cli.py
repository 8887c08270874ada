"""Command-line front end.

One command per construction; moments come from a built-in preset, a
moment CSV, or an atoms CSV, exactly one of the three.  Data goes to
stdout (or --output); warnings and errors go to stderr.  Numbers are
printed with 12 significant digits.

Exit codes: 0 success, 1 expected negative result (verification failure,
infeasible prescription), 2 usage or input error, 3 numerical failure
(degeneracy, lost convergence, inconclusive feasibility).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .config import DEFAULT_TOLERANCES, Tolerances, format_number
from .errors import (
    CrossCheckError,
    InsufficientMomentsError,
    MomentOverflowError,
    MomquadError,
)
from .moments import (
    AtomicMeasure,
    MomentSequence,
    moments_exponential,
    moments_from_atoms,
    moments_from_csv,
    moments_normal,
    moments_to_csv,
    moments_uniform,
)
from .multinode import MultiNodeProblem, multinode_solve, report_to_text
from .rules import (
    curve_sample,
    even_family,
    even_rule_linear,
    even_rule_through,
    gaussian_odd,
    infinity_rule,
    nodes_agree,
    rule_for_nodes,
    rule_from_text,
    rule_to_text,
    verify_rule,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

PRESETS = ("normal", "exponential", "uniform")


def _build_parser() -> argparse.ArgumentParser:
    source = argparse.ArgumentParser(add_help=False)
    group = source.add_argument_group("moment source (exactly one)")
    group.add_argument("--preset", choices=PRESETS, help="built-in moment sequence")
    group.add_argument("--moments", metavar="PATH", help="moment CSV file (k,m_k lines)")
    group.add_argument(
        "--atoms", metavar="PATH", help="atom CSV file (position,weight lines)"
    )
    source.add_argument(
        "--a", type=float, default=-1.0, help="left endpoint for the uniform preset"
    )
    source.add_argument(
        "--b", type=float, default=1.0, help="right endpoint for the uniform preset"
    )
    source.add_argument("--output", "-o", metavar="PATH", help="write data here instead of stdout")
    source.add_argument(
        "--tol-residual", type=float, default=None, help="override the residual tolerance"
    )
    source.add_argument(
        "--tol-rank", type=float, default=None, help="override the rank/pivot tolerance"
    )
    source.add_argument(
        "--tol-inf",
        type=float,
        default=None,
        help="override the node-at-infinity detection tolerance",
    )

    parser = argparse.ArgumentParser(
        prog="momquad",
        description="Minimal quadrature rules from moment sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[source], help="emit a moment CSV")
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("gauss", parents=[source], help="odd-degree rule (degree 2d+1)")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser(
        "even", parents=[source], help="even-degree rule (degree 2d) through a node"
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--y", type=float, required=True, help="the prescribed node")
    p.add_argument(
        "--method",
        choices=("bilinear", "linear", "both"),
        default="bilinear",
        help="which determinantal representation finds the nodes",
    )

    p = sub.add_parser(
        "infinity", parents=[source], help="degree-2d rule with a node at infinity"
    )
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser(
        "multinode", parents=[source], help="feasibility with prescribed nodes"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument(
        "--fix",
        default="",
        help="comma-separated prescribed nodes (n-1 of them)",
    )

    p = sub.add_parser("verify", parents=[source], help="check a rule file")
    p.add_argument("--rule", metavar="PATH", required=True)

    p = sub.add_parser("curve", parents=[source], help="grid samples of both determinants")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--xmin", type=float, default=-4.0)
    p.add_argument("--xmax", type=float, default=4.0)
    p.add_argument("--ymin", type=float, default=-4.0)
    p.add_argument("--ymax", type=float, default=4.0)
    p.add_argument("--steps", type=int, default=40)

    return parser


def _tolerances(args: argparse.Namespace) -> Tolerances:
    overrides = {}
    if args.tol_residual is not None:
        overrides["residual"] = args.tol_residual
    if args.tol_rank is not None:
        overrides["rank"] = args.tol_rank
    if args.tol_inf is not None:
        overrides["infinity"] = args.tol_inf
    return dataclasses.replace(DEFAULT_TOLERANCES, **overrides)


def _load_sequence(args: argparse.Namespace, max_degree: int) -> MomentSequence:
    """Resolve the moment source; presets are generated to max_degree."""
    chosen = [s for s in ("preset", "moments", "atoms") if getattr(args, s)]
    if len(chosen) != 1:
        raise ValueError(
            "exactly one moment source required: --preset, --moments, or --atoms"
        )
    if args.preset == "normal":
        return moments_normal(max_degree)
    if args.preset == "exponential":
        return moments_exponential(max_degree)
    if args.preset == "uniform":
        return moments_uniform(args.a, args.b, max_degree)
    if args.moments:
        with open(args.moments, "r", encoding="utf-8") as fh:
            seq = moments_from_csv(fh.read(), source=args.moments)
        seq.require(max_degree)
        return seq
    atoms = _load_atoms(args.atoms)
    return moments_from_atoms(atoms, max_degree)


def _load_atoms(path: str) -> AtomicMeasure:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected `position,weight`")
            pairs.append((float(parts[0]), float(parts[1])))
    return AtomicMeasure(tuple(pairs))


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_moments(args, tol) -> int:
    if args.max_degree < 0:
        raise ValueError("--max-degree must be >= 0")
    seq = _load_sequence(args, args.max_degree)
    _emit(args, moments_to_csv(seq))
    return EXIT_OK


def _cmd_gauss(args, tol) -> int:
    if args.d < 0:
        raise ValueError("--d must be >= 0")
    seq = _load_sequence(args, 2 * args.d + 1)
    rule = gaussian_odd(seq, args.d, tol)
    _emit(args, rule_to_text(rule))
    return EXIT_OK


def _cmd_even(args, tol) -> int:
    if args.d < 1:
        raise ValueError("--d must be >= 1")
    seq = _load_sequence(args, 2 * args.d)
    if args.method == "linear":
        nodes = even_rule_linear(seq, args.d, args.y, tol)
        rule = rule_for_nodes(seq, 2 * args.d, nodes, tol)
    else:
        rule = even_rule_through(seq, args.d, args.y, tol)
        if args.method == "both":
            linear_nodes = even_rule_linear(seq, args.d, args.y, tol)
            if not nodes_agree(rule.nodes, linear_nodes, 1e-6):
                raise CrossCheckError(
                    "bilinear and linear-representation node sets disagree: "
                    f"{[str(n) for n in rule.nodes]} vs {[str(n) for n in linear_nodes]}"
                )
    _emit(args, rule_to_text(rule))
    return EXIT_OK


def _cmd_infinity(args, tol) -> int:
    if args.d < 1:
        raise ValueError("--d must be >= 1")
    seq = _load_sequence(args, 2 * args.d)
    rule = infinity_rule(seq, args.d, tol)
    _emit(args, rule_to_text(rule))
    return EXIT_OK


def _cmd_multinode(args, tol) -> int:
    if args.n < 1 or args.l < 1:
        raise ValueError("--n and --l must be >= 1")
    fixed = tuple(float(v) for v in args.fix.split(",") if v.strip() != "")
    seq = _load_sequence(args, args.n + 2 * args.l)
    prob = MultiNodeProblem(args.n, args.l, fixed, seq)
    report = multinode_solve(prob, tol)
    text = report_to_text(report)
    for rule in report.rules_found:
        text += "\n" + rule_to_text(rule)
    _emit(args, text)
    if report.verdict == "feasible":
        return EXIT_OK
    if report.verdict == "infeasible":
        return EXIT_NEGATIVE
    return EXIT_NUMERICAL


def _cmd_verify(args, tol) -> int:
    with open(args.rule, "r", encoding="utf-8") as fh:
        rule = rule_from_text(fh.read())
    seq = _load_sequence(args, rule.degree)
    report = verify_rule(seq, rule, tol)
    lines = [
        f"status,{'pass' if report.passed else 'fail'}",
        f"max_residual,{format_number(report.max_residual)}",
        f"threshold,{format_number(report.threshold)}",
    ]
    if report.first_failure is not None:
        lines.append(f"first_failure,{report.first_failure}")
    for k, r in enumerate(report.residuals):
        lines.append(f"residual,{k},{format_number(r)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _cmd_curve(args, tol) -> int:
    if args.d < 1:
        raise ValueError("--d must be >= 1")
    if args.steps < 2:
        raise ValueError("--steps must be >= 2")
    seq = _load_sequence(args, 2 * args.d)
    fam = even_family(seq, args.d, tol)
    points = curve_sample(
        fam, (args.xmin, args.xmax), (args.ymin, args.ymax), args.steps, tol
    )
    lines = ["x,y,F,detM,inertia_pos,inertia_neg,inertia_zero"]
    for p in points:
        lines.append(
            f"{format_number(p.x)},{format_number(p.y)},{format_number(p.f_value)},"
            f"{format_number(p.rep_det)},{p.inertia[0]},{p.inertia[1]},{p.inertia[2]}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "moments": _cmd_moments,
    "gauss": _cmd_gauss,
    "even": _cmd_even,
    "infinity": _cmd_infinity,
    "multinode": _cmd_multinode,
    "verify": _cmd_verify,
    "curve": _cmd_curve,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    tol = _tolerances(args)
    try:
        return _COMMANDS[args.command](args, tol)
    except (ValueError, OSError, InsufficientMomentsError, MomentOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MomquadError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main() -> None:
    sys.exit(run(sys.argv[1:]))
