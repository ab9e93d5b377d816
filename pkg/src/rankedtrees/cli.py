"""
Command-line interface.

Usage:
    rankedtrees euler --k 8
    rankedtrees identity --n 5
    rankedtrees moments --n 9
    rankedtrees dist cherries --n 54
    rankedtrees dist pitchforks --m 53 --format json
    rankedtrees conditional --m 53 --summary mean
    rankedtrees counts --m 5
    rankedtrees enumerate --m 4
    rankedtrees simulate stats --n 54 --samples 100000 --seed 1
    rankedtrees verify

Exit codes: 0 success, 1 computation error (one ``error: <reason>: ...``
line on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import distributions as dist
from .errors import RankedTreeError
from .output import PROB_HEADER, csv_text, float17, json_text, prob_columns, ratio
from .simulate import SimConfig, estimate_identity_probability, estimate_statistics
from .trees import enumerate_increasing_trees, format_tree_line
from .verify import run_checks

DEFAULT_M = 53
DEFAULT_N = 54


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _joint_entries(m: int) -> list[dict]:
    table = dist.joint_counts(m)
    probs = dist.joint_distribution(m)
    return [
        {"o": o, "r": r, "count": str(c), "prob": ratio(probs[o, r])}
        for (o, r), c in table.items()
    ]


def _emit_joint(m: int, fmt: str) -> str:
    if fmt == "json":
        return json_text({"m": m, "entries": _joint_entries(m)})
    table = dist.joint_counts(m)
    probs = dist.joint_distribution(m)
    rows = [[o, r, c, *prob_columns(probs[o, r])] for (o, r), c in table.items()]
    return csv_text(["o", "r", "count", *PROB_HEADER], rows)


def _emit_marginal(label: str, size_key: str, size: int, table, fmt: str) -> str:
    if fmt == "json":
        entries = [{label: k, "prob": ratio(p)} for k, p in table.items()]
        return json_text({size_key: size, "entries": entries})
    return csv_text([label, *PROB_HEADER], [[k, *prob_columns(p)] for k, p in table.items()])


def cmd_counts(args) -> str:
    return _emit_joint(args.m, args.format or "json")


def cmd_dist(args) -> str:
    fmt = args.format or "csv"
    if args.kind == "cherries":
        n = DEFAULT_N if args.n is None else args.n
        return _emit_marginal("o", "n", n, dist.cherry_distribution(n), fmt)
    m = DEFAULT_M if args.m is None else args.m
    if args.kind == "pitchforks":
        return _emit_marginal("r", "m", m, dist.pitchfork_distribution(m), fmt)
    return _emit_joint(m, fmt)


def cmd_conditional(args) -> str:
    fmt = args.format or "csv"
    m = args.m
    if args.summary == "mean":
        if args.cherries is not None:
            means = {args.cherries: dist.conditional_pitchfork_distribution(m, args.cherries).mean()}
        else:
            means = dist.conditional_pitchfork_means(m)
        if fmt == "json":
            entries = [{"o": o, "mean": ratio(v), "mean_float": float(v)} for o, v in means.items()]
            return json_text({"m": m, "summary": "mean", "entries": entries})
        rows = [[o, v.numerator, v.denominator, float17(v)] for o, v in means.items()]
        return csv_text(["o", "mean_num", "mean_den", "mean_float"], rows)
    if args.cherries is not None:
        given = [args.cherries]
    else:
        given = list(dist.joint_counts(m).cherry_marginal())
    tables = {o: dist.conditional_pitchfork_distribution(m, o) for o in given}
    if fmt == "json":
        entries = [
            {"o": o, "r": r, "prob": ratio(p)} for o, table in tables.items() for r, p in table.items()
        ]
        return json_text({"m": m, "entries": entries})
    rows = [[o, r, *prob_columns(p)] for o, table in tables.items() for r, p in table.items()]
    return csv_text(["o", "r", *PROB_HEADER], rows)


def cmd_identity(args) -> str:
    p = dist.identity_probability(args.n)
    if (args.format or "csv") == "json":
        return json_text({"n": args.n, "probability": ratio(p), "probability_float": float(p)})
    return csv_text(["n", "probability", *PROB_HEADER], [[args.n, ratio(p), *prob_columns(p)]])


def cmd_moments(args) -> str:
    n = args.n
    values = {
        "E_o": dist.expected_cherries(n),
        "Var_o": dist.variance_cherries(n),
        "E_r": dist.expected_pitchforks(n - 1),
    }
    if (args.format or "csv") == "json":
        out = {"n": n, "m": n - 1}
        out.update({k: ratio(v) for k, v in values.items()})
        out.update({f"{k}_float": float(v) for k, v in values.items()})
        return json_text(out)
    rows = [[k, ratio(v), float17(v)] for k, v in values.items()]
    return csv_text(["quantity", "value", "value_float"], rows)


def cmd_euler(args) -> str:
    seq = dist.euler_numbers(args.k)
    if (args.format or "csv") == "json":
        return json_text({"k": args.k, "euler": [str(x) for x in seq]})
    return csv_text(["n", "count"], [[i, x] for i, x in enumerate(seq, start=1)])


def cmd_enumerate(args) -> str:
    trees = list(enumerate_increasing_trees(args.m))
    if args.format == "json":
        return json_text({"m": args.m, "count": len(trees), "trees": [list(t.parent) for t in trees]})
    lines = [f"m={args.m} count={len(trees)}"] + [format_tree_line(t) for t in trees]
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> str:
    config = SimConfig(args.n, args.samples, args.seed, args.workers)
    if args.mode == "stats":
        summary = estimate_statistics(config)
    else:
        summary = estimate_identity_probability(config)
    if (args.format or "json") == "json":
        return json_text(summary.to_dict())
    rows = [["o", k, c] for k, c in summary.o_histogram.items()]
    rows += [["r", k, c] for k, c in summary.r_histogram.items()]
    if args.mode == "identity":
        rows.append(["identity_match", 1, summary.identity_matches])
        rows.append(["identity_match", 0, summary.identity_trials - summary.identity_matches])
    return csv_text(["statistic", "outcome", "count"], rows)


def cmd_verify(args):
    checks = run_checks(max_m=args.max_m, max_closed=args.max_closed, simulate=args.simulate)
    report = "\n".join(c.line() for c in checks) + "\n"
    failed = sum(not c.passed for c in checks)
    report += f"{len(checks) - failed}/{len(checks)} checks passed\n"
    return report, (1 if failed else 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="rankedtrees",
        description="Exact cherry and pitchfork statistics of coalescent ranked trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", parents=[common], help="joint count table N_m(o, r)")
    p.add_argument("--m", type=_positive, default=DEFAULT_M)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("dist", parents=[common], help="exact distributions")
    p.add_argument("kind", choices=["cherries", "pitchforks", "joint"])
    p.add_argument("--n", type=_positive, default=None, help="leaves (cherries)")
    p.add_argument("--m", type=_positive, default=None, help="increasing-tree size")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("conditional", parents=[common], help="pitchforks given cherries")
    p.add_argument("--m", type=_positive, default=DEFAULT_M)
    p.add_argument("--cherries", type=_positive, default=None)
    p.add_argument("--summary", choices=["mean"], default=None)
    p.set_defaults(func=cmd_conditional)

    p = sub.add_parser("identity", parents=[common], help="probability two trees coincide")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("moments", parents=[common], help="E_o, Var_o and E_r")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("euler", parents=[common], help="number of ranked trees by size")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("enumerate", parents=[common], help="dump every increasing tree")
    p.add_argument("--m", type=_positive, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo coalescent")
    p.add_argument("mode", choices=["stats", "identity"])
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--samples", type=_positive, required=True)
    p.add_argument("--seed", type=_nonnegative, required=True)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    p.add_argument("--max-m", type=_positive, default=10)
    p.add_argument("--max-closed", type=_positive, default=200)
    p.add_argument("--simulate", action="store_true", help="include the Monte Carlo checks")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except RankedTreeError as exc:
        print(f"error: {exc.reason}: {exc}", file=stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(result)
    else:
        stdout.write(result)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
