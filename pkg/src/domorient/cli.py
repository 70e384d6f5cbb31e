"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 precondition (bridge, disconnected,
bad arguments), 4 invariant breach, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time

from .domination import DominatingSet, minimum_dominating_set
from .errors import (
    BudgetExceededError,
    GraphInputError,
    InvariantBreachError,
    PreconditionError,
)
from .formats import parse_edge_list, serialize_graph, serialize_orientation
from .graph import Orientation, is_strong
from .oracle import (
    exact_oriented_diameter,
    exact_oriented_strong_diameter,
    gen_extremal,
    gen_random_bridgeless,
    probe_two_connected,
)
from .orient import DIAM, SDIAM, formula_bound, orient

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BREACH = 4
EXIT_BUDGET = 5


def _read_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _report_lines(pairs) -> str:
    return "\n".join(f"{k}={v}" for k, v in pairs) + "\n"


def cmd_orient(args) -> int:
    g, doms = _read_graph(args.input)
    if args.dominators:
        members = frozenset(int(t) for t in args.dominators.split(","))
        doms = DominatingSet(members, g, True)
    start = time.perf_counter()
    o, plan, report = orient(g, doms, args.objective)
    elapsed = time.perf_counter() - start
    out_path = args.output or (args.input + ".oriented")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_orientation(o, comments=[f"objective {args.objective}"]))
    if args.emit_plan:
        with open(out_path + ".plan", "w", encoding="utf-8") as fh:
            fh.write(plan.dump() + "\n")
    sys.stdout.write(
        _report_lines(
            [
                ("status", "ok"),
                ("objective", report.objective),
                ("gamma", report.gamma),
                ("gamma_exact", str(report.exact_dominating).lower()),
                ("formula_bound", report.formula_bound),
                ("measured_diameter", report.measured_diameter),
                ("measured_sdiam_upper", report.measured_sdiam_upper),
                ("orientation_file", out_path),
                ("plan_hash", plan.digest()),
                ("elapsed_s", f"{elapsed:.3f}"),
            ]
        )
    )
    return 0


def cmd_exact(args) -> int:
    g, _ = _read_graph(args.input)
    start = time.perf_counter()
    if args.objective == DIAM:
        res = exact_oriented_diameter(g, budget=args.budget_edges or 28)
    else:
        res = exact_oriented_strong_diameter(g, budget=args.budget_edges or 22)
    elapsed = time.perf_counter() - start
    sys.stdout.write(
        _report_lines(
            [
                ("status", "ok"),
                ("objective", args.objective),
                ("optimum", res.optimum),
                ("explored", res.explored),
                ("pruned", res.pruned),
                ("elapsed_s", f"{elapsed:.3f}"),
            ]
        )
    )
    for eid, t, h in res.witness.arcs():
        sys.stdout.write(f"arc {t} {h}\n")
    return 0


def cmd_gamma(args) -> int:
    g, _ = _read_graph(args.input)
    d = minimum_dominating_set(g)
    sys.stdout.write(
        _report_lines(
            [
                ("gamma", len(d)),
                ("exact", str(d.exact).lower()),
                ("members", ",".join(str(v) for v in d.sorted())),
            ]
        )
    )
    return 0


def cmd_generate(args) -> int:
    if args.kind == "extremal":
        pattern = [int(t) for t in args.pattern.split(",")] if args.pattern else None
        g, doms = gen_extremal(args.gamma, pattern)
        text = serialize_graph(g, doms.members, comments=[f"extremal gamma={args.gamma}"])
    else:
        g = gen_random_bridgeless(args.n, args.extra, args.seed)
        text = serialize_graph(
            g, comments=[f"random n={args.n} extra={args.extra} seed={args.seed}"]
        )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    rng_seeds = [args.seed + i for i in range(args.count)]
    rows = []
    violations = 0
    max_gap = 0
    for s in rng_seeds:
        g = gen_random_bridgeless(args.n, 2 + s % 4, s)
        d = minimum_dominating_set(g)
        o, plan, report = orient(g, d, args.objective)
        oracle_val = ""
        gap = ""
        budget = 28 if args.objective == DIAM else 22
        if g.num_edges() <= min(budget, args.budget_edges or budget):
            res = (
                exact_oriented_diameter(g)
                if args.objective == DIAM
                else exact_oriented_strong_diameter(g)
            )
            oracle_val = res.optimum
            gap = report.measured - res.optimum
            max_gap = max(max_gap, gap)
        if report.measured > report.formula_bound:
            violations += 1
        rows.append((s, report.gamma, report.formula_bound, report.measured, oracle_val, gap))
    header = f"{'seed':>6} {'gamma':>5} {'bound':>5} {'alg':>4} {'oracle':>6} {'gap':>4}"
    sys.stdout.write(header + "\n")
    for row in rows:
        sys.stdout.write(
            f"{row[0]:>6} {row[1]:>5} {row[2]:>5} {row[3]:>4} {str(row[4]):>6} {str(row[5]):>4}\n"
        )
    sys.stdout.write(
        _report_lines([("count", len(rows)), ("violations", violations), ("max_gap", max_gap)])
    )
    return 0


def cmd_probe2c(args) -> int:
    rows = probe_two_connected(args.count, args.n, args.seed)
    bad = [r for r in rows if r["violates"]]
    for r in rows:
        sys.stdout.write(
            f"n={r['n']} m={r['edges']} gamma={r['gamma']} "
            f"diam={r['oriented_diameter']}<={r['diam_bound_3g_minus_1']} "
            f"sdiam={r['oriented_strong_diameter']}<={r['sdiam_bound_3g']} "
            f"violates={str(r['violates']).lower()}\n"
        )
    sys.stdout.write(_report_lines([("samples", len(rows)), ("candidates", len(bad))]))
    return 0


def cmd_verify(args) -> int:
    from .formats import parse_orientation

    with open(args.input, "r", encoding="utf-8") as fh:
        g, direction = parse_orientation(fh.read())
    o = Orientation(g, direction)
    ok = is_strong(o)
    sys.stdout.write(_report_lines([("strong", str(ok).lower())]))
    return 0 if ok else EXIT_BREACH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domorient")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("orient", help="construct a bounded strong orientation")
    sp.add_argument("input")
    sp.add_argument("--objective", choices=[DIAM, SDIAM], default=DIAM)
    sp.add_argument("--dominators", help="comma-separated override")
    sp.add_argument("--output")
    sp.add_argument("--emit-plan", action="store_true")
    sp.set_defaults(func=cmd_orient)

    sp = sub.add_parser("exact", help="exact optimum by branch and bound")
    sp.add_argument("input")
    sp.add_argument("--objective", choices=[DIAM, SDIAM], default=DIAM)
    sp.add_argument("--budget-edges", type=int)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("gamma", help="minimum dominating set")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("generate", help="write instance files")
    sp.add_argument("kind", choices=["extremal", "random"])
    sp.add_argument("--gamma", type=int, default=2)
    sp.add_argument("--pattern", help="comma-separated 1/2 list")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--extra", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("bench", help="pipeline sweep with oracle cross-check")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--objective", choices=[DIAM, SDIAM], default=DIAM)
    sp.add_argument("--budget-edges", type=int)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("probe2c", help="sample 2-connected graphs against 3g-1 / 3g")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_probe2c)

    sp = sub.add_parser("verify", help="re-check an oriented edge list")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphInputError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        sys.stderr.write(f"precondition: {exc}\n")
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget: {exc}\n")
        return EXIT_BUDGET
    except InvariantBreachError as exc:
        sys.stderr.write(f"invariant breach: {exc}\n")
        if exc.trace:
            sys.stderr.write(exc.trace + "\n")
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
