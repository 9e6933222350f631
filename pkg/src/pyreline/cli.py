"""Command-line interface: scenario runs, sweeps, solvers, service."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PyrelineError


def _cmd_run(args):
    from .scenario import Scenario, run_scenario

    scenario = Scenario.load(args.scenario)
    result = run_scenario(scenario, outdir=args.out, figures=args.figures)
    _print_result(result)
    return 0 if result.passed else 1


def _cmd_preset(args):
    from .scenario import get_preset, run_scenario, verify_tree_dominance

    if args.name == "tree-dominance":
        report = verify_tree_dominance(samples=100, seed=17)
        print(json.dumps(report, indent=2))
        return 0
    scenario = get_preset(args.name)
    if args.turns:
        scenario.turns = args.turns
    if args.seed is not None:
        scenario.seed = args.seed
    result = run_scenario(scenario, outdir=args.out, figures=args.figures)
    _print_result(result)
    return 0 if result.passed else 1


def _cmd_sweep(args):
    from .scenario import sweep

    with open(args.template) as fh:
        template = json.load(fh)
    with open(args.grid) as fh:
        grid = json.load(fh)
    results, rows = sweep(template, grid, outdir=args.out, figures=args.figures)
    for row in rows:
        print(json.dumps(row, sort_keys=True))
    if args.out and args.figures:
        from .report import sweep_figure

        sweep_figure(rows, f"{args.out}/sweep.png")
    return 0 if all(r.passed for r in results) else 1


def _cmd_exact(args):
    from .burning import exact_burning_number
    from .graph import read_edgelist

    graph = read_edgelist(args.edgelist)
    b, schedule = exact_burning_number(graph, cap=args.cap)
    print(f"b={b}")
    print("sources:", " ".join(str(s) for s in schedule.sources))
    return 0


def _cmd_verify_tree_dominance(args):
    from .scenario import verify_tree_dominance

    report = verify_tree_dominance(
        samples=args.samples, seed=args.seed, turns=args.turns
    )
    print(json.dumps(report, indent=2))
    return 0


def _cmd_report(args):
    from .report import density_figure, series_from_trace_csv

    series = series_from_trace_csv(args.trace)
    out = args.out or args.trace.replace(".csv", ".png")
    density_figure(series, out, title=args.title or args.trace)
    print(out)
    return 0


def _cmd_serve(args):
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def _print_result(result):
    print(json.dumps(result.summary, indent=2, sort_keys=True))
    for r in result.assertion_results:
        status = "PASS" if r["passed"] else "FAIL"
        horizon = f" @ {r['horizon']}" if r["horizon"] is not None else ""
        print(
            f"[{status}] {r['metric']}{horizon} {r['comparator']} {r['threshold']}"
            f" (value {r['value']:.6f})"
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pyreline",
        description="Adversarial graph-burning game: runs, sweeps, solvers, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario JSON file")
    p.add_argument("scenario")
    p.add_argument("--out", default=None, help="output directory for trace/summary")
    p.add_argument("--figures", action="store_true", help="also render figures")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("preset", help="run a named preset scenario")
    p.add_argument("name")
    p.add_argument("--turns", type=int, default=None, help="override turn count")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--figures", action="store_true")
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("sweep", help="run a scenario template over a parameter grid")
    p.add_argument("template")
    p.add_argument("grid")
    p.add_argument("--out", default=None)
    p.add_argument("--figures", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("exact", help="exact burning number of an edge-list graph")
    p.add_argument("edgelist")
    p.add_argument("--cap", type=int, default=64, help="exact-solver size cap")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("verify-tree-dominance", help="fuzz spanning-tree burn dominance")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=17)
    p.add_argument("--turns", type=int, default=100)
    p.set_defaults(func=_cmd_verify_tree_dominance)

    p = sub.add_parser("report", help="render figures from a trace CSV")
    p.add_argument("trace")
    p.add_argument("--out", default=None)
    p.add_argument("--title", default=None)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="start the interactive game service")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PyrelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
