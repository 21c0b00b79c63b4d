"""Command-line front end: read a graph, maximize the flow, print JSON.

Exit codes: 0 success, 2 parse or I/O error, 3 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

import numpy as np

from . import __version__
from .clique import max_clique_exact
from .closed_form import motzkin_straus_bound, solve_closed_form
from .errors import FlowmaxError, InfeasibleLoadError, ParseError
from .graph import BIPARTITE, ODD_CYCLE, SINGLE_LEVEL_TREE, Graph, LoadVector, classify, flow, is_bipartite
from .io import FORMATS, infer_format, parse_graph, parse_loads
from .numeric import SolverParams, projected_gradient_ascent, replicator_solve
from .oracle import grid_oracle
from .report import SolveReport
from .transforms import bipartite_collapse, concentrate, equalize, odd_cycle_reduce


EXIT_OK = 0
EXIT_PARSE = 2
EXIT_USAGE = 3

METHODS = ("auto", "closed-form", "transform", "qp", "replicator", "oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flowmax", description="Maximize the total edge interaction of a load budget on a graph.")
    p.add_argument("--input", required=True, metavar="PATH", help="graph file")
    p.add_argument("--format", choices=FORMATS, help="graph format (default: from extension)")
    p.add_argument("--load", type=float, metavar="D", help="total load budget (default 1.0)")
    p.add_argument("--flow-factor", type=float, default=1.0, metavar="C")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--granularity", type=int, default=20, help="grid granularity for --method oracle")
    p.add_argument("--oracle-strategy", choices=("exhaustive", "clique-support"), default="exhaustive")
    p.add_argument("--restarts", type=int, default=SolverParams.restarts)
    p.add_argument("--max-iters", type=int, default=SolverParams.max_iters)
    p.add_argument("--seed", type=int, default=SolverParams.seed)
    p.add_argument("--trace", action="store_true", help="include the transformation trace")
    p.add_argument("--initial", metavar="PATH", help="starting load vector, one real per line")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    return json.dumps(obj)


def _transform(g: Graph, start: LoadVector):
    kind = classify(g)
    if kind == ODD_CYCLE:
        return "transform/odd-cycle", odd_cycle_reduce(g, start)
    if kind in (SINGLE_LEVEL_TREE, BIPARTITE) and g.edges:
        trace = bipartite_collapse(g, is_bipartite(g), start)
        return "transform/bipartite", trace.then(equalize(g, trace.final_loads, trace.clique))
    return "transform/concentrate", concentrate(g, start, max_clique_exact(g))


def solve(g: Graph, args, D: float, start: LoadVector | None) -> SolveReport:
    params = SolverParams(max_iters=args.max_iters, restarts=args.restarts, seed=args.seed)
    if args.method in ("auto", "closed-form"):
        return solve_closed_form(g, D)
    if args.method == "transform":
        start = start or LoadVector.uniform(g.n, D)
        method, trace = _transform(g, start)
        return SolveReport.from_loads(method, g, trace.final_loads, trace=trace,
                                      diagnostics={"iterations": len(trace.steps)})
    if args.method == "qp":
        return projected_gradient_ascent(g, D, params)
    if args.method == "replicator":
        return replicator_solve(g, params, D)
    return grid_oracle(g, D, args.granularity, strategy=args.oracle_strategy)


def build_report(g: Graph, report: SolveReport, D: float, include_trace: bool) -> dict:
    omega = report.omega or max_clique_exact(g).size
    diag = {"iterations": 0, "restarts": 1, "converged": True}
    diag.update(report.diagnostics)
    diag.pop("trajectories", None)
    out = {
        "method": report.method,
        "n": g.n,
        "edge_count": len(g.edges),
        "omega": omega,
        "flow": report.flow,
        "loads": report.loads.values.tolist(),
        "bound": motzkin_straus_bound(omega, D, g.flow_factor),
    }
    if include_trace and report.trace is not None:
        out["trace"] = report.trace.to_json()
    out["diagnostics"] = diag
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"flowmax: error: {exc}", file=stderr)
        return EXIT_USAGE

    fmt = args.format or infer_format(args.input)
    warnings: list[str] = []
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
        initial = None
        if args.initial:
            with open(args.initial, encoding="utf-8") as fh:
                initial = parse_loads(fh.read())
    except (OSError, ParseError) as exc:
        print(f"flowmax: error: {exc}", file=stderr)
        return EXIT_PARSE

    try:
        if not (args.flow_factor > 0 and math.isfinite(args.flow_factor)):
            raise UsageError(f"--flow-factor must be positive, got {args.flow_factor}")
        try:
            g = parse_graph(raw, fmt, args.flow_factor, warnings)
        except ParseError as exc:
            print(f"flowmax: error: {args.input}: {exc}", file=stderr)
            return EXIT_PARSE

        start = None
        D = 1.0 if args.load is None else args.load
        if initial is not None:
            if len(initial) != g.n:
                raise UsageError(f"--initial has {len(initial)} loads, graph has {g.n} vertices")
            try:
                start = LoadVector(initial)
            except InfeasibleLoadError as exc:
                raise UsageError(f"--initial: {exc}") from None
            if args.load is not None and abs(start.total - args.load) > 1e-12 * args.load:
                raise UsageError(f"--initial loads sum to {start.total}, but --load is {args.load}")
            D = start.total
        if not (D > 0 and math.isfinite(D)):
            raise UsageError(f"--load must be positive, got {D}")
        if args.restarts < 1 or args.max_iters < 1 or args.granularity < 1:
            raise UsageError("--restarts, --max-iters and --granularity must be at least 1")

        report = solve(g, args, D, start)
        out = build_report(g, report, D, args.trace)
        if start is not None:
            out["diagnostics"]["initial_flow"] = flow(g, start)
        if warnings:
            out["diagnostics"]["warnings"] = warnings
    except (UsageError, FlowmaxError) as exc:
        print(f"flowmax: error: {exc}", file=stderr)
        return EXIT_USAGE

    print(dumps(out), file=stdout)
    return EXIT_OK


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    sys.exit(run())


if __name__ == "__main__":
    main()
