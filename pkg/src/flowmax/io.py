"""Reading and writing graphs (edge lists, DIMACS) and load vectors."""

from __future__ import annotations

import logging
import os

from .errors import GraphError, ParseError
from .graph import Graph, build_graph

log = logging.getLogger(__name__)

FORMATS = ("edgelist", "dimacs")


def infer_format(path: str | os.PathLike) -> str:
    ext = os.path.splitext(str(path))[1].lower()
    return "dimacs" if ext in (".col", ".clq", ".dimacs") else "edgelist"


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer {what}, got {token!r}", lineno) from None


def parse_edgelist(text: str, flow_factor: float = 1.0) -> Graph:
    """``u v`` lines with 0-based endpoints; ``#`` comments; optional ``n <count>``."""
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2:
                raise ParseError("header must read 'n <count>'", lineno)
            declared = _int(tokens[1], lineno, "vertex count")
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two endpoints, got {len(tokens)} tokens", lineno)
        u, v = (_int(t, lineno, "endpoint") for t in tokens)
        if u < 0 or v < 0:
            raise ParseError(f"negative endpoint in ({u}, {v})", lineno)
        if declared is not None and max(u, v) >= declared:
            raise ParseError(f"endpoint of ({u}, {v}) exceeds declared n={declared}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    n = declared if declared is not None else max((max(e) for e in edges), default=-1) + 1
    if n < 1:
        raise ParseError("graph has no vertices")
    if any(max(e) >= n for e in edges):
        raise ParseError(f"an endpoint exceeds declared n={n}")
    return build_graph(n, edges, flow_factor)


def parse_dimacs(text: str, flow_factor: float = 1.0, warnings: list[str] | None = None) -> Graph:
    """DIMACS ``p edge n m`` / ``e u v`` format with 1-based endpoints.

    A mismatch between the declared and actual number of ``e`` lines is
    reported through ``warnings`` (and the log), not raised.
    """
    n = declared_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise ParseError("problem line must read 'p edge <n> <m>'", lineno)
            n = _int(tokens[2], lineno, "vertex count")
            declared_m = _int(tokens[3], lineno, "edge count")
            if n < 1:
                raise ParseError(f"vertex count must be positive, got {n}", lineno)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("edge line before the problem line", lineno)
            if len(tokens) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", lineno)
            u, v = (_int(t, lineno, "endpoint") for t in tokens[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge ({u}, {v}) outside declared range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognized line type {tokens[0]!r}", lineno)
    if n is None:
        raise ParseError("missing problem line 'p edge <n> <m>'")
    if declared_m != len(edges):
        msg = f"problem line declares {declared_m} edges, file lists {len(edges)}"
        log.warning(msg)
        if warnings is not None:
            warnings.append(msg)
    return build_graph(n, edges, flow_factor)


def parse_graph(text: str | bytes, format: str = "edgelist", flow_factor: float = 1.0,
                warnings: list[str] | None = None) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 text: {exc}") from None
    try:
        if format == "edgelist":
            return parse_edgelist(text, flow_factor)
        if format == "dimacs":
            return parse_dimacs(text, flow_factor, warnings)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    raise ValueError(f"unknown graph format {format!r}; expected one of {FORMATS}")


def format_edgelist(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_graph(g: Graph, format: str = "edgelist") -> str:
    if format == "edgelist":
        return format_edgelist(g)
    if format == "dimacs":
        return format_dimacs(g)
    raise ValueError(f"unknown graph format {format!r}")


def parse_loads(text: str) -> list[float]:
    """One real per line; blank lines and ``#`` comments skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(float(line))
        except ValueError:
            raise ParseError(f"expected a real number, got {line!r}", lineno) from None
    return out
