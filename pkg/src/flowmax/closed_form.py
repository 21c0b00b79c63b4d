"""Analytical optima for the graph classes with known solutions.

Every function returns one canonical optimal load vector; optima are not
unique (a star's leaves may share their half of the budget arbitrarily).
"""

from __future__ import annotations

from .clique import CliqueResult, max_clique_exact, verify_clique
from .errors import InvalidCertificateError, NoEdgeError, WrongClassError
from .graph import (BIPARTITE, COMPLETE, GENERAL, ODD_CYCLE, SINGLE_LEVEL_TREE, Graph, LoadVector,
                    classify)
from .report import SolveReport

_EDGE_PAIR_CLASSES = {
    SINGLE_LEVEL_TREE: "closed-form/single-level-tree",
    BIPARTITE: "closed-form/bipartite",
    ODD_CYCLE: "closed-form/odd-cycle",
}


def _check_budget(D):
    if not D > 0:
        raise ValueError(f"total load must be positive, got {D}")


def motzkin_straus_bound(omega: int, D: float = 1.0, c: float = 1.0) -> float:
    """Global maximum of the flow, ``c * D**2 / 2 * (1 - 1/omega)``."""
    if omega < 1:
        raise ValueError(f"clique number must be at least 1, got {omega}")
    _check_budget(D)
    return c * D * D * (omega - 1) / (2 * omega)


def clique_optimum(n: int, D: float = 1.0, c: float = 1.0) -> SolveReport:
    """Equal split ``D/n`` on the complete graph ``K_n``."""
    if n < 1:
        raise ValueError(f"clique size must be at least 1, got {n}")
    _check_budget(D)
    loads = LoadVector.uniform(n, D)
    # (D/n)^2 * C(n, 2) simplifies to the clique-number bound with omega = n
    value = motzkin_straus_bound(n, D, c)
    return SolveReport("closed-form/complete", loads, value, omega=n,
                       clique=CliqueResult(tuple(range(n))))


def edge_pair_optimum(g: Graph, D: float = 1.0) -> SolveReport:
    """Half the budget on each end of the lexicographically smallest edge.

    Optimal for stars, bipartite graphs and odd cycles of length >= 5, whose
    clique number is 2; the value is ``c * D**2 / 4``.
    """
    _check_budget(D)
    if not g.edges:
        raise NoEdgeError("graph has no edges; the flow is identically zero")
    kind = classify(g)
    if kind not in _EDGE_PAIR_CLASSES:
        raise WrongClassError(f"edge-pair optimum does not apply to a {kind} graph")
    u, v = g.edges[0]
    loads = LoadVector.on(g.n, (u, v), D)
    return SolveReport(_EDGE_PAIR_CLASSES[kind], loads, g.flow_factor * D * D / 4, omega=2,
                       clique=CliqueResult((u, v)))


def general_optimum(g: Graph, D: float, clique: CliqueResult) -> SolveReport:
    """Equal split over a caller-supplied (maximum) clique."""
    _check_budget(D)
    if not verify_clique(g, clique.vertices):
        raise InvalidCertificateError(f"vertices {list(clique.vertices)} do not form a clique")
    loads = LoadVector.on(g.n, clique.vertices, D)
    value = motzkin_straus_bound(clique.size, D, g.flow_factor)
    return SolveReport("closed-form/general", loads, value, omega=clique.size, clique=clique)


def solve_closed_form(g: Graph, D: float = 1.0) -> SolveReport:
    """Dispatch on :func:`classify` to the matching analytical optimum."""
    kind = classify(g)
    if kind == COMPLETE:
        return clique_optimum(g.n, D, g.flow_factor)
    if kind in _EDGE_PAIR_CLASSES and g.edges:
        return edge_pair_optimum(g, D)
    report = general_optimum(g, D, max_clique_exact(g))
    if kind != GENERAL:
        # edgeless graphs land here: the best clique is a single vertex
        report.method = "closed-form/edgeless"
    return report
