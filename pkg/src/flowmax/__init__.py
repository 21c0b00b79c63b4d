"""Load distributions that maximize quadratic edge interaction on a graph."""

__version__ = "0.1.0"

from .clique import CliqueResult, clique_number_bruteforce, max_clique_exact, verify_clique
from .closed_form import (clique_optimum, edge_pair_optimum, general_optimum, motzkin_straus_bound,
                          solve_closed_form)
from .graph import (Graph, LoadVector, build_graph, classify, flow, flow_gradient, is_bipartite,
                    neighbor_load_sum)
from .numeric import (SolverParams, extract_clique_from_support, project_simplex,
                      projected_gradient_ascent, replicator_solve, replicator_step)
from .oracle import grid_oracle
from .report import SolveReport
from .transforms import (Rule, ShiftStep, TransformTrace, bipartite_collapse, concentrate, equalize,
                         merge_and_equalize, nonadjacent_shift, odd_cycle_reduce)

__all__ = [
    "CliqueResult", "Graph", "LoadVector", "Rule", "ShiftStep", "SolveReport", "SolverParams",
    "TransformTrace", "bipartite_collapse", "build_graph", "classify", "clique_number_bruteforce",
    "clique_optimum", "concentrate", "edge_pair_optimum", "equalize", "extract_clique_from_support",
    "flow", "flow_gradient", "general_optimum", "grid_oracle", "is_bipartite", "max_clique_exact",
    "merge_and_equalize", "motzkin_straus_bound", "neighbor_load_sum", "nonadjacent_shift",
    "odd_cycle_reduce", "project_simplex", "projected_gradient_ascent", "replicator_solve",
    "replicator_step", "solve_closed_form", "verify_clique",
]
