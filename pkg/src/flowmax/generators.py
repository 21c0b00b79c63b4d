"""Small named graphs and seeded random families."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .graph import Graph, build_graph


def complete_graph(n: int, flow_factor: float = 1.0) -> Graph:
    return build_graph(n, combinations(range(n), 2), flow_factor)


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def triangle_with_pendant() -> Graph:
    """Triangle 0-1-2 plus vertex 3 hanging off vertex 0."""
    return build_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def gnp_random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_bipartite(n: int, seed: int, extra: float = 0.3) -> Graph:
    """Random spanning tree plus random cross edges; both parts nonempty."""
    rng = np.random.default_rng(seed)
    side = rng.integers(0, 2, size=n)
    side[0], side[1] = 0, 1
    left = [v for v in range(n) if side[v] == 0]
    right = [v for v in range(n) if side[v] == 1]
    edges = set()
    placed = [0, 1]
    edges.add((0, 1))
    for v in rng.permutation(range(2, n)).tolist():
        other = [u for u in placed if side[u] != side[v]]
        u = other[int(rng.integers(len(other)))]
        edges.add((min(u, v), max(u, v)))
        placed.append(v)
    for u in left:
        for v in right:
            if rng.random() < extra:
                edges.add((min(u, v), max(u, v)))
    return build_graph(n, edges)


def random_simplex_point(n: int, rng: np.random.Generator, total: float = 1.0) -> np.ndarray:
    e = rng.exponential(size=n)
    return total * e / e.sum()
