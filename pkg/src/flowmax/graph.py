"""Graphs, load vectors and the quadratic edge-interaction flow.

A :class:`Graph` keeps its adjacency as one Python ``int`` bitmask per row,
so membership tests and neighborhood intersections are word operations.
The flow of a load vector ``m`` is ``c * sum(m[u] * m[v] for (u, v) in edges)``:
each unordered edge is counted once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, GraphError, InfeasibleLoadError

LOAD_RTOL = 1e-12

COMPLETE = "complete"
SINGLE_LEVEL_TREE = "single_level_tree"
ODD_CYCLE = "odd_cycle"
BIPARTITE = "bipartite"
GENERAL = "general"


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adjacency[i]`` is a bitmask whose bit ``j`` is set iff ``{i, j}`` is an
    edge. ``edges`` lists every edge once as ``(u, v)`` with ``u < v``, sorted.
    Build instances with :func:`build_graph`.
    """

    n: int
    adjacency: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    flow_factor: float = 1.0

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, i: int) -> list[int]:
        return bits(self.adjacency[i])

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    @property
    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adjacency), default=0)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n))
        if self.edges:
            u, v = self.edge_index
            a[u, v] = 1.0
            a[v, u] = 1.0
        a.flags.writeable = False
        return a

    @cached_property
    def edge_index(self) -> tuple[np.ndarray, np.ndarray]:
        arr = np.array(self.edges, dtype=np.intp).reshape(-1, 2)
        return arr[:, 0].copy(), arr[:, 1].copy()

    def with_flow_factor(self, c: float) -> Graph:
        return build_graph(self.n, self.edges, c)

    def subgraph_without(self, removed: Iterable[int]) -> Graph:
        """Same vertex set, minus every edge touching a vertex in ``removed``."""
        gone = set(removed)
        kept = [e for e in self.edges if e[0] not in gone and e[1] not in gone]
        return build_graph(self.n, kept, self.flow_factor)


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_graph(n: int, edges: Iterable[Sequence[int]], flow_factor: float = 1.0) -> Graph:
    """Build a :class:`Graph`, collapsing duplicate and reversed pairs."""
    if n < 1:
        raise GraphError(f"graph needs at least one vertex, got n={n}")
    if not (flow_factor > 0 and np.isfinite(flow_factor)):
        raise GraphError(f"flow factor must be a positive real, got {flow_factor}")
    rows = [0] * n
    pairs = set()
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}: edge ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        pairs.add((min(u, v), max(u, v)))
    return Graph(n, tuple(rows), tuple(sorted(pairs)), float(flow_factor))


@dataclass(frozen=True, eq=False)
class LoadVector:
    """Nonnegative per-vertex loads summing to ``total``.

    ``values`` is stored as a read-only float array.
    """

    values: np.ndarray
    total: float | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise DimensionError("loads must be a one-dimensional sequence")
        if not np.all(np.isfinite(vals)):
            raise InfeasibleLoadError("loads must be finite")
        total = float(vals.sum()) if self.total is None else float(self.total)
        if not total > 0:
            raise InfeasibleLoadError(f"total load must be positive, got {total}")
        if np.any(vals < 0):
            i = int(np.argmax(vals < 0))
            raise InfeasibleLoadError(f"load at vertex {i} is negative ({vals[i]})")
        if abs(vals.sum() - total) > LOAD_RTOL * total:
            raise InfeasibleLoadError(f"loads sum to {vals.sum()!r}, expected {total!r}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "total", total)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values.tolist())

    def __getitem__(self, i):
        return self.values[i]

    def __repr__(self):
        return f"LoadVector({self.values.tolist()!r}, total={self.total!r})"

    @property
    def support(self) -> list[int]:
        return np.flatnonzero(self.values > 0).tolist()

    @classmethod
    def uniform(cls, n: int, total: float = 1.0) -> LoadVector:
        return cls(np.full(n, total / n), total)

    @classmethod
    def on(cls, n: int, vertices: Sequence[int], total: float = 1.0) -> LoadVector:
        """Equal split of ``total`` over ``vertices``, zero elsewhere."""
        vals = np.zeros(n)
        vals[list(vertices)] = total / len(vertices)
        return cls(vals, total)


def _as_array(g: Graph, m) -> np.ndarray:
    vals = m.values if isinstance(m, LoadVector) else np.asarray(m, dtype=float)
    if vals.shape != (g.n,):
        raise DimensionError(f"load vector has shape {vals.shape}, graph has {g.n} vertices")
    return vals


def flow(g: Graph, m) -> float:
    """Total interaction ``c * sum over edges {i,j} of m_i * m_j``.

    ``m`` may be a :class:`LoadVector` or any sequence of ``g.n`` reals.
    """
    vals = _as_array(g, m)
    if not g.edges:
        return 0.0
    u, v = g.edge_index
    return g.flow_factor * float(np.dot(vals[u], vals[v]))


def flow_gradient(g: Graph, m) -> np.ndarray:
    """Gradient of :func:`flow`, ``c * A m``."""
    return g.flow_factor * (g.matrix @ _as_array(g, m))


def neighbor_load_sum(g: Graph, m, i: int) -> float:
    """Sum of the loads on the neighbors of vertex ``i``."""
    vals = _as_array(g, m)
    if not 0 <= i < g.n:
        raise DimensionError(f"vertex {i} out of range 0..{g.n - 1}")
    return float(sum(vals[j] for j in g.neighbors(i)))


def neighbor_load_sums(g: Graph, m) -> np.ndarray:
    return g.matrix @ _as_array(g, m)


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-color ``g`` by breadth-first search.

    Returns ``(X, Y)`` with every edge crossing, or ``None`` if an odd cycle
    exists. Each component is colored independently with its lowest vertex
    in ``X``.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    x = frozenset(i for i in range(g.n) if color[i] == 0)
    return x, frozenset(range(g.n)) - x


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= g.adjacency[i]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def cycle_order(g: Graph) -> list[int] | None:
    """Vertices of ``g`` in cyclic order if ``g`` is a single cycle, else None.

    The walk starts at vertex 0 and heads to its smaller neighbor.
    """
    if g.n < 3 or len(g.edges) != g.n or any(g.degree(i) != 2 for i in range(g.n)):
        return None
    order = [0]
    prev, cur = 0, min(g.neighbors(0))
    while cur != 0:
        order.append(cur)
        a, b = g.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    return order if len(order) == g.n else None


def classify(g: Graph) -> str:
    """Structure tag used to dispatch closed-form optima.

    Priority: complete, single_level_tree, odd_cycle, bipartite, general.
    """
    n = g.n
    if len(g.edges) == n * (n - 1) // 2:
        return COMPLETE
    full = (1 << n) - 1
    if len(g.edges) == n - 1 and any(g.adjacency[i] | (1 << i) == full for i in range(n)):
        return SINGLE_LEVEL_TREE
    if n % 2 == 1 and n >= 5 and cycle_order(g) is not None:
        return ODD_CYCLE
    if is_bipartite(g) is not None:
        return BIPARTITE
    return GENERAL
