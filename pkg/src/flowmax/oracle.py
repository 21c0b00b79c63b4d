"""Brute-force ground truth: the flow maximized over a discretized simplex.

The grid of granularity ``k`` holds every load vector ``D * counts / k``
with nonnegative integer ``counts`` summing to ``k``. Counts are kept as
integers and the flow on a grid point is ``c * D**2 * q / k**2`` with the
integer ``q = sum over edges of counts_u * counts_v``, so the search itself
has no rounding.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .errors import SizeGuardError
from .graph import Graph, LoadVector
from .report import SolveReport

GRID_GUARD = 50_000_000
_BLOCK_ROWS = 200_000


def grid_size(n: int, granularity: int) -> int:
    """Number of grid points, ``C(granularity + n - 1, n - 1)``."""
    return comb(granularity + n - 1, n - 1)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All compositions of ``total`` into ``parts`` parts, colexicographic."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for last in range(total + 1):
        head = _compositions(total - last, parts - 1)
        blocks.append(np.hstack([head, np.full((len(head), 1), last, dtype=np.int64)]))
    return np.vstack(blocks)


def _blocks(total: int, parts: int) -> Iterator[np.ndarray]:
    # colex order: the last coordinate varies slowest
    if parts == 1 or grid_size(parts, total) <= _BLOCK_ROWS:
        yield _compositions(total, parts)
        return
    for last in range(total + 1):
        for head in _blocks(total - last, parts - 1):
            yield np.hstack([head, np.full((len(head), 1), last, dtype=np.int64)])


def _pair_sums(a: np.ndarray, counts: np.ndarray) -> np.ndarray:
    # float64 matmul is exact here: every partial sum is an integer far below 2**53
    return np.rint(np.einsum("ri,ri->r", counts @ a, counts) / 2).astype(np.int64)


def _partitions(total: int, parts: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing sequences of length ``parts`` summing to ``total``."""
    cap = total if cap is None else cap
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for first in range(min(total, cap), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _report(g: Graph, D: float, granularity: int, counts: np.ndarray, q: int, strategy: str,
            evaluated: int) -> SolveReport:
    loads = LoadVector(D * counts / granularity, D)
    value = g.flow_factor * D * D * q / (granularity * granularity)
    return SolveReport("oracle", loads, value, diagnostics={
        "granularity": granularity,
        "strategy": strategy,
        "points_evaluated": evaluated,
        "grid_points": grid_size(g.n, granularity),
    })


def grid_oracle(g: Graph, D: float = 1.0, granularity: int = 20, strategy: str = "exhaustive") -> SolveReport:
    """Maximum flow over the grid of the given granularity.

    ``strategy="exhaustive"`` evaluates every grid point in colexicographic
    order and keeps the first maximizer; it refuses grids larger than
    :data:`GRID_GUARD`.

    ``strategy="clique-support"`` returns the same maximum value on grids
    far too large to list. If two loaded vertices of a grid point are not
    adjacent, moving the whole count of the one with the smaller neighbor
    sum onto the other stays on the grid and does not lower the flow, so
    some maximizer is loaded only on a clique, hence within a maximal
    clique. On a clique with nothing loaded outside, the flow depends only
    on the multiset of counts. The search therefore covers every maximal
    clique (listed by networkx) and every integer partition of the
    granularity into at most that many parts. The returned maximizer is the
    colexicographically first one among those candidates.
    """
    if granularity < 1:
        raise ValueError(f"granularity must be at least 1, got {granularity}")
    if not D > 0:
        raise ValueError(f"total load must be positive, got {D}")
    a = np.asarray(g.matrix)
    if strategy == "exhaustive":
        size = grid_size(g.n, granularity)
        if size > GRID_GUARD:
            fits = granularity
            while fits > 1 and grid_size(g.n, fits) > GRID_GUARD:
                fits -= 1
            raise SizeGuardError(
                f"grid with granularity {granularity} on {g.n} vertices has {size} points "
                f"(limit {GRID_GUARD}); use granularity <= {fits} or strategy='clique-support'")
        best_q, best_counts = -1, None
        for block in _blocks(granularity, g.n):
            q = _pair_sums(a, block)
            k = int(np.argmax(q))
            if q[k] > best_q:
                best_q, best_counts = int(q[k]), block[k].copy()
        return _report(g, D, granularity, best_counts, best_q, strategy, size)

    if strategy == "clique-support":
        import networkx as nx

        nxg = nx.Graph()
        nxg.add_nodes_from(range(g.n))
        nxg.add_edges_from(g.edges)
        best_q, best_key, best_counts = -1, None, None
        evaluated = 0
        for clique in nx.find_cliques(nxg):
            verts = sorted(clique)
            parts = np.array(list(_partitions(granularity, len(verts))), dtype=np.int64)
            counts = np.zeros((len(parts), g.n), dtype=np.int64)
            # ascending placement: heaviest count on the highest index, colex-early
            counts[:, verts] = parts[:, ::-1]
            q = _pair_sums(a, counts)
            evaluated += len(counts)
            for r in np.flatnonzero(q == q.max()):
                key = tuple(counts[r][::-1].tolist())
                if q[r] > best_q or (q[r] == best_q and key < best_key):
                    best_q, best_key, best_counts = int(q[r]), key, counts[r].copy()
        return _report(g, D, granularity, best_counts, best_q, strategy, evaluated)

    raise ValueError(f"unknown strategy {strategy!r}")
