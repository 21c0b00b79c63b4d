"""Maximum clique: exact branch-and-bound and a brute-force oracle.

The exact solver is a bitset branch-and-bound in the MCQ/BBMC family: at
every node the candidate set is greedily colored, and a branch is pruned
when the current clique plus the number of colors cannot beat the
incumbent. Vertices are relabeled by a degeneracy ordering first so that
the coloring bound is tight where the search is deepest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import SizeGuardError
from .graph import Graph, bits

BRUTEFORCE_MAX_N = 20


@dataclass(frozen=True)
class CliqueResult:
    """A vertex set certified to be a clique (vertices sorted ascending)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(int(v) for v in self.vertices)))
        if not self.vertices:
            raise ValueError("a clique has at least one vertex")

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def verify_clique(g: Graph, s: Iterable[int]) -> bool:
    """True iff every pair of vertices in ``s`` is adjacent in ``g``."""
    members = sorted(set(int(v) for v in s))
    if any(not 0 <= v < g.n for v in members):
        return False
    mask = 0
    for v in members:
        mask |= 1 << v
    return all((g.adjacency[v] | (1 << v)) & mask == mask for v in members)


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last ordering; ties broken by lowest vertex index."""
    deg = [g.degree(i) for i in range(g.n)]
    alive = (1 << g.n) - 1
    removed = []
    while alive:
        v = min(bits(alive), key=lambda i: (deg[i], i))
        removed.append(v)
        alive &= ~(1 << v)
        for w in bits(g.adjacency[v] & alive):
            deg[w] -= 1
    return removed[::-1]


def _greedy_clique(adj: list[int], n: int) -> list[int]:
    # adj is in relabeled order: low labels are the dense core
    clique: list[int] = []
    cand = (1 << n) - 1
    while cand:
        v = max(bits(cand), key=lambda i: ((adj[i] & cand).bit_count(), -i))
        clique.append(v)
        cand &= adj[v]
    return clique


def max_clique_exact(g: Graph) -> CliqueResult:
    """Return a maximum clique of ``g``.

    Output is deterministic for a given graph. Worst case is exponential;
    desk-scale graphs (a few hundred sparse or ~60 dense vertices) are fine.
    """
    n = g.n
    order = degeneracy_order(g)
    label = {v: k for k, v in enumerate(order)}
    adj = [0] * n
    for v in range(n):
        for w in g.neighbors(v):
            adj[label[v]] |= 1 << label[w]

    best = _greedy_clique(adj, n)

    def color_sort(p: int) -> tuple[list[int], list[int]]:
        verts: list[int] = []
        bounds: list[int] = []
        color = 0
        uncolored = p
        while uncolored:
            color += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncolored &= ~low
                verts.append(v)
                bounds.append(color)
        return verts, bounds

    def expand(clique: list[int], p: int) -> None:
        nonlocal best
        verts, bounds = color_sort(p)
        for k in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[k] <= len(best):
                return
            v = verts[k]
            clique.append(v)
            sub = p & adj[v]
            if sub:
                expand(clique, sub)
            elif len(clique) > len(best):
                best = clique.copy()
            clique.pop()
            p &= ~(1 << v)

    expand([], (1 << n) - 1)
    return CliqueResult(tuple(order[v] for v in best))


def clique_number_bruteforce(g: Graph) -> int:
    """Clique number by checking every vertex subset (n <= 20).

    ``is_clique[mask]`` is derived from the mask with its lowest vertex
    removed, so each subset costs a constant number of word operations.
    """
    n = g.n
    if n > BRUTEFORCE_MAX_N:
        raise SizeGuardError(f"brute-force clique number is limited to n <= {BRUTEFORCE_MAX_N}, got n={n}")
    adj = g.adjacency
    total = 1 << n
    is_clique = bytearray(total)
    is_clique[0] = 1
    best = 0
    for mask in range(1, total):
        low = mask & -mask
        rest = mask ^ low
        if is_clique[rest] and adj[low.bit_length() - 1] & rest == rest:
            is_clique[mask] = 1
            size = mask.bit_count()
            if size > best:
                best = size
    return best
