"""Flow-nondecreasing load transformations with step-by-step traces.

Each public operation replays an exchange argument on a concrete load
vector: load is moved between vertices only in ways that cannot lower the
flow, and every move is logged as a :class:`ShiftStep` carrying the flow
before and after. Moving the whole load of ``i`` to a vertex ``j`` that is
not adjacent to ``i`` changes the flow by exactly ``m_i * (phi(j) - phi(i))``,
where ``phi`` is the neighbor load sum; most rules below are that move with
a particular choice of ``i`` and ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

import numpy as np

from .clique import CliqueResult, verify_clique
from .errors import InvalidCertificateError, InvalidStateError, NoEdgeError, WrongClassError
from .graph import Graph, LoadVector, bits, cycle_order, flow


class Rule(str, Enum):
    BIPARTITE_COLLAPSE = "bipartite_collapse"
    ODD_CYCLE_CASE_A = "odd_cycle_case_a"
    ODD_CYCLE_CASE_B = "odd_cycle_case_b"
    ODD_CYCLE_CASE_C = "odd_cycle_case_c"
    NONADJACENT = "nonadjacent"
    CLIQUE_MERGE = "clique_merge"
    EQUALIZE = "equalize"


@dataclass(frozen=True)
class ShiftStep:
    """One logged load move.

    For every rule except ``clique_merge`` the step moves ``amount`` from
    vertex ``source`` to vertex ``target``. A ``clique_merge`` step is a
    single atomic move of the whole load of the clique containing ``source``
    onto the clique containing ``target``, split equally there; ``amount``
    is then the load of the source clique. No step-by-step path with
    nondecreasing flow exists between two cliques in general, so the merge
    is logged as one comparison of states.
    """

    source: int
    target: int
    amount: float
    flow_before: float
    flow_after: float
    rule: Rule
    loads_after: tuple[float, ...] = field(repr=False, compare=False, default=())

    @property
    def gain(self) -> float:
        return self.flow_after - self.flow_before

    def to_json(self) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "amount": self.amount,
            "flow_before": self.flow_before,
            "flow_after": self.flow_after,
            "rule": self.rule.value,
        }


@dataclass(frozen=True)
class TransformTrace:
    """Ordered load moves from ``initial_loads`` to ``final_loads``.

    ``clique`` is the vertex set (an edge, for the bipartite and odd-cycle
    pipelines) that holds the load at the end, when the operation fixes one.
    """

    steps: tuple[ShiftStep, ...]
    initial_loads: LoadVector
    final_loads: LoadVector
    initial_flow: float
    clique: tuple[int, ...] | None = None

    @property
    def flows(self) -> list[float]:
        return [self.initial_flow] + [s.flow_after for s in self.steps]

    @property
    def final_flow(self) -> float:
        return self.steps[-1].flow_after if self.steps else self.initial_flow

    def is_monotone(self, atol: float | None = None) -> bool:
        if atol is None:
            atol = 1e-12 * self.initial_loads.total ** 2
        return all(s.flow_after >= s.flow_before - atol for s in self.steps)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def then(self, other: TransformTrace) -> TransformTrace:
        """Concatenate with a trace that starts where this one ends."""
        return TransformTrace(self.steps + other.steps, self.initial_loads, other.final_loads,
                              self.initial_flow, other.clique if other.clique is not None else self.clique)


class _Recorder:
    """Mutable working copy of the loads that logs every change."""

    def __init__(self, g: Graph, m: LoadVector):
        if len(m) != g.n:
            raise InvalidStateError(f"load vector has {len(m)} entries, graph has {g.n} vertices")
        self.g = g
        self.initial = m
        self.x = m.values.copy()
        self.current = flow(g, self.x)
        self.initial_flow = self.current
        self.steps: list[ShiftStep] = []

    def move(self, source: int, target: int, rule: Rule, amount: float | None = None) -> ShiftStep:
        whole = amount is None or amount >= self.x[source]
        amount = float(self.x[source]) if whole else float(amount)
        self.x[target] += amount
        self.x[source] = 0.0 if whole else self.x[source] - amount
        return self._log(source, target, amount, rule)

    def replace(self, values: np.ndarray, source: int, target: int, amount: float, rule: Rule) -> ShiftStep:
        self.x = values
        return self._log(source, target, amount, rule)

    def _log(self, source, target, amount, rule) -> ShiftStep:
        before = self.current
        self.current = flow(self.g, self.x)
        step = ShiftStep(int(source), int(target), amount, before, self.current, rule,
                         tuple(self.x.tolist()))
        self.steps.append(step)
        return step

    def positive(self) -> list[int]:
        return np.flatnonzero(self.x > 0).tolist()

    def trace(self, clique: Iterable[int] | None = None) -> TransformTrace:
        final = LoadVector(self.x.copy(), self.initial.total)
        return TransformTrace(tuple(self.steps), self.initial, final, self.initial_flow,
                              None if clique is None else tuple(sorted(clique)))


def _mask(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


# ---------------------------------------------------------------- equalize

def _equalize(rec: _Recorder, vertices: Iterable[int]) -> None:
    verts = sorted(vertices)
    if len(verts) < 2:
        return
    inside = _mask(verts)
    stray = [v for v in rec.positive() if not inside >> v & 1]
    if stray:
        raise InvalidStateError(f"vertices {stray} carry load outside the set being equalized")
    if not verify_clique(rec.g, verts):
        raise InvalidStateError(f"vertices {verts} do not form a clique")
    idx = np.array(verts)
    target = float(rec.x[idx].sum()) / len(verts)
    # each pass pins one vertex to the target; with all load on a clique the
    # flow is c*(S^2 - sum m^2)/2, which a surplus-to-deficit move never lowers
    for _ in range(len(verts) - 1):
        dev = rec.x[idx] - target
        donor, recv = int(idx[np.argmax(dev)]), int(idx[np.argmin(dev)])
        surplus, deficit = rec.x[donor] - target, target - rec.x[recv]
        if surplus <= 0 or deficit <= 0:
            break
        if surplus <= deficit:
            rec.x[donor] = target
            rec.x[recv] += surplus
            amount = surplus
        else:
            rec.x[recv] = target
            rec.x[donor] -= deficit
            amount = deficit
        rec._log(donor, recv, float(amount), Rule.EQUALIZE)


def equalize(g: Graph, m: LoadVector, vertices: Iterable[int]) -> TransformTrace:
    """Split the load held by the clique ``vertices`` equally among them.

    All positive load must already sit on ``vertices``.
    """
    verts = sorted(set(vertices))
    rec = _Recorder(g, m)
    _equalize(rec, verts)
    return rec.trace(verts)


# ------------------------------------------------------- bipartite collapse

def _collapse(rec: _Recorder, structure: Graph, x_part: frozenset[int], y_part: frozenset[int]) -> tuple[int, int]:
    """Gather each side of a bipartition onto one vertex; return the edge used.

    ``structure`` supplies the adjacency; flows are evaluated on ``rec.g``.
    The two may differ only in edges whose endpoints carry no load.
    """
    if not structure.edges:
        raise NoEdgeError("graph has no edges to collapse onto")
    a = structure.matrix
    side = np.zeros(structure.n, dtype=bool)
    side[list(y_part)] = True
    for _ in range(structure.n):
        phi = a @ rec.x
        best = None
        for part in (False, True):
            verts = np.flatnonzero((side == part) & (rec.x > 0))
            for src in verts:
                for dst in verts:
                    if src == dst or phi[src] > phi[dst]:
                        continue
                    key = (rec.x[src] * (phi[dst] - phi[src]), -dst, -src)
                    if best is None or key > best:
                        best = key
        if best is None:
            break
        rec.move(-best[2], -best[1], Rule.BIPARTITE_COLLAPSE)

    pos = rec.positive()
    xs = [v for v in pos if not side[v]]
    ys = [v for v in pos if side[v]]
    first = structure.edges[0]
    fx, fy = (first[0], first[1]) if not side[first[0]] else (first[1], first[0])
    if xs and ys:
        x0, y0 = xs[0], ys[0]
        if structure.has_edge(x0, y0):
            return x0, y0
        if structure.degree(y0):
            hub = structure.neighbors(y0)[0]
            rec.move(x0, hub, Rule.BIPARTITE_COLLAPSE)
            return hub, y0
        if structure.degree(x0):
            hub = structure.neighbors(x0)[0]
            rec.move(y0, hub, Rule.BIPARTITE_COLLAPSE)
            return x0, hub
        rec.move(x0, fx, Rule.BIPARTITE_COLLAPSE)
        rec.move(y0, fy, Rule.BIPARTITE_COLLAPSE)
        return fx, fy
    (v,) = xs or ys
    if structure.degree(v):
        w = structure.neighbors(v)[0]
        return (v, w) if not side[v] else (w, v)
    # isolated vertex: every other load is zero, so the move is flow-neutral
    dest = fy if side[v] else fx
    rec.move(v, dest, Rule.BIPARTITE_COLLAPSE)
    return fx, fy


def _check_bipartition(g: Graph, parts) -> tuple[frozenset[int], frozenset[int]]:
    x_part, y_part = (frozenset(int(v) for v in p) for p in parts)
    if x_part & y_part or (x_part | y_part) != frozenset(range(g.n)):
        raise InvalidStateError("parts must be disjoint and cover every vertex")
    for u, v in g.edges:
        if (u in x_part) == (v in x_part):
            raise InvalidStateError(f"edge ({u}, {v}) lies inside one part")
    return x_part, y_part


def bipartite_collapse(g: Graph, parts, m: LoadVector) -> TransformTrace:
    """Move each part's load onto one vertex, the two ending up adjacent.

    Within a part no two vertices are adjacent, so moving a whole load from
    a lower to a higher neighbor sum never loses flow. The final flow is
    ``c * (sum of X loads) * (sum of Y loads)``.
    """
    x_part, y_part = _check_bipartition(g, parts)
    rec = _Recorder(g, m)
    edge = _collapse(rec, g, x_part, y_part)
    return rec.trace(edge)


# -------------------------------------------------------------- odd cycles

def odd_cycle_reduce(g: Graph, m: LoadVector, equalize: bool = True) -> TransformTrace:
    """Reduce a load on an odd cycle (length >= 5) to a single edge.

    One vertex is emptied following the three neighborhood-overlap cases of
    the minimum/maximum neighbor-sum pair; the rest of the cycle is then a
    path and is collapsed like any bipartite graph. With ``equalize`` the
    final edge gets ``D/2`` at each end.
    """
    order = cycle_order(g)
    if order is None or g.n % 2 == 0 or g.n < 5:
        raise WrongClassError("odd_cycle_reduce needs a cycle of odd length at least 5")
    n = g.n
    pos = {v: k for k, v in enumerate(order)}
    rec = _Recorder(g, m)

    zeros = np.flatnonzero(rec.x == 0)
    if zeros.size:
        i = int(zeros[0])
    else:
        phi = g.matrix @ rec.x
        i, j = int(np.argmin(phi)), int(np.argmax(phi))
        if i == j:
            # all loads equal: every neighbor sum ties, the distance-2 move is flow-neutral
            rec.move(i, order[(pos[i] + 2) % n], Rule.ODD_CYCLE_CASE_B)
        else:
            gap = (pos[j] - pos[i]) % n
            dist = min(gap, n - gap)
            if dist >= 3:
                rec.move(i, j, Rule.ODD_CYCLE_CASE_A)
            elif dist == 2:
                rec.move(i, j, Rule.ODD_CYCLE_CASE_B)
            else:
                # j adjacent to i: go one further along, away from i
                ahead = 1 if gap == 1 else -1
                rec.move(i, order[(pos[j] + ahead) % n], Rule.ODD_CYCLE_CASE_C)

    path = g.subgraph_without([i])
    x_part = frozenset([i] + [order[(pos[i] + k) % n] for k in range(1, n, 2)])
    y_part = frozenset(range(n)) - x_part
    edge = _collapse(rec, path, x_part, y_part)
    if equalize:
        _equalize(rec, edge)
    return rec.trace(edge)


# ----------------------------------------------------------- general graphs

def _best_nonadjacent(g: Graph, x: np.ndarray) -> tuple[int, int] | None:
    support = np.flatnonzero(x > 0)
    if support.size < 2:
        return None
    phi = (g.matrix @ x)[support]
    sub = g.matrix[np.ix_(support, support)]
    ok = (sub == 0) & ~np.eye(support.size, dtype=bool) & (phi[:, None] <= phi[None, :])
    if not ok.any():
        return None
    gain = np.where(ok, x[support][:, None] * (phi[None, :] - phi[:, None]), -np.inf)
    # argmax returns the first maximum in row-major order: lowest (i, j)
    a, b = np.unravel_index(int(np.argmax(gain)), gain.shape)
    return int(support[a]), int(support[b])


def nonadjacent_shift(g: Graph, m: LoadVector) -> ShiftStep | None:
    """Best whole-load move between two non-adjacent loaded vertices.

    Among loaded pairs ``i, j`` with no edge between them and
    ``phi(i) <= phi(j)``, picks the move ``i -> j`` with the largest gain
    ``m_i * (phi(j) - phi(i))`` (ties: lowest ``(i, j)``). Returns ``None``
    when the loaded vertices are pairwise adjacent.
    """
    rec = _Recorder(g, m)
    pair = _best_nonadjacent(g, rec.x)
    if pair is None:
        return None
    return rec.move(pair[0], pair[1], Rule.NONADJACENT)


def _support_components(g: Graph, support: list[int]) -> list[list[int]]:
    alive = _mask(support)
    comps = []
    while alive:
        seed = alive & -alive
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adjacency[v]
            frontier = nxt & alive & ~comp
            comp |= frontier
        comps.append(bits(comp))
        alive &= ~comp
    return comps


def _merge_and_equalize(rec: _Recorder) -> list[int]:
    comps = _support_components(rec.g, rec.positive())
    for comp in comps:
        if not verify_clique(rec.g, comp):
            raise InvalidStateError(f"loaded component {comp} is not a clique")
    if not comps:
        raise InvalidStateError("no vertex carries load")
    chosen = max(comps, key=lambda c: (len(c), -c[0]))
    if len(comps) == 1:
        _equalize(rec, chosen)
        return chosen
    idx = np.array(chosen)
    for comp in comps:
        if comp is chosen:
            continue
        moved = float(rec.x[comp].sum())
        values = rec.x.copy()
        gathered = values[idx].sum() + moved
        values[comp] = 0.0
        values[idx] = gathered / len(chosen)
        rec.replace(values, comp[0], chosen[0], moved, Rule.CLIQUE_MERGE)
    return chosen


def merge_and_equalize(g: Graph, m: LoadVector) -> TransformTrace:
    """Gather the load of disjoint loaded cliques into the largest one.

    The loaded vertices must split into cliques with no loaded path between
    them. Ties for the largest clique go to the lowest minimum vertex. The
    result is the equal split on that clique.
    """
    rec = _Recorder(g, m)
    chosen = _merge_and_equalize(rec)
    return rec.trace(chosen)


def concentrate(g: Graph, m: LoadVector, max_clique: CliqueResult) -> TransformTrace:
    """Drive any load vector to the equal split on ``max_clique``.

    Repeats :func:`nonadjacent_shift` until the loaded vertices form a
    clique (at most ``n - 1`` moves, each empties a vertex), equalizes it,
    and if that clique is smaller than ``max_clique`` relocates everything
    there in one ``clique_merge`` step.
    """
    if not verify_clique(g, max_clique.vertices):
        raise InvalidCertificateError(f"vertices {list(max_clique.vertices)} do not form a clique")
    rec = _Recorder(g, m)
    for _ in range(g.n):
        pair = _best_nonadjacent(g, rec.x)
        if pair is None:
            break
        rec.move(pair[0], pair[1], Rule.NONADJACENT)
    survivor = _merge_and_equalize(rec)
    if len(survivor) >= max_clique.size:
        return rec.trace(survivor)
    total = float(rec.x.sum())
    values = np.zeros(g.n)
    values[list(max_clique.vertices)] = total / max_clique.size
    rec.replace(values, survivor[0], max_clique.vertices[0], total, Rule.CLIQUE_MERGE)
    return rec.trace(max_clique.vertices)
