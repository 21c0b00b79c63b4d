"""Local numerical maximization of the flow over the load simplex.

Two multi-start methods are provided. Projected gradient ascent steps along
``c * A m`` and projects back onto ``{m >= 0, sum m = D}``. Replicator
dynamics rescale each load by its neighbor sum, ``m_i <- m_i (Am)_i / m'Am``
(times ``D``), which never lowers a quadratic form with a symmetric
nonnegative matrix. All restarts run together as rows of one array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clique import CliqueResult, verify_clique
from .errors import DegenerateGraphError, ExtractionError, NumericError, StationaryZeroError
from .graph import Graph, LoadVector, flow
from .report import SolveReport

_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class SolverParams:
    max_iters: int = 10_000
    tolerance: float = 1e-10
    restarts: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


def _project_rows(v: np.ndarray, D: float) -> np.ndarray:
    # sort-based threshold: keep the largest entries, shift them to sum to D
    u = -np.sort(-v, axis=1)
    css = np.cumsum(u, axis=1) - D
    k = np.arange(1, v.shape[1] + 1)
    rho = np.count_nonzero(u - css / k > 0, axis=1)
    tau = css[np.arange(v.shape[0]), rho - 1] / rho
    return np.maximum(v - tau[:, None], 0.0)


def project_simplex(v, D: float = 1.0) -> LoadVector:
    """Euclidean projection of ``v`` onto ``{m >= 0, sum m = D}``."""
    arr = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NumericError("cannot project a vector with non-finite entries")
    if not D > 0:
        raise ValueError(f"total load must be positive, got {D}")
    out = _project_rows(arr.reshape(1, -1), D)[0]
    # push the rounding residue onto the largest entry so the sum is exact
    out[np.argmax(out)] += D - out.sum()
    return LoadVector(out, D)


def _row_flows(a: np.ndarray, c: float, x: np.ndarray) -> np.ndarray:
    return 0.5 * c * np.einsum("ri,ri->r", x @ a, x)


def _starts(n: int, D: float, count: int, rng: np.random.Generator, barycenter: bool) -> np.ndarray:
    # exponential spacings give uniform samples on the simplex
    e = rng.exponential(size=(count, n))
    x = D * e / e.sum(axis=1, keepdims=True)
    if barycenter:
        x[0] = D / n
    return x


def _pick_best(flows: np.ndarray, x: np.ndarray) -> int:
    top = flows.max()
    tied = np.flatnonzero(flows == top)
    return int(min(tied, key=lambda r: tuple(x[r])))


def kkt_residual(g: Graph, m, support_tol: float = 1e-8) -> float:
    """Smallest ``r`` such that some ``mu`` has ``|grad_i - mu| <= r`` on the
    support (``m_i > support_tol * D``) and ``grad_i <= mu + r`` elsewhere."""
    vals = m.values if isinstance(m, LoadVector) else np.asarray(m, dtype=float)
    D = vals.sum()
    grad = g.flow_factor * (g.matrix @ vals)
    on = vals > support_tol * D
    top = grad.max()
    low = grad[on].min() if on.any() else top
    return float(max(top - low, 0.0) / 2)


def projected_gradient_ascent(g: Graph, D: float = 1.0, params: SolverParams | None = None,
                              record: bool = False) -> SolveReport:
    """Multi-start projected gradient ascent with backtracking.

    Starts are the barycenter plus ``restarts - 1`` seeded uniform simplex
    samples. Each iteration tries step ``1 / (c * max_degree)`` and halves it
    until the projected point does not lower the flow, so every start's flow
    sequence is nondecreasing. A start stops once both the flow gain drops
    below ``tolerance * D**2`` and the move below ``tolerance * D``.
    """
    params = params or SolverParams()
    if not D > 0:
        raise ValueError(f"total load must be positive, got {D}")
    rng = np.random.default_rng(params.seed)
    a, c, n = g.matrix, g.flow_factor, g.n
    x = _starts(n, D, params.restarts, rng, barycenter=True)
    f = _row_flows(a, c, x)
    iters = np.zeros(params.restarts, dtype=int)
    active = np.ones(params.restarts, dtype=bool)
    history = [[v] for v in f.tolist()] if record else None
    step0 = 1.0 / (c * max(g.max_degree, 1))

    for _ in range(params.max_iters):
        rows = np.flatnonzero(active)
        if rows.size == 0:
            break
        xr, fr = x[rows], f[rows]
        grad = c * (xr @ a)
        t = np.full(rows.size, step0)
        new_x, new_f = xr.copy(), fr.copy()
        pending = np.ones(rows.size, dtype=bool)
        for _ in range(_MAX_BACKTRACKS):
            p = np.flatnonzero(pending)
            if p.size == 0:
                break
            trial = _project_rows(xr[p] + t[p, None] * grad[p], D)
            tf = _row_flows(a, c, trial)
            ok = tf >= fr[p]
            new_x[p[ok]], new_f[p[ok]] = trial[ok], tf[ok]
            pending[p[ok]] = False
            t[p[~ok]] *= 0.5
        move = np.abs(new_x - xr).max(axis=1)
        gain = new_f - fr
        x[rows], f[rows] = new_x, new_f
        iters[rows] += 1
        if record:
            for r, v in zip(rows.tolist(), new_f.tolist()):
                history[r].append(v)
        done = (gain < params.tolerance * D * D) & (move < params.tolerance * D)
        active[rows[done]] = False

    best = _pick_best(f, x)
    loads = LoadVector(x[best], D)
    diagnostics = {
        "iterations": int(iters[best]),
        "restarts": params.restarts,
        "converged": bool(not active[best]),
        "iterations_per_start": iters.tolist(),
        "start_flows": f.tolist(),
        "stationarity_residual": kkt_residual(g, loads),
    }
    if record:
        diagnostics["trajectories"] = history
    return SolveReport("qp", loads, flow(g, loads), diagnostics=diagnostics)


def replicator_step(g: Graph, m: LoadVector) -> LoadVector:
    """One replicator update ``m_i <- D * m_i (Am)_i / (m'Am)``."""
    a = g.matrix
    am = a @ m.values
    q = float(m.values @ am)
    if q <= 0:
        raise StationaryZeroError("no edge carries load on both ends; the update is undefined")
    return LoadVector(m.total * m.values * am / q, m.total)


def replicator_solve(g: Graph, params: SolverParams | None = None, D: float = 1.0,
                     record: bool = False) -> SolveReport:
    """Multi-start replicator dynamics from seeded interior points.

    A start stops when an update moves no load by more than
    ``tolerance * D``. The best final flow over starts is reported.
    """
    params = params or SolverParams()
    if not g.edges:
        raise DegenerateGraphError("replicator dynamics need at least one edge")
    if not D > 0:
        raise ValueError(f"total load must be positive, got {D}")
    rng = np.random.default_rng(params.seed)
    a, c = g.matrix, g.flow_factor
    x = _starts(g.n, D, params.restarts, rng, barycenter=False)
    iters = np.zeros(params.restarts, dtype=int)
    active = np.ones(params.restarts, dtype=bool)
    f = _row_flows(a, c, x)
    history = [[v] for v in f.tolist()] if record else None

    for _ in range(params.max_iters):
        rows = np.flatnonzero(active)
        if rows.size == 0:
            break
        xr = x[rows]
        ax = xr @ a
        q = np.einsum("ri,ri->r", xr, ax)
        stuck = q <= 0
        if stuck.all():
            break
        q[stuck] = 1.0
        new_x = np.where(stuck[:, None], xr, D * xr * ax / q[:, None])
        move = np.abs(new_x - xr).max(axis=1)
        x[rows] = new_x
        f[rows] = _row_flows(a, c, new_x)
        iters[rows] += 1
        if record:
            for r, v in zip(rows.tolist(), f[rows].tolist()):
                history[r].append(v)
        active[rows[(move < params.tolerance * D) | stuck]] = False

    if not np.any(f > 0):
        raise DegenerateGraphError("every start stalled with zero flow")
    best = _pick_best(f, x)
    # renormalize against drift from repeated rescaling
    values = x[best] * (D / x[best].sum())
    loads = LoadVector(values, D)
    diagnostics = {
        "iterations": int(iters[best]),
        "restarts": params.restarts,
        "converged": bool(not active[best]),
        "iterations_per_start": iters.tolist(),
        "start_flows": f.tolist(),
    }
    if record:
        diagnostics["trajectories"] = history
    return SolveReport("replicator", loads, flow(g, loads), diagnostics=diagnostics)


def extract_clique_from_support(g: Graph, m: LoadVector, threshold: float = 1e-6) -> CliqueResult:
    """Read a clique off a (near-)stationary load vector.

    Vertices above ``threshold * D`` form the candidate set. While it is not
    a clique, the lightest vertex with a non-neighbor in the set is dropped.
    The clique is then grown greedily (heaviest, then highest degree, then
    lowest index) until maximal.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    vals = m.values
    chosen = [int(v) for v in np.flatnonzero(vals > threshold * m.total)]
    if not chosen:
        raise ExtractionError("no vertex carries load above the threshold")
    while True:
        conflicted = [v for v in chosen if any(w != v and not g.has_edge(v, w) for w in chosen)]
        if not conflicted:
            break
        drop = min(conflicted, key=lambda v: (vals[v], -v))
        chosen.remove(drop)
    common = (1 << g.n) - 1
    for v in chosen:
        common &= g.adjacency[v]
    while common:
        cand = [v for v in range(g.n) if common >> v & 1]
        v = max(cand, key=lambda w: (vals[w], g.degree(w), -w))
        chosen.append(v)
        common &= g.adjacency[v]
    result = CliqueResult(tuple(chosen))
    assert verify_clique(g, result.vertices)
    return result
