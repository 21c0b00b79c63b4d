import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flowmax import (LoadVector, Rule, bipartite_collapse, build_graph, concentrate, equalize, flow,
                     is_bipartite, max_clique_exact, merge_and_equalize, motzkin_straus_bound, nonadjacent_shift,
                     odd_cycle_reduce)
from flowmax.clique import CliqueResult
from flowmax.errors import InvalidCertificateError, InvalidStateError, NoEdgeError, WrongClassError
from flowmax.generators import (complete_bipartite, complete_graph, cycle_graph, path_graph, petersen_graph,
                                random_simplex_point, triangle_with_pendant)

from conftest import graphs_with_loads


def check_trace(g, trace):
    D = trace.initial_loads.total
    assert trace.initial_flow == pytest.approx(flow(g, trace.initial_loads), abs=1e-15 * D * D)
    for step in trace.steps:
        assert step.flow_after >= step.flow_before - 1e-12 * D * D
        assert abs(sum(step.loads_after) - D) <= 1e-12 * D
        assert min(step.loads_after) >= 0
        assert step.flow_after == pytest.approx(flow(g, step.loads_after), rel=1e-12, abs=1e-15)
    if trace.steps:
        assert np.allclose(trace.final_loads.values, trace.steps[-1].loads_after, rtol=0, atol=0)
    assert trace.is_monotone()


# --------------------------------------------------------------- bipartite

def test_collapse_c4_equal():
    g = cycle_graph(4)
    t = bipartite_collapse(g, is_bipartite(g), LoadVector.uniform(4))
    check_trace(g, t)
    assert t.initial_flow == pytest.approx(4 * 0.0625)
    assert sorted(t.final_loads.values.tolist()) == [0, 0, 0.5, 0.5]
    u, v = t.clique
    assert g.has_edge(u, v) and t.final_loads[u] == t.final_loads[v] == 0.5
    assert t.final_flow == pytest.approx(0.25)


def test_collapse_path_zero_flow():
    g = path_graph(3)
    t = bipartite_collapse(g, ({0, 2}, {1}), LoadVector([0.5, 0, 0.5]))
    check_trace(g, t)
    assert t.final_flow == 0.0
    assert max(t.final_loads.values) == 1.0
    u, v = t.clique
    assert g.has_edge(u, v)


def test_collapse_k22():
    g = complete_bipartite(2, 2)
    m = LoadVector([0.7, 0.1, 0.1, 0.1])
    t = bipartite_collapse(g, ({0, 1}, {2, 3}), m)
    check_trace(g, t)
    assert t.final_loads.values == pytest.approx([0.8, 0, 0.2, 0])
    assert t.initial_flow == pytest.approx(0.7 * 0.2 + 0.1 * 0.2)
    assert t.final_flow == pytest.approx(0.16)


def test_collapse_edgeless_raises():
    g = build_graph(3, [])
    with pytest.raises(NoEdgeError):
        bipartite_collapse(g, ({0, 1, 2}, set()), LoadVector.uniform(3))


def test_collapse_rejects_bad_parts():
    g = path_graph(3)
    with pytest.raises(InvalidStateError):
        bipartite_collapse(g, ({0, 1}, {2}), LoadVector.uniform(3))


def test_collapse_nonadjacent_leftovers_get_joined():
    # two components; X load on 0 and Y load on 3 end up nonadjacent
    g = build_graph(4, [(0, 1), (2, 3)])
    t = bipartite_collapse(g, ({0, 2}, {1, 3}), LoadVector([0.5, 0, 0, 0.5]))
    check_trace(g, t)
    u, v = t.clique
    assert g.has_edge(u, v)
    assert t.final_flow == pytest.approx(0.25)


def test_collapse_isolated_vertex_load():
    g = build_graph(3, [(0, 1)])
    t = bipartite_collapse(g, ({0, 2}, {1}), LoadVector([0, 0, 1.0]))
    check_trace(g, t)
    assert t.clique == (0, 1)
    assert t.final_loads[0] == 1.0


@given(st.integers(2, 12), st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_collapse_final_flow_is_product_of_part_sums(n, seed):
    from flowmax.generators import random_connected_bipartite
    g = random_connected_bipartite(n, seed)
    rng = np.random.default_rng(seed)
    x, y = is_bipartite(g)
    m = LoadVector(random_simplex_point(n, rng))
    t = bipartite_collapse(g, (x, y), m)
    check_trace(g, t)
    sx = sum(m[v] for v in x)
    sy = sum(m[v] for v in y)
    assert t.final_flow == pytest.approx(sx * sy, rel=1e-12, abs=1e-15)
    assert t.final_flow >= t.initial_flow - 1e-12
    assert len(t.final_loads.support) <= 2


# -------------------------------------------------------------- odd cycles

def test_odd_cycle_equal_start():
    g = cycle_graph(5)
    t = odd_cycle_reduce(g, LoadVector.uniform(5))
    check_trace(g, t)
    assert t.initial_flow == pytest.approx(0.2)
    assert t.final_flow == pytest.approx(0.25, abs=1e-12)


def test_odd_cycle_equal_first_move_is_distance_two():
    g = cycle_graph(5)
    t = odd_cycle_reduce(g, LoadVector.uniform(5))
    first = t.steps[0]
    assert (first.source, first.target, first.rule) == (0, 2, Rule.ODD_CYCLE_CASE_B)
    assert list(first.loads_after) == pytest.approx([0, 0.2, 0.4, 0.2, 0.2])
    assert first.flow_after == pytest.approx(0.2)


def test_odd_cycle_single_support():
    g = cycle_graph(7)
    m = LoadVector([1, 0, 0, 0, 0, 0, 0])
    t = odd_cycle_reduce(g, m, equalize=False)
    check_trace(g, t)
    assert t.final_flow == 0.0
    assert odd_cycle_reduce(g, m).final_flow == pytest.approx(0.25)


def test_odd_cycle_wrong_class():
    for g in (cycle_graph(3), cycle_graph(6), petersen_graph(), path_graph(5)):
        with pytest.raises(WrongClassError):
            odd_cycle_reduce(g, LoadVector.uniform(g.n))


def test_odd_cycle_relabeled():
    perm = [3, 0, 4, 1, 6, 2, 5]
    g = build_graph(7, [(perm[i], perm[(i + 1) % 7]) for i in range(7)])
    rng = np.random.default_rng(1)
    for _ in range(20):
        t = odd_cycle_reduce(g, LoadVector(random_simplex_point(7, rng)))
        check_trace(g, t)
        assert t.final_flow == pytest.approx(0.25, abs=1e-12)


def test_odd_cycle_cases_all_exercised():
    rng = np.random.default_rng(7)
    seen = set()
    for n in (5, 7, 9, 11):
        g = cycle_graph(n)
        for _ in range(100):
            t = odd_cycle_reduce(g, LoadVector(random_simplex_point(n, rng)))
            check_trace(g, t)
            seen.add(t.steps[0].rule)
    assert {Rule.ODD_CYCLE_CASE_A, Rule.ODD_CYCLE_CASE_B, Rule.ODD_CYCLE_CASE_C} <= seen


# ------------------------------------------------------------ nonadjacent

def test_nonadjacent_c5_equal_is_neutral():
    g = cycle_graph(5)
    step = nonadjacent_shift(g, LoadVector.uniform(5))
    assert step is not None
    assert (step.source, step.target) == (0, 2)
    assert step.flow_after == pytest.approx(step.flow_before)


def test_nonadjacent_clique_support_absent():
    assert nonadjacent_shift(complete_graph(4), LoadVector([0.1, 0.2, 0.3, 0.4])) is None


def test_nonadjacent_path_zero_flow():
    step = nonadjacent_shift(path_graph(4), LoadVector([0.5, 0, 0, 0.5]))
    assert (step.source, step.target) == (0, 3)
    assert list(step.loads_after) == [0, 0, 0, 1]
    assert step.flow_before == step.flow_after == 0


def test_nonadjacent_picks_max_gain():
    # star center 0 with leaves 1..3 and an extra vertex 4 attached to leaf 3
    g = build_graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    m = LoadVector([0.4, 0.1, 0.1, 0.2, 0.2])
    step = nonadjacent_shift(g, m)
    x = m.values
    phi = g.matrix @ x
    best = max(((x[i] * (phi[j] - phi[i]), i, j) for i in range(5) for j in range(5)
                if i != j and not g.has_edge(i, j) and phi[i] <= phi[j]),
               key=lambda t: (t[0], -t[1], -t[2]))
    assert (step.source, step.target) == best[1:]
    assert step.gain == pytest.approx(best[0])


# ------------------------------------------------------------------ merge

def two_triangles():
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_merge_two_triangles():
    g = two_triangles()
    m = LoadVector([0.2, 0.2, 0.2, 0.4 / 3, 0.4 / 3, 0.4 / 3])
    t = merge_and_equalize(g, m)
    check_trace(g, t)
    assert t.initial_flow == pytest.approx(0.6 ** 2 / 3 + 0.4 ** 2 / 3)
    assert t.final_flow == pytest.approx(1 / 3)
    assert t.final_loads.values[:3] == pytest.approx([1 / 3] * 3)
    assert t.steps[0].rule == Rule.CLIQUE_MERGE


def test_merge_prefers_larger_clique_even_if_lighter():
    g = build_graph(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    t = merge_and_equalize(g, LoadVector([0.45, 0.45, 0.1 / 3, 0.1 / 3, 0.1 / 3]))
    check_trace(g, t)
    assert t.clique == (2, 3, 4)
    assert t.final_flow == pytest.approx(1 / 3)


def test_merge_single_edge():
    g = complete_graph(2)
    t = merge_and_equalize(g, LoadVector([0.3, 0.7]))
    check_trace(g, t)
    assert t.final_loads.values == pytest.approx([0.5, 0.5])
    assert t.initial_flow == pytest.approx(0.21)
    assert t.final_flow == pytest.approx(0.25)


def test_merge_single_vertex_unchanged():
    g = path_graph(3)
    t = merge_and_equalize(g, LoadVector([0, 1.0, 0]))
    assert not t.steps and t.final_flow == 0


def test_merge_rejects_non_clique_support():
    with pytest.raises(InvalidStateError):
        merge_and_equalize(path_graph(3), LoadVector.uniform(3))


def test_equalize_requires_all_load_inside():
    with pytest.raises(InvalidStateError):
        equalize(path_graph(3), LoadVector.uniform(3), (0, 1))


# ------------------------------------------------------------ concentrate

def test_concentrate_k5():
    g = complete_graph(5)
    t = concentrate(g, LoadVector([0.5, 0.1, 0.1, 0.2, 0.1]), max_clique_exact(g))
    check_trace(g, t)
    assert t.final_loads.values == pytest.approx([0.2] * 5)
    assert t.final_flow == pytest.approx(0.4, abs=1e-12)


def test_concentrate_petersen_equal():
    g = petersen_graph()
    t = concentrate(g, LoadVector.uniform(10), max_clique_exact(g))
    check_trace(g, t)
    assert t.initial_flow == pytest.approx(15 * 0.01)
    u, v = t.final_loads.support
    assert g.has_edge(u, v)
    assert t.final_loads[u] == pytest.approx(0.5)
    assert t.final_flow == pytest.approx(0.25, abs=1e-12)


def test_concentrate_c5_equal():
    g = cycle_graph(5)
    t = concentrate(g, LoadVector.uniform(5), max_clique_exact(g))
    assert t.final_flow == pytest.approx(0.25, abs=1e-12)


def test_concentrate_relocates_to_larger_clique():
    g = triangle_with_pendant()
    t = concentrate(g, LoadVector([0, 0, 0, 1.0]), max_clique_exact(g))
    check_trace(g, t)
    assert t.steps[-1].rule == Rule.CLIQUE_MERGE
    assert t.final_flow == pytest.approx(1 / 3)


def test_concentrate_rejects_bad_certificate():
    with pytest.raises(InvalidCertificateError):
        concentrate(cycle_graph(5), LoadVector.uniform(5), CliqueResult((0, 2)))


@given(graphs_with_loads(max_n=10))
@settings(max_examples=300, deadline=None)
def test_concentrate_properties(gm):
    g, m = gm
    w = max_clique_exact(g)
    t = concentrate(g, m, w)
    check_trace(g, t)
    D = m.total
    assert t.final_flow == pytest.approx(motzkin_straus_bound(w.size, D, g.flow_factor), abs=1e-12 * D * D)
    shifts = [s for s in t.steps if s.rule == Rule.NONADJACENT]
    assert len(shifts) <= g.n - 1
    # support never grows during the whole-load shifts
    sizes = [len(m.support)] + [sum(v > 0 for v in s.loads_after) for s in shifts]
    assert all(b <= a - 1 for a, b in zip(sizes, sizes[1:]))


@given(graphs_with_loads(max_n=10))
@settings(max_examples=200, deadline=None)
def test_nonadjacent_shift_never_loses(gm):
    g, m = gm
    step = nonadjacent_shift(g, m)
    if step is None:
        support = m.support
        assert all(g.has_edge(u, v) for u in support for v in support if u < v)
    else:
        assert step.flow_after >= step.flow_before - 1e-12 * m.total ** 2
        assert step.loads_after[step.source] == 0
