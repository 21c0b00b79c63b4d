import numpy as np
import pytest
from hypothesis import strategies as st

from flowmax import LoadVector, build_graph

ACCEPTANCE_RESULTS = {}


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


@st.composite
def graphs_with_loads(draw, min_n=1, max_n=9, total=None):
    g = draw(graphs(min_n, max_n))
    weights = draw(st.lists(st.floats(0, 1, allow_nan=False), min_size=g.n, max_size=g.n))
    # sparsify sometimes so zero loads and small supports get exercised
    mask = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    vals = np.array([w if keep else 0.0 for w, keep in zip(weights, mask)])
    if vals.sum() == 0:
        vals[draw(st.integers(0, g.n - 1))] = 1.0
    D = total if total is not None else draw(st.sampled_from([1.0, 0.5, 3.0, 10.0]))
    vals = D * vals / vals.sum()
    vals[np.argmax(vals)] += D - vals.sum()
    return g, LoadVector(vals, D)


@pytest.fixture
def rng():
    return np.random.default_rng(20260915)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, label = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {label}")
