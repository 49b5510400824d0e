import itertools

import pytest
from hypothesis import settings, strategies as st

from degdev.graph import make_graph, pairs

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    chosen = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return make_graph(n, [p for p, keep in zip(pairs(n), chosen) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=9):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    extra = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    edges |= {p for p, keep in zip(pairs(n), extra) if keep}
    return make_graph(n, sorted(edges))


def naive_connected(n, edges):
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for u, v in edges:
        comp[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1


def naive_bridges(g):
    edges = g.edges()
    return {e for e in edges if not naive_connected(g.n, [f for f in edges if f != e])}


@pytest.fixture
def p4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star4():
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def c4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def all_graphs(n):
    ps = pairs(n)
    for bits in itertools.product((0, 1), repeat=len(ps)):
        yield make_graph(n, [p for p, b in zip(ps, bits) if b])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (k[0], k)):
        terminalreporter.write_line(results[key])
