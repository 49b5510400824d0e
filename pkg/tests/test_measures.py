import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from degdev.families import complete_split, make_cycle, make_path
from degdev.graph import GraphError, make_graph, scaled_deviation
from degdev.measures import (
    ConvergenceError,
    adjacency_matrix,
    albertson_irregularity,
    nikiforov_bounds,
    spectral_radius,
    spectral_radius_batch,
    total_irregularity,
)

from conftest import connected_graphs, graphs


def pair_sum(g):
    deg = g.degrees()
    return sum(abs(a - b) for a, b in itertools.combinations(deg, 2))


def test_albertson_examples(p4, star4):
    assert albertson_irregularity(make_cycle(5)) == 0
    assert albertson_irregularity(p4) == 2
    assert albertson_irregularity(star4) == 6


def test_total_irregularity_examples(c4, p4, star4):
    assert total_irregularity(c4) == 0
    assert total_irregularity(p4) == 4
    assert total_irregularity(star4) == 6


@given(graphs(max_n=14))
def test_total_irregularity_prefix_sum_matches_pairs(g):
    assert total_irregularity(g) == pair_sum(g)


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_integer_measures_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert albertson_irregularity(h) == albertson_irregularity(g)
    assert total_irregularity(h) == total_irregularity(g)
    assert scaled_deviation(h) == scaled_deviation(g)


@given(connected_graphs(min_n=2, max_n=10), st.randoms(use_true_random=False))
def test_spectral_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert abs(spectral_radius(g.relabel(perm)) - spectral_radius(g)) < 1e-9


def test_spectral_examples(c4, star4):
    assert spectral_radius(c4) == pytest.approx(2.0, abs=1e-9)
    assert spectral_radius(star4) == pytest.approx(math.sqrt(3), abs=1e-9)
    assert spectral_radius(complete_split(4, 4)) == pytest.approx(3.0, abs=1e-9)


def test_spectral_bipartite_converges():
    # even paths and cycles have -mu in the spectrum; the unshifted iteration would stall
    assert spectral_radius(make_path(6)) == pytest.approx(2 * math.cos(math.pi / 7), abs=1e-8)
    assert spectral_radius(make_cycle(8)) == pytest.approx(2.0, abs=1e-9)


@given(connected_graphs(min_n=2, max_n=12))
def test_spectral_matches_eigvalsh(g):
    expected = np.linalg.eigvalsh(adjacency_matrix(g)).max()
    assert spectral_radius(g, tolerance=1e-12) == pytest.approx(expected, abs=1e-7)


def test_spectral_batch_matches_single():
    rng = random.Random(3)
    gs = []
    while len(gs) < 40:
        n = rng.randint(2, 8)
        g = make_graph(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < 0.5])
        from degdev.graph import is_connected
        if is_connected(g):
            gs.append(g)
    for n in {g.n for g in gs}:
        same = [g for g in gs if g.n == n]
        batch = spectral_radius_batch(np.stack([adjacency_matrix(g) for g in same]), tolerance=1e-12)
        for g, mu in zip(same, batch):
            assert mu == pytest.approx(spectral_radius(g, tolerance=1e-12), abs=1e-8)


def test_spectral_errors():
    with pytest.raises(GraphError):
        spectral_radius(make_graph(3, [(0, 1)]))
    with pytest.raises(ValueError):
        spectral_radius(make_path(3), tolerance=0)
    with pytest.raises(ConvergenceError) as exc:
        spectral_radius(make_path(8), tolerance=1e-15, max_iter=2)
    assert exc.value.estimate > 0


def test_nikiforov_regular(c4):
    rep = nikiforov_bounds(c4)
    assert rep.lower == 0 and rep.upper == 0
    assert abs(rep.gap) < 1e-9 and rep.holds


def test_nikiforov_star(star4):
    rep = nikiforov_bounds(star4)
    # s = 3, n = 4, m = 3, mu = sqrt(3)
    assert rep.lower == pytest.approx(9 / (32 * math.sqrt(6)), abs=1e-12)
    assert rep.lower == pytest.approx(0.1148, abs=5e-5)
    assert rep.gap == pytest.approx(math.sqrt(3) - 1.5, abs=1e-9)
    assert rep.upper == pytest.approx(math.sqrt(3), abs=1e-12)
    assert rep.holds


def test_nikiforov_complete_split():
    rep = nikiforov_bounds(complete_split(6, 2))
    # mu of CS(6,2) is the positive root of x^2 - x - 8 = 0
    assert rep.mu == pytest.approx((1 + math.sqrt(33)) / 2, abs=1e-9)
    assert rep.holds


@given(connected_graphs(min_n=2, max_n=12))
def test_nikiforov_holds_random(g):
    assert nikiforov_bounds(g).holds


@given(graphs(max_n=12))
def test_albertson_cap(g):
    assert 27 * albertson_irregularity(g) < 4 * g.n ** 3 or g.n == 0
