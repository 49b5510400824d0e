import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from degdev.chemical import (
    ChemicalCounts,
    ChemicalReport,
    InfeasibleError,
    check_counts_vectorised,
    check_graph,
    degree_counts,
    is_feasible,
    n1_n2_from_identity,
    random_chemical_graph,
    s_chemical,
    s_chemical_tree,
    s_from_counts,
    s_unicyclic_chemical,
    sample_seeds,
    verify_chemical,
    verify_exhaustive,
    verify_tree_bound,
)
from degdev.families import complete_split, make_cycle, make_path
from degdev.graph import GraphError, deviation, make_graph

from conftest import connected_graphs


def test_degree_counts_examples():
    assert degree_counts(make_path(5)) == ChemicalCounts(2, 3, 0, 0, n=5, c=0)
    g = make_graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (0, 5)])
    assert degree_counts(g) == ChemicalCounts(2, 3, 0, 1, n=6, c=1)
    with pytest.raises(GraphError, match="not a chemical graph"):
        degree_counts(complete_split(6, 6))


@pytest.mark.parametrize("args,expected", [
    ((0, 10, 1, 0), (3, 6)),
    ((1, 6, 0, 1), (2, 3)),
    ((2, 4, 2, 0), (0, 2)),
])
def test_identity_examples(args, expected):
    assert n1_n2_from_identity(*args) == expected


def test_identity_rejects_negative():
    with pytest.raises(InfeasibleError):
        n1_n2_from_identity(3, 4, 0, 0)


def test_tree_formula_examples():
    assert s_chemical_tree(5, 0, 0) == Fraction(12, 5)
    assert s_chemical_tree(7, 1, 0) == Fraction(30, 7)
    assert s_chemical_tree(5, 0, 1) == Fraction(24, 5)
    star = complete_split(5, 1)
    assert deviation(star) == s_from_counts(degree_counts(star)) == Fraction(24, 5)


def test_unicyclic_formula_examples():
    assert s_unicyclic_chemical(0, 0) == 0
    assert s_unicyclic_chemical(1, 0) == 2
    assert s_unicyclic_chemical(0, 1) == 4
    assert deviation(make_cycle(7)) == 0


def test_general_formula_examples():
    assert s_chemical(4, 2, 2, 0) == 2
    assert s_chemical(5, 5, 2, 3) == Fraction(12, 5)
    assert s_chemical(4, 3, 4, 0) == 0
    assert deviation(complete_split(4, 4)) == 0
    with pytest.raises(InfeasibleError):
        s_chemical(4, 1, 0, 0)
    with pytest.raises(InfeasibleError):
        s_chemical(4, 6, 0, 4)


def test_cyclomatic_ceiling_is_four_regular():
    for n in range(5, 12):
        assert s_chemical(n, n + 1, 0, n) == 0


@given(st.integers(2, 15), st.data())
def test_branches_agree_on_boundary(c, data):
    n = 2 * c - 2
    n4 = data.draw(st.integers(0, n))
    n3 = data.draw(st.integers(0, n - n4))
    try:
        n1_n2_from_identity(c, n, n3, n4)
    except InfeasibleError:
        return
    low = Fraction((2 * n - 4 * c + 4) * n3 + (4 * n - 4 * c + 4) * n4, n)
    assert low == s_chemical(n, c, n3, n4)


@given(connected_graphs(min_n=2, max_n=12))
def test_formula_matches_direct_computation(g):
    if max(g.degrees()) > 4:
        return
    assert check_graph(g) is None
    assert deviation(g) == s_from_counts(degree_counts(g))


def test_sampler_is_deterministic():
    assert random_chemical_graph(12, 3, 42) == random_chemical_graph(12, 3, 42)
    assert sample_seeds(0, 10, 2, 5) == sample_seeds(0, 10, 2, 5)
    assert sample_seeds(0, 10, 2, 5) != sample_seeds(1, 10, 2, 5)


@pytest.mark.parametrize("n,c", [(3, 0), (6, 2), (10, 0), (15, 5), (20, 21)])
def test_sampler_output_shape(n, c):
    for seed in range(20):
        g = random_chemical_graph(n, c, seed)
        counts = degree_counts(g)
        assert counts.c == c and g.m == n + c - 1
        assert check_graph(g) is None


def test_sampler_regular_extreme_and_infeasible():
    g = random_chemical_graph(6, 7, 1)
    assert set(g.degrees()) == {4} and deviation(g) == 0
    assert not is_feasible(5, 8)
    with pytest.raises(InfeasibleError):
        random_chemical_graph(5, 8, 0)


def test_vectorised_check_flags_corruption():
    g = make_path(5)
    deg = np.array([g.degrees(), g.degrees()])
    assert not check_counts_vectorised(5, deg, np.array([4, 4])).any()
    assert check_counts_vectorised(5, deg, np.array([4, 5])).tolist() == [False, True]


def test_tree_bound_counts():
    for n in range(3, 6):
        res = verify_tree_bound(n)
        assert res.chemical_trees == n ** (n - 2)
        assert res.paths == math.factorial(n) // 2
        assert res.minimum_n_s == 4 * (n - 2)
    res = verify_tree_bound(6)
    # trees on 6 vertices with a degree-5 vertex are the 6 labeled stars
    assert res.chemical_trees == 6 ** 4 - 6


def test_exhaustive_small():
    rep = verify_exhaustive(5, ChemicalReport())
    assert rep.failure is None
    assert rep.exhaustive_graphs == 1 + 4 + 38 + 728


def test_verify_chemical_reduced_run():
    rep = verify_chemical(n_min=3, n_max=9, c_max=10, samples=20, exhaustive_n=5, tree_n=6)
    assert rep.failure is None
    assert rep.sampled_graphs > 0 and rep.high_branch > 0 and rep.low_branch > 0
