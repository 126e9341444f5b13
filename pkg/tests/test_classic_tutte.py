import random

import pytest

from permtutte.classic_tutte import (
    activities_poly,
    decompose_check,
    transfer_check,
    tree_summands,
    tutte_del_con,
    tutte_subset_oracle,
)
from permtutte.corpus import connected_multigraphs, random_connected_multigraph
from permtutte.errors import Disconnected, InvalidArgs, TooLarge
from permtutte.graphs import MultiGraph, example_graph, spanning_trees, triangle
from permtutte.ratpoly import parse_poly

K4 = MultiGraph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def test_known_polynomials():
    assert tutte_del_con(triangle()) == parse_poly("x^2 + x + y")
    assert tutte_del_con(MultiGraph(2, [(1, 2), (1, 2)])) == parse_poly("x + y")
    assert tutte_del_con(MultiGraph(1, [(1, 1)])) == parse_poly("y")
    assert tutte_del_con(MultiGraph(1, [])) == parse_poly("1")
    assert tutte_del_con(K4) == parse_poly("x^3 + y^3 + 3*x^2 + 4*x*y + 3*y^2 + 2*x + 2*y")


def test_three_methods_agree():
    rng = random.Random(8)
    for _ in range(80):
        G = random_connected_multigraph(8, rng)
        ref = tutte_subset_oracle(G)
        assert tutte_del_con(G) == ref
        labels = list(range(1, G.m + 1))
        rng.shuffle(labels)
        assert activities_poly(G, labels) == ref


def test_evaluations_count_trees():
    for layer in connected_multigraphs(5):
        for G in layer:
            T = tutte_del_con(G)
            assert T(1, 1) == len(spanning_trees(G))
            assert T(2, 2) == 2**G.m


def test_labeling_validation():
    with pytest.raises(InvalidArgs):
        activities_poly(triangle(), [1, 1, 2])
    with pytest.raises(InvalidArgs):
        activities_poly(triangle(), [1, 2])
    with pytest.raises(Disconnected):
        activities_poly(MultiGraph(3, [(1, 2)]))
    with pytest.raises(TooLarge):
        tutte_subset_oracle(MultiGraph(2, [(1, 2)] * 21))


def test_decomposition_example_graph():
    lhs, rhs = decompose_check(example_graph())
    assert lhs == rhs
    assert len(tree_summands(example_graph())) == len(spanning_trees(example_graph()))


def test_decomposition_small_multigraphs():
    for layer in connected_multigraphs(5):
        for G in layer:
            lhs, rhs = decompose_check(G)
            assert lhs == rhs, G


def test_transfer_check():
    rep = transfer_check(K4, ((4, 0), (0, 4), (2, 2)))
    assert rep.graph_holds
    assert rep.graph_lhs == tutte_del_con(K4)(4, 0) * tutte_del_con(K4)(0, 4)
    assert isinstance(rep.trees_hold, bool)
    with pytest.raises(InvalidArgs):
        transfer_check(K4, ((-1, 0), (0, 4), (2, 2)))
