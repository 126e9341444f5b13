from fractions import Fraction

import networkx as nx
import pytest

from oracles import tree_value
from permtutte.errors import InvalidArgs, TooSmall
from permtutte.graphs import canonical_code, make_bipartite, path_graph, star_graph
from permtutte.perm_tutte import evaluate
from permtutte.trees import (
    TABLE_COUNTS,
    count_free_trees,
    free_tree_levels,
    gen_free_trees,
    levels_to_graph,
    matches_table,
    render_4dp,
    shared_vertex,
    split_vertex,
    survey,
    tree_decompose,
    tree_p2,
)


def test_counts_against_networkx():
    for m in range(2, 11):
        assert count_free_trees(m) == sum(1 for _ in nx.nonisomorphic_trees(m)) == TABLE_COUNTS[m]


def test_no_duplicates_and_all_trees():
    for m in range(2, 11):
        codes = [canonical_code(T, side_sensitive=False) for T in gen_free_trees(m)]
        assert len(set(codes)) == len(codes)
        for T in gen_free_trees(m):
            assert T.is_tree() and T.num_vertices == m


def test_levels_to_graph_is_proper_colouring():
    for levels in free_tree_levels(7):
        T = levels_to_graph(levels)
        assert all(T.side(u) != T.side(v) for u, v in T.edges)


def test_tree_p2_against_oracle():
    for m in range(2, 10):
        for levels in free_tree_levels(m):
            T = levels_to_graph(levels)
            adj = {v: set(T.neighbors(v)) for v in T.vertices}
            a = set(T.side_a)
            expected = tree_value(adj, a, 2, 0) * tree_value(adj, a, 0, 2)
            assert tree_p2(levels) == expected


def test_p2_is_swap_invariant_on_trees():
    from permtutte.graphs import swap_sides
    from permtutte.verify import cmw_product

    for T in gen_free_trees(8):
        assert cmw_product(T, 2) == cmw_product(swap_sides(T), 2)


def test_small_survey_rows():
    row = survey(5)
    assert (row.tree_count, row.pi_min, row.pi_min_4dp) == (3, Fraction(68, 45), "1.5111")
    assert survey(2).pi_min == 1
    assert survey(4).pi_min == Fraction(49, 36)
    assert survey(6).pi_min == Fraction(473, 300)
    row = survey(9, jobs=2)
    assert row == survey(9)
    assert row.tsv().split("\t")[:2] == ["9", "47"]
    with pytest.raises(TooSmall):
        survey(1)


def test_rendering():
    assert render_4dp(Fraction(473, 300)) == "1.5767"
    assert render_4dp(Fraction(473, 300), "truncate") == "1.5766"
    assert render_4dp(Fraction(1, 20000)) == "0.0001"
    assert render_4dp(Fraction(-1, 3)) == "-0.3333"
    assert matches_table(Fraction(473, 300), "1.5766")
    assert matches_table(Fraction(473, 300), "1.5767")
    assert matches_table(Fraction(1), "1")
    assert not matches_table(Fraction(473, 300), "1.5768")
    with pytest.raises(InvalidArgs):
        render_4dp(Fraction(1), "floor")


def _check_decomposition(T):
    M = T.num_edges
    H1, H2 = tree_decompose(T)
    e1, e2 = set(map(frozenset, H1.edges)), set(map(frozenset, H2.edges))
    assert not e1 & e2
    assert e1 | e2 == set(map(frozenset, T.edges))
    assert H1.is_tree() and H2.is_tree()
    assert shared_vertex(H1, H2) is not None
    assert 3 * len(e1) >= M and 3 * len(e2) >= M
    return len(e1), len(e2)


def test_decomposition_examples():
    assert sorted(_check_decomposition(path_graph(7))) == [3, 3]
    assert sorted(_check_decomposition(star_graph(5))) == [2, 3]
    for k in range(1, 5):
        edges = [((0,), (leg, 1)) for leg in range(3)]
        edges += [((leg, i), (leg, i + 1)) for leg in range(3) for i in range(1, k)]
        verts = [(0,)] + [(leg, i) for leg in range(3) for i in range(1, k + 1)]
        side = {(0,): 0}
        side.update({(leg, i): i % 2 for leg in range(3) for i in range(1, k + 1)})
        spider = make_bipartite([v for v in verts if side[v] == 0], [v for v in verts if side[v] == 1], edges)
        assert min(_check_decomposition(spider)) == k


def test_decomposition_small_trees():
    for m in range(3, 11):
        for T in gen_free_trees(m):
            _check_decomposition(T)
    with pytest.raises(TooSmall):
        split_vertex(path_graph(2))


def test_tree_values_match_recursion_on_paths():
    for n in (8, 13):
        P = path_graph(n)
        adj = {v: set(P.neighbors(v)) for v in P.vertices}
        assert evaluate(P, (0, 2)) == tree_value(adj, set(P.side_a), 0, 2)
