import random
from fractions import Fraction

import pytest

from oracles import naive_poly, tree_value, volume_alt
from permtutte.corpus import bipartite_graphs_upto, random_bipartite, random_simple_graph
from permtutte.errors import BudgetExceeded, InvalidArgs, NotSimple, TooLarge
from permtutte.graphs import (
    HabcSpec,
    MultiGraph,
    complete_bipartite,
    make_bipartite,
    make_habc,
    path_graph,
    star_graph,
    swap_sides,
    triangle,
)
from permtutte.perm_tutte import (
    EvalPoint,
    activity_counts,
    alt,
    alt_general,
    brute_force_poly,
    clear_caches,
    complete_bipartite_eval,
    complete_bipartite_poly,
    compute_poly,
    coefficient_support_ok,
    evaluate,
    extreme_coefficients,
    habc_eval,
    mc_max_tree_prob,
    monte_carlo_eval,
    multivar_brute_force,
)
from permtutte.ratpoly import BiPoly, parse_poly, poly_eval
from permtutte.trees import gen_free_trees

P5 = path_graph(5)
P5_POLY = parse_poly("2/15*x^3 + 4/15*x^2 + 1/3*x*y + 2/15*y^2 + 1/15*x + 1/15*y")


def _naive(H):
    return BiPoly(naive_poly(H.side_a, H.side_b, H.edges))


def test_path_polynomial():
    assert compute_poly(P5) == P5_POLY
    assert brute_force_poly(P5) == P5_POLY
    assert _naive(P5) == P5_POLY


def test_frozen_values():
    assert evaluate(P5, (2, 2)) == Fraction(64, 15)
    assert evaluate(P5, (2, 0)) == Fraction(34, 15)
    assert evaluate(star_graph(3), (0, 2)) == Fraction(7, 2)
    assert compute_poly(complete_bipartite(2, 2)) == parse_poly("1/6*x^2 + 1/6*y^2 + 1/3*x + 1/3*y")


def test_activity_counts_total():
    counts = activity_counts(P5)
    assert sum(counts.values()) == 120
    assert all(c.ia + c.ea <= 3 for c in counts)


def test_recursion_matches_naive_permutations():
    for H in bipartite_graphs_upto(6):
        assert compute_poly(H) == _naive(H), H


def test_recursion_matches_brute_force_seven_vertices():
    for H in bipartite_graphs_upto(7, 7):
        assert compute_poly(H) == brute_force_poly(H)


def test_evaluate_agrees_with_polynomial():
    rng = random.Random(5)
    for _ in range(40):
        H = random_bipartite(rng.randint(1, 9), rng)
        p = compute_poly(H)
        x, y = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        assert evaluate(H, EvalPoint(x, y)) == poly_eval(p, x, y)


def test_swap_duality_and_normalisation():
    for H in bipartite_graphs_upto(6):
        p = compute_poly(H)
        assert compute_poly(swap_sides(H)) == p.swap()
        assert p(1, 1) == 1
        assert all(c > 0 for c in p.terms.values())


def test_support_is_downward_closed_for_connected_graphs():
    for H in bipartite_graphs_upto(7, 1):
        if H.is_connected():
            assert coefficient_support_ok(compute_poly(H)), H
    assert not coefficient_support_ok(compute_poly(make_bipartite([], [1, 2], [])))


def test_top_coefficients_coincide():
    for H in bipartite_graphs_upto(7, 1):
        if not H.has_isolated():
            p = compute_poly(H)
            assert p.coeff(len(H.side_a), 0) == p.coeff(0, len(H.side_b))


def test_isolated_vertices_give_factors():
    H = make_bipartite([1, 3], [2, 4], [(1, 2)])
    assert compute_poly(H) == compute_poly(complete_bipartite(1, 1)) * BiPoly({(1, 1): 1})


def test_complete_bipartite_closed_form():
    for a in range(1, 4):
        for b in range(1, 4):
            p = complete_bipartite_poly(a, b)
            assert p == brute_force_poly(complete_bipartite(a, b))
            assert complete_bipartite_eval(a, b, 3, Fraction(1, 2)) == p(3, Fraction(1, 2))
    with pytest.raises(InvalidArgs):
        complete_bipartite_poly(0, 2)


def test_trees_against_independent_dp():
    for m in range(2, 12):
        for T in list(gen_free_trees(m))[:15]:
            adj = {v: set(T.neighbors(v)) for v in T.vertices}
            for pt in [(2, 0), (0, 2), (3, Fraction(1, 2)), (Fraction(-1, 3), 5)]:
                assert evaluate(T, pt) == tree_value(adj, set(T.side_a), *pt)


def test_large_path_against_dp():
    P = path_graph(40)
    adj = {v: set(P.neighbors(v)) for v in P.vertices}
    assert evaluate(P, (2, 0)) == tree_value(adj, set(P.side_a), 2, 0)


def test_alt_matches_volume():
    for H in bipartite_graphs_upto(6, 1):
        if H.has_isolated():
            continue
        index = {v: i for i, v in enumerate(H.vertices)}
        vol = volume_alt(H.num_vertices, [(index[u], index[v]) for u, v in H.edges])
        assert alt(H) == vol
        assert extreme_coefficients(H) == (vol, vol)


def test_alt_path_is_euler_number():
    # zigzag numbers 1, 1, 1, 2, 5, 16, 61, 272
    from math import factorial

    for n, e in [(2, 1), (3, 2), (4, 5), (5, 16), (6, 61), (7, 272)]:
        assert alt(path_graph(n)) == Fraction(e, factorial(n))


def test_alt_general_matches_volume():
    rng = random.Random(17)
    for _ in range(25):
        G = random_simple_graph(rng.randint(2, 6), rng)
        vol = volume_alt(G.n, [(u - 1, v - 1) for u, v in G.edges])
        assert alt_general(G) == vol
    assert alt_general(triangle()) == volume_alt(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotSimple):
        alt_general(MultiGraph(2, [(1, 2), (1, 2)]))


def test_alt_general_bounds():
    import networkx as nx

    for g in nx.graph_atlas_g()[1:]:
        n = g.number_of_nodes()
        if n < 2 or any(d == 0 for _, d in g.degree()):
            continue
        G = MultiGraph(n, [(u + 1, v + 1) for u, v in g.edges()])
        Kn = MultiGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])
        assert alt_general(Kn) == Fraction(2, 2**n)
        assert alt_general(Kn) <= alt_general(G) <= Fraction(1, n)
    star = MultiGraph(5, [(1, k) for k in range(2, 6)])
    assert alt_general(star) == Fraction(1, 5)


def test_multivar_reduces_to_bivariate():
    rng = random.Random(2)
    for _ in range(20):
        H = random_bipartite(rng.randint(2, 7), rng)
        order = list(H.vertices)
        index = {v: i + 1 for i, v in enumerate(order)}
        G = MultiGraph(len(order), [(index[u], index[v]) for u, v in H.edges])
        x, y = Fraction(rng.randint(0, 6), 2), Fraction(rng.randint(0, 6), 3)
        w = [x if H.side(v) == 0 else y for v in order]
        assert multivar_brute_force(G, w) == evaluate(H, (x, y))
    with pytest.raises(InvalidArgs):
        multivar_brute_force(triangle(), [1, 2])


def test_habc_matches_general_recursion():
    for a in range(1, 8):
        for b in range(1, 8):
            for c in range(1, b + 1):
                if a + b + c > 9:
                    continue
                H = make_habc(HabcSpec(a, b, c))
                for pt in [(2, 0), (0, 2), (Fraction(3, 2), Fraction(1, 3))]:
                    assert habc_eval(HabcSpec(a, b, c), pt) == evaluate(H, pt), (a, b, c, pt)


def test_habc_large_routing_agrees():
    # above the routing threshold evaluate uses the H_{a,b,c} table
    spec = HabcSpec(5, 7, 6)
    H = make_habc(spec)
    assert H.num_vertices == 18
    assert evaluate(H, (2, 0)) == habc_eval(spec, (2, 0))
    assert compute_poly(H)(2, 0) == habc_eval(spec, (2, 0))


def test_brute_force_limits():
    with pytest.raises(TooLarge):
        brute_force_poly(path_graph(11))
    clear_caches()
    dense = make_bipartite(range(6), range(6, 12), [(i, 6 + j) for i in range(6) for j in range(6) if (i + j) % 3])
    with pytest.raises(BudgetExceeded):
        compute_poly(dense, budget=5)


def test_monte_carlo_calibration():
    est = monte_carlo_eval(P5, (2, 0), samples=200_000, seed=1)
    assert abs(est.mean - float(Fraction(34, 15))) < 5 * est.std_error
    again = monte_carlo_eval(P5, (2, 0), samples=200_000, seed=1)
    assert again == est
    assert "seed=1" in str(est)
    with pytest.raises(InvalidArgs):
        monte_carlo_eval(P5, (2, 0), samples=0, seed=1)


def test_max_tree_probability_triangle():
    est = mc_max_tree_prob(triangle(), {1, 2}, samples=60_000, seed=3)
    assert abs(est.mean - 1 / 3) < 5 * est.std_error
