"""Graph corpora: exhaustive small families and seeded random samples."""

from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .graphs import BipGraph, MultiGraph, canonical_code, multigraph_code


def bipartite_graphs(n: int) -> Iterator[BipGraph]:
    """Every side-labelled bipartite graph on exactly ``n`` vertices, once per isomorphism class.

    Vertices are ``0..a-1`` (side A) and ``a..n-1`` (side B).
    """
    seen: set[bytes] = set()
    for a in range(n + 1):
        b = n - a
        side_a = range(a)
        side_b = range(a, n)
        # A-rows in nondecreasing order cover every class at least once
        for rows in combinations_with_replacement(range(1 << b), a):
            edges = [(i, a + j) for i, row in enumerate(rows) for j in range(b) if row >> j & 1]
            H = BipGraph(side_a, side_b, edges)
            code = canonical_code(H)
            if code not in seen:
                seen.add(code)
                yield H


def bipartite_graphs_upto(max_vertices: int, min_vertices: int = 0) -> Iterator[BipGraph]:
    for n in range(min_vertices, max_vertices + 1):
        yield from bipartite_graphs(n)


def random_bipartite(n: int, rng: random.Random, p: float | None = None) -> BipGraph:
    """``n`` vertices split at random into two sides; each cross edge kept with probability ``p``."""
    a = rng.randint(0, n)
    if p is None:
        p = rng.uniform(0.15, 0.85)
    edges = [(i, j) for i in range(a) for j in range(a, n) if rng.random() < p]
    return BipGraph(range(a), range(a, n), edges)


def connected_multigraphs(max_edges: int) -> list[list[MultiGraph]]:
    """Connected multigraphs (loops and parallel edges allowed) by edge count, up to isomorphism.

    Entry ``k`` lists the graphs with exactly ``k`` edges. Each one arises from
    a smaller connected graph by adding a loop, an edge between existing
    vertices, or a pendant edge to a new vertex.
    """
    layers = [[MultiGraph(1)]]
    for _ in range(max_edges):
        seen: set[bytes] = set()
        nxt = []
        for G in layers[-1]:
            n = G.n
            grown = [MultiGraph(n, G.edges + ((v, v),)) for v in range(1, n + 1)]
            grown += [MultiGraph(n, G.edges + ((u, v),)) for u, v in combinations(range(1, n + 1), 2)]
            grown += [MultiGraph(n + 1, G.edges + ((v, n + 1),)) for v in range(1, n + 1)]
            for H in grown:
                code = multigraph_code(H)
                if code not in seen:
                    seen.add(code)
                    nxt.append(H)
        layers.append(nxt)
    return layers


def random_connected_multigraph(max_edges: int, rng: random.Random, loops: bool = True) -> MultiGraph:
    """A random spanning tree on a random vertex count plus random extra edges."""
    m = rng.randint(1, max_edges)
    n = rng.randint(2, m + 1)
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    while len(edges) < m:
        u = rng.randint(1, n)
        v = rng.randint(1, n)
        if u == v and not loops:
            continue
        edges.append((u, v))
    rng.shuffle(edges)
    return MultiGraph(n, edges)


def random_simple_graph(n: int, rng: random.Random, p: float = 0.5) -> MultiGraph:
    return MultiGraph(n, [(u, v) for u, v in combinations(range(1, n + 1), 2) if rng.random() < p])
