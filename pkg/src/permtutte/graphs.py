"""Bipartite graphs with explicit sides, labelled multigraphs, and the
constructions built on them (families, canonical codes, spanning trees,
local basis exchange graphs, edge deletion and contraction)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain
from typing import Hashable, Iterable, Iterator, Sequence

from .canon import colored_code
from .errors import (
    ContractLoop,
    Disconnected,
    DuplicateVertex,
    EdgeWithinSide,
    InvalidSpec,
    NotSpanningTree,
    UnknownEdge,
    UnknownVertex,
)

A_SIDE = 0
B_SIDE = 1


class BipGraph:
    """Simple bipartite graph ``(A, B, E)``; every edge joins A to B.

    Vertices may be any hashable values. Instances are treated as immutable.
    Edges are stored oriented as ``(a, b)`` with ``a`` in ``side_a``.
    """

    __slots__ = ("side_a", "side_b", "edges", "_adj", "_side")

    def __init__(self, side_a: Iterable[Hashable], side_b: Iterable[Hashable], edges: Iterable = ()):
        side_a = tuple(side_a)
        side_b = tuple(side_b)
        side: dict = {}
        for v in side_a:
            if v in side:
                raise DuplicateVertex(f"vertex {v!r} listed twice")
            side[v] = A_SIDE
        for v in side_b:
            if v in side:
                raise DuplicateVertex(f"vertex {v!r} listed twice")
            side[v] = B_SIDE
        adj: dict = {v: set() for v in side}
        oriented = set()
        for edge in edges:
            u, v = edge
            if u not in side:
                raise UnknownVertex(f"edge {edge!r} uses unknown vertex {u!r}")
            if v not in side:
                raise UnknownVertex(f"edge {edge!r} uses unknown vertex {v!r}")
            if side[u] == side[v]:
                raise EdgeWithinSide(f"edge {edge!r} lies inside one side")
            a, b = (u, v) if side[u] == A_SIDE else (v, u)
            oriented.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self.side_a = side_a
        self.side_b = side_b
        self.edges = frozenset(oriented)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._side = side

    # basic queries ------------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self.side_a + self.side_b

    def __len__(self) -> int:
        return len(self._side)

    @property
    def num_vertices(self) -> int:
        return len(self._side)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def side(self, v) -> int:
        try:
            return self._side[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def neighbors(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def __contains__(self, v) -> bool:
        return v in self._side

    def isolated(self) -> list:
        return [v for v in self.vertices if not self._adj[v]]

    def has_isolated(self) -> bool:
        return any(not nb for nb in self._adj.values())

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj.values()), default=0)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        return self.num_edges == self.num_vertices - len(self.components())

    def is_tree(self) -> bool:
        return self.num_vertices > 0 and self.is_connected() and self.num_edges == self.num_vertices - 1

    def is_complete_bipartite(self) -> bool:
        return self.num_edges == len(self.side_a) * len(self.side_b)

    def is_regular(self) -> bool:
        degrees = {len(nb) for nb in self._adj.values()}
        return len(degrees) == 1

    def components(self) -> list["BipGraph"]:
        return components(self)

    def local(self) -> tuple[list, list[list[int]], list[int]]:
        """Vertex order, adjacency lists over ``0..n-1`` and side bits."""
        order = list(self.vertices)
        index = {v: i for i, v in enumerate(order)}
        adj = [sorted(index[u] for u in self._adj[v]) for v in order]
        sides = [self._side[v] for v in order]
        return order, adj, sides

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipGraph):
            return NotImplemented
        return (
            set(self.side_a) == set(other.side_a)
            and set(self.side_b) == set(other.side_b)
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.side_a), frozenset(self.side_b), self.edges))

    def __repr__(self) -> str:
        return f"BipGraph(A={list(self.side_a)}, B={list(self.side_b)}, edges={sorted(self.edges, key=repr)})"


def make_bipartite(side_a, side_b, edges) -> BipGraph:
    return BipGraph(side_a, side_b, edges)


def delete_vertex(H: BipGraph, v) -> BipGraph:
    if v not in H:
        raise UnknownVertex(f"unknown vertex {v!r}")
    return BipGraph(
        [u for u in H.side_a if u != v],
        [u for u in H.side_b if u != v],
        [e for e in H.edges if v not in e],
    )


def delete_vertices(H: BipGraph, vs: Iterable) -> BipGraph:
    drop = set(vs)
    for v in drop:
        if v not in H:
            raise UnknownVertex(f"unknown vertex {v!r}")
    return BipGraph(
        [u for u in H.side_a if u not in drop],
        [u for u in H.side_b if u not in drop],
        [(a, b) for a, b in H.edges if a not in drop and b not in drop],
    )


def add_edge(H: BipGraph, u, v) -> BipGraph:
    return BipGraph(H.side_a, H.side_b, chain(H.edges, [(u, v)]))


def swap_sides(H: BipGraph) -> BipGraph:
    return BipGraph(H.side_b, H.side_a, H.edges)


def relabel(H: BipGraph, mapping) -> BipGraph:
    """Rename vertices through ``mapping`` (dict or callable)."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return BipGraph(
        [f(v) for v in H.side_a],
        [f(v) for v in H.side_b],
        [(f(a), f(b)) for a, b in H.edges],
    )


def components(H: BipGraph) -> list[BipGraph]:
    seen = set()
    out = []
    for s in H.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for u in H.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        out.append(BipGraph(
            [v for v in H.side_a if v in comp],
            [v for v in H.side_b if v in comp],
            [e for e in H.edges if e[0] in comp],
        ))
    return out


def canonical_code(H: BipGraph, side_sensitive: bool = True) -> bytes:
    """Isomorphism-invariant code; with ``side_sensitive=False`` also swap-invariant."""
    _, adj, sides = H.local()
    code = colored_code(adj, sides, bipartite=True)
    if not side_sensitive:
        code = min(code, colored_code(adj, [1 - s for s in sides], bipartite=True))
    return code.encode("ascii")


# families ---------------------------------------------------------------

def complete_bipartite(a: int, b: int) -> BipGraph:
    if a < 0 or b < 0:
        raise InvalidSpec("side sizes must be nonnegative")
    A = list(range(a))
    B = list(range(a, a + b))
    return BipGraph(A, B, [(u, v) for u in A for v in B])


def path_graph(n: int, first_side: int = A_SIDE) -> BipGraph:
    """Path on vertices ``1..n``; vertex 1 sits on ``first_side`` and sides alternate."""
    if n < 1:
        raise InvalidSpec("a path needs at least one vertex")
    A = [v for v in range(1, n + 1) if (v - 1) % 2 == first_side]
    B = [v for v in range(1, n + 1) if (v - 1) % 2 != first_side]
    return BipGraph(A, B, [(v, v + 1) for v in range(1, n)])


def cycle_graph(n: int) -> BipGraph:
    if n < 4 or n % 2:
        raise InvalidSpec("a bipartite cycle needs an even length of at least 4")
    A = list(range(0, n, 2))
    B = list(range(1, n, 2))
    return BipGraph(A, B, [(v, (v + 1) % n) for v in range(n)])


def star_graph(leaves: int, center_side: int = A_SIDE) -> BipGraph:
    H = complete_bipartite(1, leaves)
    return H if center_side == A_SIDE else swap_sides(H)


@dataclass(frozen=True)
class HabcSpec:
    """``K_{a,b}`` with ``c`` pendant vertices hung on distinct B-vertices."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise InvalidSpec(f"a and b must be positive, got a={self.a}, b={self.b}")
        if not 0 <= self.c <= self.b:
            raise InvalidSpec(f"need 0 <= c <= b, got c={self.c}, b={self.b}")


def make_habc(spec: HabcSpec) -> BipGraph:
    a, b, c = spec.a, spec.b, spec.c
    core_a = list(range(a))
    B = list(range(a, a + b))
    pend = list(range(a + b, a + b + c))
    edges = [(u, v) for u in core_a for v in B]
    edges += [(p, B[i]) for i, p in enumerate(pend)]
    return BipGraph(core_a + pend, B, edges)


# multigraphs ------------------------------------------------------------

class MultiGraph:
    """Multigraph on vertices ``1..n`` whose edges are labelled ``1..m`` by position.

    Loops ``(u, u)`` and repeated pairs are allowed.
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise InvalidSpec("a multigraph needs at least one vertex")
        clean = []
        for edge in edges:
            u, v = edge
            u, v = int(u), int(v)
            for w in (u, v):
                if not 1 <= w <= n:
                    raise UnknownVertex(f"edge {tuple(edge)!r} uses vertex {w} outside 1..{n}")
            clean.append((u, v))
        self.n = int(n)
        self.edges = tuple(clean)

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, label: int) -> tuple[int, int]:
        if not 1 <= label <= len(self.edges):
            raise UnknownEdge(f"no edge labelled {label}")
        return self.edges[label - 1]

    def is_loop(self, label: int) -> bool:
        u, v = self.endpoints(label)
        return u == v

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def adjacency(self) -> list[list[int]]:
        """Neighbour lists over ``0..n-1`` ignoring multiplicity and loops."""
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u - 1].add(v - 1)
                adj[v - 1].add(u - 1)
        return [sorted(s) for s in adj]

    def num_components(self, labels: Iterable[int] | None = None) -> int:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = self.n
        chosen = range(1, self.m + 1) if labels is None else labels
        for lab in chosen:
            u, v = self.edges[lab - 1]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
        return count

    def is_connected(self) -> bool:
        return self.num_components() == 1

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


def multigraph_code(G: MultiGraph) -> bytes:
    """Isomorphism code of an unlabelled multigraph, via its vertex-edge incidence graph."""
    n, m = G.n, G.m
    adj = [[] for _ in range(n + m)]
    for k, (u, v) in enumerate(G.edges):
        node = n + k
        for w in {u, v}:
            adj[w - 1].append(node)
            adj[node].append(w - 1)
    colors = [0] * n + [1] * m
    return colored_code(adj, colors).encode("ascii")


def delete_edge(G: MultiGraph, label: int) -> MultiGraph:
    G.endpoints(label)
    return MultiGraph(G.n, [e for k, e in enumerate(G.edges, 1) if k != label])


def contract_edge(G: MultiGraph, label: int) -> MultiGraph:
    u, v = G.endpoints(label)
    if u == v:
        raise ContractLoop(f"edge {label} is a loop")
    keep, gone = min(u, v), max(u, v)

    def f(w: int) -> int:
        if w == gone:
            w = keep
        return w - 1 if w > gone else w

    return MultiGraph(G.n - 1, [(f(a), f(b)) for k, (a, b) in enumerate(G.edges, 1) if k != label])


def triangle() -> MultiGraph:
    return MultiGraph(3, [(1, 2), (2, 3), (1, 3)])


def example_graph() -> MultiGraph:
    """A 6-vertex, 8-edge multigraph used as a worked example with the tree ``EXAMPLE_TREE``."""
    return MultiGraph(6, [(1, 2), (1, 3), (1, 4), (2, 5), (4, 5), (3, 6), (4, 6), (5, 6)])


EXAMPLE_TREE = frozenset({1, 2, 3, 5, 7})


def spanning_trees(G: MultiGraph) -> list[frozenset]:
    """Every spanning tree exactly once, as a frozenset of edge labels."""
    return list(iter_spanning_trees(G))


def iter_spanning_trees(G: MultiGraph) -> Iterator[frozenset]:
    if not G.is_connected():
        raise Disconnected("spanning trees need a connected graph")
    need = G.n - 1
    labels = [k for k, (u, v) in enumerate(G.edges, 1) if u != v]
    total = len(labels)

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def connects(chosen: list[int], rest: Sequence[int]) -> bool:
        return G.num_components(chain(chosen, rest)) == 1

    def rec(i: int, parent: list[int], chosen: list[int]):
        if len(chosen) == need:
            yield frozenset(chosen)
            return
        if total - i < need - len(chosen):
            return
        lab = labels[i]
        u, v = G.edges[lab - 1]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            nxt = parent.copy()
            nxt[ru] = rv
            chosen.append(lab)
            yield from rec(i + 1, nxt, chosen)
            chosen.pop()
        if connects(chosen, labels[i + 1:]):
            yield from rec(i + 1, parent, chosen)

    yield from rec(0, list(range(G.n + 1)), [])


def _check_tree(G: MultiGraph, T: Iterable[int]) -> frozenset:
    T = frozenset(T)
    for lab in T:
        if not 1 <= lab <= G.m:
            raise NotSpanningTree(f"label {lab} is not an edge of the graph")
    if len(T) != G.n - 1 or any(G.is_loop(lab) for lab in T) or G.num_components(T) != 1:
        raise NotSpanningTree(f"{sorted(T)} is not a spanning tree")
    return T


def fundamental_cycles(G: MultiGraph, T: Iterable[int]) -> dict[int, frozenset]:
    """For each non-tree label, the tree labels on the cycle it closes."""
    T = _check_tree(G, T)
    tree_adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, G.n + 1)}
    for lab in T:
        u, v = G.edges[lab - 1]
        tree_adj[u].append((v, lab))
        tree_adj[v].append((u, lab))
    # root the tree once; a path is then found by climbing from both ends
    parent = {1: (0, 0)}
    depth = {1: 0}
    stack = [1]
    while stack:
        v = stack.pop()
        for u, lab in tree_adj[v]:
            if u not in parent:
                parent[u] = (v, lab)
                depth[u] = depth[v] + 1
                stack.append(u)
    out = {}
    for f in range(1, G.m + 1):
        if f in T:
            continue
        u, v = G.edges[f - 1]
        path = set()
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            up, lab = parent[u]
            path.add(lab)
            u = up
        out[f] = frozenset(path)
    return out


def local_basis_exchange(G: MultiGraph, T: Iterable[int]) -> BipGraph:
    """Tree labels on side A, other labels on side B; ``e ~ f`` iff ``e`` is on ``f``'s cycle."""
    T = _check_tree(G, T)
    cycles = fundamental_cycles(G, T)
    edges = [(e, f) for f, cyc in cycles.items() for e in cyc]
    return BipGraph(sorted(T), sorted(cycles), edges)
