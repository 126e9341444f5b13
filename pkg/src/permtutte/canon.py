"""Canonical forms for vertex-colored graphs.

Two routes, both exact:

* trees use a centre-rooted AHU string, with the colour (side) of the root
  recorded; every other vertex's side follows from depth parity;
* everything else goes through colour refinement plus individualisation
  backtracking, returning the lexicographically least certificate.

Graphs are given as adjacency lists over local vertices ``0..n-1``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

SIDE_CHARS = "ab"


def tree_centers(adj: Sequence[Sequence[int]]) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    degree = [len(nb) for nb in adj]
    layer = [v for v in range(n) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in adj[v]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt
    return layer


def _ahu(adj: Sequence[Sequence[int]], root: int) -> str:
    # iterative post-order; deep paths would hit the recursion limit
    parent = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u != parent[v]:
                parent[u] = v
                order.append(u)
                stack.append(u)
    enc: dict[int, list[str]] = defaultdict(list)
    code = ""
    for v in reversed(order):
        kids = enc.pop(v, [])
        kids.sort()
        code = "(" + "".join(kids) + ")"
        if parent[v] >= 0:
            enc[parent[v]].append(code)
    return code


def tree_code(adj: Sequence[Sequence[int]], sides: Sequence[int]) -> str:
    """Canonical string of a side-labelled tree (sides must be a proper 2-colouring)."""
    best = None
    for c in tree_centers(adj):
        cand = "T" + SIDE_CHARS[sides[c]] + _ahu(adj, c)
        if best is None or cand < best:
            best = cand
    return best


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    n = len(adj)
    count = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        ranked = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(ranked)}
        colors = [rank[s] for s in sigs]
        if len(ranked) == count:
            return colors
        count = len(ranked)


def canonical_certificate(adj: Sequence[Sequence[int]], colors: Sequence[int]) -> tuple:
    """Least certificate over the individualisation-refinement search tree."""
    n = len(adj)
    base = list(colors)
    nbhd = [frozenset(nb) for nb in adj]
    closed = [nbhd[v] | {v} for v in range(n)]
    best = None

    def search(cols: list[int]) -> None:
        nonlocal best
        cols = _refine(adj, cols)
        cells: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(cols):
            cells[c].append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            label = cols
            inv = [0] * n
            for v in range(n):
                inv[label[v]] = v
            cert = (
                tuple(base[inv[i]] for i in range(n)),
                tuple(sorted(
                    (min(label[v], label[u]), max(label[v], label[u]))
                    for v in range(n) for u in adj[v] if v <= u
                )),
            )
            if best is None or cert < best:
                best = cert
            return
        seen = set()
        for v in target:
            # twins (equal open or closed neighbourhoods) are swapped by an automorphism
            if nbhd[v] in seen or closed[v] in seen:
                continue
            seen.add(nbhd[v])
            seen.add(closed[v])
            nxt = [2 * c + 1 for c in cols]
            nxt[v] -= 1
            search(nxt)

    search(list(base))
    return best


def graph_code(adj: Sequence[Sequence[int]], colors: Sequence[int]) -> str:
    if not adj:
        return "G[]"
    verts, edges = canonical_certificate(adj, colors)
    return "G" + ".".join(map(str, verts)) + ":" + ",".join(f"{u}-{v}" for u, v in edges)


def connected_components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(adj)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def component_code(adj: Sequence[Sequence[int]], colors: Sequence[int], bipartite: bool) -> str:
    """Code of a connected graph; trees take the AHU route when ``bipartite``."""
    n = len(adj)
    edges = sum(len(nb) for nb in adj) // 2
    if bipartite and edges == n - 1:
        return tree_code(adj, colors)
    return graph_code(adj, colors)


def colored_code(adj: Sequence[Sequence[int]], colors: Sequence[int], bipartite: bool = False) -> str:
    """Code of an arbitrary (possibly disconnected) coloured graph."""
    parts = []
    for comp in connected_components(adj):
        index = {v: i for i, v in enumerate(comp)}
        sub = [[index[u] for u in adj[v]] for v in comp]
        parts.append(component_code(sub, [colors[v] for v in comp], bipartite))
    parts.sort()
    return "|".join(parts)
