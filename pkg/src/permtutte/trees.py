"""Free trees: enumeration, the survey of min P_2, and the balanced split.

Trees are generated as level sequences (root at level 0, vertices in
preorder) using the successor rule of Wright, Richmond, Odlyzko and McKay,
which visits each free tree once, rooted at its centre.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidArgs, PreconditionError, TooSmall
from .graphs import A_SIDE, BipGraph, canonical_code
from .perm_tutte import EvalPoint, evaluate_frame
from .ratpoly import format_rational

SURVEY_POINT = EvalPoint(2, 0)

TABLE_COUNTS = {
    2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106, 11: 235,
    12: 551, 13: 1301, 14: 3159, 15: 7741, 16: 19320, 17: 48629, 18: 123867,
}


# ---------------------------------------------------------------------------
# level sequences

def _split(levels: Sequence[int]) -> tuple[list[int], list[int]]:
    """The first subtree of the root (relevelled) and the remaining tree."""
    end = len(levels)
    for i in range(2, len(levels)):
        if levels[i] == 1:
            end = i
            break
    left = [lv - 1 for lv in levels[1:end]]
    rest = [0] + list(levels[end:])
    return left, rest


def _next_rooted(levels: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(levels) - 1
        while levels[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while levels[q] != levels[p] - 1:
        q -= 1
    out = list(levels)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _is_canonical_free(levels: Sequence[int]) -> bool:
    left, rest = _split(levels)
    lh, rh = max(left), max(rest)
    if rh < lh:
        return False
    if rh == lh:
        if len(left) > len(rest):
            return False
        if len(left) == len(rest) and left > rest:
            return False
    return True


def _repair(levels: list[int]) -> list[int] | None:
    left, _ = _split(levels)
    p = len(left)
    out = _next_rooted(levels, p)
    if out is not None and levels[p] > 2:
        new_left, _ = _split(out)
        tail = list(range(1, max(new_left) + 2))
        out[-len(tail):] = tail
    return out


def free_tree_levels(m: int) -> Iterator[list[int]]:
    """Level sequences of the free trees on ``m`` vertices, one per isomorphism class."""
    if m < 2:
        raise InvalidArgs("free trees here have at least 2 vertices")
    if m == 2:
        yield [0, 1]
        return
    levels: list[int] | None = list(range(m // 2 + 1)) + list(range(1, (m + 1) // 2))
    while levels is not None:
        while levels is not None and not _is_canonical_free(levels):
            levels = _repair(levels)
        if levels is None:
            return
        yield levels
        levels = _next_rooted(levels)


def levels_to_parents(levels: Sequence[int]) -> list[int]:
    """Parent index of each vertex (``-1`` for the root)."""
    parents = [-1] * len(levels)
    stack: list[int] = []
    for i, lv in enumerate(levels):
        del stack[lv:]
        if stack:
            parents[i] = stack[-1]
        stack.append(i)
    return parents


def levels_to_graph(levels: Sequence[int]) -> BipGraph:
    """Vertices ``0..m-1``; the root and even levels go to side A."""
    parents = levels_to_parents(levels)
    side_a = [i for i, lv in enumerate(levels) if lv % 2 == 0]
    side_b = [i for i, lv in enumerate(levels) if lv % 2 == 1]
    return BipGraph(side_a, side_b, [(p, i) for i, p in enumerate(parents) if p >= 0])


def gen_free_trees(m: int) -> Iterator[BipGraph]:
    for levels in free_tree_levels(m):
        yield levels_to_graph(levels)


def count_free_trees(m: int) -> int:
    return sum(1 for _ in free_tree_levels(m))


# ---------------------------------------------------------------------------
# survey

def _frames(levels: Sequence[int]) -> tuple[list[int], int, int]:
    """Neighbour bitmasks plus the even-level and odd-level masks."""
    parents = levels_to_parents(levels)
    adj = [0] * len(levels)
    for i, p in enumerate(parents):
        if p >= 0:
            adj[i] |= 1 << p
            adj[p] |= 1 << i
    even = sum(1 << i for i, lv in enumerate(levels) if lv % 2 == 0)
    odd = ((1 << len(levels)) - 1) & ~even
    return adj, even, odd


def tree_p2(levels: Sequence[int]) -> Fraction:
    """``P_2`` of the tree, using ``T~(0, 2) = T~'(2, 0)`` for the side-swapped tree."""
    adj, even, odd = _frames(levels)
    first = evaluate_frame(adj, even, SURVEY_POINT)
    if not first:
        return first
    return first * evaluate_frame(adj, odd, SURVEY_POINT)


@dataclass(frozen=True)
class SurveyRow:
    m: int
    tree_count: int
    pi_min: Fraction
    argmin_code: str

    @property
    def pi_min_4dp(self) -> str:
        return render_4dp(self.pi_min, "round")

    @property
    def pi_min_4dp_truncated(self) -> str:
        return render_4dp(self.pi_min, "truncate")

    def tsv(self) -> str:
        return f"{self.m}\t{self.tree_count}\t{format_rational(self.pi_min)}\t{self.pi_min_4dp}\t{self.argmin_code}"


TSV_HEADER = "m\ttree_count\tpi_min_exact\tpi_min_4dp\targmin_code"


def render_4dp(value: Fraction, mode: str = "round") -> str:
    """Four decimals; ``round`` is half away from zero, ``truncate`` drops digits."""
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10000
    if mode == "round":
        n = int(scaled + Fraction(1, 2))
    elif mode == "truncate":
        n = int(scaled)
    else:
        raise InvalidArgs(f"unknown rendering mode {mode!r}")
    return f"{sign}{n // 10000}.{n % 10000:04d}"


def matches_table(value: Fraction, entry: str) -> bool:
    """Whether either rendering of ``value`` equals the decimal ``entry``."""
    target = Fraction(entry)
    return any(Fraction(render_4dp(value, mode)) == target for mode in ("round", "truncate"))


def _survey_chunk(chunk: list[list[int]]) -> tuple[Fraction, list[int]]:
    best = None
    best_levels = None
    for levels in chunk:
        val = tree_p2(levels)
        if best is None or val < best:
            best, best_levels = val, levels
    return best, best_levels


def _chunks(m: int, size: int) -> Iterator[list[list[int]]]:
    chunk = []
    for levels in free_tree_levels(m):
        chunk.append(levels)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def survey(m: int, jobs: int = 1) -> SurveyRow:
    """``Pi(m)``, the least ``P_2`` over free trees on ``m`` vertices, with a minimiser."""
    if m < 2:
        raise TooSmall("the survey starts at m = 2")
    count = 0
    best = None
    best_levels = None
    if jobs <= 1:
        for levels in free_tree_levels(m):
            count += 1
            val = tree_p2(levels)
            if best is None or val < best:
                best, best_levels = val, levels
    else:
        results = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(_chunks(m, 2000))
            count = sum(len(c) for c in chunks)
            results = list(pool.map(_survey_chunk, chunks))
        # chunk order is generation order, so ties resolve the same way as the serial loop
        for val, levels in results:
            if best is None or val < best:
                best, best_levels = val, levels
    code = canonical_code(levels_to_graph(best_levels), side_sensitive=False).decode("ascii")
    return SurveyRow(m, count, best, code)


# ---------------------------------------------------------------------------
# balanced decomposition

def _tree_adjacency(T: BipGraph) -> dict:
    if not T.is_tree():
        raise PreconditionError("tree_decompose needs a tree")
    return {v: sorted(T.neighbors(v), key=repr) for v in T.vertices}


def _branch(adj: dict, root, first) -> list:
    """Vertices reachable from ``first`` without passing through ``root``."""
    seen = {root, first}
    out = [first]
    stack = [first]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                out.append(u)
                stack.append(u)
    return out


def _subtree(T: BipGraph, verts) -> BipGraph:
    vs = set(verts)
    return BipGraph(
        [v for v in T.side_a if v in vs],
        [v for v in T.side_b if v in vs],
        [(a, b) for a, b in T.edges if a in vs and b in vs],
    )


def _path_order(adj: dict) -> list:
    start = next(v for v, nb in adj.items() if len(nb) == 1)
    order = [start]
    prev = None
    while True:
        nxt = [u for u in adj[order[-1]] if u != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def split_vertex(T: BipGraph) -> tuple:
    """``(v, branch groups)``: a vertex and the branch vertex sets forming the first part."""
    adj = _tree_adjacency(T)
    M = T.num_edges
    if M < 2:
        raise TooSmall(f"a tree with {M} edges cannot be split")
    if max(len(nb) for nb in adj.values()) <= 2:
        order = _path_order(adj)
        k = M // 2
        return order[k], [order[:k]]
    v = next(u for u in T.vertices if len(adj[u]) >= 3)
    while True:
        branches = sorted((_branch(adj, v, u) for u in adj[v]), key=len)
        # a branch with s vertices carries s edges, counting the one back to v
        if 3 * len(branches[-1]) <= 2 * M:
            break
        v = next(u for u in adj[v] if u in set(branches[-1]))
    if 3 * len(branches[-1]) >= M:
        return v, [branches[-1]]
    taken = []
    size = 0
    for br in branches:
        taken.append(br)
        size += len(br)
        if 3 * size >= M:
            return v, taken
    raise AssertionError("unreachable: branch sizes sum to M")


def tree_decompose(T: BipGraph) -> tuple[BipGraph, BipGraph]:
    """Two edge-disjoint subtrees sharing one vertex, covering ``T``, each with at least ``M/3`` edges."""
    v, groups = split_vertex(T)
    first = {v}
    for g in groups:
        first.update(g)
    second = (set(T.vertices) - first) | {v}
    return _subtree(T, first), _subtree(T, second)


def shared_vertex(H1: BipGraph, H2: BipGraph):
    common = set(H1.vertices) & set(H2.vertices)
    return next(iter(common)) if len(common) == 1 else None


def is_a_side(T: BipGraph, v) -> bool:
    return T.side(v) == A_SIDE
