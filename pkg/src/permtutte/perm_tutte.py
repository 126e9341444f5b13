"""The permutation Tutte polynomial of a bipartite graph and its relatives.

A vertex is *active* under an ordering when it comes after all of its
neighbours. ``T~_H(x, y)`` averages ``x**(active A-vertices) * y**(active
B-vertices)`` over all orderings of ``V(H)``.

Exact routes:

* :func:`brute_force_poly` walks every ordering (the oracle);
* :func:`compute_poly` / :func:`evaluate` factor out isolated vertices,
  multiply over components, use the closed form on complete bipartite
  components and otherwise average over single-vertex deletions, memoized
  on canonical codes;
* :func:`habc_eval` runs the three-index recursion for ``H_{a,b,c}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .canon import component_code
from .errors import (
    BudgetExceeded,
    InvalidArgs,
    NotSimple,
    TooLarge,
    UnknownVertex,
)
from .graphs import (
    A_SIDE,
    BipGraph,
    HabcSpec,
    MultiGraph,
    fundamental_cycles,
    swap_sides,
)
from .ratpoly import BiPoly, Number, poly_eval

DEFAULT_BRUTE_LIMIT = 10
DEFAULT_BUDGET = 10**7
# Components this large that match the H_{a,b,c} shape go to the dedicated
# table; smaller ones stay on the generic recursion so the two remain
# independent cross-checks of each other.
HABC_ROUTE_MIN = 16

ONE_POLY = BiPoly.constant(1)
ZERO_POLY = BiPoly()
X_POLY = BiPoly.monomial(1, 0)
Y_POLY = BiPoly.monomial(0, 1)


@dataclass(frozen=True)
class ActivityCount:
    ia: int
    ea: int


@dataclass(frozen=True)
class EvalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int

    def __str__(self) -> str:
        return f"{self.mean:.6f} ± {self.std_error:.6f} (samples={self.samples}, seed={self.seed})"


# ---------------------------------------------------------------------------
# brute force over orderings

def _rank_table(m: int) -> np.ndarray:
    """All ``m!`` orderings as rows; entry ``[k, v]`` is the position of vertex ``v``."""
    table = np.zeros((1, 0), dtype=np.int8)
    for k in range(1, m + 1):
        blocks = []
        for t in range(k):
            shifted = table + (table >= t).astype(np.int8)
            col = np.full((shifted.shape[0], 1), t, dtype=np.int8)
            blocks.append(np.hstack([shifted, col]))
        table = np.vstack(blocks)
    return table


@lru_cache(maxsize=2)
def _cached_rank_table(m: int) -> np.ndarray:
    table = _rank_table(m)
    table.setflags(write=False)
    return table


def _active_matrix(ranks: np.ndarray, adj: Sequence[Sequence[int]]) -> np.ndarray:
    rows = ranks.shape[0]
    active = np.ones((rows, len(adj)), dtype=bool)
    for v, nb in enumerate(adj):
        if nb:
            active[:, v] = ranks[:, v] > ranks[:, list(nb)].max(axis=1)
    return active


def activity_counts(H: BipGraph, limit: int = DEFAULT_BRUTE_LIMIT) -> dict[ActivityCount, int]:
    """How many orderings give each (internally, externally) active pair."""
    m = H.num_vertices
    if m > limit:
        raise TooLarge(f"{m} vertices exceeds the brute-force limit of {limit}")
    if m == 0:
        return {ActivityCount(0, 0): 1}
    _, adj, sides = H.local()
    active = _active_matrix(_cached_rank_table(m), adj)
    a_cols = [v for v in range(m) if sides[v] == A_SIDE]
    b_cols = [v for v in range(m) if sides[v] != A_SIDE]
    ia = active[:, a_cols].sum(axis=1)
    ea = active[:, b_cols].sum(axis=1)
    width = len(b_cols) + 1
    counts = np.bincount(ia * width + ea)
    return {
        ActivityCount(int(k) // width, int(k) % width): int(c)
        for k, c in enumerate(counts) if c
    }


def brute_force_poly(H: BipGraph, limit: int = DEFAULT_BRUTE_LIMIT) -> BiPoly:
    counts = activity_counts(H, limit)
    total = math.factorial(H.num_vertices)
    return BiPoly({(k.ia, k.ea): Fraction(c, total) for k, c in counts.items()})


# ---------------------------------------------------------------------------
# closed forms

@lru_cache(maxsize=None)
def complete_bipartite_poly(a: int, b: int) -> BiPoly:
    if a < 1 or b < 1:
        raise InvalidArgs("closed form needs a, b >= 1; factor isolated vertices first")
    m = a + b
    terms = {}
    for side_size, other, key in ((a, b, lambda i: (i, 0)), (b, a, lambda j: (0, j))):
        num, den = other, m
        for i in range(1, side_size + 1):
            num *= side_size - i + 1
            den *= m - i
            terms[key(i)] = Fraction(num, den)
    return BiPoly(terms)


def complete_bipartite_eval(a: int, b: int, x: Number, y: Number) -> Fraction:
    if a == 0:
        return Fraction(y) ** b
    if b == 0:
        return Fraction(x) ** a
    return poly_eval(complete_bipartite_poly(a, b), x, y)


# ---------------------------------------------------------------------------
# the memoized deletion recursion

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(adj: Sequence[int], mask: int) -> list[int]:
    out = []
    while mask:
        comp = frontier = mask & -mask
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= adj[v]
            frontier = reach & mask & ~comp
            comp |= frontier
        out.append(comp)
        mask &= ~comp
    return out


_SHAPES: dict[tuple[int, ...], int] = {}


def _rooted_shape(nbrs: Sequence[Sequence[int]], comp: int, root: int) -> int:
    """AHU encoding of the tree ``comp`` hung from ``root``, with child multisets interned."""
    order = [root]
    parent = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        for u in nbrs[v]:
            if comp >> u & 1 and u != parent[v]:
                parent[u] = v
                order.append(u)
                stack.append(u)
    kids: dict[int, list[int]] = {}
    shape = 0
    for v in reversed(order):
        key = tuple(sorted(kids.pop(v, ())))
        shape = _SHAPES.get(key)
        if shape is None:
            shape = _SHAPES[key] = len(_SHAPES)
        p = parent[v]
        if p >= 0:
            kids.setdefault(p, []).append(shape)
    return shape


class _Frame:
    """A bipartite graph as bitmasks over ``0..n-1``; subgraphs are vertex masks."""

    __slots__ = ("adj", "amask", "n", "nbrs")

    def __init__(self, adj: Sequence[int], amask: int):
        self.adj = list(adj)
        self.amask = amask
        self.n = len(adj)
        self.nbrs = [list(_bits(m)) for m in self.adj]

    @classmethod
    def from_graph(cls, H: BipGraph) -> "_Frame":
        _, adj, sides = H.local()
        masks = [sum(1 << u for u in nb) for nb in adj]
        amask = sum(1 << v for v, s in enumerate(sides) if s == A_SIDE)
        return cls(masks, amask)

    def edge_count(self, comp: int) -> int:
        return sum((self.adj[v] & comp).bit_count() for v in _bits(comp & self.amask))

    def code(self, comp: int, edges: int):
        """Memo key of a connected component: exact up to side-preserving isomorphism."""
        if edges == comp.bit_count() - 1:
            return self.tree_key(comp)
        verts = list(_bits(comp))
        index = {v: i for i, v in enumerate(verts)}
        adj = [[index[u] for u in _bits(self.adj[v] & comp)] for v in verts]
        sides = [0 if (self.amask >> v) & 1 else 1 for v in verts]
        return component_code(adj, sides, bipartite=True)

    def tree_key(self, comp: int) -> tuple[int, int]:
        """``(root side, interned rooted shape)`` minimised over the centres."""
        adj, nbrs = self.adj, self.nbrs
        deg = {}
        layer = []
        for v in _bits(comp):
            d = (adj[v] & comp).bit_count()
            deg[v] = d
            if d <= 1:
                layer.append(v)
        remaining = len(deg)
        while remaining > 2:
            remaining -= len(layer)
            nxt = []
            for v in layer:
                for u in nbrs[v]:
                    if comp >> u & 1:
                        deg[u] -= 1
                        if deg[u] == 1:
                            nxt.append(u)
            layer = nxt
        best = None
        for root in layer:
            key = (0 if (self.amask >> root) & 1 else 1, _rooted_shape(nbrs, comp, root))
            if best is None or key < best:
                best = key
        return best

    def habc_shape(self, comp: int, na: int, nb: int) -> tuple[int, int, int] | None:
        """``(a, b, c)`` when the component is ``H_{a,b,c}`` with ``b >= 2``."""
        bmask = comp & ~self.amask
        if nb < 2:
            return None
        hooks = 0
        pendants = 0
        for v in _bits(comp & self.amask):
            nbrs = self.adj[v] & comp
            deg = nbrs.bit_count()
            if deg == 1:
                if hooks & nbrs:
                    return None
                hooks |= nbrs
                pendants += 1
            elif nbrs != bmask:
                return None
        core = na - pendants
        if core < 1:
            return None
        return core, nb, pendants


class _Ring:
    """Arithmetic used by the recursion: exact polynomials or exact values."""

    def __init__(self, one, zero, x, y, kab: Callable[[int, int], object], habc=None):
        self.one, self.zero, self.x, self.y = one, zero, x, y
        self.kab = kab
        self.habc = habc


def _poly_ring() -> _Ring:
    return _Ring(ONE_POLY, ZERO_POLY, X_POLY, Y_POLY, complete_bipartite_poly)


def _eval_ring(x: Fraction, y: Fraction) -> _Ring:
    return _Ring(
        Fraction(1), Fraction(0), x, y,
        lambda a, b: complete_bipartite_eval(a, b, x, y),
        habc=lambda a, b, c: habc_eval(HabcSpec(a, b, c), EvalPoint(x, y)),
    )


_POLY_MEMO: dict[str, BiPoly] = {}
_EVAL_MEMO: dict[tuple[Fraction, Fraction], dict[str, Fraction]] = {}


def clear_caches() -> None:
    _POLY_MEMO.clear()
    _EVAL_MEMO.clear()
    _ALT_MEMO.clear()
    _ALT_GENERAL_MEMO.clear()
    _HABC_TABLES.clear()


def memo_sizes() -> dict[str, int]:
    return {
        "poly": len(_POLY_MEMO),
        "eval": sum(len(t) for t in _EVAL_MEMO.values()),
        "alt": len(_ALT_MEMO),
        "alt_general": len(_ALT_GENERAL_MEMO),
    }


class _Recursion:
    def __init__(self, frame: _Frame, ring: _Ring, memo: dict, budget: int):
        self.frame = frame
        self.ring = ring
        self.memo = memo
        self.budget = budget
        self.local: dict[int, object] = {}
        self.created = 0

    def solve(self, mask: int):
        hit = self.local.get(mask)
        if hit is not None:
            return hit
        ring = self.ring
        result = ring.one
        comps = _components(self.frame.adj, mask)
        # singletons first: a zero factor (x or y = 0) then ends the product early
        comps.sort(key=int.bit_count)
        for comp in comps:
            val = self.component(comp)
            if not val:
                result = ring.zero
                break
            result = result * val
        self.local[mask] = result
        return result

    def component(self, comp: int):
        frame, ring = self.frame, self.ring
        size = comp.bit_count()
        if size == 1:
            return ring.x if comp & frame.amask else ring.y
        na = (comp & frame.amask).bit_count()
        nb = size - na
        edges = frame.edge_count(comp)
        if edges == na * nb:
            return ring.kab(na, nb)
        if ring.habc is not None and size >= HABC_ROUTE_MIN:
            shape = frame.habc_shape(comp, na, nb)
            if shape is not None:
                return ring.habc(*shape)
        code = frame.code(comp, edges)
        hit = self.memo.get(code)
        if hit is not None:
            return hit
        total = ring.zero
        for v in _bits(comp):
            total = total + self.solve(comp & ~(1 << v))
        val = total * Fraction(1, size)
        self.memo[code] = val
        self.created += 1
        if self.created > self.budget:
            raise BudgetExceeded(
                f"memo budget of {self.budget} entries exhausted ({len(self.memo)} stored)",
                len(self.memo),
            )
        return val


def compute_poly(H: BipGraph, budget: int = DEFAULT_BUDGET) -> BiPoly:
    frame = _Frame.from_graph(H)
    return _Recursion(frame, _poly_ring(), _POLY_MEMO, budget).solve((1 << frame.n) - 1)


def _as_point(pt) -> EvalPoint:
    if isinstance(pt, EvalPoint):
        return pt
    x, y = pt
    return EvalPoint(Fraction(x), Fraction(y))


def evaluate(H: BipGraph, pt, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Exact ``T~_H(x, y)``; ``pt`` is an :class:`EvalPoint` or an ``(x, y)`` pair."""
    pt = _as_point(pt)
    frame = _Frame.from_graph(H)
    memo = _EVAL_MEMO.setdefault((pt.x, pt.y), {})
    return _Recursion(frame, _eval_ring(pt.x, pt.y), memo, budget).solve((1 << frame.n) - 1)


def evaluate_frame(adj: Sequence[int], amask: int, pt: EvalPoint, budget: int = DEFAULT_BUDGET) -> Fraction:
    """:func:`evaluate` on a graph already packed as neighbour bitmasks."""
    frame = _Frame(adj, amask)
    memo = _EVAL_MEMO.setdefault((pt.x, pt.y), {})
    return _Recursion(frame, _eval_ring(pt.x, pt.y), memo, budget).solve((1 << frame.n) - 1)


# ---------------------------------------------------------------------------
# H_{a,b,c}

_HABC_TABLES: dict[tuple[Fraction, Fraction], dict[tuple[int, int, int], Fraction]] = {}


def habc_eval(spec: HabcSpec, pt) -> Fraction:
    """``T~`` of ``H_{a,b,c}`` at a point, through the three-index recursion."""
    pt = _as_point(pt)
    x, y = pt.x, pt.y
    table = _HABC_TABLES.setdefault((x, y), {})
    half = (x + y) / 2

    def S(a: int, b: int, c: int) -> Fraction:
        key = (a, b, c)
        hit = table.get(key)
        if hit is not None:
            return hit
        if a == 0:
            val = half**c * y ** (b - c)
        elif b == 0:
            val = x ** (a + c)
        elif c == 0:
            val = complete_bipartite_eval(a, b, x, y)
        else:
            total = a * S(a - 1, b, c) + c * x * S(a, b - 1, c - 1) + c * S(a, b, c - 1)
            if b > c:
                total += (b - c) * S(a, b - 1, c)
            val = total / (a + b + c)
        table[key] = val
        return val

    # fill bottom-up in a so the recursion depth stays at about b + c
    for a in range(spec.a + 1):
        S(a, spec.b, spec.c)
    return S(spec.a, spec.b, spec.c)


# ---------------------------------------------------------------------------
# alternating numbers

_ALT_MEMO: dict[str, Fraction] = {}
_ALT_GENERAL_MEMO: dict[str, Fraction] = {}


def alt(H: BipGraph) -> Fraction:
    """Extreme coefficient ``t_{|A|, l} = t_{r, |B|}`` via B-side deletions."""
    frame = _Frame.from_graph(H)

    def rec(mask: int) -> Fraction:
        result = Fraction(1)
        for comp in _components(frame.adj, mask):
            size = comp.bit_count()
            if size == 1:
                continue
            code = frame.code(comp, frame.edge_count(comp))
            val = _ALT_MEMO.get(code)
            if val is None:
                total = sum(
                    (rec(comp & ~(1 << v)) for v in _bits(comp & ~frame.amask)),
                    Fraction(0),
                )
                val = total / size
                _ALT_MEMO[code] = val
            result *= val
        return result

    return rec((1 << frame.n) - 1)


def _simple_masks(G: MultiGraph) -> list[int]:
    if not G.is_simple():
        raise NotSimple("alternating numbers of general graphs need a simple graph")
    return [sum(1 << u for u in nb) for nb in G.adjacency()]


def alt_general(G: MultiGraph) -> Fraction:
    """Volume of ``{0 <= t <= 1, t_i + t_j <= 1 on edges}`` by Steingrimsson's averaging."""
    adj = _simple_masks(G)

    def code(comp: int) -> str:
        verts = list(_bits(comp))
        index = {v: i for i, v in enumerate(verts)}
        local = [[index[u] for u in _bits(adj[v] & comp)] for v in verts]
        return component_code(local, [0] * len(verts), bipartite=False)

    def rec(mask: int) -> Fraction:
        result = Fraction(1)
        for comp in _components(adj, mask):
            size = comp.bit_count()
            if size == 1:
                continue
            key = code(comp)
            val = _ALT_GENERAL_MEMO.get(key)
            if val is None:
                total = sum((rec(comp & ~(1 << v)) for v in _bits(comp)), Fraction(0))
                val = total / (2 * size)
                _ALT_GENERAL_MEMO[key] = val
            result *= val
        return result

    return rec((1 << G.n) - 1)


# ---------------------------------------------------------------------------
# the multivariate generalisation, by brute force

def multivar_brute_force(G: MultiGraph, weights, limit: int = DEFAULT_BRUTE_LIMIT) -> Fraction:
    """Average over orderings of the product of weights of active vertices.

    ``weights`` is a sequence indexed by vertex ``1..n`` (position 0 is
    vertex 1) or a mapping from vertex number to weight.
    """
    if not G.is_simple():
        raise NotSimple("the multivariate form is defined on simple graphs")
    n = G.n
    if n > limit:
        raise TooLarge(f"{n} vertices exceeds the brute-force limit of {limit}")
    if isinstance(weights, Mapping):
        w = [Fraction(weights[v]) for v in range(1, n + 1)]
    else:
        w = [Fraction(x) for x in weights]
        if len(w) != n:
            raise InvalidArgs(f"expected {n} weights, got {len(w)}")
    active = _active_matrix(_cached_rank_table(n), G.adjacency())
    keys = active.astype(np.int64) @ (1 << np.arange(n, dtype=np.int64))
    counts = np.bincount(keys, minlength=1 << n)
    total = Fraction(0)
    for subset, c in enumerate(counts):
        if c:
            prod = Fraction(int(c))
            for v in _bits(subset):
                prod *= w[v]
            total += prod
    return total / math.factorial(n)


# ---------------------------------------------------------------------------
# Monte Carlo

_MC_CHUNK = 1 << 17


def _untied_uniforms(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    u = rng.random((rows, cols))
    if cols > 1:
        while True:
            s = np.sort(u, axis=1)
            tied = (np.diff(s, axis=1) == 0).any(axis=1)
            if not tied.any():
                break
            u[tied] = rng.random((int(tied.sum()), cols))
    return u


def _summarise(total: float, total_sq: float, samples: int, seed: int) -> McEstimate:
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    if samples > 1:
        var *= samples / (samples - 1)
    return McEstimate(mean, math.sqrt(var / samples), samples, seed)


def monte_carlo_eval(H: BipGraph, pt, samples: int, seed: int) -> McEstimate:
    """Estimate ``T~_H(x, y)`` from i.i.d. uniform vertex values."""
    if samples < 1:
        raise InvalidArgs("samples must be positive")
    x, y = (float(c) for c in pt)
    _, adj, sides = H.local()
    m = len(adj)
    rng = np.random.default_rng(seed)
    a_cols = [v for v in range(m) if sides[v] == A_SIDE]
    b_cols = [v for v in range(m) if sides[v] != A_SIDE]
    total = total_sq = 0.0
    done = 0
    while done < samples:
        rows = min(_MC_CHUNK, samples - done)
        u = _untied_uniforms(rng, rows, m)
        active = _active_matrix(u, adj)
        ia = active[:, a_cols].sum(axis=1)
        ea = active[:, b_cols].sum(axis=1)
        vals = np.power(x, ia) * np.power(y, ea)
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += rows
    return _summarise(total, total_sq, samples, seed)


def _kruskal_max_trees(n: int, edges: Sequence[tuple[int, int]], weights: np.ndarray) -> np.ndarray:
    """Row-wise maximum-weight spanning forest membership, shape ``(rows, m)``."""
    rows, m = weights.shape
    order = np.argsort(-weights, axis=1)
    ends = np.array(edges, dtype=np.int64).reshape(m, 2) - 1
    comp = np.tile(np.arange(n, dtype=np.int64), (rows, 1))
    chosen = np.zeros((rows, m), dtype=bool)
    idx = np.arange(rows)
    for step in range(m):
        e = order[:, step]
        cu = comp[idx, ends[e, 0]]
        cv = comp[idx, ends[e, 1]]
        take = cu != cv
        chosen[idx[take], e[take]] = True
        merge = take[:, None] & (comp == cv[:, None])
        comp = np.where(merge, cu[:, None], comp)
    return chosen


def mc_max_tree_prob(G: MultiGraph, T, samples: int, seed: int) -> McEstimate:
    """Frequency with which ``T`` is the maximum-weight spanning tree under uniform weights."""
    if samples < 1:
        raise InvalidArgs("samples must be positive")
    fundamental_cycles(G, T)  # validates T
    target = np.zeros(G.m, dtype=bool)
    for lab in T:
        target[lab - 1] = True
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        rows = min(_MC_CHUNK, samples - done)
        w = _untied_uniforms(rng, rows, G.m)
        chosen = _kruskal_max_trees(G.n, G.edges, w)
        hits += int((chosen == target).all(axis=1).sum())
        done += rows
    return _summarise(float(hits), float(hits), samples, seed)


# ---------------------------------------------------------------------------
# small conveniences

def cmw_value(H: BipGraph, x: Number) -> Fraction:
    """``T~_H(x, 0) * T~_H(0, x)``, the latter taken as ``T~`` of the swapped graph at ``(x, 0)``."""
    x = Fraction(x)
    return evaluate(H, (x, 0)) * evaluate(swap_sides(H), (x, 0))


def coefficient_support_ok(p: BiPoly) -> bool:
    """Downward closure of the support, ignoring the constant term."""
    for (i, j) in p.terms:
        for i2 in range(i + 1):
            for j2 in range(j + 1):
                if (i2, j2) != (0, 0) and not p.coeff(i2, j2):
                    return False
    return True


def extreme_coefficients(H: BipGraph, p: BiPoly | None = None) -> tuple[Fraction, Fraction]:
    """``(t_{|A|, l}, t_{r, |B|})`` with ``l``/``r`` isolated counts on B/A."""
    p = compute_poly(H) if p is None else p
    iso = set(H.isolated())
    r = sum(1 for v in H.side_a if v in iso)
    ell = sum(1 for v in H.side_b if v in iso)
    return p.coeff(len(H.side_a), ell), p.coeff(r, len(H.side_b))


def check_vertex(H: BipGraph, v) -> None:
    if v not in H:
        raise UnknownVertex(f"unknown vertex {v!r}")
