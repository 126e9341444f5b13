"""The classical Tutte polynomial of a multigraph.

Two independent routes (subset expansion and deletion-contraction), the
spanning-tree activity expansion under an explicit edge labelling, and the
identity writing ``T_G`` as a sum of ``T~`` over local basis exchange graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import Disconnected, InvalidArgs, TooLarge
from .graphs import (
    MultiGraph,
    contract_edge,
    delete_edge,
    fundamental_cycles,
    iter_spanning_trees,
    local_basis_exchange,
    multigraph_code,
)
from .perm_tutte import EvalPoint, compute_poly, evaluate
from .ratpoly import BiPoly, poly_eval

DEFAULT_SUBSET_LIMIT = 20


def tutte_subset_oracle(G: MultiGraph, limit: int = DEFAULT_SUBSET_LIMIT) -> BiPoly:
    """Rank-nullity expansion over all ``2**m`` edge subsets."""
    m = G.m
    if m > limit:
        raise TooLarge(f"{m} edges exceeds the subset-expansion limit of {limit}")
    k_full = G.num_components()
    counts: dict[tuple[int, int], int] = {}
    # walk subsets as bitmasks, rebuilding union-find per subset; m <= 20 keeps this cheap
    for mask in range(1 << m):
        labels = [k + 1 for k in range(m) if mask >> k & 1]
        k_sub = G.num_components(labels)
        p = k_sub - k_full
        q = k_sub + len(labels) - G.n
        counts[(p, q)] = counts.get((p, q), 0) + 1
    terms: dict[tuple[int, int], int] = {}
    for (p, q), c in counts.items():
        # (x-1)^p (y-1)^q
        for i in range(p + 1):
            ci = comb(p, i) * (-1) ** (p - i)
            for j in range(q + 1):
                key = (i, j)
                terms[key] = terms.get(key, 0) + c * ci * comb(q, j) * (-1) ** (q - j)
    return BiPoly(terms)


_DELCON_MEMO: dict[bytes, BiPoly] = {}


def _is_bridge(G: MultiGraph, label: int) -> bool:
    rest = [k for k in range(1, G.m + 1) if k != label]
    return G.num_components(rest) > G.num_components()


def tutte_del_con(G: MultiGraph) -> BiPoly:
    """Deletion-contraction with loops and bridges peeled off first."""
    key = multigraph_code(G)
    hit = _DELCON_MEMO.get(key)
    if hit is not None:
        return hit
    factor_x = factor_y = 0
    H = G
    while True:
        loop = next((k for k in range(1, H.m + 1) if H.is_loop(k)), None)
        if loop is not None:
            factor_y += 1
            H = delete_edge(H, loop)
            continue
        bridge = next((k for k in range(1, H.m + 1) if _is_bridge(H, k)), None)
        if bridge is not None:
            factor_x += 1
            H = contract_edge(H, bridge)
            continue
        break
    if H.m == 0:
        core = BiPoly.constant(1)
    else:
        core = tutte_del_con(delete_edge(H, 1)) + tutte_del_con(contract_edge(H, 1))
    result = core * BiPoly.monomial(factor_x, factor_y)
    _DELCON_MEMO[key] = result
    return result


def _check_labeling(G: MultiGraph, labeling: Sequence[int] | None) -> list[int]:
    """``rank[e]`` for each edge label ``e``; ``labeling[e-1]`` is the new label of ``e``."""
    if labeling is None:
        return list(range(G.m + 1))
    labeling = list(labeling)
    if sorted(labeling) != list(range(1, G.m + 1)):
        raise InvalidArgs("labeling must be a permutation of 1..m")
    return [0] + labeling


def activities_poly(G: MultiGraph, labeling: Sequence[int] | None = None) -> BiPoly:
    """``sum_T x**ia(T) * y**ea(T)`` with activity decided by the largest label.

    A tree edge is internally active when it carries the largest label in its
    fundamental cut; a non-tree edge is externally active when it carries the
    largest label in its fundamental cycle.
    """
    if not G.is_connected():
        raise Disconnected("activities need a connected graph")
    rank = _check_labeling(G, labeling)
    counts: dict[tuple[int, int], int] = {}
    for T in iter_spanning_trees(G):
        cycles = fundamental_cycles(G, T)
        cut_max = {e: rank[e] for e in T}
        ea = 0
        for f, cyc in cycles.items():
            if all(rank[f] > rank[e] for e in cyc):
                ea += 1
            for e in cyc:
                if rank[f] > cut_max[e]:
                    cut_max[e] = rank[f]
        ia = sum(1 for e in T if cut_max[e] == rank[e])
        counts[(ia, ea)] = counts.get((ia, ea), 0) + 1
    return BiPoly(counts)


def tree_summands(G: MultiGraph) -> list[tuple[frozenset, BiPoly]]:
    """``(T, T~ of H[T])`` for every spanning tree ``T``."""
    if not G.is_connected():
        raise Disconnected("the decomposition needs a connected graph")
    return [(T, compute_poly(local_basis_exchange(G, T))) for T in iter_spanning_trees(G)]


def decompose_check(G: MultiGraph) -> tuple[BiPoly, BiPoly]:
    total = BiPoly()
    for _, p in tree_summands(G):
        total = total + p
    return tutte_del_con(G), total


@dataclass
class TransferReport:
    points: tuple[EvalPoint, EvalPoint, EvalPoint]
    graph_lhs: Fraction
    graph_rhs: Fraction
    graph_holds: bool
    tree_violations: list[tuple[frozenset, Fraction, Fraction]] = field(default_factory=list)

    @property
    def trees_hold(self) -> bool:
        return not self.tree_violations


def transfer_check(G: MultiGraph, pts) -> TransferReport:
    """``T(p1) T(p2) >= T(p0)**2`` for ``T_G`` and for each ``T~`` of ``H[T]``.

    ``pts`` is ``(p1, p2, p0)``.
    """
    p1, p2, p0 = (p if isinstance(p, EvalPoint) else EvalPoint(*p) for p in pts)
    for p in (p1, p2, p0):
        if p.x < 0 or p.y < 0:
            raise InvalidArgs("transfer points need nonnegative coordinates")
    if not G.is_connected():
        raise Disconnected("the transfer check needs a connected graph")
    T_G = tutte_del_con(G)
    lhs = poly_eval(T_G, p1.x, p1.y) * poly_eval(T_G, p2.x, p2.y)
    rhs = poly_eval(T_G, p0.x, p0.y) ** 2
    bad = []
    for T in iter_spanning_trees(G):
        H = local_basis_exchange(G, T)
        t_lhs = evaluate(H, p1) * evaluate(H, p2)
        t_rhs = evaluate(H, p0) ** 2
        if t_lhs < t_rhs:
            bad.append((T, t_lhs, t_rhs))
    return TransferReport((p1, p2, p0), lhs, rhs, lhs >= rhs, bad)


def clear_caches() -> None:
    _DELCON_MEMO.clear()
