"""Executable identities and inequalities for ``T~`` and ``T``.

Every check returns :class:`CheckReport` objects with exact rational sides.
Comparisons never go through floats. A check whose hypotheses fail on the
given graph (isolated vertices, wrong degree pattern) is reported with
``status="not applicable"`` and ``holds=None``.

Reports flagged ``proven=False`` record statements that are not theorems
(the plain ``P_2 >= 1`` inequality fails for some graphs); they are
informational and never count as failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import IncompatibleSides, InvalidArgs, NotALeaf, UnknownVertex
from .graphs import (
    A_SIDE,
    BipGraph,
    HabcSpec,
    MultiGraph,
    canonical_code,
    delete_vertex,
    swap_sides,
)
from .classic_tutte import tutte_del_con
from .perm_tutte import alt, compute_poly, evaluate, habc_eval
from .ratpoly import BiPoly, format_rational

JACKSON = Fraction(3)
IMPROVED = Fraction(29243, 10000)
RECTANGLE_ABOVE = [(Fraction(0), Fraction(2)), (Fraction(1, 2), Fraction(3)),
                   (Fraction(2), Fraction(0)), (Fraction(3), Fraction(1, 3))]
RECTANGLE_BELOW = [(Fraction(2), Fraction(3, 2)), (Fraction(3), Fraction(3)),
                   (Fraction(0), Fraction(0)), (Fraction(1, 3), Fraction(1, 2))]
REGULAR_XS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not applicable"


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    instance: str
    lhs: Fraction | None
    rhs: Fraction | None
    holds: bool | None
    margin: Fraction | None
    status: str
    proven: bool = True

    @property
    def failed(self) -> bool:
        """A proven statement that did not hold."""
        return self.proven and self.holds is False

    def to_dict(self) -> dict:
        def num(v):
            return None if v is None else format_rational(v)

        return {
            "check": self.check_name,
            "instance": self.instance,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "margin": num(self.margin),
            "margin_approx": None if self.margin is None else float(self.margin),
            "holds": self.holds,
            "status": self.status,
            "proven": self.proven,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def to_ndjson(reports: Iterable[CheckReport]) -> str:
    return "".join(r.to_json() + "\n" for r in reports)


def _report(name: str, instance: str, lhs, rhs, relation: str, proven: bool = True) -> CheckReport:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = {
        ">=": lhs >= rhs,
        ">": lhs > rhs,
        "<=": lhs <= rhs,
        "==": lhs == rhs,
    }[relation]
    return CheckReport(name, instance, lhs, rhs, holds, lhs - rhs, HOLDS if holds else VIOLATED, proven)


def _skipped(name: str, instance: str) -> CheckReport:
    return CheckReport(name, instance, None, None, None, None, NOT_APPLICABLE)


def describe(H: BipGraph) -> str:
    return canonical_code(H).decode("ascii")


def describe_multigraph(G: MultiGraph) -> str:
    return f"multi n={G.n} edges={list(G.edges)}"


# ---------------------------------------------------------------------------
# Brylawski-type sums

def alternating_sum(p: BiPoly, h: int) -> Fraction:
    """``sum_{i+j<=h} C(h-i, j) (-1)**j t_ij``."""
    if h < 0:
        raise InvalidArgs("h must be nonnegative")
    total = Fraction(0)
    for (i, j), c in p.items():
        if i + j <= h:
            total += comb(h - i, j) * (-1) ** j * c
    return total


def brylawski_sum(H: BipGraph, h: int) -> Fraction:
    return alternating_sum(compute_poly(H), h)


def brylawski_expected(H: BipGraph, h: int) -> Fraction:
    m = H.num_vertices
    if h < m:
        return Fraction(0)
    b = len(H.side_b)
    return (-1) ** b * alt(H) * comb(b + h - m, h - m)


def brylawski_graph_sum(G: MultiGraph, h: int) -> Fraction:
    return alternating_sum(tutte_del_con(G), h)


def brylawski_graph_expected(G: MultiGraph, h: int) -> Fraction:
    m = G.m
    if h < m:
        return Fraction(0)
    r = G.n - G.num_components()
    return Fraction((-1) ** (m - r) * comb(h - r, h - m))


def check_brylawski(H: BipGraph, extra: int = 3) -> list[CheckReport]:
    inst = describe(H)
    p = compute_poly(H)
    return [
        _report(f"brylawski h={h}", inst, alternating_sum(p, h), brylawski_expected(H, h), "==")
        for h in range(H.num_vertices + extra + 1)
    ]


def check_brylawski_graph(G: MultiGraph, extra: int = 3) -> list[CheckReport]:
    inst = describe_multigraph(G)
    p = tutte_del_con(G)
    return [
        _report(f"brylawski-graphic h={h}", inst, alternating_sum(p, h), brylawski_graph_expected(G, h), "==")
        for h in range(G.m + extra + 1)
    ]


# ---------------------------------------------------------------------------
# identities

PARABOLA_XS = [Fraction(2), Fraction(3), Fraction(-1, 2), Fraction(5, 3), Fraction(1, 4)]


def check_identities(H: BipGraph, xs: Sequence[Fraction] = PARABOLA_XS) -> list[CheckReport]:
    inst = describe(H)
    p = compute_poly(H)
    reports = [
        _report("normalization T(1,1)=1", inst, p(1, 1), 1, "=="),
        _report("nonnegative coefficients", inst, min((c for _, c in p.items()), default=0), 0, ">="),
        _report("duality under side swap", inst, int(compute_poly(swap_sides(H)) == p.swap()), 1, "=="),
    ]
    a_iso = sum(1 for v in H.side_a if not H.neighbors(v))
    b_iso = sum(1 for v in H.side_b if not H.neighbors(v))
    a, b = len(H.side_a), len(H.side_b)
    alpha = alt(H)
    reports.append(_report("alt = t_{|A|,l}", inst, alpha, p.coeff(a, b_iso), "=="))
    reports.append(_report("alt = t_{r,|B|}", inst, alpha, p.coeff(a_iso, b), "=="))
    if H.has_isolated():
        reports.append(_skipped("t_{a,0} = t_{0,b}", inst))
    else:
        reports.append(_report("t_{a,0} = t_{0,b}", inst, p.coeff(a, 0), p.coeff(0, b), "=="))
    m = H.num_vertices
    for x in xs:
        x = Fraction(x)
        if x in (0, 1):
            raise InvalidArgs("parabola points need x not in {0, 1}")
        lhs = evaluate(H, (x, x / (x - 1)))
        rhs = alpha * x**m / (x - 1) ** b
        reports.append(_report(f"parabola x={format_rational(x)}", inst, lhs, rhs, "=="))
    return reports


# ---------------------------------------------------------------------------
# inequalities

def cmw_product(H: BipGraph, x) -> Fraction:
    """``P_x(H) = T~(x, 0) * T~(0, x)``."""
    x = Fraction(x)
    return evaluate(H, (x, 0)) * evaluate(H, (0, x))


def degree_product_bound(H: BipGraph, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    bound = Fraction(1)
    for v in H.side_a:
        bound *= 1 + (x - 1) / (H.degree(v) + 1)
    for v in H.side_b:
        bound *= 1 + (y - 1) / (H.degree(v) + 1)
    return bound


def check_inequality_suite(H: BipGraph, instance: str | None = None) -> list[CheckReport]:
    inst = describe(H) if instance is None else instance
    out: list[CheckReport] = []

    def T(x, y) -> Fraction:
        return evaluate(H, (Fraction(x), Fraction(y)))

    # the vertex-free graph has T~ = 1 and sits outside every scoped statement
    isolated = H.has_isolated() or not H.num_vertices
    name = "T(4,0)T(0,4) >= T(2,2)^2"
    out.append(_skipped(name, inst) if isolated else _report(name, inst, T(4, 0) * T(0, 4), T(2, 2) ** 2, ">="))

    one_x = {}
    one_y = {}
    for x, y in RECTANGLE_ABOVE + RECTANGLE_BELOW:
        one_x.setdefault(x, T(x, 1))
        one_y.setdefault(y, T(1, y))
    for x, y in RECTANGLE_ABOVE:
        pt = f"({format_rational(x)},{format_rational(y)})"
        out.append(_report(f"rectangle >= at {pt}", inst, T(x, y) * T(1, 1), one_x[x] * one_y[y], ">="))
        out.append(_report(f"degree bound at {pt}", inst, T(x, y), degree_product_bound(H, x, y), ">="))
    for x, y in RECTANGLE_BELOW:
        pt = f"({format_rational(x)},{format_rational(y)})"
        out.append(_report(f"rectangle <= at {pt}", inst, T(x, y) * T(1, 1), one_x[x] * one_y[y], "<="))

    for label, x, rel in (("P_3 >= 1", JACKSON, ">="), ("P_2.9243 > 1", IMPROVED, ">")):
        out.append(_skipped(label, inst) if isolated else _report(label, inst, cmw_product(H, x), 1, rel))
    if isolated:
        out.append(_skipped("P_{2+1/delta} >= 1", inst))
    else:
        delta = H.min_degree()
        x = 2 + Fraction(1, delta)
        out.append(_report(f"P_{{2+1/delta}} >= 1 (delta={delta})", inst, cmw_product(H, x), 1, ">="))

    if not isolated and H.is_regular():
        for x in REGULAR_XS:
            out.append(_report(f"regular T(x,2-x) >= 1 at x={format_rational(x)}", inst, T(x, 2 - x), 1, ">="))
    else:
        out.append(_skipped("regular T(x,2-x) >= 1", inst))

    name = "P_2 >= 1"
    out.append(_skipped(name, inst) if isolated else _report(name, inst, cmw_product(H, 2), 1, ">=", proven=False))
    return out


def _require_x_at_least_one(x) -> Fraction:
    x = Fraction(x)
    if x < 1:
        raise InvalidArgs("this inequality needs x >= 1")
    return x


def glue(H1: BipGraph, root1, H2: BipGraph, root2) -> tuple[BipGraph, tuple]:
    """Identify ``root1`` with ``root2``; vertices become ``(1, v)``/``(2, v)`` and the root ``(0, root1)``."""
    if H1.side(root1) != H2.side(root2):
        raise IncompatibleSides("the two roots lie on different sides")
    root = (0, root1)

    def tag(k, r, v):
        return root if v == r else (k, v)

    side_a = [tag(1, root1, v) for v in H1.side_a] + [(2, v) for v in H2.side_a if v != root2]
    side_b = [tag(1, root1, v) for v in H1.side_b] + [(2, v) for v in H2.side_b if v != root2]
    edges = [(tag(1, root1, u), tag(1, root1, v)) for u, v in H1.edges]
    edges += [(tag(2, root2, u), tag(2, root2, v)) for u, v in H2.edges]
    return BipGraph(side_a, side_b, edges), root


def check_gluing(H1: BipGraph, root1, H2: BipGraph, root2, x=2) -> tuple[CheckReport, CheckReport]:
    """The glued-graph inequality at ``(x, 0)`` and its consequence for ``P_x``."""
    x = _require_x_at_least_one(x)
    H, root = glue(H1, root1, H2, root2)
    inst = describe(H)
    at = (x, Fraction(0))
    prod = evaluate(H1, at) * evaluate(H2, at)
    if H.side(root) == A_SIDE:
        side = _report("gluing at an A-root: x T(x,0) >= T1 T2", inst, x * evaluate(H, at), prod, ">=")
    else:
        side = _report("gluing at a B-root: T(x,0) >= T1 T2", inst, evaluate(H, at), prod, ">=")
    cons = _report(
        "gluing: P_x(H) >= P_x(H1) P_x(H2) / x", inst,
        cmw_product(H, x), cmw_product(H1, x) * cmw_product(H2, x) / x, ">=",
    )
    return side, cons


def check_leaf_deletion(H: BipGraph, v, x=2) -> CheckReport:
    x = _require_x_at_least_one(x)
    if v not in H:
        raise UnknownVertex(f"unknown vertex {v!r}")
    if H.degree(v) != 1:
        raise NotALeaf(f"vertex {v!r} has degree {H.degree(v)}")
    factor = (x + 1) / 2 if H.side(v) == A_SIDE else Fraction(1, 2)
    rest = evaluate(delete_vertex(H, v), (x, 0))
    side = "A" if H.side(v) == A_SIDE else "B"
    return _report(f"leaf deletion ({side}-leaf)", describe(H), evaluate(H, (x, 0)), factor * rest, ">=")


def check_leaf_deletion_product(H: BipGraph, v, x=2) -> CheckReport:
    """``P_x(H) >= (x+1)/4 * P_x(H - v)`` for a leaf ``v``."""
    x = _require_x_at_least_one(x)
    if H.degree(v) != 1:
        raise NotALeaf(f"vertex {v!r} has degree {H.degree(v)}")
    return _report(
        "leaf deletion: P_x(H) >= (x+1)/4 P_x(H-v)", describe(H),
        cmw_product(H, x), (x + 1) / 4 * cmw_product(delete_vertex(H, v), x), ">=",
    )


# ---------------------------------------------------------------------------
# the H_{a,b,c} scan

def habc_product(spec: HabcSpec, x) -> Fraction:
    x = Fraction(x)
    return habc_eval(spec, (x, 0)) * habc_eval(spec, (0, x))


def counterexample_scan(a_range: Iterable[int], b_range: Iterable[int], c_range: Iterable[int], x=2) -> list[CheckReport]:
    """Every ``H_{a,b,c}`` in the grid with ``P_x < 1``, most negative margin first.

    Triples with ``c > b`` are skipped.
    """
    x = Fraction(x)
    found = []
    b_vals = list(b_range)
    c_vals = list(c_range)
    for a in a_range:
        for b in b_vals:
            for c in c_vals:
                if a < 1 or b < 1 or not 0 <= c <= b:
                    continue
                spec = HabcSpec(a, b, c)
                rep = _report(f"P_{format_rational(x)} >= 1", f"H({a},{b},{c})", habc_product(spec, x), 1, ">=", proven=False)
                if not rep.holds:
                    found.append(rep)
    found.sort(key=lambda r: (r.margin, r.instance))
    return found
