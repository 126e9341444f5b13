"""Command-line interface.

Exit codes: 0 success, 1 a check was violated, 2 malformed input,
3 input outside an operation's domain.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from . import classic_tutte, perm_tutte, trees, verify
from .corpus import bipartite_graphs_upto, connected_multigraphs, random_bipartite
from .errors import BudgetExceeded, InputError, InvalidArgs, PreconditionError
from .formats import load_graph
from .graphs import BipGraph, MultiGraph, local_basis_exchange
from .ratpoly import format_poly, format_rational, parse_rational

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidArgs(f"expected 'x,y', got {text!r}")
    try:
        return parse_rational(parts[0]), parse_rational(parts[1])
    except ValueError:
        raise InvalidArgs(f"bad rational in {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise InvalidArgs(f"bad rational {text!r}") from None


def _int_range(text: str) -> range:
    """``"18..20"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise InvalidArgs(f"expected 'lo..hi' or an integer, got {text!r}") from None


def _labels(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidArgs(f"expected comma-separated integers, got {text!r}") from None


def _bipartite(path: str) -> BipGraph:
    G = load_graph(path)
    if not isinstance(G, BipGraph):
        raise InvalidArgs(f"{path}: expected a bipartite graph document")
    return G


def _multigraph(path: str) -> MultiGraph:
    G = load_graph(path)
    if not isinstance(G, MultiGraph):
        raise InvalidArgs(f"{path}: expected a multigraph document")
    return G


def _emit(reports: Iterable[verify.CheckReport], out) -> int:
    status = EXIT_OK
    for r in reports:
        out.write(r.to_json() + "\n")
        if r.failed:
            status = EXIT_VIOLATION
    return status


# ---------------------------------------------------------------------------
# subcommands

def cmd_compute(args, out) -> int:
    H = _bipartite(args.graph)
    if args.alt:
        out.write(format_rational(perm_tutte.alt(H)) + "\n")
        return EXIT_OK
    method = args.method
    if method == "auto":
        method = "brute" if H.num_vertices <= 6 else "recursive"
    if args.at is not None:
        x, y = _point(args.at)
        if method == "brute":
            value = perm_tutte.brute_force_poly(H)(x, y)
        else:
            value = perm_tutte.evaluate(H, (x, y))
        out.write(format_rational(value) + "\n")
        return EXIT_OK
    p = perm_tutte.brute_force_poly(H) if method == "brute" else perm_tutte.compute_poly(H)
    out.write(format_poly(p) + "\n")
    return EXIT_OK


def cmd_tutte(args, out) -> int:
    G = _multigraph(args.graph)
    labeling = _labels(args.labeling) if args.labeling else None
    if args.method == "subset":
        p = classic_tutte.tutte_subset_oracle(G)
    elif args.method == "delcon":
        p = classic_tutte.tutte_del_con(G)
    elif args.method == "activities":
        p = classic_tutte.activities_poly(G, labeling)
    else:
        parts = classic_tutte.tree_summands(G)
        p = sum((q for _, q in parts), perm_tutte.ZERO_POLY)
        if args.verbose:
            for T, q in parts:
                out.write(f"tree {{{','.join(map(str, sorted(T)))}}}\t{format_poly(q)}\n")
            out.write("total\t")
    out.write(format_poly(p) + "\n")
    return EXIT_OK


def _corpus(args, default_max: int) -> Iterable[BipGraph]:
    if args.graph:
        return [_bipartite(args.graph)]
    n = default_max if args.max_vertices is None else args.max_vertices
    if args.count:
        rng = random.Random(args.seed)
        return [random_bipartite(n, rng) for _ in range(args.count)]
    return bipartite_graphs_upto(n)


def _identity_reports(args):
    for H in _corpus(args, 6):
        yield from verify.check_identities(H)


def _inequality_reports(args):
    for H in _corpus(args, 8):
        yield from verify.check_inequality_suite(H)


def _brylawski_reports(args):
    for H in _corpus(args, 7):
        yield from verify.check_brylawski(H)
    if not args.graph:
        for layer in connected_multigraphs(args.max_edges):
            for G in layer:
                yield from verify.check_brylawski_graph(G)


def _gluing_reports(args):
    n = 5 if args.max_vertices is None else args.max_vertices
    small = [H for H in bipartite_graphs_upto(n, 1) if H.is_tree()]
    for H1 in small:
        for H2 in small:
            for r1 in H1.vertices:
                for r2 in H2.vertices:
                    if H1.side(r1) == H2.side(r2):
                        yield from verify.check_gluing(H1, r1, H2, r2, args.x)
    for H in small:
        for v in H.vertices:
            if H.degree(v) == 1:
                yield verify.check_leaf_deletion(H, v, args.x)
                yield verify.check_leaf_deletion_product(H, v, args.x)


def cmd_verify(args, out) -> int:
    gen = {
        "identities": _identity_reports,
        "inequalities": _inequality_reports,
        "brylawski": _brylawski_reports,
        "gluing": _gluing_reports,
    }[args.target]
    return _emit(gen(args), out)


def cmd_scan(args, out) -> int:
    found = verify.counterexample_scan(_int_range(args.a), _int_range(args.b), _int_range(args.c), args.x)
    for r in found:
        out.write(r.to_json() + "\n")
    return EXIT_OK


def cmd_survey(args, out) -> int:
    hi = args.m if args.to is None else args.to
    if not args.no_header:
        out.write(trees.TSV_HEADER + "\n")
    for m in range(args.m, hi + 1):
        out.write(trees.survey(m, jobs=args.jobs).tsv() + "\n")
        out.flush()
    return EXIT_OK


def cmd_estimate(args, out) -> int:
    G = load_graph(args.graph)
    if args.tree:
        if not isinstance(G, MultiGraph):
            raise InvalidArgs("--tree needs a multigraph document")
        est = perm_tutte.mc_max_tree_prob(G, _labels(args.tree), args.samples, args.seed)
        exact = perm_tutte.alt(local_basis_exchange(G, _labels(args.tree)))
    else:
        if not isinstance(G, BipGraph):
            raise InvalidArgs("estimating T~ needs a bipartite graph document")
        if args.at is None:
            raise InvalidArgs("--at x,y is required")
        x, y = _point(args.at)
        est = perm_tutte.monte_carlo_eval(G, (x, y), args.samples, args.seed)
        exact = None
    out.write(str(est) + "\n")
    if exact is not None and args.exact:
        out.write(f"exact {format_rational(exact)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permtutte",
        description="Permutation Tutte polynomials of bipartite graphs and related checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="T~ of a bipartite graph")
    p.add_argument("graph")
    p.add_argument("--at", metavar="X,Y", help="evaluate at a rational point instead")
    p.add_argument("--method", choices=["brute", "recursive", "auto"], default="auto")
    p.add_argument("--alt", action="store_true", help="print the alternating number instead")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("tutte", help="the Tutte polynomial of a multigraph")
    p.add_argument("graph")
    p.add_argument("--method", choices=["subset", "delcon", "activities", "decompose"], default="delcon")
    p.add_argument("--labeling", metavar="L1,L2,...", help="new label of each edge, for activities")
    p.add_argument("--verbose", action="store_true", help="per-tree summands for decompose")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("verify", help="run identity/inequality checks, NDJSON out")
    p.add_argument("target", choices=["identities", "inequalities", "brylawski", "gluing"])
    p.add_argument("--graph", help="check one bipartite graph instead of a corpus")
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--max-edges", type=int, default=6, help="multigraph corpus size for brylawski")
    p.add_argument("--count", type=int, default=0, help="random graphs instead of the exhaustive corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--x", type=_rational, default=Fraction(2), help="x for gluing checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="search H_{a,b,c} for P_x < 1")
    p.add_argument("--a", required=True, metavar="LO..HI")
    p.add_argument("--b", required=True, metavar="LO..HI")
    p.add_argument("--c", required=True, metavar="LO..HI")
    p.add_argument("--x", type=_rational, default=Fraction(2))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("survey", help="min P_2 over free trees, TSV out")
    p.add_argument("m", type=int)
    p.add_argument("--to", type=int, default=None, help="run every size from m to this one")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-header", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("estimate", help="Monte Carlo estimates")
    p.add_argument("graph")
    p.add_argument("--at", metavar="X,Y")
    p.add_argument("--tree", metavar="E1,E2,...", help="estimate the max-weight-tree probability instead")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also print the exact value when known")
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, BudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
