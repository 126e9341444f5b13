"""Reading and writing graph documents.

JSON::

    {"A": [1, 2, 3], "B": [4, 5], "edges": [[1, 4], [2, 4]]}   bipartite
    {"n": 3, "edges": [[1, 2], [2, 3], [3, 3]]}                 multigraph

Edge list text: a header ``bip a b`` (A is ``1..a``, B is ``a+1..a+b``) or
``multi n`` (vertices ``1..n``), then one ``u v`` pair per line. Blank lines
and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import InvalidArgs
from .graphs import BipGraph, MultiGraph, make_bipartite

Graph = Union[BipGraph, MultiGraph]


def _pair(item, where: str) -> tuple:
    if not isinstance(item, (list, tuple)) or len(item) != 2:
        raise InvalidArgs(f"{where}: an edge must be a two-element list, got {item!r}")
    return tuple(item)


def _vertex_id(v, where: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InvalidArgs(f"{where}: vertex ids must be integers or strings, got {v!r}")
    return v


def graph_from_json(doc, where: str = "<json>") -> Graph:
    if not isinstance(doc, dict):
        raise InvalidArgs(f"{where}: expected a JSON object")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise InvalidArgs(f"{where}: 'edges' must be a list")
    edges = [_pair(e, where) for e in edges]
    if "A" in doc or "B" in doc:
        side_a = doc.get("A", [])
        side_b = doc.get("B", [])
        if not isinstance(side_a, list) or not isinstance(side_b, list):
            raise InvalidArgs(f"{where}: 'A' and 'B' must be lists")
        return make_bipartite(
            [_vertex_id(v, where) for v in side_a],
            [_vertex_id(v, where) for v in side_b],
            [(_vertex_id(u, where), _vertex_id(v, where)) for u, v in edges],
        )
    if "n" in doc:
        n = doc["n"]
        if isinstance(n, bool) or not isinstance(n, int):
            raise InvalidArgs(f"{where}: 'n' must be an integer")
        for u, v in edges:
            for w in (u, v):
                if isinstance(w, bool) or not isinstance(w, int):
                    raise InvalidArgs(f"{where}: multigraph vertices are integers 1..n")
        return MultiGraph(n, edges)
    raise InvalidArgs(f"{where}: need either 'A'/'B' (bipartite) or 'n' (multigraph)")


def graph_to_json(G: Graph) -> dict:
    if isinstance(G, BipGraph):
        return {"A": list(G.side_a), "B": list(G.side_b), "edges": [list(e) for e in sorted(G.edges, key=repr)]}
    return {"n": G.n, "edges": [list(e) for e in G.edges]}


def _ints(line: str, lineno: int, where: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise InvalidArgs(f"{where}:{lineno}: expected integers, got {line!r}") from None


def graph_from_edgelist(text: str, where: str = "<edgelist>") -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise InvalidArgs(f"{where}: empty edge list")
    lineno, header = rows[0]
    kind, *rest = header.split()
    sizes = _ints(" ".join(rest), lineno, where)
    edges = []
    for lineno, line in rows[1:]:
        pair = _ints(line, lineno, where)
        if len(pair) != 2:
            raise InvalidArgs(f"{where}:{lineno}: expected 'u v', got {line!r}")
        edges.append(tuple(pair))
    if kind == "bip" and len(sizes) == 2:
        a, b = sizes
        if a < 0 or b < 0:
            raise InvalidArgs(f"{where}: side sizes must be nonnegative")
        return make_bipartite(range(1, a + 1), range(a + 1, a + b + 1), edges)
    if kind == "multi" and len(sizes) == 1:
        return MultiGraph(sizes[0], edges)
    raise InvalidArgs(f"{where}:{lineno}: header must be 'bip a b' or 'multi n'")


def graph_to_edgelist(G: Graph) -> str:
    if isinstance(G, BipGraph):
        a, b = len(G.side_a), len(G.side_b)
        expected = list(range(1, a + 1)), list(range(a + 1, a + b + 1))
        if (list(G.side_a), list(G.side_b)) != expected:
            raise InvalidArgs("edge lists need A = 1..a and B = a+1..a+b")
        lines = [f"bip {a} {b}"]
    else:
        lines = [f"multi {G.n}"]
    edges = sorted(G.edges) if isinstance(G, BipGraph) else G.edges
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str, where: str = "<input>") -> Graph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgs(f"{where}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
        return graph_from_json(doc, where)
    return graph_from_edgelist(text, where)


def load_graph(path) -> Graph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidArgs(f"{path}: {exc.strerror}") from None
    return parse_graph(text, str(path))
