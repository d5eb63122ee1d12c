"""Edge-list and JSON graph formats."""
import json
import os
from typing import List, Set, Tuple

from src.graph.core import Graph
from src.utils.errors import (
    DuplicateEdgeError,
    GraphInputError,
    IndexRangeError,
    MalformedLineError,
    SelfLoopError,
)


def _parse_int_pair(line_no: int, text: str) -> Tuple[int, int]:
    parts = text.split()
    if len(parts) != 2:
        raise MalformedLineError(line_no, text)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedLineError(line_no, text, "non-integer token") from None


def parse_edge_list(text: str, name: str = "") -> Graph:
    """
    Parse the "n m" header followed by m lines "u v".

    Endpoints may come in either order; blank lines are ignored.
    """
    lines = [(i + 1, raw.strip()) for i, raw in enumerate(text.split("\n"))]
    lines = [(no, s) for no, s in lines if s]
    if not lines:
        raise MalformedLineError(1, "", "missing 'n m' header")
    header_no, header = lines[0]
    n, m = _parse_int_pair(header_no, header)
    if n < 1 or m < 0:
        raise MalformedLineError(header_no, header, "n must be positive and m non-negative")
    body = lines[1:]
    if len(body) != m:
        last_no = body[-1][0] if body else header_no
        raise MalformedLineError(last_no, body[-1][1] if body else header, f"header announces {m} edges, found {len(body)}")

    seen: Set[Tuple[int, int]] = set()
    edges: List[Tuple[int, int]] = []
    for line_no, s in body:
        u, v = _parse_int_pair(line_no, s)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexRangeError(line_no, u, v, n)
        if u == v:
            raise SelfLoopError(u, line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(*key, line_no=line_no)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges, name=name)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _is_int(value) -> bool:
    # JSON true/false decode to bool, which subclasses int
    return isinstance(value, int) and not isinstance(value, bool)


def parse_json_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphInputError(f"invalid JSON graph: {e}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphInputError("JSON graph needs 'n' and 'edges' keys")
    n = data["n"]
    if not _is_int(n) or n < 1:
        raise GraphInputError(f"'n' must be a positive integer, got {n!r}")
    seen: Set[Tuple[int, int]] = set()
    edges = []
    for idx, pair in enumerate(data["edges"]):
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_int(p) for p in pair)):
            raise MalformedLineError(idx + 1, str(pair), "edge must be [u, v]")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise IndexRangeError(idx + 1, u, v, n)
        if u == v:
            raise SelfLoopError(u, idx + 1)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(*key, line_no=idx + 1)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges, name=str(data.get("name", "")))


def serialize_json_graph(g: Graph) -> str:
    payload = {"n": g.n, "edges": [[u, v] for u, v in g.edges], "name": g.name}
    return json.dumps(payload, separators=(",", ":"))


def load_graph(path: str) -> Graph:
    if not os.path.exists(path):
        raise GraphInputError(f"graph file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    name = os.path.splitext(os.path.basename(path))[0]
    if path.endswith(".json"):
        g = parse_json_graph(text)
        return g if g.name else Graph(n=g.n, adj=g.adj, name=name)
    return parse_edge_list(text, name=name)


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    return serialize_json_graph(g) + "\n" if fmt == "json" else serialize_edge_list(g)


def save_graph(g: Graph, path: str, fmt: str = "edgelist") -> None:
    text = format_graph(g, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
