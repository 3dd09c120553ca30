"""graph6, JSON and DOT serialisation for :class:`Graph`."""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .graph import Graph, GraphError

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    n = g.order
    bits = [g.adj[j] >> i & 1 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def from_graph6(line: str) -> Graph:
    """Decode one graph6 string; errors name the offending character position."""
    s = line.strip()
    offset = 0
    if s.startswith(_HEADER):
        s = s[len(_HEADER) :]
        offset = len(_HEADER)
    if not s:
        raise GraphError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"graph6: invalid character {ch!r} at position {pos + offset}")
    vals = [ord(c) - 63 for c in s]
    if vals[0] != 63:
        n, start = vals[0], 1
    elif len(vals) > 1 and vals[1] != 63:
        if len(vals) < 4:
            raise GraphError(f"graph6: truncated order field at position {offset}")
        n, start = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    else:
        if len(vals) < 8:
            raise GraphError(f"graph6: truncated order field at position {offset}")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        start = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = vals[start:]
    if len(body) != need:
        raise GraphError(
            f"graph6: expected {need} data characters after position {start + offset}, got {len(body)}"
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(from_graph6(line))
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return out


def graph_to_dict(g: Graph, ids: Sequence[str] | None = None) -> dict[str, Any]:
    d: dict[str, Any] = {"n": g.order, "edges": [list(e) for e in g.edges()]}
    if ids is not None:
        d["ids"] = list(ids)
    return d


def graph_from_dict(d: Any) -> Graph:
    if not isinstance(d, dict) or "n" not in d or "edges" not in d:
        raise GraphError('graph JSON must be an object with "n" and "edges"')
    n = d["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphError('"n" must be an integer')
    edges = d["edges"]
    if not isinstance(edges, list):
        raise GraphError('"edges" must be a list')
    for idx, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphError(f"edges[{idx}] must be a pair of integers")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise GraphError(f"graph JSON: {exc}") from None


def graph_to_json(g: Graph, ids: Sequence[str] | None = None) -> str:
    return json.dumps(graph_to_dict(g, ids), sort_keys=True)


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return graph_from_dict(data)


def to_dot(g: Graph, labels: Sequence[int] | None = None, ids: Sequence[str] | None = None) -> str:
    lines = ["graph G {"]
    for v in g.vertices():
        attrs = []
        name = ids[v] if ids is not None else str(v)
        text = name if labels is None else f"{name}: {labels[v]}"
        attrs.append(f'label="{text}"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for a, b in g.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
