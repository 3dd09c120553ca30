"""Simple undirected graphs over vertices ``0..n-1`` with bitset adjacency.

Every structure the rest of the package builds (Mycielskians, squares,
complements, double covers) is a :class:`Graph`.  Adjacency is a tuple of
Python ints, one bitmask per vertex, because the solvers spend most of their
time intersecting neighbourhoods.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

# Sentinel for unreachable pairs in a DistanceTable.  Compared with ``is``.
UNREACHABLE = None


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class GraphError(ValueError):
    """Raised for malformed graph input or out-of-range parameters."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.  ``adj[v]`` is the neighbour bitmask of ``v``."""

    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.adj)
        full = (1 << n) - 1
        for v, mask in enumerate(self.adj):
            if mask < 0 or mask & ~full:
                raise GraphError(f"vertex {v}: neighbour outside 0..{n - 1}")
            if mask >> v & 1:
                raise GraphError(f"vertex {v}: self-loop")
            for w in iter_bits(mask):
                if not self.adj[w] >> v & 1:
                    raise GraphError(f"edge {v}-{w} is not symmetric")

    @classmethod
    def unchecked(cls, adj: Sequence[int]) -> Graph:
        """Build without the symmetry scan; callers guarantee a valid adjacency."""
        g = object.__new__(cls)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        if n < 0:
            raise GraphError("order must be non-negative")
        adj = [0] * n
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} must have two endpoints")
            a, b = int(e[0]), int(e[1])
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) has an endpoint outside 0..{n - 1}")
            if a == b:
                raise GraphError(f"self-loop at {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(tuple(adj))

    @property
    def order(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v, mask in enumerate(self.adj):
            for w in iter_bits(mask >> (v + 1)):
                out.append((v, v + 1 + w))
        return out

    def size(self) -> int:
        return sum(popcount(m) for m in self.adj) // 2

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(m) for m in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def isolated_vertices(self) -> list[int]:
        return [v for v, m in enumerate(self.adj) if m == 0]

    def has_isolated_vertices(self) -> bool:
        return any(m == 0 for m in self.adj)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            mask = 0
            for w in iter_bits(self.adj[v]):
                if w in pos:
                    mask |= 1 << pos[w]
            adj.append(mask)
        return Graph(tuple(adj))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.order
        for v, mask in enumerate(self.adj):
            new = 0
            for w in iter_bits(mask):
                new |= 1 << perm[w]
            adj[perm[v]] = new
        return Graph(tuple(adj))

    def is_connected(self) -> bool:
        n = self.order
        if n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << n) - 1

    def components(self) -> list[list[int]]:
        left = (1 << self.order) - 1
        comps = []
        while left:
            start = (left & -left).bit_length() - 1
            seen = frontier = 1 << start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~seen
                seen |= frontier
            comps.append(list(iter_bits(seen)))
            left &= ~seen
        return comps

    def __repr__(self) -> str:
        return f"Graph(n={self.order}, edges={self.edges()})"


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with left part ``0..n_left-1`` and right part ``0..n_right-1``.

    ``left_adj[x]`` is the bitmask of right vertices adjacent to left vertex ``x``.
    """

    n_left: int
    n_right: int
    left_adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.left_adj) != self.n_left:
            raise GraphError("left adjacency length differs from left part size")
        full = (1 << self.n_right) - 1
        if any(m & ~full for m in self.left_adj):
            raise GraphError("edge endpoint outside the right part")

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x, m in enumerate(self.left_adj) for y in iter_bits(m)]

    def size(self) -> int:
        return sum(popcount(m) for m in self.left_adj)

    def right_adj(self) -> tuple[int, ...]:
        out = [0] * self.n_right
        for x, m in enumerate(self.left_adj):
            for y in iter_bits(m):
                out[y] |= 1 << x
        return tuple(out)

    def as_graph(self) -> Graph:
        """Flatten to a Graph: left ``x`` -> ``x``, right ``y`` -> ``n_left + y``."""
        edges = [(x, self.n_left + y) for x, y in self.edges()]
        return Graph.from_edges(self.n_left + self.n_right, edges)


class DistanceTable:
    """All-pairs hop distances; unreachable pairs hold ``UNREACHABLE``."""

    __slots__ = ("n", "_rows")

    def __init__(self, rows: list[list[int | None]]):
        self.n = len(rows)
        self._rows = rows

    def __getitem__(self, pair: tuple[int, int]) -> int | None:
        a, b = pair
        return self._rows[a][b]

    def row(self, v: int) -> list[int | None]:
        return list(self._rows[v])

    def is_reachable(self, a: int, b: int) -> bool:
        return self._rows[a][b] is not UNREACHABLE

    def at_least(self, a: int, b: int, k: int) -> bool:
        """True when ``d(a, b) >= k`` (unreachable counts as infinite)."""
        d = self._rows[a][b]
        return d is UNREACHABLE or d >= k


def bfs_layers(g: Graph, source: int) -> list[int]:
    """Distance-layer bitmasks from ``source``: layer ``i`` holds vertices at distance ``i``."""
    seen = frontier = 1 << source
    layers = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        if not frontier:
            return layers
        seen |= frontier
        layers.append(frontier)


def distances(g: Graph) -> DistanceTable:
    rows: list[list[int | None]] = []
    for s in g.vertices():
        row: list[int | None] = [UNREACHABLE] * g.order
        for d, layer in enumerate(bfs_layers(g, s)):
            for v in iter_bits(layer):
                row[v] = d
        rows.append(row)
    return DistanceTable(rows)


def ball_masks(g: Graph, radius: int) -> list[int]:
    """``out[v]`` = vertices at distance 1..radius from ``v``."""
    out = []
    for s in g.vertices():
        layers = bfs_layers(g, s)
        mask = 0
        for layer in layers[1 : radius + 1]:
            mask |= layer
        out.append(mask)
    return out


def diameter_and_eccentricities(g: Graph) -> tuple[float | int, list[float | int]]:
    """Diameter and per-vertex eccentricities; ``math.inf`` when disconnected."""
    ecc: list[float | int] = []
    n = g.order
    for s in g.vertices():
        layers = bfs_layers(g, s)
        reached = sum(popcount(layer) for layer in layers)
        ecc.append(len(layers) - 1 if reached == n else float("inf"))
    return max(ecc, default=0), ecc


def diameter(g: Graph) -> float | int:
    return diameter_and_eccentricities(g)[0]


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph.unchecked([full & ~m & ~(1 << v) for v, m in enumerate(g.adj)])


def power(g: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError("power exponent must be at least 1")
    return Graph.unchecked(ball_masks(g, k))


def double_cover(g: Graph) -> BipartiteGraph:
    """Canonical double cover: left (v, x), right (v, y), cross edges mirror E(g)."""
    return BipartiteGraph(g.order, g.order, g.adj)


def combine(g1: Graph, g2: Graph, mode: str = "union") -> Graph:
    if mode not in ("union", "join"):
        raise GraphError(f"unknown combine mode {mode!r}")
    n1, n2 = g1.order, g2.order
    left = (1 << n1) - 1
    right = ((1 << n2) - 1) << n1
    adj = []
    for m in g1.adj:
        adj.append(m | (right if mode == "join" else 0))
    for m in g2.adj:
        adj.append((m << n1) | (left if mode == "join" else 0))
    return Graph(tuple(adj))


def clique_number(g: Graph) -> int:
    """Maximum clique size by a plain bitset branch and bound."""
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + popcount(cand) <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand ^= 1 << v
            expand(size + 1, cand & g.adj[v])

    expand(0, (1 << g.order) - 1)
    return best


def named(family: str, *params: int | Sequence[int]) -> Graph:
    """Constructors for the standard families.

    ``path n``, ``cycle n``, ``complete n``, ``empty n``, ``star k`` (``K_{1,k}``,
    centre 0), ``complete_multipartite [sizes...]``.
    """
    if family == "complete_multipartite":
        if len(params) == 1 and isinstance(params[0], (list, tuple)):
            sizes = list(params[0])
        else:
            sizes = [int(p) for p in params]  # type: ignore[arg-type]
        if not sizes or any(s < 1 for s in sizes):
            raise GraphError("complete_multipartite needs positive part sizes")
        part = []
        for i, s in enumerate(sizes):
            part.extend([i] * s)
        n = len(part)
        return Graph.from_edges(
            n, [(a, b) for a in range(n) for b in range(a + 1, n) if part[a] != part[b]]
        )
    if len(params) != 1 or not isinstance(params[0], int):
        raise GraphError(f"{family} takes a single integer parameter")
    n = params[0]
    if family == "path":
        if n < 1:
            raise GraphError("path needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "complete":
        if n < 1:
            raise GraphError("complete needs n >= 1")
        return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])
    if family == "empty":
        if n < 1:
            raise GraphError("empty needs n >= 1")
        return Graph((0,) * n)
    if family == "star":
        if n < 1:
            raise GraphError("star needs k >= 1 leaves")
        return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])
    raise GraphError(f"unknown family {family!r}")
