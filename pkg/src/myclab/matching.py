"""Matchings, 2-matchings, star matchings and path covers.

Everything non-bipartite is routed through the canonical double cover: a
2-matching of ``G`` (edge weights in {0, 1, 2}, vertex sums at most 2) of
total weight ``w`` corresponds to a matching of size ``w`` in ``G x K2``, and
conversely a double-cover matching reads as a partial injection
``v -> succ(v)`` along edges of ``G`` whose cycles and paths decompose into
single edges and odd cycles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .graph import BipartiteGraph, Graph, GraphError, complement, double_cover, iter_bits, popcount, power

STAR_MATCHING_CEILING = 16
STAR_CONDITION_CEILING = 20
PATH_COVER_CEILING = 18


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint pairs; for bipartite hosts each pair is ``(left, right)``."""

    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def max_bipartite_matching(b: BipartiteGraph) -> Matching:
    """Hopcroft-Karp."""
    nl, nr = b.n_left, b.n_right
    adj = [list(iter_bits(m)) for m in b.left_adj]
    match_l = [-1] * nl
    match_r = [-1] * nr
    inf = nl + nr + 1

    while True:
        dist = [inf] * nl
        q = deque(u for u in range(nl) if match_l[u] < 0)
        for u in q:
            dist[u] = 0
        found = False
        while q:
            u = q.popleft()
            for r in adj[u]:
                w = match_r[r]
                if w < 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if not found:
            break

        def augment(u: int) -> bool:
            for r in adj[u]:
                w = match_r[r]
                if w < 0 or (dist[w] == dist[u] + 1 and augment(w)):
                    match_l[u] = r
                    match_r[r] = u
                    return True
            dist[u] = inf
            return False

        for u in range(nl):
            if match_l[u] < 0:
                augment(u)

    return Matching(tuple((u, match_l[u]) for u in range(nl) if match_l[u] >= 0))


def nu2(g: Graph) -> int:
    """Maximum total weight of a 2-matching of ``g``."""
    return max_bipartite_matching(double_cover(g)).size


@dataclass(frozen=True)
class TwoMatchingCertificate:
    edge_components: tuple[tuple[int, int], ...]
    cycle_components: tuple[tuple[int, ...], ...]

    def covered(self) -> set[int]:
        out: set[int] = set()
        for e in self.edge_components:
            out.update(e)
        for c in self.cycle_components:
            out.update(c)
        return out

    @property
    def weight(self) -> int:
        return 2 * len(self.edge_components) + sum(len(c) for c in self.cycle_components)

    def is_perfect(self, n: int) -> bool:
        return len(self.covered()) == n

    def check(self, g: Graph) -> None:
        """Raise :class:`GraphError` unless the structure is a valid 2-matching of ``g``."""
        seen: set[int] = set()
        comps = [tuple(e) for e in self.edge_components] + [tuple(c) for c in self.cycle_components]
        for comp in comps:
            for v in comp:
                if v in seen:
                    raise GraphError(f"vertex {v} appears in two components")
                seen.add(v)
        for a, b in self.edge_components:
            if not g.has_edge(a, b):
                raise GraphError(f"{a}-{b} is not an edge")
        for c in self.cycle_components:
            if len(c) < 3 or len(c) % 2 == 0:
                raise GraphError(f"cycle {list(c)} must have odd length at least 3")
            for i, a in enumerate(c):
                if not g.has_edge(a, c[(i + 1) % len(c)]):
                    raise GraphError(f"cycle {list(c)} uses the non-edge {a}-{c[(i + 1) % len(c)]}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "edges": [list(e) for e in self.edge_components],
            "cycles": [list(c) for c in self.cycle_components],
        }

    @classmethod
    def from_dict(cls, d: Any) -> TwoMatchingCertificate:
        if not isinstance(d, dict):
            raise GraphError('certificate JSON must be an object with "edges" and "cycles"')
        try:
            edges = tuple((int(a), int(b)) for a, b in d.get("edges", []))
            cycles = tuple(tuple(int(x) for x in c) for c in d.get("cycles", []))
        except (TypeError, ValueError):
            raise GraphError("malformed certificate JSON") from None
        return cls(edges, cycles)


@dataclass(frozen=True)
class TutteRefutation:
    """Independent set ``S`` with fewer than ``|S|`` neighbours."""

    independent_set: tuple[int, ...]
    neighborhood: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"S": list(self.independent_set), "N(S)": list(self.neighborhood)}


def _succ_map(g: Graph) -> tuple[list[int], Matching]:
    m = max_bipartite_matching(double_cover(g))
    succ = [-1] * g.order
    for a, b in m.edges:
        succ[a] = b
    return succ, m


def max_two_matching(g: Graph) -> TwoMatchingCertificate:
    """A maximum 2-matching written as single edges and odd cycles.

    The covered vertex count equals ``nu2(g)``.
    """
    n = g.order
    succ, _ = _succ_map(g)
    pred = [-1] * n
    for v, w in enumerate(succ):
        if w >= 0:
            pred[w] = v
    edges: list[tuple[int, int]] = []
    cycles: list[tuple[int, ...]] = []
    seen = [False] * n

    def split(seq: list[int]) -> None:
        for i in range(0, len(seq) - 1, 2):
            a, b = seq[i], seq[i + 1]
            edges.append((min(a, b), max(a, b)))

    # paths start at vertices with no predecessor
    for s in range(n):
        if pred[s] >= 0 or seen[s]:
            continue
        seq = []
        v = s
        while v >= 0:
            seen[v] = True
            seq.append(v)
            v = succ[v]
        split(seq)
    for s in range(n):
        if seen[s]:
            continue
        seq = []
        v = s
        while not seen[v]:
            seen[v] = True
            seq.append(v)
            v = succ[v]
        if len(seq) % 2 == 1:
            cycles.append(tuple(seq))
        else:
            split(seq)
    return TwoMatchingCertificate(tuple(sorted(edges)), tuple(cycles))


def _tutte_violator(g: Graph, succ: list[int]) -> TutteRefutation:
    # Konig cover of the double cover via alternating reachability from free left vertices
    n = g.order
    match_r = [-1] * n
    for v, w in enumerate(succ):
        if w >= 0:
            match_r[w] = v
    zl = [False] * n
    zr = [False] * n
    q = deque(v for v in range(n) if succ[v] < 0)
    for v in q:
        zl[v] = True
    while q:
        v = q.popleft()
        for r in iter_bits(g.adj[v]):
            if not zr[r]:
                zr[r] = True
                w = match_r[r]
                if w >= 0 and not zl[w]:
                    zl[w] = True
                    q.append(w)
    s = [v for v in range(n) if zl[v] and not zr[v]]
    nb = 0
    for v in s:
        nb |= g.adj[v]
    return TutteRefutation(tuple(s), tuple(iter_bits(nb)))


def perfect_two_matching(g: Graph) -> TwoMatchingCertificate | TutteRefutation:
    succ, m = _succ_map(g)
    if m.size == g.order:
        return max_two_matching(g)
    return _tutte_violator(g, succ)


@dataclass(frozen=True)
class StarMatching:
    stars: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def order(self) -> int:
        return sum(1 + len(leaves) for _, leaves in self.stars)

    def check(self, g: Graph, m: int) -> None:
        seen: set[int] = set()
        for c, leaves in self.stars:
            if not 1 <= len(leaves) <= m:
                raise GraphError(f"star at {c} has {len(leaves)} leaves, allowed 1..{m}")
            for v in (c, *leaves):
                if v in seen:
                    raise GraphError(f"vertex {v} is in two stars")
                seen.add(v)
            for x in leaves:
                if not g.has_edge(c, x):
                    raise GraphError(f"{c}-{x} is not an edge")

    def to_dict(self) -> dict[str, Any]:
        return {"stars": [{"center": c, "leaves": list(ls)} for c, ls in self.stars]}


def _check_ceiling(g: Graph, ceiling: int, what: str) -> None:
    if g.order > ceiling:
        raise GraphError(f"{what} is exact only up to {ceiling} vertices (got {g.order})")


def star_matching_number(g: Graph, m: int) -> tuple[int, StarMatching]:
    """Maximum number of vertices covered by disjoint stars K_{1,1}..K_{1,m}."""
    if m < 1:
        raise GraphError("star size m must be at least 1")
    _check_ceiling(g, STAR_MATCHING_CEILING, "star matching")
    adj = g.adj
    n = g.order

    # greedy start
    und = (1 << n) - 1
    greedy: list[tuple[int, tuple[int, ...]]] = []
    for v in range(n):
        if und >> v & 1 and adj[v] & und:
            leaves = tuple(list(iter_bits(adj[v] & und))[:m])
            greedy.append((v, leaves))
            und &= ~(1 << v)
            for x in leaves:
                und &= ~(1 << x)
    best_val = sum(1 + len(ls) for _, ls in greedy)
    best_stars = list(greedy)
    stars: list[tuple[int, tuple[int, ...]]] = []

    def bound(u: int) -> int:
        return popcount(sum(1 << w for w in iter_bits(u) if adj[w] & u))

    def search(u: int, covered: int) -> None:
        nonlocal best_val, best_stars
        if covered > best_val:
            best_val, best_stars = covered, list(stars)
        if not u or covered + bound(u) <= best_val:
            return
        v = (u & -u).bit_length() - 1
        rest = u & ~(1 << v)
        nb = list(iter_bits(adj[v] & rest))
        # v as a centre
        for size in range(min(m, len(nb)), 0, -1):
            for leaves in combinations(nb, size):
                mask = sum(1 << x for x in leaves)
                stars.append((v, leaves))
                search(rest & ~mask, covered + 1 + size)
                stars.pop()
        # v as a leaf of a neighbouring centre c
        for c in nb:
            others = list(iter_bits(adj[c] & rest & ~(1 << c)))
            for size in range(min(m - 1, len(others)), -1, -1):
                for extra in combinations(others, size):
                    mask = sum(1 << x for x in extra) | 1 << c
                    stars.append((c, tuple(sorted((v, *extra)))))
                    search(rest & ~mask, covered + 2 + size)
                    stars.pop()
        # v left uncovered
        search(rest, covered)

    search((1 << n) - 1, 0)
    return best_val, StarMatching(tuple(best_stars))


def i4(g: Graph) -> int:
    """Vertices left uncovered by a maximum 4-star matching."""
    return g.order - star_matching_number(g, 4)[0]


def perfect_star_matching_condition(g: Graph, m: int) -> tuple[bool, tuple[int, ...] | None]:
    """Check ``m * |N(S)| >= |S|`` over every non-empty independent set ``S``.

    For ``m >= 2`` this holds exactly when a perfect star matching exists.
    At ``m = 1`` it would be a Hall-type test for perfect matchings, which odd
    cliques pass without having one, so ``m = 1`` is rejected.
    """
    if m < 2:
        raise GraphError("the star condition characterises perfect star matchings only for m >= 2")
    _check_ceiling(g, STAR_CONDITION_CEILING, "star matching condition")
    adj = g.adj
    n = g.order
    found: list[tuple[int, ...]] = []

    def grow(start: int, chosen: int, blocked: int, nb: int, size: int) -> bool:
        if size and m * popcount(nb) < size:
            found.append(tuple(iter_bits(chosen)))
            return True
        for v in range(start, n):
            if not (blocked >> v & 1):
                if grow(v + 1, chosen | 1 << v, blocked | adj[v] | 1 << v, nb | adj[v], size + 1):
                    return True
        return False

    if grow(0, 0, 0, 0, 0):
        return False, found[0]
    return True, None


def path_cover_number(g: Graph) -> int:
    """Minimum number of vertex-disjoint paths covering all vertices."""
    _check_ceiling(g, PATH_COVER_CEILING, "path cover")
    n = g.order
    if n == 0:
        return 0
    adj = g.adj
    size = 1 << n
    best = [0] * size
    ends = [0] * size
    # best[S]: optimum for the induced subgraph on S; ends[S]: vertices that end a path in some optimum
    for s in range(1, size):
        lo = n + 1
        e = 0
        t = s
        while t:
            low = t & -t
            w = low.bit_length() - 1
            t ^= low
            prev = s ^ low
            val = best[prev] + (0 if adj[w] & ends[prev] else 1)
            if val < lo:
                lo, e = val, low
            elif val == lo:
                e |= low
        best[s] = lo
        ends[s] = e
    return best[size - 1]


def d2_condition(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Whether every vertex set ``S`` has at least ``|S|`` vertices at distance > 2 from some member.

    Equivalent to a perfect 2-matching in the complement of the square; the
    violating set, when returned, is independent in that complement.
    """
    res = perfect_two_matching(complement(power(g, 2)))
    if isinstance(res, TutteRefutation):
        return False, res.independent_set
    return True, None


def far_pairs_graph(g: Graph) -> Graph:
    """Complement of the square: edges join vertices at distance at least 3."""
    return complement(power(g, 2))
