"""Isomorphism-free enumeration of small graphs.

Canonical forms come from colour refinement followed by individualisation of
each vertex in the first non-singleton cell; the canonical adjacency is the
lexicographically smallest relabelled adjacency over all discrete leaves.
No automorphism pruning is done, which is fine up to eight vertices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph import Graph, GraphError, iter_bits

ENUMERATION_CEILING = 8


def _refine(adj: tuple[int, ...], colors: list[int]) -> list[int]:
    n = len(adj)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in iter_bits(adj[v]))))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _relabelled(adj: tuple[int, ...], perm: list[int]) -> tuple[int, ...]:
    out = [0] * len(adj)
    for v, mask in enumerate(adj):
        m = 0
        for w in iter_bits(mask):
            m |= 1 << perm[w]
        out[perm[v]] = m
    return tuple(out)


def canonical_adjacency(g: Graph) -> tuple[int, ...]:
    """Adjacency tuple shared by exactly the graphs isomorphic to ``g``."""
    adj = g.adj
    n = len(adj)
    if n == 0:
        return ()
    best: tuple[int, ...] | None = None

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = _refine(adj, colors)
        if len(set(colors)) == n:
            cand = _relabelled(adj, colors)
            if best is None or cand < best:
                best = cand
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] == target:
                split = [2 * c + (1 if c == target and w != v else 0) for w, c in enumerate(colors)]
                search(split)

    search([0] * n)
    assert best is not None
    return best


def canonical_form(g: Graph) -> Graph:
    return Graph.unchecked(canonical_adjacency(g))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.order != g2.order or g1.size() != g2.size():
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_adjacency(g1) == canonical_adjacency(g2)


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 1:
        return ((0,),)
    found = set()
    for adj in _all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            new = [a | ((mask >> v & 1) << (n - 1)) for v, a in enumerate(adj)]
            new.append(mask)
            found.add(canonical_adjacency(Graph.unchecked(new)))
    return tuple(sorted(found, key=lambda a: (sum(bin(m).count("1") for m in a), a)))


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Yield one graph per isomorphism class of order ``n``, in a stable order
    (by edge count, then canonical adjacency)."""
    if n < 1:
        raise GraphError("enumeration needs n >= 1")
    if n > ENUMERATION_CEILING:
        raise GraphError(f"enumeration is limited to n <= {ENUMERATION_CEILING}")
    for adj in _all_graphs(n):
        g = Graph.unchecked(adj)
        if connected_only and not g.is_connected():
            continue
        yield g
