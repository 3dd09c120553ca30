"""Mycielski and iterated Mycielski graphs with structured vertex names.

Layout of ``M(H)`` for ``H`` on ``N`` vertices: the vertices of ``H`` keep
their indices, the copy of ``j`` is ``N + j`` and the root is ``2N``.  Applying
this ``t`` times to a base graph on ``n`` vertices names every vertex either
``v_i^k`` (base vertex ``i``, copy index ``0 <= k < 2^t``) or ``u_{i,j}``
(root created at level ``i``, copy index ``0 <= j < 2^(t-i)``).  At level
``s`` the copy of ``v_i^k`` is ``v_i^(k + 2^(s-1))`` and the copy of
``u_{i,j}`` is ``u_{i, j + 2^(s-1-i)}``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Any, Sequence

from .graph import Graph, GraphError, diameter_and_eccentricities, distances

DEFAULT_VERTEX_BUDGET = 20_000


@dataclass(frozen=True, order=True)
class MycVertexId:
    """``kind`` is ``"v"`` (base copy) or ``"u"`` (root).

    For ``"v"``: ``a`` is the 0-based base vertex, ``b`` the copy index ``k``.
    For ``"u"``: ``a`` is the creation level ``i >= 1``, ``b`` the copy index ``j``.
    The string form is 1-based on base vertices: ``v1^0`` is base vertex 0.
    """

    kind: str
    a: int
    b: int

    def __str__(self) -> str:
        if self.kind == "v":
            return f"v{self.a + 1}^{self.b}"
        return f"u{self.a},{self.b}"

    @classmethod
    def parse(cls, text: str) -> MycVertexId:
        m = re.fullmatch(r"\s*v(\d+)\^(\d+)\s*", text)
        if m:
            i = int(m.group(1))
            if i < 1:
                raise GraphError(f"base index in {text!r} must be >= 1")
            return cls("v", i - 1, int(m.group(2)))
        m = re.fullmatch(r"\s*u(\d+),(\d+)\s*", text)
        if m:
            return cls("u", int(m.group(1)), int(m.group(2)))
        raise GraphError(f"cannot parse vertex id {text!r}")


def vid(base: int, k: int) -> MycVertexId:
    return MycVertexId("v", base, k)


def rid(level: int, j: int) -> MycVertexId:
    return MycVertexId("u", level, j)


@dataclass(frozen=True)
class MycGraph:
    graph: Graph
    t: int
    base_order: int
    ids: tuple[MycVertexId, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.ids)})

    def index(self, x: MycVertexId | str) -> int:
        if isinstance(x, str):
            x = MycVertexId.parse(x)
        try:
            return self._index[x]  # type: ignore[attr-defined]
        except KeyError:
            raise GraphError(f"no vertex {x} in M^{self.t}") from None

    def v(self, base: int, k: int) -> int:
        return self.index(vid(base, k))

    def u(self, level: int, j: int) -> int:
        return self.index(rid(level, j))

    def id_strings(self) -> list[str]:
        return [str(x) for x in self.ids]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.graph.order,
            "edges": [list(e) for e in self.graph.edges()],
            "ids": self.id_strings(),
            "t": self.t,
            "base_order": self.base_order,
        }


def mycielski_order(n: int, t: int) -> int:
    return (1 << t) * (n + 1) - 1


def _step(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    root = 1 << (2 * n)
    out = [a | (a << n) for a in adj]
    out.extend(a | root for a in adj)
    out.append(((1 << n) - 1) << n)
    return out


def mycielski(g: Graph) -> MycGraph:
    return iterated_mycielski(g, 1)


def iterated_mycielski(g: Graph, t: int, budget: int = DEFAULT_VERTEX_BUDGET) -> MycGraph:
    if t < 0:
        raise GraphError("iteration count must be >= 0")
    n = g.order
    if mycielski_order(n, t) > budget:
        raise GraphError(
            f"M^{t} of an order-{n} graph has {mycielski_order(n, t)} vertices, over the budget {budget}"
        )
    adj = list(g.adj)
    ids = [vid(i, 0) for i in range(n)]
    for s in range(1, t + 1):
        half = 1 << (s - 1)
        copies = [
            vid(x.a, x.b + half) if x.kind == "v" else rid(x.a, x.b + (1 << (s - 1 - x.a)))
            for x in ids
        ]
        ids = ids + copies + [rid(s, 0)]
        adj = _step(adj)
    return MycGraph(Graph.unchecked(adj), t, n, tuple(ids))


@dataclass(frozen=True)
class StructuralProfile:
    order: int
    max_degree: int
    diameter: int | None  # None: prediction not applicable (isolated vertices)


def structural_profile(
    n: int, max_deg: int, diam: float | int, t: int, has_isolated: bool = False
) -> StructuralProfile:
    """Closed-form order, maximum degree and diameter of ``M^t(G)`` for ``t >= 1``."""
    if t < 1:
        raise GraphError("structural predictions need t >= 1")
    order = mycielski_order(n, t)
    max_degree = max((1 << (t - 1)) * (n + 1) - 1, (1 << t) * max_deg)
    if has_isolated:
        d = None
    else:
        d = int(min(max(2, diam), 4))
    return StructuralProfile(order, max_degree, d)


def structural_profile_of(g: Graph, t: int) -> StructuralProfile:
    diam, _ = diameter_and_eccentricities(g)
    return structural_profile(g.order, g.max_degree(), diam, t, g.has_isolated_vertices())


def measured_profile(m: MycGraph) -> StructuralProfile:
    diam, _ = diameter_and_eccentricities(m.graph)
    d = None if math.isinf(diam) else int(diam)
    return StructuralProfile(m.graph.order, m.graph.max_degree(), d)


def hamiltonian_complement_order(m: MycGraph) -> list[int]:
    """Vertex cycle of the complement of ``M^2(G)`` used to show it is Hamiltonian.

    ``v_1^0 v_1^1 chi_2 ... chi_n v_n^3 ... v_1^3 v_1^2 u_{1,1} u_{1,0} u_{2,0}``
    where ``chi_i`` is ``v_i^2 v_i^0 v_i^1`` for odd ``i`` and ``v_i^1 v_i^0 v_i^2`` for
    even ``i`` (1-based).  Consecutive vertices (cyclically) are non-adjacent in M^2.
    """
    if m.t != 2:
        raise GraphError("the explicit cycle is defined for M^2")
    n = m.base_order
    seq = [m.v(0, 0), m.v(0, 1)]
    for i in range(1, n):
        ks = (2, 0, 1) if (i + 1) % 2 == 1 else (1, 0, 2)
        seq.extend(m.v(i, k) for k in ks)
    seq.extend(m.v(i, 3) for i in reversed(range(n)))
    seq.extend([m.v(0, 2), m.u(1, 1), m.u(1, 0), m.u(2, 0)])
    return seq


def _fmt(m: MycGraph, a: int, b: int) -> str:
    return f"{m.ids[a]}-{m.ids[b]}"


def lemma_violations(g: Graph, t: int) -> list[str]:
    """Check the closed-form structure and distance identities on the built ``M^t(g)``.

    Covered: order, maximum degree and diameter predictions; the one-step
    distance identities around each root (applied at every level); distances
    of copies of near vertices; the copy-of-copy and complementary-copy
    distances; and the double-cover structure of the two middle layers.
    Returns human-readable violation descriptions (empty when all hold).
    """
    out: list[str] = []
    m = iterated_mycielski(g, t)
    if t >= 1:
        predicted, measured = structural_profile_of(g, t), measured_profile(m)
        if predicted.diameter is None:  # no prediction to compare
            measured = StructuralProfile(measured.order, measured.max_degree, None)
        if predicted != measured:
            out.append(f"profile predicted {predicted}, measured {measured}")

    # root identities at each level s, applied to H = M^(s-1)
    for s in range(1, t + 1):
        low = iterated_mycielski(g, s - 1).graph
        step = iterated_mycielski(g, s)
        dm, dl = distances(step.graph), distances(low)
        n = low.order
        root = 2 * n
        live = [v for v in range(n) if low.adj[v]]
        for i in live:
            if dm[root, n + i] != 1:
                out.append(f"level {s}: root to copy {_fmt(step, root, n + i)} is {dm[root, n + i]}")
            if dm[root, i] != 2:
                out.append(f"level {s}: root to {_fmt(step, root, i)} is {dm[root, i]}")
            if dm[i, n + i] != 2:
                out.append(f"level {s}: vertex to own copy {_fmt(step, i, n + i)} is {dm[i, n + i]}")
            for j in live:
                if i == j:
                    continue
                d = dl[i, j]
                if dm[n + i, n + j] != 2:
                    out.append(f"level {s}: copies {_fmt(step, n + i, n + j)} at {dm[n + i, n + j]}")
                want3 = 3 if d is None else min(3, d)
                if dm[i, n + j] != want3:
                    out.append(f"level {s}: {_fmt(step, i, n + j)} is {dm[i, n + j]}, expected {want3}")
                want4 = 4 if d is None else min(4, d)
                if dm[i, j] != want4:
                    out.append(f"level {s}: {_fmt(step, i, j)} is {dm[i, j]}, expected {want4}")

    n, full, half = g.order, 1 << t, 1 << max(t - 1, 0)
    dg, dt = distances(g), distances(m.graph)
    live = [v for v in range(n) if g.adj[v]]
    for i in range(n):
        for j in range(n):
            near = i != j and dg[i, j] is not None and dg[i, j] <= 2
            for k in range(full):
                for q in range(full):
                    a, b = m.v(i, k), m.v(j, q)
                    d = dt[a, b]
                    if near and (d is None or d > 2):
                        out.append(f"near pair {_fmt(m, a, b)} at distance {d}")
                    if i == j and k != q and i in live and d != 2:
                        out.append(f"copies of one vertex {_fmt(m, a, b)} at distance {d}")
    if t >= 2:
        for i in range(n):
            for j in range(n):
                for k in range(1, half):
                    a, b = m.v(i, k), m.v(j, half + k)
                    if dt[a, b] != 2:
                        out.append(f"copy-of-copy {_fmt(m, a, b)} at distance {dt[a, b]}")
                for k in range(half + 1, full):
                    a, b = m.v(i, k), m.v(j, half - 1)
                    if dt[a, b] != 2:
                        out.append(f"upper layer {_fmt(m, a, b)} at distance {dt[a, b]}")
        for i in live:
            for j in live:
                if i == j:
                    continue
                want = 3 if dg[i, j] is None else min(3, dg[i, j])
                for k in range(half):
                    a, b = m.v(i, k), m.v(j, full - k - 1)
                    if dt[a, b] != want:
                        out.append(f"complementary copies {_fmt(m, a, b)} at {dt[a, b]}, expected {want}")
        lower = [m.v(i, half - 1) for i in range(n)]
        upper = [m.v(i, half) for i in range(n)]
        for i in range(n):
            for j in range(n):
                if m.graph.has_edge(lower[i], lower[j]) or m.graph.has_edge(upper[i], upper[j]):
                    out.append(f"middle layers not bipartite at {i + 1},{j + 1}")
                if m.graph.has_edge(lower[i], upper[j]) != g.has_edge(i, j):
                    out.append(f"middle layers disagree with the double cover at {i + 1},{j + 1}")
    return out
