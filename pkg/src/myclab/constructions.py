"""Explicit L(2,1)-labelings of Mycielskians.

Every public labeler validates its output and checks the promised span
before returning, so a returned :class:`Labeling` is always a certificate.
Vertices are addressed through :class:`MycVertexId` coordinates: ``m.v(i, k)``
is copy ``k`` of base vertex ``i`` and ``m.u(i, j)`` is a root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fixtures import load_fixture_labeling
from .graph import Graph, GraphError, distances, named
from .labeling import Labeling, lambda_exact, validate
from .matching import TwoMatchingCertificate, far_pairs_graph, max_two_matching
from .mycielski import MycGraph, iterated_mycielski, mycielski

CLIQUE_PARTITION_CEILING = 14
ORIENTATION_ATTEMPTS = 20_000


class ConstructionError(GraphError):
    """A construction's hypotheses fail, or its output did not validate."""


def _finish(m: MycGraph, assign: dict[int, int], span: int, what: str) -> Labeling:
    n = m.graph.order
    missing = [m.ids[v] for v in range(n) if v not in assign]
    if missing:
        raise ConstructionError(f"{what}: unlabeled vertices {[str(x) for x in missing[:5]]}")
    lab = Labeling(tuple(assign[v] for v in range(n)))
    rep = validate(m.graph, lab)
    if not rep.valid:
        bad = [
            f"{m.ids[a]}-{m.ids[b]} (distance {v.distance}, gap {v.gap})"
            for v in rep.violations[:5]
            for a, b in [v.pair]
        ]
        raise ConstructionError(f"{what}: labeling is invalid: {', '.join(bad)}")
    if lab.span != span:
        raise ConstructionError(f"{what}: span {lab.span}, expected {span}")
    return lab


# ---------------------------------------------------------------- shift


def _shift_assign(g: Graph, h: Sequence[int]) -> dict[int, int]:
    """Labels on M(g) in index layout: originals 0..n-1, copies n..2n-1, root 2n."""
    n = g.order
    zero = [v for v in range(n) if h[v] == 0]
    if not zero:
        raise ConstructionError("the base labeling must use label 0")
    z = zero[0]
    order = [v for v in range(n) if v != z] + [z]
    out = {}
    for pos, v in enumerate(order):
        out[n + v] = pos
        out[v] = n + h[v]
    out[2 * n] = n + 1 + max(h)
    return out


def label_upper_shift(g: Graph, h: Labeling | Sequence[int]) -> Labeling:
    """Labeling of M(g) with span (n+1) + span(h), built from a labeling h of g."""
    h = h if isinstance(h, Labeling) else Labeling(tuple(h))
    rep = validate(g, h)
    if not rep.valid:
        raise ConstructionError(f"base labeling is invalid: {rep.violations[:3]}")
    m = mycielski(g)
    return _finish(m, _shift_assign(g, h.labels), g.order + 1 + h.span, "shift")


def _lift(m_low: MycGraph, labels: Sequence[int], t_target: int, base: Graph) -> tuple[MycGraph, list[int]]:
    """Repeat the shift from M^s to M^t; index layouts line up level by level."""
    g, lab = m_low.graph, list(labels)
    for s in range(m_low.t, t_target):
        assign = _shift_assign(g, lab)
        lab = [assign[v] for v in range(len(assign))]
        g = iterated_mycielski(base, s + 1).graph
    return iterated_mycielski(base, t_target), lab


# ---------------------------------------------------------------- clique partitions


@dataclass(frozen=True)
class CliquePartition:
    """Ordered blocks of pairwise far-apart vertices (distance at least 3).

    Every block but the last has at least three vertices.
    """

    blocks: tuple[tuple[int, ...], ...]

    def check(self, g: Graph) -> None:
        far = far_pairs_graph(g)
        seen: list[int] = [v for b in self.blocks for v in b]
        if sorted(seen) != list(range(g.order)):
            raise ConstructionError("blocks must partition the vertex set")
        for idx, b in enumerate(self.blocks):
            if idx < len(self.blocks) - 1 and len(b) < 3:
                raise ConstructionError(f"block {idx} has {len(b)} vertices; only the last may have fewer than 3")
            for a, c in itertools.combinations(b, 2):
                if not far.has_edge(a, c):
                    raise ConstructionError(f"vertices {a} and {c} of block {idx} are within distance 2")


def _far_cliques(far: Graph, within: int) -> Iterator[int]:
    """All cliques of ``far`` inside ``within`` containing its lowest vertex, largest first."""
    v = (within & -within).bit_length() - 1
    found: list[int] = []

    def grow(clique: int, cand: int) -> None:
        found.append(clique)
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= ~(1 << w)
            grow(clique | 1 << w, cand & far.adj[w])

    grow(1 << v, far.adj[v] & within & ~((1 << (v + 1)) - 1))
    found.sort(key=lambda c: -bin(c).count("1"))
    return iter(found)


def find_clique_partition(g: Graph) -> CliquePartition | None:
    """Partition into far-apart blocks, all but one of size >= 3; None if impossible."""
    if g.order > CLIQUE_PARTITION_CEILING:
        raise ConstructionError(f"partition search is limited to {CLIQUE_PARTITION_CEILING} vertices")
    n = g.order
    if n == 0:
        return None
    far = far_pairs_graph(g)
    failed: set[tuple[int, bool]] = set()
    blocks: list[int] = []
    tail: list[int] = []

    def search(rest: int, tail_free: bool) -> bool:
        if not rest:
            return True
        if (rest, tail_free) in failed:
            return False
        for c in _far_cliques(far, rest):
            size = bin(c).count("1")
            if size >= 3:
                blocks.append(c)
                if search(rest & ~c, tail_free):
                    return True
                blocks.pop()
            elif tail_free:
                tail.append(c)
                if search(rest & ~c, False):
                    return True
                tail.pop()
        failed.add((rest, tail_free))
        return False

    if not search((1 << n) - 1, True):
        return None
    masks = blocks + tail
    out = tuple(tuple(v for v in range(n) if c >> v & 1) for c in masks)
    return CliquePartition(out)


def _block_orders(blocks: Sequence[Sequence[int]], g: Graph) -> Iterator[list[list[int]]]:
    """Orderings where the last vertex of each block is non-adjacent to the first of the next."""

    def options(b: Sequence[int]) -> list[list[int]]:
        if len(b) == 1:
            return [list(b)]
        out = []
        for first, last in itertools.permutations(b, 2):
            mid = [v for v in b if v not in (first, last)]
            out.append([first, *mid, last])
        return out

    def rec(idx: int, prev_last: int | None, acc: list[list[int]]) -> Iterator[list[list[int]]]:
        if idx == len(blocks):
            yield [list(x) for x in acc]
            return
        for order in options(blocks[idx]):
            if prev_last is not None and g.has_edge(prev_last, order[0]):
                continue
            acc.append(order)
            yield from rec(idx + 1, order[-1], acc)
            acc.pop()

    return rec(0, None, [])


def _partition_assign(m: MycGraph, ordered: list[list[int]]) -> dict[int, int]:
    n = m.base_order
    out: dict[int, int] = {}
    psi = 0
    last = len(ordered) - 1
    for idx, b in enumerate(ordered):
        size = len(b)
        if idx == last and size == 1:
            out[m.v(b[0], 0)] = n
            out[m.v(b[0], 1)] = n - 1
        elif idx == last and size == 2:
            out[m.v(b[0], 0)] = n - 2
            out[m.v(b[0], 1)] = n - 1
            out[m.v(b[1], 0)] = n - 1
            out[m.v(b[1], 1)] = n - 2
        else:
            for pos, v in enumerate(b, 1):
                out[m.v(v, 0)] = psi if pos == 1 else psi + 1
                out[m.v(v, 1)] = psi + 1 if pos == 1 else psi if pos == 2 else psi + pos - 1
        psi += size
    out[m.u(1, 0)] = n + 1
    return out


def label_clique_partition(g: Graph, cp: CliquePartition) -> Labeling:
    """Span n+1 labeling of M(g) from a far-apart block partition."""
    cp.check(g)
    m = mycielski(g)
    errors = []
    for attempt, ordered in enumerate(_block_orders(cp.blocks, g)):
        if attempt >= ORIENTATION_ATTEMPTS:
            break
        try:
            return _finish(m, _partition_assign(m, ordered), g.order + 1, "block partition")
        except ConstructionError as exc:
            errors.append(str(exc))
    detail = errors[0] if errors else "no ordering satisfies the linking condition"
    raise ConstructionError(f"block partition labeling failed: {detail}")


def cycle_partition(n: int) -> CliquePartition:
    """Explicit far-apart partition of C_n for n >= 9 (indices taken around the cycle)."""
    if n < 9:
        raise ConstructionError("the explicit cycle partition needs n >= 9")
    if n % 3 == 0:
        s = n // 3
        blocks = [(i, i + s, i + 2 * s) for i in range(s)]
    elif n % 3 == 1:
        s = n // 3
        blocks = [(i, i + s, i + 2 * s) for i in range(s)] + [(n - 1,)]
    else:
        c = -(-n // 3)
        blocks = [(i, i + c, i + 2 * c - 1) for i in range(1, c)] + [(0, c)]
    return CliquePartition(tuple(blocks))


# ---------------------------------------------------------------- paths and cycles

_FAMILY_FIXTURES = {
    ("path", 4): "mycielski_path4",
    ("path", 5): "mycielski_path5",
    ("cycle", 6): "mycielski_cycle6",
    ("cycle", 7): "mycielski_cycle7",
    ("cycle", 8): "mycielski_cycle8",
}


def family_lambda(family: str, n: int) -> int:
    """Known lambda(M(P_n)) and lambda(M(C_n))."""
    if family == "path":
        if n < 3:
            raise ConstructionError("paths need n >= 3")
        return {3: 6, 4: 6, 5: 7}.get(n, n + 1)
    if family == "cycle":
        if n < 3:
            raise ConstructionError("cycles need n >= 3")
        return {3: 6, 4: 8, 5: 10}.get(n, n + 1)
    raise ConstructionError(f"unknown family {family!r}")


def _path_scheme(m: MycGraph, n: int) -> dict[int, int]:
    copies = [6, 5, 4, 7, 2, 3] + [i + 1 for i in range(7, n + 1)]
    originals = [7, 1, 3, 6, 1, 4] + [{1: 6, 2: 2, 0: 4}[i % 3] for i in range(7, n + 1)]
    out = {m.u(1, 0): 0}
    for i in range(n):
        out[m.v(i, 0)] = originals[i]
        out[m.v(i, 1)] = copies[i]
    return out


def label_family(family: str, n: int) -> Labeling:
    """Optimal labeling of M(P_n) or M(C_n)."""
    target = family_lambda(family, n)
    g = named(family, n)
    key = (family, n)
    if key in _FAMILY_FIXTURES:
        m, lab = load_fixture_labeling(_FAMILY_FIXTURES[key])
        return _finish(m, dict(enumerate(lab.labels)), target, f"{family} {n} fixture")
    m = mycielski(g)
    if family == "path" and n >= 6:
        return _finish(m, _path_scheme(m, n), target, f"path scheme n={n}")
    if family == "cycle" and n >= 9:
        return label_clique_partition(g, cycle_partition(n))
    res = lambda_exact(m.graph)
    if res.value != target:
        raise ConstructionError(f"solver found {res.value} for {family} {n}, expected {target}")
    return _finish(m, dict(enumerate(res.witness.labels)), target, f"{family} {n} solver")


# ---------------------------------------------------------------- complete graphs and diameter >= 3


def _chi(m: MycGraph, i: int, one_based: int) -> list[int]:
    ks = (2, 0, 1) if one_based % 2 == 1 else (1, 0, 2)
    return [m.v(i, k) for k in ks]


def label_m2_complete(n: int, t: int = 2) -> Labeling:
    """All-distinct labeling of M^t(K_n) with span 2^t(n+1) - 2."""
    if n < 2 or t < 2:
        raise ConstructionError("needs n >= 2 and t >= 2")
    base = named("complete", n)
    m2 = iterated_mycielski(base, 2)
    seq: list[int] = []
    for i in range(n):
        seq.extend(_chi(m2, i, i + 1))
    seq.extend(m2.v(i, 3) for i in reversed(range(n)))
    seq.extend([m2.u(1, 1), m2.u(1, 0), m2.u(2, 0)])
    labels = [0] * m2.graph.order
    for lab, v in enumerate(seq):
        labels[v] = lab
    m, labels = _lift(m2, labels, t, base)
    return _finish(m, dict(enumerate(labels)), (1 << t) * (n + 1) - 2, "complete graph")


def label_m2_diam3(g: Graph) -> Labeling:
    """Labeling of M^2(g) with span 4n+1 for g having two vertices at distance >= 3."""
    n = g.order
    dist = distances(g)
    pair = next(
        ((a, b) for a in range(n) for b in range(a + 1, n) if dist.at_least(a, b, 3)),
        None,
    )
    if pair is None:
        raise ConstructionError("needs two vertices at distance at least 3 (diameter >= 3)")
    first, last = pair
    middle = [v for v in range(n) if v not in pair]
    order = [first, *middle, last]  # position p holds the vertex playing v_{p+1}
    m = iterated_mycielski(g, 2)
    seq = [m.v(first, 0), m.v(first, 1)]
    for pos in range(1, n - 1):
        seq.extend(_chi(m, order[pos], pos + 1))
    seq.extend(m.v(order[pos], 3) for pos in reversed(range(n - 1)))
    seq.append(m.v(first, 2))
    assign = {v: lab for lab, v in enumerate(seq)}
    top = 4 * n - 5
    assert assign[m.v(first, 2)] == top
    for k in range(4):
        assign[m.v(last, k)] = top + k
    assign[m.u(1, 1)] = 4 * n - 1
    assign[m.u(1, 0)] = 4 * n
    assign[m.u(2, 0)] = 4 * n + 1
    return _finish(m, assign, 4 * n + 1, "diameter >= 3")


# ---------------------------------------------------------------- two-matching constructions


@dataclass(frozen=True)
class TwoMatchingLayout:
    """Oriented components: edges as (x, y), cycles as (c_1, ..., c_m)."""

    edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]


def _greedy_layout(g: Graph, cert: TwoMatchingCertificate) -> TwoMatchingLayout:
    edges: list[tuple[int, int]] = []
    for a, b in cert.edge_components:
        if edges:
            px, py = edges[-1]
            if g.has_edge(px, a) or g.has_edge(py, b):
                a, b = b, a
        edges.append((a, b))
    cycles: list[tuple[int, ...]] = []
    anchor = edges[-1][1] if edges else None
    for cyc in cert.cycle_components:
        m = len(cyc)
        for j in range(m - 1, -1, -1) if anchor is None else range(m):
            c_last, c_first = cyc[j], cyc[(j + 1) % m]
            if anchor is None or not (g.has_edge(anchor, c_last) or g.has_edge(anchor, c_first)):
                break
        seq = tuple(cyc[(j + 1 + s) % m] for s in range(m))
        cycles.append(seq)
        anchor = seq[-1]
    return TwoMatchingLayout(tuple(edges), tuple(cycles))


def _all_layouts(cert: TwoMatchingCertificate) -> Iterator[TwoMatchingLayout]:
    def cycle_variants(cyc: tuple[int, ...]) -> list[tuple[int, ...]]:
        m = len(cyc)
        out = []
        for seq in (cyc, tuple(reversed(cyc))):
            for j in range(m):
                out.append(tuple(seq[(j + s) % m] for s in range(m)))
        return out

    edge_opts = [[(a, b), (b, a)] for a, b in cert.edge_components]
    cyc_opts = [cycle_variants(tuple(c)) for c in cert.cycle_components]
    for es in itertools.product(*edge_opts):
        for cs in itertools.product(*cyc_opts):
            yield TwoMatchingLayout(tuple(es), tuple(cs))


def _two_matching_assign(m: MycGraph, layout: TwoMatchingLayout, covered: int) -> dict[int, int]:
    t = m.t
    half, full = 1 << (t - 1), 1 << t
    out: dict[int, int] = {}
    r = len(layout.edges)
    for i, (x, y) in enumerate(layout.edges, 1):
        off = (i - 1) * full
        for k in range(full):
            if i < r:
                fx = half - k - 1 if k < half else 3 * half - k - 1
                fy = k + half if k < half else k - half
                out[m.v(x, k)] = off + fx
                out[m.v(y, k)] = off + fy
            else:
                out[m.v(x, k)] = off + (half - k - 1 if k < half else k)
                out[m.v(y, k)] = r * full - k - 1 if k < half else off + k - half
    phi = r * full
    for cyc in layout.cycles:
        size = len(cyc)
        first = [phi + half - k - 1 if k < half else phi + k for k in range(full)]
        for j, c in enumerate(cyc, 1):
            for k in range(full):
                if j < size:
                    out[m.v(c, k)] = first[k] + (j - 1) * half
                elif k < half:
                    out[m.v(c, k)] = first[k] + (size - 1) * half
                else:
                    out[m.v(c, k)] = first[full - k - 1]
        phi += size * half
    lab = covered * half
    for level in range(1, t + 1):
        for j in reversed(range(1 << (t - level))):
            out[m.u(level, j)] = lab
            lab += 1
    return out


def _check_certificate(g: Graph, cert: TwoMatchingCertificate, vertices: set[int]) -> None:
    try:
        cert.check(far_pairs_graph(g))
    except GraphError as exc:
        raise ConstructionError(f"certificate is not a 2-matching of the far-pairs graph: {exc}") from None
    if cert.covered() != vertices:
        raise ConstructionError("certificate does not cover the required vertices")


def two_matching_layout(g: Graph, t: int, cert: TwoMatchingCertificate) -> TwoMatchingLayout:
    """The component orientation used by :func:`label_from_two_matching`."""
    return _labeled_two_matching(g, t, cert, require_perfect=True)[1]


def _labeled_two_matching(
    g: Graph, t: int, cert: TwoMatchingCertificate, require_perfect: bool
) -> tuple[Labeling, TwoMatchingLayout]:
    if t < 2:
        raise ConstructionError("needs t >= 2")
    n = g.order
    if require_perfect:
        if n < 2:
            raise ConstructionError("needs n >= 2")
        if g.has_isolated_vertices():
            raise ConstructionError("needs a graph without isolated vertices")
        _check_certificate(g, cert, set(range(n)))
    m = iterated_mycielski(g, t)
    span = (1 << (t - 1)) * (n + 2) - 2
    layout = _greedy_layout(g, cert)
    try:
        return _finish(m, _two_matching_assign(m, layout, n), span, "two-matching"), layout
    except ConstructionError as first_error:
        for attempt, alt in enumerate(_all_layouts(cert)):
            if attempt >= ORIENTATION_ATTEMPTS:
                break
            try:
                return _finish(m, _two_matching_assign(m, alt, n), span, "two-matching"), alt
            except ConstructionError:
                continue
        raise ConstructionError(f"no component orientation validates; greedy attempt: {first_error}") from None


def label_from_two_matching(g: Graph, t: int, cert: TwoMatchingCertificate | None = None) -> Labeling:
    """Labeling of M^t(g) with span 2^(t-1)(n+2) - 2 from a perfect 2-matching of the far-pairs graph."""
    if cert is None:
        cert = max_two_matching(far_pairs_graph(g))
    return _labeled_two_matching(g, t, cert, require_perfect=True)[0]


def label_partial_two_matching(g: Graph, t: int) -> Labeling:
    """Labeling of M^t(g) with span 2^(t-1)(2n - p + 2) - 2, p the 2-matching number of the far-pairs graph."""
    n = g.order
    if n < 2 or t < 2:
        raise ConstructionError("needs n >= 2 and t >= 2")
    cert = max_two_matching(far_pairs_graph(g))
    covered = cert.covered()
    p = len(covered)
    half, full = 1 << (t - 1), 1 << t
    span = half * (2 * n - p + 2) - 2
    m = iterated_mycielski(g, t)
    rest = [v for v in range(n) if v not in covered]

    def leftover_assign() -> dict[int, int]:
        seq: list[int] = []
        if rest:
            w1 = rest[0]
            seq = [m.v(w1, 0), m.v(w1, 2), m.v(w1, 1)]
            for pos in range(1, len(rest)):
                seq.extend(_chi(m, rest[pos], pos + 1))
            for k in range(3, full):
                ordered = list(reversed(rest)) if k % 2 == 1 else rest
                seq.extend(m.v(w, k) for w in ordered)
        start = half * (p + 2) - 1
        return {v: start + i for i, v in enumerate(seq)}

    layouts = [_greedy_layout(g, cert)]
    layouts_iter = itertools.chain(layouts, itertools.islice(_all_layouts(cert), ORIENTATION_ATTEMPTS))
    first_error: ConstructionError | None = None
    for layout in layouts_iter:
        assign = _two_matching_assign(m, layout, p)
        assign.update(leftover_assign())
        try:
            return _finish(m, assign, span, "partial two-matching")
        except ConstructionError as exc:
            first_error = first_error or exc
    raise ConstructionError(f"no component orientation validates; first attempt: {first_error}")
