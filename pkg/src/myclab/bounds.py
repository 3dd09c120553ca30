"""Provenance-tagged bounds on the lambda-number of Mycielskians.

Each entry names the rule that produced it, whether the rule's hypotheses
hold for the input, and a short note.  Entries whose hypotheses fail are kept
in the report (with ``applicable=False``) so the report doubles as an audit
of which results speak about a given graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .graph import Graph, GraphError, clique_number, complement, diameter_and_eccentricities
from .labeling import greedy_upper, lambda_exact
from .matching import STAR_MATCHING_CEILING, d2_condition, far_pairs_graph, i4, nu2

# lambda(G) inside the shift upper bounds is computed exactly up to this order
BASE_LAMBDA_CEILING = 30
BASE_LAMBDA_BUDGET = 2_000_000

LOWER, UPPER, EXACT = "lower", "upper", "exact"


@dataclass(frozen=True)
class BoundEntry:
    kind: str
    value: int | None
    rule: str
    applicable: bool
    note: str = ""
    conjectural: bool = False

    def to_dict(self) -> dict[str, Any]:
        d = {
            "kind": self.kind,
            "value": self.value,
            "rule": self.rule,
            "applicable": self.applicable,
            "note": self.note,
        }
        if self.conjectural:
            d["conjectural"] = True
        return d


@dataclass
class BoundReport:
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, kind: str, value: int | None, rule: str, applicable: bool, note: str = "", conjectural: bool = False) -> None:
        if applicable and value is None:
            raise ValueError("applicable entries need a value")
        self.entries.append(BoundEntry(kind, value, rule, applicable, note, conjectural))

    def _active(self):
        return [e for e in self.entries if e.applicable and not e.conjectural]

    @property
    def best_lower(self) -> int | None:
        vals = [e.value for e in self._active() if e.kind in (LOWER, EXACT)]
        return max(vals) if vals else None

    @property
    def best_upper(self) -> int | None:
        vals = [e.value for e in self._active() if e.kind in (UPPER, EXACT)]
        return min(vals) if vals else None

    @property
    def exact(self) -> int | None:
        vals = {e.value for e in self._active() if e.kind == EXACT}
        if len(vals) > 1:
            raise GraphError(f"exact rules disagree: {sorted(vals)}")  # would mean a defect
        return vals.pop() if vals else None

    def rule(self, name: str) -> list[BoundEntry]:
        return [e for e in self.entries if e.rule == name]

    def to_dict(self) -> dict[str, Any]:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
        }


@dataclass(frozen=True)
class BaseLambda:
    value: int
    source: str  # "exact" or "greedy"


def base_lambda(g: Graph) -> BaseLambda:
    """lambda(G) exactly when cheap, otherwise the first-fit value (an upper bound)."""
    if g.order <= BASE_LAMBDA_CEILING:
        res = lambda_exact(g, budget=BASE_LAMBDA_BUDGET)
        if res.exact:
            assert res.value is not None
            return BaseLambda(res.value, "exact")
        return BaseLambda(res.upper, "greedy")
    return BaseLambda(greedy_upper(g).span, "greedy")


def eccentricity_two_count(g: Graph) -> int:
    _, ecc = diameter_and_eccentricities(g)
    return sum(1 for e in ecc if e == 2)


def _i4_complement(g: Graph) -> int | None:
    if g.order > STAR_MATCHING_CEILING:
        return None
    return i4(complement(g))


def lambda_mycielski_via_i4(g: Graph) -> int | None:
    """lambda(M(G)) from the star matching number of the complement, or None when not determined."""
    q = _i4_complement(g)
    if q is None:
        return None
    n = g.order
    diam, _ = diameter_and_eccentricities(g)
    if diam in (1, 2):
        return 2 * n + max(2, math.ceil(q / 2)) - 2
    if q >= 5:
        return 2 * n + math.ceil(q / 2) - 2
    return None


def bounds_for_mycielski(g: Graph, include_conjecture: bool = False) -> BoundReport:
    n = g.order
    if n < 1:
        raise GraphError("bounds need a graph with at least one vertex")
    rep = BoundReport()
    delta = g.max_degree()
    diam, _ = diameter_and_eccentricities(g)
    lam = base_lambda(g)

    rep.add(LOWER, max(n + 1, 2 * (delta + 1)), "root-degree-and-star", True, "max(n+1, 2(Delta+1))")
    rep.add(UPPER, n + 1 + lam.value, "shift", True, f"(n+1)+lambda(G), lambda(G) {lam.source}")

    if diam == 2:
        note = "diameter 2"
        if n == delta * delta + 1:
            note += "; Moore graph, bound 2(Delta^2+1) attainable"
        rep.add(UPPER, 2 * (delta * delta + 1), "diameter-two-degree", True, note)
    else:
        rep.add(UPPER, 2 * (delta * delta + 1), "diameter-two-degree", False, f"needs diameter 2, got {diam}")

    omega = clique_number(g)
    rep.add(UPPER, 2 * n, "small-clique", omega <= 4, f"clique number {omega} (needs <= 4)")

    delta_min = g.min_degree()
    ok = delta <= n - 2 and 3 * (n - 1) + delta_min >= 4 * delta
    rep.add(UPPER, 2 * n, "degree-balance", ok, f"Delta={delta}, delta={delta_min}; needs Delta <= n-2 and 3(n-1)+delta >= 4 Delta")

    q = _i4_complement(g)
    if q is None:
        rep.add(UPPER, 2 * n, "star-matching", False, f"star matching is exact only up to {STAR_MATCHING_CEILING} vertices")
    elif q <= 4:
        rep.add(UPPER, 2 * n, "star-matching", True, f"i4(complement)={q} <= 4")
    else:
        rep.add(EXACT, 2 * n + math.ceil(q / 2) - 2, "star-matching", True, f"i4(complement)={q} >= 5")

    if q is not None and diam in (1, 2):
        rep.add(EXACT, 2 * n + max(2, math.ceil(q / 2)) - 2, "diameter-two-star-matching", True, f"diameter {diam}, i4(complement)={q}")
        rep.add(LOWER, 2 * n, "all-distinct", True, "diameter of M(G) is 2")
    else:
        rep.add(EXACT, None, "diameter-two-star-matching", False, f"needs diameter 1 or 2 (got {diam}) and i4 within the ceiling")

    if g.has_isolated_vertices():
        rep.add(LOWER, None, "eccentricity-two", False, "needs no isolated vertices")
    else:
        k = eccentricity_two_count(g)
        rep.add(LOWER, n + k, "eccentricity-two", True, f"{k} vertices of eccentricity 2")

    if include_conjecture:
        rep.add(UPPER, (n + 1) + delta * delta, "conjectural-delta-squared", True, "open conjecture, excluded from best bounds", conjectural=True)
    return rep


def bounds_for_iterated(g: Graph, t: int, include_conjecture: bool = False) -> BoundReport:
    if t < 2:
        raise GraphError("iterated bounds need t >= 2; use bounds_for_mycielski for t = 1")
    n = g.order
    if n < 2:
        raise GraphError("iterated bounds need n >= 2")
    rep = BoundReport()
    half = 1 << (t - 1)
    full = 1 << t
    delta = g.max_degree()
    diam, _ = diameter_and_eccentricities(g)
    lam = base_lambda(g)

    rep.add(LOWER, half * max(n + 2, 2 * (delta + 2)) - 2, "iterated-root-degree-and-star", True, "2^(t-1) max(n+2, 2(Delta+2)) - 2")
    rep.add(UPPER, (full - 1) * (n + 1) + lam.value, "iterated-shift", True, f"(2^t-1)(n+1)+lambda(G), lambda(G) {lam.source}")
    rep.add(UPPER, full * (n + 1) - 2, "order-minus-one", True, "every graph of order n is a subgraph of K_n")

    is_complete = g.size() == n * (n - 1) // 2
    if is_complete or diam == 2:
        rep.add(EXACT, full * (n + 1) - 2, "complete-or-diameter-two", True, "complete" if is_complete else "diameter 2")
    else:
        rep.add(UPPER, full * (n + 1) - 3, "complete-or-diameter-two", True, f"diameter {diam}: some pair at distance >= 3")

    target = half * (n + 2) - 2
    if g.has_isolated_vertices():
        rep.add(EXACT, target, "far-pairs-perfect", False, "needs no isolated vertices")
    else:
        holds, witness = d2_condition(g)
        if holds:
            rep.add(EXACT, target, "far-pairs-perfect", True, "far-pairs graph has a perfect 2-matching")
        else:
            rep.add(LOWER, target + 1, "far-pairs-perfect", True, f"condition fails on S={list(witness or ())}")

    p = nu2(far_pairs_graph(g))
    rep.add(UPPER, half * (2 * n - p + 2) - 2, "far-pairs-partial", True, f"nu2 of far-pairs graph = {p}")

    if g.has_isolated_vertices():
        rep.add(LOWER, None, "eccentricity-two", False, "needs no isolated vertices")
    else:
        k = eccentricity_two_count(g)
        rep.add(LOWER, half * (n + k + 2) - 2, "eccentricity-two", True, f"{k} vertices of eccentricity 2")

    if include_conjecture:
        rep.add(UPPER, (full - 1) * (n + 1) + delta * delta, "conjectural-delta-squared", True, "open conjecture, excluded from best bounds", conjectural=True)
    return rep


def bounds_for(g: Graph, t: int, include_conjecture: bool = False) -> BoundReport:
    if t == 1:
        return bounds_for_mycielski(g, include_conjecture)
    return bounds_for_iterated(g, t, include_conjecture)
