"""L(2,1)-labelings: validation, exact span feasibility, exact lambda, greedy.

The exact search is a depth-first branch and bound.  Each unassigned vertex
keeps a bitmask of labels in ``0..k`` still compatible with the labels placed
so far.  Assigning label ``L`` to ``v`` removes ``L-1, L, L+1`` from the
neighbours of ``v`` and ``L`` from the vertices at distance two.  On top of
this forward checking, every clique of the square graph (a set of vertices
that must all get distinct labels) is checked with a pigeonhole test.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .graph import Graph, GraphError, ball_masks, iter_bits, popcount

DEFAULT_NODE_BUDGET = 10**9
BUDGET_ENV = "MYCLAB_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise GraphError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise GraphError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class Labeling:
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        for v, x in enumerate(self.labels):
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise GraphError(f"label of vertex {v} must be a non-negative integer, got {x!r}")

    @property
    def span(self) -> int:
        return max(self.labels, default=0)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]

    def to_dict(self) -> dict[str, Any]:
        return {"labels": list(self.labels), "span": self.span}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Any) -> Labeling:
        if not isinstance(d, dict) or not isinstance(d.get("labels"), list):
            raise GraphError('labeling JSON must be an object with a "labels" list')
        lab = cls(tuple(d["labels"]))
        if "span" in d and d["span"] != lab.span:
            raise GraphError(f'stated span {d["span"]} differs from the maximum label {lab.span}')
        return lab

    @classmethod
    def from_json(cls, text: str) -> Labeling:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


@dataclass(frozen=True)
class Violation:
    pair: tuple[int, int]
    distance: int
    gap: int
    required: int


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def _as_labels(g: Graph, f: Labeling | Sequence[int]) -> tuple[int, ...]:
    labels = f.labels if isinstance(f, Labeling) else tuple(Labeling(tuple(f)).labels)
    if len(labels) != g.order:
        raise GraphError(f"labeling covers {len(labels)} vertices but the graph has {g.order}")
    return labels


def validate(g: Graph, f: Labeling | Sequence[int]) -> ValidationReport:
    labels = _as_labels(g, f)
    near = ball_masks(g, 2)
    out = []
    for a in g.vertices():
        for b in iter_bits(near[a] >> (a + 1) << (a + 1)):
            d = 1 if g.adj[a] >> b & 1 else 2
            need = 3 - d
            gap = abs(labels[a] - labels[b])
            if gap < need:
                out.append(Violation((a, b), d, gap, need))
    return ValidationReport(tuple(out))


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Refutation:
    """Proof object for an infeasible span: the exhaustive search finished."""

    span: int
    nodes: int


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Labeling | Refutation
    nodes: int

    def __iter__(self):  # allows ``ok, witness = is_span_feasible(...)``
        return iter((self.feasible, self.witness))


def _greedy_cliques(sq: Sequence[int]) -> list[int]:
    """A few large cliques of the square graph, seeded from every vertex."""
    n = len(sq)
    seen: set[int] = set()
    out = []
    for s in range(n):
        clique = 1 << s
        cand = sq[s]
        while cand:
            best = max(iter_bits(cand), key=lambda w: popcount(sq[w] & cand))
            clique |= 1 << best
            cand &= sq[best]
        if popcount(clique) >= 3 and clique not in seen:
            seen.add(clique)
            out.append(clique)
    return out


class _Search:
    def __init__(self, g: Graph, k: int, budget: int, nodes: int = 0):
        self.n = g.order
        self.k = k
        self.adj = g.adj
        sq = ball_masks(g, 2)
        self.dist2 = [sq[v] & ~g.adj[v] for v in range(self.n)]
        self.sq_deg = [popcount(m) for m in sq]
        cliques = _greedy_cliques(sq)
        # closed neighbourhoods are cliques of the square as well
        for v in range(self.n):
            c = g.adj[v] | 1 << v
            if popcount(c) >= 3 and c not in cliques:
                cliques.append(c)
        self.cliques = cliques
        self.cliques_of = [[c for c in cliques if c >> v & 1] for v in range(self.n)]
        self.sq = sq
        self.budget = budget
        self.nodes = nodes
        self.full = (1 << (k + 1)) - 1

    def run(self) -> list[int] | None:
        labels = [-1] * self.n
        dom = [self.full] * self.n
        half = (1 << (self.k // 2 + 1)) - 1
        if self._solve(labels, dom, (1 << self.n) - 1, half):
            return labels
        return None

    def _pigeonhole_ok(self, dom: list[int], unassigned: int, touched: int) -> bool:
        done: set[int] = set()
        for v in iter_bits(touched):
            for c in self.cliques_of[v]:
                if c in done:
                    continue
                done.add(c)
                free = c & unassigned
                cnt = popcount(free)
                if cnt < 2:
                    continue
                union = 0
                for w in iter_bits(free):
                    union |= dom[w]
                if popcount(union) < cnt:
                    return False
        return True

    def _solve(self, labels: list[int], dom: list[int], unassigned: int, first_mask: int) -> bool:
        if not unassigned:
            return True
        # most constrained vertex, ties to the largest square degree
        best_v = -1
        best_key = None
        for v in iter_bits(unassigned):
            key = (popcount(dom[v]), -self.sq_deg[v])
            if best_key is None or key < best_key:
                best_key, best_v = key, v
                if key[0] == 1:
                    break
        v = best_v
        rest = unassigned & ~(1 << v)
        choices = dom[v] & first_mask
        near1 = self.adj[v] & rest
        near2 = self.dist2[v] & rest
        touched = self.sq[v] & rest
        for lab in iter_bits(choices):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.nodes)
            block1 = ~((7 << lab) >> 1)
            block2 = ~(1 << lab)
            new = dom[:]
            ok = True
            for w in iter_bits(near1):
                d = new[w] & block1
                if not d:
                    ok = False
                    break
                new[w] = d
            if not ok:
                continue
            for w in iter_bits(near2):
                d = new[w] & block2
                if not d:
                    ok = False
                    break
                new[w] = d
            if not ok:
                continue
            if not self._pigeonhole_ok(new, rest, touched):
                continue
            labels[v] = lab
            if self._solve(labels, new, rest, -1):
                return True
            labels[v] = -1
        return False


def is_span_feasible(g: Graph, k: int, budget: int | None = None) -> FeasibilityResult:
    """Exact decision: does ``g`` have an L(2,1)-labeling with labels in ``0..k``?

    Raises :class:`SearchBudgetExceeded` when the node budget runs out.
    """
    if k < 0:
        raise GraphError("span budget must be non-negative")
    if budget is None:
        budget = default_budget()
    quick = heuristic_upper(g)
    if quick.span <= k:
        return FeasibilityResult(True, quick, 0)
    search = _Search(g, k, budget)
    labels = search.run()
    if labels is None:
        return FeasibilityResult(False, Refutation(k, search.nodes), search.nodes)
    return FeasibilityResult(True, Labeling(tuple(labels)), search.nodes)


def greedy_upper(g: Graph, order: Iterable[int] | None = None) -> Labeling:
    """First-fit: each vertex takes the least label compatible with those placed."""
    sq = ball_masks(g, 2)
    labels = [-1] * g.order
    for v in (g.vertices() if order is None else order):
        banned = set()
        for w in iter_bits(sq[v]):
            x = labels[w]
            if x < 0:
                continue
            banned.add(x)
            if g.adj[v] >> w & 1:
                banned.update((x - 1, x + 1))
        lab = 0
        while lab in banned:
            lab += 1
        labels[v] = lab
    return Labeling(tuple(labels))


SWEEP_ATTEMPTS = 24


def sweep_upper(g: Graph, attempts: int = SWEEP_ATTEMPTS, seed: int = 0) -> Labeling:
    """Label-by-label greedy: each label goes to a set of pairwise far vertices.

    Vertices with the fewest unlabeled non-neighbours are served first, so a
    run that uses every label once behaves like a Warnsdorff walk in the
    complement.  Ties are broken at random (seeded); the best run is returned.
    """
    n = g.order
    if n == 0:
        return Labeling(())
    sq = ball_masks(g, 2)
    adj = g.adj
    rng = random.Random(seed)
    best: list[int] | None = None
    for attempt in range(attempts):
        noise = list(range(n)) if attempt == 0 else rng.sample(range(n), n)
        labels = [-1] * n
        unl = (1 << n) - 1
        prev = 0
        lab = 0
        while unl:
            blocked = 0
            for v in iter_bits(prev):
                blocked |= adj[v]
            cand = unl & ~blocked
            cur = 0
            while cand:
                v = min(iter_bits(cand), key=lambda w: (popcount(unl & ~adj[w]), noise[w]))
                labels[v] = lab
                unl &= ~(1 << v)
                cur |= 1 << v
                cand &= ~sq[v] & ~(1 << v)
            prev = cur
            lab += 1
            if best is not None and lab > max(best) + 1:
                break
        if not unl and (best is None or max(labels) < max(best)):
            best = labels
    assert best is not None
    return Labeling(tuple(best))


def heuristic_upper(g: Graph) -> Labeling:
    """Better of first-fit and the label sweep."""
    a, b = greedy_upper(g), sweep_upper(g)
    return a if a.span <= b.span else b


def trivial_lower_bound(g: Graph) -> int:
    """max(Delta + 1, omega(G^2) - 1), or 0 for an edgeless graph."""
    from .graph import clique_number, power

    if g.order == 0 or g.size() == 0:
        return 0
    return max(g.max_degree() + 1, clique_number(power(g, 2)) - 1)


@dataclass(frozen=True)
class LambdaResult:
    """``value`` is set only when the answer is proven; otherwise ``lower..upper`` bracket it."""

    value: int | None
    witness: Labeling
    lower: int
    upper: int
    nodes: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.value is not None

    def __iter__(self):  # ``value, witness = lambda_exact(g)``
        return iter((self.value, self.witness))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "status": "exact" if self.exact else "unknown",
            "lower": self.lower,
            "upper": self.upper,
            "witness": self.witness.to_dict(),
            "nodes": self.nodes,
        }
        if self.exact:
            d["value"] = self.value
        return d


def lambda_exact(g: Graph, lower_bound: int | None = None, budget: int | None = None) -> LambdaResult:
    """Minimum span, iterating the span upward from a lower bound.

    ``lower_bound`` lets a caller supply a bound known from theory; the result
    then relies on it for the claim that ``value - 1`` is infeasible.
    On budget exhaustion the result has ``value=None`` and the best bracket.
    """
    if budget is None:
        budget = default_budget()
    greedy = heuristic_upper(g)
    hi, best = greedy.span, greedy
    lo = trivial_lower_bound(g)
    if lower_bound is not None:
        lo = max(lo, lower_bound)
    if lo > hi:
        raise GraphError(f"supplied lower bound {lo} exceeds a valid labeling of span {hi}")
    nodes = 0
    k = lo
    while k < hi:
        search = _Search(g, k, budget, nodes)
        try:
            labels = search.run()
        except SearchBudgetExceeded as exc:
            return LambdaResult(None, best, k, hi, exc.nodes, ("search budget exhausted",))
        nodes = search.nodes
        if labels is not None:
            return LambdaResult(k, Labeling(tuple(labels)), k, k, nodes)
        k += 1
    return LambdaResult(hi, best, hi, hi, nodes)
