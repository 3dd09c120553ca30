"""``myclab`` command line.

Exit status: 0 success, 1 usage or input error, 2 a checked statement was
refuted (the offending graph is printed as graph6), 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Sequence

from . import constructions as cons
from .bounds import bounds_for
from .enumeration import are_isomorphic, enumerate_graphs
from .graph import Graph, GraphError, clique_number, complement, diameter_and_eccentricities, named
from .graph_io import from_graph6, graph_from_json, read_graph6_lines, to_dot, to_graph6
from .labeling import (
    Labeling,
    SearchBudgetExceeded,
    is_span_feasible,
    lambda_exact,
    trivial_lower_bound,
    validate,
)
from .matching import (
    TwoMatchingCertificate,
    d2_condition,
    far_pairs_graph,
    i4,
    max_two_matching,
    nu2,
    path_cover_number,
    star_matching_number,
)
from .mycielski import MycGraph, hamiltonian_complement_order, iterated_mycielski, lemma_violations

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = ("path", "cycle", "complete", "empty", "star")
METHODS = (
    "auto",
    "shift",
    "clique-partition",
    "family",
    "complete",
    "diameter-three",
    "two-matching",
    "partial-two-matching",
)
CHECKS = (
    "star-matching",
    "full-span",
    "far-pairs",
    "small-mycielski",
    "small-iterated",
    "distance-lemmas",
    "hamiltonicity",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj: Any) -> None:
    print(json.dumps(obj))


# ---------------------------------------------------------------- graph input


def _graph_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    grp = p.add_argument_group("graph input (one of)")
    grp.add_argument("--graph6", help="graph in graph6 format")
    grp.add_argument("--graph-file", type=Path, help="file with a graph6 line or graph JSON")
    grp.add_argument("--family", choices=FAMILIES, help="standard family, with --n")
    grp.add_argument("--n", type=int, help="order (leaves for star) of --family")
    p.set_defaults(_graph_required=required)


def _read_graph(args: argparse.Namespace) -> Graph | None:
    given = [x is not None for x in (args.graph6, args.graph_file, args.family)]
    if sum(given) > 1:
        raise UsageError("give only one of --graph6, --graph-file, --family")
    if args.graph6 is not None:
        return from_graph6(args.graph6)
    if args.graph_file is not None:
        try:
            text = args.graph_file.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph_file}: {exc.strerror}") from None
        if text.lstrip().startswith("{"):
            return graph_from_json(text)
        graphs = read_graph6_lines(text.splitlines())
        if len(graphs) != 1:
            raise UsageError(f"{args.graph_file} holds {len(graphs)} graphs; expected one")
        return graphs[0]
    if args.family is not None:
        if args.n is None:
            raise UsageError("--family needs --n")
        return named(args.family, args.n)
    if args._graph_required:
        raise UsageError("no graph given: use --graph6, --graph-file or --family")
    return None


def recognize_family(g: Graph) -> str | None:
    """Short tag such as ``P5``, ``C6``, ``K3`` or ``K1,4`` when ``g`` is a standard graph."""
    n, e = g.order, g.size()
    candidates: list[tuple[str, Callable[[], Graph]]] = [
        (f"K{n}", lambda: named("complete", n)),
        (f"P{n}", lambda: named("path", n)),
        (f"E{n}", lambda: named("empty", n)),
    ]
    if n >= 3:
        candidates.append((f"C{n}", lambda: named("cycle", n)))
    if n >= 2:
        candidates.append((f"K1,{n - 1}", lambda: named("star", n - 1)))
    for tag, build in candidates:
        h = build()
        if h.size() == e and are_isomorphic(g, h):
            return tag
    return None


# ---------------------------------------------------------------- build / lambda / bound


def cmd_build(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    m = iterated_mycielski(g, args.t)
    if args.format == "json":
        _emit(m.to_dict())
    elif args.format == "dot":
        print(to_dot(m.graph, ids=m.id_strings()), end="")
    elif args.format == "g6":
        print(to_graph6(m.graph))
    else:
        diam, _ = diameter_and_eccentricities(m.graph)
        print(f"order      {m.graph.order}")
        print(f"edges      {m.graph.size()}")
        print(f"max degree {m.graph.max_degree()}")
        print(f"diameter   {diam}")
        for a, b in m.graph.edges():
            print(f"{m.ids[a]} {m.ids[b]}")
    return EXIT_OK


def cmd_lambda(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    m = iterated_mycielski(g, args.mycielski)
    res = lambda_exact(m.graph, lower_bound=args.lower_bound)
    if args.format == "table":
        print(res.value if res.exact else f"[{res.lower}, {res.upper}]")
    else:
        d = res.to_dict()
        d["graph6"] = to_graph6(g)
        d["t"] = args.mycielski
        d["witness"]["ids"] = m.id_strings()
        _emit(d)
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_bound(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    rep = bounds_for(g, args.t, include_conjecture=args.conjecture)
    if args.format == "table":
        for e in rep.entries:
            flag = "" if e.applicable else " (not applicable)"
            conj = " [conjecture]" if e.conjectural else ""
            print(f"{e.kind:5} {str(e.value):>6}  {e.rule}{flag}{conj}  {e.note}")
        print(f"best: [{rep.best_lower}, {rep.best_upper}]")
    else:
        d = rep.to_dict()
        d["graph6"] = to_graph6(g)
        d["t"] = args.t
        _emit(d)
    return EXIT_OK


# ---------------------------------------------------------------- label / verify


def _load_certificate(path: Path | None) -> TwoMatchingCertificate | None:
    if path is None:
        return None
    try:
        return TwoMatchingCertificate.from_dict(json.loads(path.read_text()))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphError(f"certificate JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _auto_label(g: Graph, t: int) -> tuple[str, Labeling]:
    """Best available construction for M^t(g)."""
    if t == 1:
        options: list[tuple[str, Callable[[], Labeling]]] = []
        if g.order <= cons.CLIQUE_PARTITION_CEILING:
            cp = cons.find_clique_partition(g)
            if cp is not None:
                options.append(("clique-partition", lambda: cons.label_clique_partition(g, cp)))
        options.append(("shift", lambda: cons.label_upper_shift(g, lambda_exact(g).witness)))
    else:
        options = [("partial-two-matching", lambda: cons.label_partial_two_matching(g, t))]
        if not g.has_isolated_vertices() and d2_condition(g)[0]:
            options.insert(0, ("two-matching", lambda: cons.label_from_two_matching(g, t)))
        if t == 2 and diameter_and_eccentricities(g)[0] >= 3:
            options.append(("diameter-three", lambda: cons.label_m2_diam3(g)))
        if g.size() == g.order * (g.order - 1) // 2:
            options.append(("complete", lambda: cons.label_m2_complete(g.order, t)))
    results = [(name, build()) for name, build in options]
    return min(results, key=lambda r: r[1].span)


def cmd_label(args: argparse.Namespace) -> int:
    method, t = args.method, args.t
    if method == "family":
        if args.family not in ("path", "cycle") or args.n is None:
            raise UsageError("--method family needs --family path|cycle and --n")
        if t != 1:
            raise UsageError("--method family labels M(G); use --t 1")
        lab = cons.label_family(args.family, args.n)
        g = named(args.family, args.n)
    elif method == "complete":
        g = _read_graph(args)
        if g.size() != g.order * (g.order - 1) // 2:
            raise UsageError("--method complete needs a complete graph")
        lab = cons.label_m2_complete(g.order, t)
    else:
        g = _read_graph(args)
        if method == "shift":
            if t != 1:
                raise UsageError("--method shift labels M(G); use --t 1")
            lab = cons.label_upper_shift(g, lambda_exact(g).witness)
        elif method == "clique-partition":
            if t != 1:
                raise UsageError("--method clique-partition labels M(G); use --t 1")
            cp = cons.find_clique_partition(g)
            if cp is None:
                raise GraphError("no suitable block partition exists for this graph")
            lab = cons.label_clique_partition(g, cp)
        elif method == "diameter-three":
            if t != 2:
                raise UsageError("--method diameter-three labels M^2(G); use --t 2")
            lab = cons.label_m2_diam3(g)
        elif method == "two-matching":
            lab = cons.label_from_two_matching(g, t, _load_certificate(args.certificate))
        elif method == "partial-two-matching":
            lab = cons.label_partial_two_matching(g, t)
        else:
            method, lab = _auto_label(g, t)
    m = iterated_mycielski(g, t)
    # constructions validate internally; this re-check keeps every emission path validated
    if not validate(m.graph, lab).valid:
        raise GraphError(f"internal error: {method} produced an invalid labeling")
    if args.format == "dot":
        print(to_dot(m.graph, labels=lab.labels, ids=m.id_strings()), end="")
    elif args.format == "table":
        for x, value in zip(m.id_strings(), lab.labels):
            print(f"{x} {value}")
        print(f"span {lab.span}")
    else:
        d = lab.to_dict()
        d.update(method=method, t=t, graph6=to_graph6(g), ids=m.id_strings())
        _emit(d)
    return EXIT_OK


def _read_labeling(path: Path, m: MycGraph) -> Labeling:
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphError(f"labeling JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(raw, dict) and isinstance(raw.get("labels"), dict):
        # symbolic form {"labels": {"v1^0": 3, ...}}
        labels = [None] * m.graph.order
        for key, value in raw["labels"].items():
            labels[m.index(key)] = value
        if any(x is None for x in labels):
            raise GraphError("symbolic labeling does not cover every vertex")
        return Labeling(tuple(labels))  # type: ignore[arg-type]
    return Labeling.from_dict(raw)


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    m = iterated_mycielski(g, args.t)
    lab = _read_labeling(args.labeling, m)
    rep = validate(m.graph, lab)
    if args.format == "table":
        print("valid" if rep.valid else "invalid", f"span {lab.span}")
        for v in rep.violations:
            a, b = v.pair
            print(f"  {m.ids[a]} {m.ids[b]} distance {v.distance} gap {v.gap} (needs {v.required})")
    else:
        _emit(
            {
                "valid": rep.valid,
                "span": lab.span,
                "violations": [
                    {"pair": [str(m.ids[a]), str(m.ids[b])], "distance": v.distance, "gap": v.gap}
                    for v in rep.violations
                    for a, b in [v.pair]
                ],
            }
        )
    return EXIT_OK if rep.valid else EXIT_REFUTED


# ---------------------------------------------------------------- matching


def cmd_matching(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    out: dict[str, Any] = {"graph6": to_graph6(g), "n": g.order}

    def guarded(key: str, fn: Callable[[], Any]) -> None:
        try:
            out[key] = fn()
        except GraphError as exc:
            out[key] = None
            out.setdefault("skipped", {})[key] = str(exc)

    def stars() -> dict[str, Any]:
        value, sm = star_matching_number(g, args.stars)
        return {"m": args.stars, "covered": value, **sm.to_dict()}

    guarded("star_matching", stars)
    guarded("nu2", lambda: nu2(g))
    guarded("two_matching", lambda: max_two_matching(g).to_dict())
    guarded("path_cover", lambda: path_cover_number(g))
    far = far_pairs_graph(g)
    out["far_pairs_nu2"] = nu2(far)
    holds, witness = d2_condition(g)
    out["d2"] = {"holds": holds, "witness": None if witness is None else list(witness)}
    if args.format == "table":
        for k, v in out.items():
            print(f"{k:15} {json.dumps(v)}")
    else:
        _emit(out)
    return EXIT_OK


# ---------------------------------------------------------------- survey


@dataclass(frozen=True)
class SurveyTask:
    check: str
    graph6: str
    t: int


def _lambda_up_to(g: Graph, cap: int) -> int | None:
    """Exact lambda when it is at most ``cap``, else None."""
    for k in range(trivial_lower_bound(g), cap + 1):
        if is_span_feasible(g, k).feasible:
            return k
    return None


_SMALL_MYCIELSKI = {"K2": 4, "P3": 6, "P4": 6, "K3": 6, "P5": 7, "P6": 7, "C6": 7}
# at t = 2: 3*4-2, 4*4-2, 9*2-2
_SMALL_ITERATED = {
    "K2": 10,
    "P3": 14, "P4": 14, "P5": 14, "P6": 14, "K3": 14, "C6": 14,
    "P7": 16, "C7": 16,
}


def _verdict(ok: bool, reason: str = "") -> dict[str, str]:
    d = {"status": "confirmed" if ok else "refuted"}
    if reason:
        d["reason"] = reason
    return d


def _skip(reason: str) -> dict[str, str]:
    return {"status": "skipped", "reason": reason}


def survey_row(task: SurveyTask) -> dict[str, Any]:
    """Compute one survey row; pure, so rows can be produced in worker processes."""
    g = from_graph6(task.graph6)
    n = g.order
    row: dict[str, Any] = {"graph6": task.graph6, "n": n, "family": recognize_family(g), "check": task.check}
    try:
        base = lambda_exact(g)
        row["lambda"] = base.value
        _survey_body(task, g, row)
    except SearchBudgetExceeded as exc:
        row["verdict"] = _skip(f"search budget exhausted after {exc.nodes} nodes")
    return row


def _summary(g: Graph, t: int) -> dict[str, Any]:
    rep = bounds_for(g, t)
    return {"best_lower": rep.best_lower, "best_upper": rep.best_upper}


def _survey_body(task: SurveyTask, g: Graph, row: dict[str, Any]) -> None:
    n, check, tag = g.order, task.check, row["family"]
    if check == "star-matching":
        lam = lambda_exact(iterated_mycielski(g, 1).graph).value
        q = i4(complement(g))
        row.update(t=1, lambda_mycielski=lam, i4_complement=q, bounds=_summary(g, 1))
        if lam is None:
            row["verdict"] = _skip("search budget exhausted")
        elif q <= 4:
            row["verdict"] = _verdict(lam <= 2 * n, f"i4={q} predicts lambda <= {2 * n}")
        else:
            want = 2 * n + math.ceil(q / 2) - 2
            row["verdict"] = _verdict(lam == want, f"i4={q} predicts lambda = {want}")
    elif check == "full-span":
        if n < 2:
            row["verdict"] = _skip("needs n >= 2")
            return
        m2 = iterated_mycielski(g, 2).graph
        feasible = is_span_feasible(m2, 4 * n + 1).feasible
        diam, _ = diameter_and_eccentricities(g)
        maximal = clique_number(g) == n or diam == 2
        row.update(t=2, span_below_full_feasible=feasible, complete_or_diameter_two=maximal)
        row["verdict"] = _verdict(feasible != maximal, "lambda(M^2) = order - 1 iff complete or diameter 2")
    elif check == "far-pairs":
        if n < 2 or g.has_isolated_vertices():
            row["verdict"] = _skip("needs n >= 2 and no isolated vertices")
            return
        target = 2 * (n + 2) - 2
        feasible = is_span_feasible(iterated_mycielski(g, 2).graph, target).feasible
        holds, witness = d2_condition(g)
        row.update(t=2, target=target, target_feasible=feasible, d2=holds, bounds=_summary(g, 2))
        if witness is not None:
            row["d2_witness"] = list(witness)
        row["verdict"] = _verdict(feasible == holds, "span 2(n+2)-2 feasible iff the far-pairs condition holds")
    elif check == "small-mycielski":
        lam = lambda_exact(iterated_mycielski(g, 1).graph).value
        row.update(t=1, lambda_mycielski=lam)
        expected = _SMALL_MYCIELSKI.get(tag or "")
        if lam is None:
            row["verdict"] = _skip("search budget exhausted")
        elif expected is not None:
            row["verdict"] = _verdict(lam == expected, f"{tag} expected {expected}")
        else:
            row["verdict"] = _verdict(lam not in (4, 6, 7), "only the listed graphs reach 4, 6 or 7")
    elif check == "small-iterated":
        cap = 16
        lam = _lambda_up_to(iterated_mycielski(g, 2).graph, cap)
        row.update(t=2, lambda_mycielski=lam, lambda_above=None if lam is not None else cap)
        expected = _SMALL_ITERATED.get(tag or "")
        if expected is not None:
            row["verdict"] = _verdict(lam == expected, f"{tag} expected {expected}")
        else:
            row["verdict"] = _verdict(lam not in (10, 14, 16), "only the listed graphs reach 10, 14 or 16")
    elif check == "distance-lemmas":
        problems: list[str] = []
        for t in range(1, task.t + 1):
            problems.extend(f"t={t}: {p}" for p in lemma_violations(g, t))
        row.update(t=task.t, violations=problems[:10])
        row["verdict"] = _verdict(not problems, f"{len(problems)} violations")
    elif check == "hamiltonicity":
        m = iterated_mycielski(g, 2)
        order = hamiltonian_complement_order(m)
        perm = sorted(order) == list(range(m.graph.order))
        bad = [
            f"{m.ids[a]}-{m.ids[b]}"
            for a, b in zip(order, order[1:] + order[:1])
            if m.graph.has_edge(a, b)
        ]
        row.update(t=2, cycle_length=len(order), adjacent_steps=bad)
        row["verdict"] = _verdict(perm and not bad, "explicit cycle in the complement of M^2")
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown check {check!r}")


_DEFAULT_CONNECTED = {"small-mycielski": True, "small-iterated": True}


def _survey_graphs(args: argparse.Namespace) -> Iterator[Graph]:
    if args.input is not None:
        try:
            lines = args.input.read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        yield from read_graph6_lines(lines)
        return
    connected = args.connected if args.connected is not None else _DEFAULT_CONNECTED.get(args.check, False)
    for n in range(args.n_min, args.n_max + 1):
        yield from enumerate_graphs(n, connected_only=connected)


def _rows(tasks: Iterable[SurveyTask], workers: int) -> Iterator[dict[str, Any]]:
    if workers <= 1:
        for task in tasks:
            yield survey_row(task)
        return
    # Executor.map yields in submission order, which is the reorder buffer we need
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            yield from pool.map(survey_row, tasks, chunksize=4)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)


def cmd_survey(args: argparse.Namespace) -> int:
    if args.n_max > 8 and args.input is None:
        raise UsageError("exhaustive surveys enumerate at most n = 8")
    tasks = [SurveyTask(args.check, to_graph6(g), args.t) for g in _survey_graphs(args)]
    status = EXIT_OK
    counts = {"confirmed": 0, "refuted": 0, "skipped": 0}
    for row in _rows(tasks, args.workers):
        print(json.dumps(row), flush=True)
        verdict = row["verdict"]["status"]
        counts[verdict] += 1
        if verdict == "refuted":
            print(f"refuted on graph6 {row['graph6']}: {row['verdict'].get('reason', '')}", file=sys.stderr)
            return EXIT_REFUTED
        if verdict == "skipped" and "budget" in row["verdict"]["reason"]:
            status = EXIT_BUDGET
    print(json.dumps({"summary": counts}), file=sys.stderr)
    return status


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="myclab", description="L(2,1)-labelings of Mycielski graphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct M^t(G) and export it")
    _graph_args(b)
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--format", choices=("json", "dot", "g6", "table"), default="json")
    b.set_defaults(func=cmd_build)

    lam = sub.add_parser("lambda", help="exact lambda-number of M^t(G)")
    _graph_args(lam)
    lam.add_argument("--mycielski", type=int, default=0, metavar="T", help="iterations (0: G itself)")
    lam.add_argument("--lower-bound", type=int, help="known lower bound to start the search from")
    lam.add_argument("--format", choices=("json", "table"), default="json")
    lam.set_defaults(func=cmd_lambda)

    bd = sub.add_parser("bound", help="all applicable bounds on lambda(M^t(G))")
    _graph_args(bd)
    bd.add_argument("--t", type=int, default=1)
    bd.add_argument("--conjecture", action="store_true", help="include the conjectured upper bound")
    bd.add_argument("--format", choices=("json", "table"), default="json")
    bd.set_defaults(func=cmd_bound)

    lb = sub.add_parser("label", help="constructive labeling of M^t(G)")
    _graph_args(lb, required=False)
    lb.add_argument("--t", type=int, default=1)
    lb.add_argument("--method", choices=METHODS, default="auto")
    lb.add_argument("--certificate", type=Path, help="2-matching JSON for --method two-matching")
    lb.add_argument("--format", choices=("json", "dot", "table"), default="json")
    lb.set_defaults(func=cmd_label)

    v = sub.add_parser("verify", help="check a labeling file against M^t(G)")
    _graph_args(v)
    v.add_argument("--t", type=int, default=0, help="iterations applied to the graph (0: G itself)")
    v.add_argument("--labeling", type=Path, required=True)
    v.add_argument("--format", choices=("json", "table"), default="json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("survey", help="exhaustive checks streamed as JSON lines")
    s.add_argument("--check", choices=CHECKS, required=True)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--t", type=int, default=2, help="largest iteration for distance-lemmas")
    conn = s.add_mutually_exclusive_group()
    conn.add_argument("--connected", dest="connected", action="store_true", default=None)
    conn.add_argument("--all", dest="connected", action="store_false")
    s.add_argument("--input", type=Path, help="graph6 file to survey instead of enumerating")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_survey)

    mt = sub.add_parser("matching", help="star matching, 2-matching, path cover, far-pairs condition")
    _graph_args(mt)
    mt.add_argument("--stars", type=int, default=4, help="largest star K_{1,m} allowed")
    mt.add_argument("--format", choices=("json", "table"), default="json")
    mt.set_defaults(func=cmd_matching)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"myclab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchBudgetExceeded as exc:
        print(f"myclab: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GraphError as exc:
        print(f"myclab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
