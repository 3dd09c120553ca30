from __future__ import annotations

import json

import pytest

from myclab.cli import main, recognize_family
from myclab.graph import named
from myclab.graph_io import from_graph6, to_graph6
from myclab.labeling import validate
from myclab.mycielski import iterated_mycielski

P5 = to_graph6(named("path", 5))


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lambda_of_mycielski_p5(capsys):
    code, out, _ = run(capsys, "lambda", "--graph6", P5, "--mycielski", "1", "--format", "table")
    assert code == 0 and out.strip() == "7"
    code, out, _ = run(capsys, "lambda", "--graph6", P5, "--mycielski", "1")
    d = json.loads(out)
    assert d["value"] == 7 and len(d["witness"]["ids"]) == 11


def test_lambda_budget_exit(capsys, monkeypatch):
    monkeypatch.setenv("MYCLAB_BUDGET", "1")
    code, out, _ = run(capsys, "lambda", "--graph6", P5, "--mycielski", "1", "--format", "table")
    assert code == 3 and out.strip() == "[6, 7]"


def test_bad_budget_variable(capsys, monkeypatch):
    monkeypatch.setenv("MYCLAB_BUDGET", "lots")
    code, _, err = run(capsys, "lambda", "--graph6", P5, "--mycielski", "1")
    assert code == 1 and "MYCLAB_BUDGET" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "lambda")[0] == 1
    code, _, err = run(capsys, "lambda", "--graph6", "D!!")
    assert code == 1 and err
    assert run(capsys, "survey", "--check", "far-pairs", "--n-max", "9")[0] == 1


def test_graph_json_file(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]]}))
    code, out, _ = run(capsys, "lambda", "--graph-file", str(f), "--mycielski", "1", "--format", "table")
    assert code == 0 and out.strip() == "6"


def test_build_formats(capsys):
    code, out, _ = run(capsys, "build", "--family", "complete", "--n", "2", "--t", "2")
    d = json.loads(out)
    assert code == 0 and d["n"] == 11 and "u2,0" in d["ids"]
    _, out, _ = run(capsys, "build", "--family", "complete", "--n", "2", "--format", "g6")
    assert from_graph6(out.strip()).order == 5
    _, out, _ = run(capsys, "build", "--family", "path", "--n", "3", "--format", "dot")
    assert out.startswith("graph")
    _, out, _ = run(capsys, "build", "--family", "path", "--n", "3", "--format", "table")
    assert "order      7" in out


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--family", "cycle", "--n", "5")
    d = json.loads(out)
    assert code == 0 and d["best_lower"] == d["best_upper"] == 10
    _, out, _ = run(capsys, "bound", "--family", "cycle", "--n", "9", "--t", "2", "--conjecture", "--format", "table")
    assert "[conjecture]" in out and "best: [20, 20]" in out


def test_label_family_cycle8(capsys):
    code, out, _ = run(capsys, "label", "--family", "cycle", "--n", "8", "--method", "family")
    d = json.loads(out)
    assert code == 0 and d["span"] == 9


@pytest.mark.parametrize(
    "args,span",
    [
        (["--family", "path", "--n", "6", "--t", "2"], 14),
        (["--family", "complete", "--n", "4", "--t", "2", "--method", "complete"], 18),
        (["--family", "path", "--n", "4", "--t", "2", "--method", "diameter-three"], 17),
        (["--family", "path", "--n", "4", "--t", "2", "--method", "partial-two-matching"], 14),
        (["--family", "empty", "--n", "5", "--method", "clique-partition"], 6),
        (["--family", "path", "--n", "3", "--method", "shift"], 7),
    ],
)
def test_label_methods(capsys, args, span):
    code, out, _ = run(capsys, "label", *args)
    d = json.loads(out)
    assert code == 0 and d["span"] == span
    g = from_graph6(d["graph6"])
    assert validate(iterated_mycielski(g, d["t"]).graph, d["labels"]).valid


def test_label_with_certificate(capsys, tmp_path):
    f = tmp_path / "cert.json"
    f.write_text(json.dumps({"edges": [[0, 3], [1, 4], [2, 5]], "cycles": []}))
    code, out, _ = run(capsys, "label", "--family", "path", "--n", "6", "--t", "2", "--method", "two-matching", "--certificate", str(f))
    assert code == 0 and json.loads(out)["span"] == 14
    f.write_text(json.dumps({"edges": [[0, 1]], "cycles": []}))
    code, _, err = run(capsys, "label", "--family", "path", "--n", "6", "--t", "2", "--method", "two-matching", "--certificate", str(f))
    assert code == 1 and err


def test_label_method_mismatch(capsys):
    assert run(capsys, "label", "--family", "path", "--n", "6", "--t", "2", "--method", "shift")[0] == 1
    assert run(capsys, "label", "--family", "cycle", "--n", "4", "--t", "2", "--method", "diameter-three")[0] == 1


def test_verify_roundtrip(capsys, tmp_path):
    _, out, _ = run(capsys, "label", "--family", "cycle", "--n", "6", "--method", "family")
    f = tmp_path / "lab.json"
    f.write_text(out)
    code, out, _ = run(capsys, "verify", "--family", "cycle", "--n", "6", "--t", "1", "--labeling", str(f))
    assert code == 0 and json.loads(out)["valid"]
    d = json.loads(f.read_text())
    d["labels"][0] = d["labels"][1]
    d.pop("span")
    f.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", "--family", "cycle", "--n", "6", "--t", "1", "--labeling", str(f))
    assert code == 2 and json.loads(out)["violations"]


def test_verify_symbolic(capsys, tmp_path):
    f = tmp_path / "lab.json"
    f.write_text(json.dumps({"labels": {"v1^0": 0, "v2^0": 2, "v1^1": 4, "v2^1": 3, "u1,0": 1}}))
    code, _, _ = run(capsys, "verify", "--family", "complete", "--n", "2", "--t", "1", "--labeling", str(f))
    assert code == 0
    f.write_text(json.dumps({"labels": {"v1^0": 0}}))
    assert run(capsys, "verify", "--family", "complete", "--n", "2", "--t", "1", "--labeling", str(f))[0] == 1


def test_matching(capsys):
    code, out, _ = run(capsys, "matching", "--family", "path", "--n", "6")
    d = json.loads(out)
    assert code == 0 and d["d2"]["holds"] and d["far_pairs_nu2"] == 6 and d["path_cover"] == 1


def test_survey_small_mycielski(capsys):
    code, out, err = run(capsys, "survey", "--check", "small-mycielski", "--n-max", "5")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["verdict"]["status"] == "confirmed" for r in rows)
    by_value: dict[int, set[str]] = {}
    for r in rows:
        by_value.setdefault(r["lambda_mycielski"], set()).add(r["family"])
    assert by_value[4] == {"K2"} and by_value[6] == {"P3", "K3", "P4"}
    assert json.loads(err)["summary"]["confirmed"] == len(rows)


@pytest.mark.parametrize("check", ["star-matching", "full-span", "far-pairs", "small-iterated", "distance-lemmas", "hamiltonicity"])
def test_survey_checks_confirm(capsys, check):
    code, out, _ = run(capsys, "survey", "--check", check, "--n-max", "4")
    statuses = {json.loads(line)["verdict"]["status"] for line in out.splitlines()}
    assert code == 0 and "refuted" not in statuses and "confirmed" in statuses


def test_survey_deterministic_and_parallel(capsys):
    argv = ["survey", "--check", "far-pairs", "--n-max", "4"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--workers", "2")
    assert first == second == parallel


def test_survey_refutation_reports_graph(capsys, tmp_path, monkeypatch):
    import myclab.cli as cli

    monkeypatch.setitem(cli._SMALL_MYCIELSKI, "P3", 5)  # plant a false expectation
    f = tmp_path / "in.g6"
    f.write_text(to_graph6(named("path", 3)) + "\n")
    code, _, err = run(capsys, "survey", "--check", "small-mycielski", "--input", str(f))
    assert code == 2 and to_graph6(named("path", 3)) in err


def test_recognize_family():
    assert recognize_family(named("path", 5)) == "P5"
    assert recognize_family(named("cycle", 3)) == "K3"
    assert recognize_family(named("star", 4)) == "K1,4"
    assert recognize_family(named("complete_multipartite", [2, 3])) is None
