"""Reference labelings shipped as JSON data files."""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from ..graph import GraphError, named
from ..labeling import Labeling
from ..mycielski import MycGraph, iterated_mycielski

FAMILY_FIXTURES = (
    "mycielski_path4",
    "mycielski_path5",
    "mycielski_cycle6",
    "mycielski_cycle7",
    "mycielski_cycle8",
)
SCHEMA_FIXTURE = "two_matching_schema"


def load_fixture(name: str) -> dict[str, Any]:
    try:
        text = resources.files(__name__).joinpath(f"{name}.json").read_text()
    except FileNotFoundError:
        raise GraphError(f"no fixture named {name!r}") from None
    return json.loads(text)


def load_fixture_labeling(name: str) -> tuple[MycGraph, Labeling]:
    """The Mycielskian a fixture describes and its labeling in index order."""
    d = load_fixture(name)
    g = named(d["graph"]["family"], d["graph"]["n"])
    m = iterated_mycielski(g, d["t"])
    labels = [0] * m.graph.order
    if sorted(d["labels"]) != sorted(m.id_strings()):
        raise GraphError(f"fixture {name!r} does not label every vertex exactly once")
    for key, lab in d["labels"].items():
        labels[m.index(key)] = lab
    return m, Labeling(tuple(labels))
