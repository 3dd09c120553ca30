from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from myclab.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6, no_isolated: bool = False) -> Graph:
    n = draw(st.integers(max(min_n, 2) if no_isolated else min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = Graph.from_edges(n, chosen)
    if no_isolated:
        # attach each isolated vertex to a neighbour so the hypothesis holds
        extra = [(v, (v + 1) % n) for v in g.isolated_vertices()]
        g = Graph.from_edges(n, set(chosen) | {tuple(sorted(e)) for e in extra})
    return g


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
