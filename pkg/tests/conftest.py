from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import strategies as st

from stabring.corpus import complete, cycle, path, two_triangles, wheel
from stabring.graph import Graph, disjoint_union

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def small_graphs(draw, max_n: int = 6, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def atlas_connected(max_n: int):
    out = []
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if 1 <= k <= max_n and nx.is_connected(h):
            out.append(Graph.from_edges(k, sorted(h.edges())))
    return out


@pytest.fixture
def named():
    return {
        "K1": complete(1),
        "K2": complete(2),
        "K3": complete(3),
        "K4": complete(4),
        "C5": cycle(5),
        "C7": cycle(7),
        "P3": path(3),
        "W5": wheel(5),
        "Remark": two_triangles(),
        "K1+K2": disjoint_union(complete(1), complete(2)),
        "K1+K3": disjoint_union(complete(1), complete(3)),
        "K2+K3": disjoint_union(complete(2), complete(3)),
        "K2+K4": disjoint_union(complete(2), complete(4)),
        "C5+K3": disjoint_union(cycle(5), complete(3)),
        "C5+C7": disjoint_union(cycle(5), cycle(7)),
        "K3+Remark": disjoint_union(complete(3), two_triangles()),
    }
