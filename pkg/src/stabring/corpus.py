"""Named graphs and the test corpus."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import networkx as nx

from .graph import Graph, disjoint_union


def complete(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def wheel(rim: int) -> Graph:
    """Cycle on ``0..rim-1`` plus a hub ``rim`` joined to every rim vertex."""
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    return Graph.from_edges(rim + 1, edges)


def two_triangles() -> Graph:
    """Triangles 012 and 345 joined by the edge 23.

    Connected and not pure, yet every vertex lies in a triangle.
    """
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Graph


def connected_small(max_n: int = 6) -> list[CorpusEntry]:
    """Every connected graph on 1..max_n vertices, up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for idx, h in enumerate(nx.graph_atlas_g()):
        k = h.number_of_nodes()
        if 1 <= k <= max_n and nx.is_connected(h):
            out.append(CorpusEntry(f"atlas{idx}", Graph.from_edges(k, sorted(h.edges()))))
    return out


def building_blocks() -> dict[str, Graph]:
    return {
        "K1": complete(1),
        "K2": complete(2),
        "K3": complete(3),
        "K4": complete(4),
        "C5": cycle(5),
        "C7": cycle(7),
        "P3": path(3),
        "Remark": two_triangles(),
    }


def unions(max_n: int = 10) -> list[CorpusEntry]:
    """Disjoint unions of at least two building blocks with at most ``max_n`` vertices."""
    blocks = building_blocks()
    names = list(blocks)
    out = []
    for r in range(2, max_n + 1):
        found = False
        for combo in combinations_with_replacement(names, r):
            if sum(blocks[b].n for b in combo) <= max_n:
                found = True
                out.append(CorpusEntry("+".join(combo), disjoint_union(*(blocks[b] for b in combo))))
        if not found:
            break
    return out


def acceptance_corpus() -> list[CorpusEntry]:
    extra = [
        CorpusEntry("C7", cycle(7)),
        CorpusEntry("W5", wheel(5)),
        CorpusEntry("Remark", two_triangles()),
    ]
    return connected_small(6) + extra + unions(10)
