"""Finite simple graphs and the graph-theoretic data the ring criteria consume.

Vertices are always ``0..n-1``. Everything returned here is canonically
ordered so that results are reproducible and can be compared verbatim.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .exceptions import GraphFormatError, GraphFormatWarning, UndecidedError

PERFECT_SIZE_GUARD = 16

Clique = tuple[int, ...]
Hole = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Build instances with :meth:`from_edges`, which validates and normalizes the
    edge list; the raw constructor assumes already-normalized input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()
    adjacency: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
    ) -> Graph:
        if n < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if len(e) != 2:
                raise GraphFormatError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u} is not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                warnings.warn(f"duplicate edge {key} ignored", GraphFormatWarning, stacklevel=2)
                continue
            seen.add(key)
        if labels is not None and len(labels) != n:
            raise GraphFormatError(f"expected {n} labels, got {len(labels)}")
        return cls(n, tuple(sorted(seen)), tuple(labels) if labels else ())

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    def complement(self) -> Graph:
        edges = [(u, v) for u, v in combinations(range(self.n), 2) if not self.adjacent(u, v)]
        return Graph(self.n, tuple(edges), self.labels)

    def induced_subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled ``0..k-1`` in increasing vertex order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), tuple(sorted(edges)), tuple(self.labels[v] for v in keep))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.adjacent(u, v) for u, v in combinations(vs, 2))

    def is_stable(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.adjacent(u, v) for u, v in combinations(vs, 2))


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertices of later graphs are shifted past earlier ones."""
    offset = 0
    edges: list[tuple[int, int]] = []
    labels: list[str] = []
    for k, g in enumerate(graphs):
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        labels.extend(f"{k}.{lab}" for lab in g.labels)
        offset += g.n
    return Graph(offset, tuple(sorted(edges)), tuple(labels))


# --------------------------------------------------------------------------- io


def parse_graph(text: str) -> Graph:
    """Parse the edge-list or JSON format; the format is detected from the text."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_edge_list(text)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {line_no}: {token!r} is not an integer") from None


def _parse_edge_list(text: str) -> Graph:
    rows: list[tuple[int, list[str]]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((line_no, line.split()))
    if not rows:
        raise GraphFormatError("empty input")
    line_no, header = rows[0]
    if len(header) != 2:
        raise GraphFormatError(f"line {line_no}: header must be 'n m'")
    n, m = (_parse_int(t, line_no) for t in header)
    if n < 1:
        raise GraphFormatError("a graph needs at least one vertex")
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for line_no, tokens in body:
        if len(tokens) != 2:
            raise GraphFormatError(f"line {line_no}: edge lines must be 'u v'")
        edges.append((_parse_int(tokens[0], line_no), _parse_int(tokens[1], line_no)))
    return Graph.from_edges(n, edges)


def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise GraphFormatError('JSON graphs need the keys "n" and "edges"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphFormatError('"n" must be an integer')
    edges = data["edges"]
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        for e in edges
    ):
        raise GraphFormatError('"edges" must be a list of integer pairs')
    labels = data.get("labels")
    if labels is not None:
        labels = [str(x) for x in labels]
    return Graph.from_edges(n, edges, labels)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_json(g: Graph) -> str:
    data: dict[str, object] = {"n": g.n, "edges": [[u, v] for u, v in g.edges]}
    if g.labels != tuple(str(i) for i in range(g.n)):
        data["labels"] = list(g.labels)
    return json.dumps(data)


# ------------------------------------------------------------------ cliques


def _bron_kerbosch(
    r: list[int], p: set[int], x: set[int], adj: Sequence[frozenset[int]], out: list[Clique]
) -> None:
    if not p and not x:
        out.append(tuple(sorted(r)))
        return
    pivot = max(p | x, key=lambda u: len(p & adj[u]))
    for v in sorted(p - adj[pivot]):
        nbrs = adj[v]
        _bron_kerbosch(r + [v], p & nbrs, x & nbrs, adj, out)
        p.discard(v)
        x.add(v)


def maximal_cliques(g: Graph) -> tuple[Clique, ...]:
    """All inclusion-maximal cliques, each sorted, family sorted lexicographically."""
    out: list[Clique] = []
    _bron_kerbosch([], set(range(g.n)), set(), g.adjacency, out)
    return tuple(sorted(out))


def k_maximal_elements(g: Graph) -> tuple[Clique, ...]:
    """Maximal members of the family of cliques with at most three vertices.

    These are the triangles, the edges lying in no triangle and the isolated
    vertices.
    """
    triangles = [
        (u, v, w)
        for u, v in g.edges
        for w in sorted(g.adjacency[u] & g.adjacency[v])
        if w > v
    ]
    in_triangle = {frozenset(p) for t in triangles for p in combinations(t, 2)}
    free_edges = [e for e in g.edges if frozenset(e) not in in_triangle]
    isolated = [(v,) for v in range(g.n) if not g.adjacency[v]]
    return tuple(sorted(triangles + free_edges + isolated))


def clique_number(g: Graph) -> int:
    return max(len(k) for k in maximal_cliques(g))


def is_pure(g: Graph) -> bool:
    return len({len(k) for k in maximal_cliques(g)}) == 1


def is_t_pure(g: Graph) -> bool:
    return len({len(k) for k in k_maximal_elements(g)}) == 1


def unequal_clique_pair(
    g: Graph, family: Sequence[Clique] | None = None, intersecting: bool = False
) -> tuple[Clique, Clique] | None:
    """First pair ``(K1, K2)`` of the family with ``#K1 > #K2``, or None.

    With ``intersecting=True`` only pairs sharing a vertex qualify; a connected
    non-pure graph always has one.
    """
    fam = maximal_cliques(g) if family is None else family
    for a, b in combinations(fam, 2):
        if len(a) == len(b):
            continue
        if intersecting and not set(a) & set(b):
            continue
        return (a, b) if len(a) > len(b) else (b, a)
    return None


# -------------------------------------------------------------------- holes


def odd_holes(g: Graph, max_len: int | None = None) -> tuple[Hole, ...]:
    """Chordless odd cycles of length at least 5.

    Each hole is reported once, as its lexicographically smallest rotation or
    reflection: it starts at its minimum vertex and the second entry is the
    smaller neighbour of that vertex on the cycle.
    """
    limit = g.n if max_len is None else min(max_len, g.n)
    adj = g.adjacency
    found: list[Hole] = []

    def extend(path: list[int], blocked: set[int]) -> None:
        # blocked: vertices adjacent to some internal path vertex (or on the path)
        s, last = path[0], path[-1]
        for w in sorted(adj[last]):
            if w <= s or w in blocked:
                continue
            if s in adj[w]:
                if len(path) + 1 >= 5 and len(path) % 2 == 0 and path[1] < w:
                    found.append(tuple(path + [w]))
                continue
            if len(path) + 1 >= limit:
                continue
            extend(path + [w], blocked | adj[last] | {w})

    if limit >= 5:
        for s in range(g.n):
            for a in sorted(adj[s]):
                if a > s:
                    extend([s, a], {s, a})
    return tuple(sorted(found, key=lambda h: (len(h), h)))


def is_perfect(g: Graph, bound: int = PERFECT_SIZE_GUARD) -> bool:
    """No odd hole in the graph or its complement (strong perfect graph theorem)."""
    if g.n > bound:
        raise UndecidedError(f"perfectness of a {g.n}-vertex graph exceeds the size guard {bound}")
    return not odd_holes(g) and not odd_holes(g.complement())


def is_bipartite(g: Graph) -> bool:
    colour: dict[int, int] = {}
    for start in range(g.n):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def plus_sum(values: Sequence, subset: Iterable[int]):
    """Sum of ``values`` over ``subset``; the empty sum is 0."""
    return sum((values[b] for b in subset), 0)


# --------------------------------------------------------------- components


@dataclass(frozen=True)
class ComponentSpectrum:
    """Connected components grouped by clique number and by largest K-element.

    ``classes[d]`` holds the component indices with clique number ``d`` and
    ``class_vertices[d]`` their union; the ``t_`` fields do the same with the
    maximum size of cliques of at most three vertices, i.e. ``min(omega, 3)``.
    """

    components: tuple[tuple[int, ...], ...]
    clique_numbers: tuple[int, ...]
    k_max_sizes: tuple[int, ...]
    degrees: tuple[int, ...]
    classes: dict[int, tuple[int, ...]]
    class_vertices: dict[int, tuple[int, ...]]
    t_degrees: tuple[int, ...]
    t_classes: dict[int, tuple[int, ...]]
    t_class_vertices: dict[int, tuple[int, ...]]

    @property
    def u(self) -> int:
        return len(self.degrees)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "components": [list(c) for c in self.components],
            "cliqueNumbers": list(self.clique_numbers),
            "kMaxSizes": list(self.k_max_sizes),
            "I": list(self.degrees),
            "u": self.u,
            "J": {str(d): [j + 1 for j in js] for d, js in self.classes.items()},
            "Iprime": list(self.t_degrees),
            "Jprime": {str(d): [j + 1 for j in js] for d, js in self.t_classes.items()},
        }


def connected_components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Vertex sets of the components, ordered by their smallest vertex."""
    seen: set[int] = set()
    comps = []
    for start in range(g.n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for w in g.adjacency[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _group(values: Sequence[int], comps: Sequence[tuple[int, ...]]):
    classes: dict[int, list[int]] = {}
    for j, d in enumerate(values):
        classes.setdefault(d, []).append(j)
    degrees = tuple(sorted(classes))
    cls = {d: tuple(classes[d]) for d in degrees}
    verts = {d: tuple(sorted(v for j in cls[d] for v in comps[j])) for d in degrees}
    return degrees, cls, verts


def components(g: Graph) -> ComponentSpectrum:
    comps = connected_components(g)
    omegas = tuple(clique_number(g.induced_subgraph(c)) for c in comps)
    kmax = tuple(min(w, 3) for w in omegas)
    degrees, cls, verts = _group(omegas, comps)
    t_degrees, t_cls, t_verts = _group(kmax, comps)
    return ComponentSpectrum(comps, omegas, kmax, degrees, cls, verts, t_degrees, t_cls, t_verts)
