"""Monomial model of the Ehrhart rings of HSTAB, QSTAB and TSTAB.

A monomial is a :class:`LatticeFunction`: an integer per vertex plus a degree
(the value at the extra coordinate). For an integer ``n`` the set ``U(n)`` of
monomials spanning the ``n``-th symbolic power of the canonical ideal is cut
out by

* ``monomial(z) >= n`` for every vertex ``z``,
* ``sum_K monomial <= deg - n`` for every clique-type constraint ``K``,
* ``2 sum_C monomial <= deg (#C - 1) - 2n`` for every odd hole ``C``.

``n = 0`` gives the ring itself and ``n = 1`` its canonical ideal. All rows
are stored uniformly as ``A monomial <= c deg - e n``.

Slices are enumerated exactly. Substituting ``monomial = n + delta`` turns every row
into ``A delta <= slack`` with ``delta >= 0``; coordinates are then fixed one
at a time, each ranging over ``0 .. min(slack // A)`` for the rows it meets.
Every partial assignment extends (all later deltas may be 0), so the search
never backtracks, and a coordinate's bound is exact rather than a coarse box.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .exceptions import InternalInconsistencyError, UndecidedError
from .graph import Clique, Graph, Hole, clique_number, connected_components, disjoint_union
from .polytope import Variant, build_polytope, constraint_families, lattice_points

MAX_GENERATOR_DEGREE = 62


@dataclass(frozen=True, order=True)
class LatticeFunction:
    values: tuple[int, ...]
    deg: int

    def __add__(self, other: LatticeFunction) -> LatticeFunction:
        return LatticeFunction(
            tuple(a + b for a, b in zip(self.values, other.values)), self.deg + other.deg
        )

    def __sub__(self, other: LatticeFunction) -> LatticeFunction:
        return LatticeFunction(
            tuple(a - b for a, b in zip(self.values, other.values)), self.deg - other.deg
        )

    def __neg__(self) -> LatticeFunction:
        return LatticeFunction(tuple(-a for a in self.values), -self.deg)

    @classmethod
    def zero(cls, n: int) -> LatticeFunction:
        return cls((0,) * n, 0)

    @classmethod
    def of(cls, values: Sequence[int], deg: int) -> LatticeFunction:
        return cls(tuple(int(v) for v in values), int(deg))

    def to_json(self) -> dict:
        return {"values": list(self.values), "deg": self.deg}

    @classmethod
    def from_json(cls, data: dict) -> LatticeFunction:
        return cls.of(data["values"], data["deg"])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + f";{self.deg})"


@dataclass(frozen=True)
class VariantSystem:
    """Constraint families of one variant on one graph, plus row matrices."""

    graph: Graph
    variant: Variant
    cliques: tuple[Clique, ...]
    holes: tuple[Hole, ...]
    A: np.ndarray = field(init=False, repr=False, compare=False)
    c: np.ndarray = field(init=False, repr=False, compare=False)
    e: np.ndarray = field(init=False, repr=False, compare=False)
    _memo: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.graph.n
        rows, cs, es = [], [], []
        for k in self.cliques:
            row = np.zeros(n, dtype=np.int64)
            row[list(k)] = 1
            rows.append(row)
            cs.append(1)
            es.append(1)
        for h in self.holes:
            row = np.zeros(n, dtype=np.int64)
            row[list(h)] = 2
            rows.append(row)
            cs.append(len(h) - 1)
            es.append(2)
        object.__setattr__(self, "A", np.array(rows, dtype=np.int64).reshape(len(rows), n))
        object.__setattr__(self, "c", np.array(cs, dtype=np.int64))
        object.__setattr__(self, "e", np.array(es, dtype=np.int64))
        object.__setattr__(self, "_memo", {})

    @classmethod
    def of(cls, g: Graph, variant: Variant | str) -> VariantSystem:
        variant = Variant.parse(variant)
        cliques, holes = constraint_families(g, variant)
        return cls(g, variant, cliques, holes)

    @property
    def n(self) -> int:
        return self.graph.n

    def closed_form_a_invariant(self) -> int:
        w = clique_number(self.graph)
        return -min(w, 3) - 1 if self.variant is Variant.TSTAB else -w - 1

    def components(self) -> list[tuple[tuple[int, ...], VariantSystem]]:
        """Per-component systems; families never cross components."""
        if "components" not in self._memo:
            self._memo["components"] = [
                (comp, VariantSystem.of(self.graph.induced_subgraph(comp), self.variant))
                for comp in connected_components(self.graph)
            ]
        return self._memo["components"]


# ---------------------------------------------------------------- membership


def in_U(sys: VariantSystem, n: int, monomial: LatticeFunction) -> bool:
    vals = np.asarray(monomial.values, dtype=np.int64)
    if vals.size and vals.min() < n:
        return False
    return bool(np.all(sys.A @ vals <= sys.c * monomial.deg - sys.e * n))


def in_U_array(sys: VariantSystem, n: int, values: np.ndarray, degs: np.ndarray) -> np.ndarray:
    """Vectorized :func:`in_U` over the rows of ``values``."""
    ok = np.all(values >= n, axis=1)
    ok &= np.all(values @ sys.A.T <= np.outer(degs, sys.c) - sys.e * n, axis=1)
    return ok


# ---------------------------------------------------------------- slices


def _vertex_order(sys: VariantSystem) -> list[int]:
    # breadth-first within components keeps few rows half-assigned
    order: list[int] = []
    adj = sys.graph.adjacency
    for comp in connected_components(sys.graph):
        seen = {comp[0]}
        queue = [comp[0]]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _initial_slack(sys: VariantSystem, n: int, N: int) -> np.ndarray:
    return sys.c * N - sys.e * n - n * sys.A.sum(axis=1)


def _expand(slack: np.ndarray, col: np.ndarray, rows: np.ndarray):
    maxv = np.min(slack[:, rows] // col[rows], axis=1)
    counts = maxv + 1
    idx = np.repeat(np.arange(len(slack)), counts)
    starts = np.cumsum(counts) - counts
    vals = np.arange(int(counts.sum()), dtype=np.int64) - np.repeat(starts, counts)
    return idx, vals


def slice_array(sys: VariantSystem, n: int, N: int) -> np.ndarray:
    """Values of all members of ``U(n)`` in degree ``N``, lexicographically sorted."""
    s = _initial_slack(sys, n, N)
    if np.any(s < 0):
        return np.zeros((0, sys.n), dtype=np.int64)
    order = _vertex_order(sys)
    deltas = np.zeros((1, 0), dtype=np.int64)
    slack = s[None, :].copy()
    for z in order:
        col = sys.A[:, z]
        rows = np.nonzero(col)[0]
        idx, vals = _expand(slack, col, rows)
        deltas = np.column_stack([deltas[idx], vals])
        slack = slack[idx] - np.outer(vals, col)
    values = np.empty_like(deltas)
    values[:, order] = deltas
    values += n
    return values[np.lexsort(values.T[::-1])] if len(values) > 1 else values


def count_slice(sys: VariantSystem, n: int, N: int) -> int:
    """Size of the degree-``N`` slice of ``U(n)`` without listing it.

    Same coordinate sweep as :func:`slice_array`, but partial assignments are
    merged whenever they leave identical slack on the rows still open.
    """
    s = _initial_slack(sys, n, N)
    if np.any(s < 0):
        return 0
    order = _vertex_order(sys)
    A = sys.A
    remaining = np.count_nonzero(A, axis=1)
    slack = s[None, :].copy()
    weight = np.ones(1, dtype=np.int64)
    for step, z in enumerate(order):
        col = A[:, z]
        rows = np.nonzero(col)[0]
        if step == len(order) - 1:
            maxv = np.min(slack[:, rows] // col[rows], axis=1)
            return int(np.sum(weight * (maxv + 1)))
        idx, vals = _expand(slack, col, rows)
        slack = slack[idx] - np.outer(vals, col)
        weight = weight[idx]
        remaining = remaining - (col != 0)
        still_open = np.nonzero(remaining)[0]
        A, remaining = A[still_open], remaining[still_open]
        slack, inverse = np.unique(slack[:, still_open], axis=0, return_inverse=True)
        merged = np.zeros(len(slack), dtype=np.int64)
        np.add.at(merged, inverse.ravel(), weight)
        weight = merged
    return int(weight.sum())


def enumerate_slice(sys: VariantSystem, n: int, N: int) -> list[LatticeFunction]:
    return [LatticeFunction(tuple(int(x) for x in row), N) for row in slice_array(sys, n, N)]


def hilbert_function(sys: VariantSystem, N_max: int) -> list[int]:
    """Numbers of monomials of the ring in degrees ``0..N_max``."""
    if N_max < 0:
        raise ValueError("N_max must be nonnegative")
    return [count_slice(sys, 0, N) for N in range(N_max + 1)]


def omega_sizes(sys: VariantSystem, N_max: int) -> list[int]:
    """Dimensions of the canonical ideal in degrees ``0..N_max``."""
    return [count_slice(sys, 1, N) for N in range(N_max + 1)]


def a_invariant(sys: VariantSystem) -> int:
    """Minus the least degree of the canonical ideal, found by upward search.

    The search result is checked against ``-omega - 1`` (``-min(omega, 3) - 1``
    for TSTAB); a mismatch is an internal error.
    """
    expected = sys.closed_form_a_invariant()
    for N in range(1, -expected + sys.n + 2):
        if count_slice(sys, 1, N) > 0:
            if -N != expected:
                raise InternalInconsistencyError(
                    f"a-invariant search gave {-N}, closed form gives {expected}"
                )
            return -N
    raise InternalInconsistencyError(f"no canonical monomial found up to degree {-expected + sys.n + 1}")


# ------------------------------------------------------------ generators


def _row_keys(values: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(values.shape[1], dtype=np.int64)
    return values @ weights


class _SplitProfile:
    """Degree-by-degree decomposition data of one connected component.

    ``masks[N][i]`` has bit ``k`` set exactly when point ``i`` of degree ``N``
    is a sum of two ring monomials of degrees ``k`` and ``N - k``. It is built
    from the generators found so far: a point splits at ``k`` iff some
    generator ``g`` of degree ``j`` leaves ``point - g`` in the ring, with
    ``k = j`` or ``k - j`` a split degree of ``point - g``.
    """

    def __init__(self, sys: VariantSystem, N_max: int) -> None:
        self.sys = sys
        self.base = N_max + 1
        if self.base ** max(sys.n, 1) >= 2**62:
            raise UndecidedError("component too large for generator detection at this degree")
        zero = np.zeros((1, sys.n), dtype=np.int64)
        self.points: list[np.ndarray] = [zero]
        self.masks: list[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        # lookup tables: sorted keys and the masks in that order
        self.sorted_keys: list[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        self.sorted_masks: list[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        self.gens: list[np.ndarray] = [zero[:0]]

    def advance(self) -> None:
        N = len(self.points)
        pts = slice_array(self.sys, 0, N)
        masks = np.zeros(len(pts), dtype=np.int64)
        for j in range(1, N):
            lower_keys, lower_masks = self.sorted_keys[N - j], self.sorted_masks[N - j]
            for g in self.gens[j]:
                diff = pts - g
                ok = np.nonzero(np.all(diff >= 0, axis=1))[0]
                if not len(ok):
                    continue
                dk = _row_keys(diff[ok], self.base)
                pos = np.minimum(np.searchsorted(lower_keys, dk), len(lower_keys) - 1)
                hit = lower_keys[pos] == dk
                masks[ok[hit]] |= (1 << j) | (lower_masks[pos[hit]] << j)
        keys = _row_keys(pts, self.base)
        order = np.argsort(keys, kind="stable")
        self.points.append(pts)
        self.masks.append(masks)
        self.sorted_keys.append(keys[order])
        self.sorted_masks.append(masks[order])
        self.gens.append(pts[masks == 0])

    def grouped(self, N: int) -> dict[int, np.ndarray]:
        """Points of degree ``N`` grouped by split mask, lexicographic within a group."""
        pts, masks = self.points[N], self.masks[N]
        return {int(m): pts[masks == m] for m in np.unique(masks)}


def iter_generators(sys: VariantSystem, N_max: int) -> Iterator[tuple[int, list[LatticeFunction]]]:
    """Yield ``(N, generators of degree N)`` for ``N = 1..N_max``.

    The ring of a disjoint union is the Segre product of the component rings,
    so a monomial splits at degree ``k`` iff every component part does; the
    split masks of the components are combined with bitwise AND and only the
    combinations with an empty AND are expanded into explicit generators.
    """
    if N_max > MAX_GENERATOR_DEGREE:
        raise UndecidedError(f"generator search is limited to degree {MAX_GENERATOR_DEGREE}")
    comps = sys.components()
    profiles = [_SplitProfile(csys, N_max) for _, csys in comps]
    for N in range(1, N_max + 1):
        for p in profiles:
            p.advance()
        groups = [p.grouped(N) for p in profiles]
        out: list[LatticeFunction] = []
        for combo in product(*(sorted(gr) for gr in groups)):
            acc = -1
            for m in combo:
                acc &= m
            if acc != 0:
                continue
            blocks = [groups[i][m] for i, m in enumerate(combo)]
            for parts in product(*blocks):
                vals = [0] * sys.n
                for (comp, _), part in zip(comps, parts):
                    for v, x in zip(comp, part):
                        vals[v] = int(x)
                out.append(LatticeFunction(tuple(vals), N))
        out.sort()
        yield N, out


def semigroup_generators(sys: VariantSystem, N_max: int | None = None) -> list[LatticeFunction]:
    """Monomials of degree ``1..N_max`` that are not a product of two of positive degree.

    ``N_max`` defaults to the number of vertices.
    """
    N_max = sys.n if N_max is None else N_max
    if N_max < 1:
        raise ValueError("N_max must be at least 1")
    return [g for _, gens in iter_generators(sys, N_max) for g in gens]


# ---------------------------------------------------------- double checks


def canonical_slice_cross_check(g: Graph, variant: Variant | str, N: int) -> bool:
    """Canonical ideal in degree ``N`` two ways: ``U(1)`` versus strict interior points."""
    sys = VariantSystem.of(g, variant)
    from_u = {tuple(int(x) for x in r) for r in slice_array(sys, 1, N)}
    strict = lattice_points(build_polytope(g, variant), N, strict=True)
    from_poly = {tuple(int(x) for x in r) for r in strict}
    return from_u == from_poly


@dataclass
class SegreReport:
    variant: Variant
    N_max: int
    a: tuple[int, int, int]
    hilbert: list[tuple[int, int, int]]
    omega: list[tuple[int, int, int]]
    nonvanishing: list[int]
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "N_max": self.N_max,
            "a": {"union": self.a[0], "first": self.a[1], "second": self.a[2]},
            "hilbert": [list(t) for t in self.hilbert],
            "omega": [list(t) for t in self.omega],
            "nonvanishing": self.nonvanishing,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def segre_checks(g1: Graph, g2: Graph, variant: Variant | str, N_max: int) -> SegreReport:
    """Segre-product identities on ``g1 + g2`` (disjoint union) up to degree ``N_max``."""
    variant = Variant.parse(variant)
    g = disjoint_union(g1, g2)
    s, s1, s2 = (VariantSystem.of(x, variant) for x in (g, g1, g2))
    mism: list[str] = []
    h, h1, h2 = (hilbert_function(x, N_max) for x in (s, s1, s2))
    w, w1, w2 = (omega_sizes(x, N_max) for x in (s, s1, s2))
    hil = list(zip(h, h1, h2))
    om = list(zip(w, w1, w2))
    for N, (x, y, z) in enumerate(hil):
        if x != y * z:
            mism.append(f"H({N}) = {x} but factors give {y} * {z}")
    for N, (x, y, z) in enumerate(om):
        if x != y * z:
            mism.append(f"|omega_{N}| = {x} but factors give {y} * {z}")
    a, a1, a2 = (a_invariant(x) for x in (s, s1, s2))
    if a != min(a1, a2):
        mism.append(f"a = {a} but min of factors is {min(a1, a2)}")
    nonvanishing = [N for N in range(-a, N_max + 1)]
    for N in nonvanishing:
        if w[N] == 0:
            mism.append(f"canonical ideal vanishes in degree {N} >= -a = {-a}")
    return SegreReport(variant, N_max, (a, a1, a2), hil, om, nonvanishing, mism)
