"""Exact H-representations of the stable-set relaxations HSTAB, QSTAB and TSTAB.

All arithmetic is exact: coefficients are :class:`fractions.Fraction` and the
vertex enumeration works on integer-scaled rows with Python integers. Lattice
point counts use numpy integer arrays on the integer-scaled rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .exceptions import UndecidedError
from .graph import (
    Clique,
    Graph,
    Hole,
    connected_components,
    k_maximal_elements,
    maximal_cliques,
    odd_holes,
)

VERTEX_ENUM_GUARD = 12
_BOX_CHUNK = 1 << 20


class Variant(str, Enum):
    HSTAB = "HSTAB"
    QSTAB = "QSTAB"
    TSTAB = "TSTAB"

    @classmethod
    def parse(cls, name: str | Variant) -> Variant:
        if isinstance(name, Variant):
            return name
        try:
            return cls(name.upper())
        except ValueError:
            raise ValueError(f"unknown variant {name!r}; expected hstab, qstab or tstab") from None


def constraint_families(g: Graph, variant: Variant) -> tuple[tuple[Clique, ...], tuple[Hole, ...]]:
    """Clique-type and hole-type families cutting out the variant.

    HSTAB and QSTAB use the maximal cliques, TSTAB the maximal cliques with at
    most three vertices; HSTAB and TSTAB add every odd hole.
    """
    variant = Variant.parse(variant)
    cliques = k_maximal_elements(g) if variant is Variant.TSTAB else maximal_cliques(g)
    holes = () if variant is Variant.QSTAB else odd_holes(g)
    return cliques, holes


@dataclass(frozen=True)
class Inequality:
    """``coeffs . x <= bound`` with a provenance tag."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    tag: str

    def lhs(self, x: Sequence) -> Fraction:
        return sum((a * Fraction(v) for a, v in zip(self.coeffs, x) if a), Fraction(0))

    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Same inequality with coprime integer coefficients."""
        den = math.lcm(*(c.denominator for c in self.coeffs), self.bound.denominator)
        row = [int(c * den) for c in self.coeffs] + [int(self.bound * den)]
        g = math.gcd(*row) or 1
        return tuple(r // g for r in row[:-1]), row[-1] // g


@dataclass(frozen=True)
class RationalPolytope:
    n: int
    inequalities: tuple[Inequality, ...]

    def contains(self, x: Sequence, dilation=1) -> bool:
        return all(ineq.lhs(x) <= ineq.bound * dilation for ineq in self.inequalities)

    def integer_system(self) -> tuple[np.ndarray, np.ndarray]:
        rows = [ineq.scaled() for ineq in self.inequalities]
        a = np.array([r for r, _ in rows], dtype=np.int64).reshape(len(rows), self.n)
        b = np.array([c for _, c in rows], dtype=np.int64)
        return a, b

    def to_text(self) -> str:
        return "".join(
            " ".join(_fmt(c) for c in ineq.coeffs) + f" <= {_fmt(ineq.bound)}\n"
            for ineq in self.inequalities
        )

    @classmethod
    def from_text(cls, text: str) -> RationalPolytope:
        ineqs = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            lhs, _, rhs = line.replace("≤", "<=").partition("<=")
            coeffs = tuple(Fraction(t) for t in lhs.split())
            ineqs.append(Inequality(coeffs, Fraction(rhs.strip()), "imported"))
        if not ineqs:
            raise ValueError("no inequalities found")
        n = len(ineqs[0].coeffs)
        if any(len(i.coeffs) != n for i in ineqs):
            raise ValueError("inequalities have different lengths")
        return cls(n, tuple(ineqs))


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _indicator(n: int, support: Sequence[int], value=1) -> tuple[Fraction, ...]:
    s = set(support)
    return tuple(Fraction(value) if v in s else Fraction(0) for v in range(n))


def build_polytope(g: Graph, variant: Variant | str) -> RationalPolytope:
    variant = Variant.parse(variant)
    cliques, holes = constraint_families(g, variant)
    ineqs = [Inequality(_indicator(g.n, [v], -1), Fraction(0), "nonnegativity") for v in range(g.n)]
    if variant is Variant.TSTAB:
        ineqs += [Inequality(_indicator(g.n, [v]), Fraction(1), "upper-bound") for v in range(g.n)]
        for k in cliques:
            if len(k) > 1:
                tag = "edge" if len(k) == 2 else "k-element"
                ineqs.append(Inequality(_indicator(g.n, k), Fraction(1), tag))
    else:
        ineqs += [Inequality(_indicator(g.n, k), Fraction(1), "clique") for k in cliques]
    ineqs += [Inequality(_indicator(g.n, c), Fraction(len(c) - 1, 2), "odd-hole") for c in holes]
    return RationalPolytope(g.n, tuple(ineqs))


def strict_interior(p: RationalPolytope, x: Sequence, dilation) -> bool:
    """Strict satisfaction of every inequality of the dilated polytope."""
    return all(ineq.lhs(x) < ineq.bound * dilation for ineq in p.inequalities)


# ------------------------------------------------------------- vertices


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[tuple[Fraction, ...], ...]
    integral: tuple[bool, ...]

    def fractional(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(v for v, ok in zip(self.vertices, self.integral) if not ok)

    def to_text(self) -> str:
        return "".join(" ".join(_fmt(c) for c in v) + "\n" for v in self.vertices)


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(a)
    m = [list(r) + [c] for r, c in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [u - f * v for u, v in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _certify(p: RationalPolytope, x: tuple[Fraction, ...]) -> bool:
    if not p.contains(x):
        return False
    active = [list(i.coeffs) for i in p.inequalities if i.lhs(x) == i.bound]
    return bool(active) and _rank(active) == p.n


def _vertices_by_bases(p: RationalPolytope) -> list[tuple[Fraction, ...]]:
    found = set()
    rows = [list(i.coeffs) for i in p.inequalities]
    bounds = [i.bound for i in p.inequalities]
    for basis in combinations(range(len(rows)), p.n):
        x = _solve([rows[i] for i in basis], [bounds[i] for i in basis])
        if x is not None and p.contains(x):
            found.add(tuple(x))
    return sorted(found)


def _vertices_by_double_description(p: RationalPolytope) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the homogenized cone ``{(x, t): a.x - b t <= 0, t >= 0}``.

    Starts from the orthant cut out by the nonnegativity rows and ``t >= 0``
    and adds the remaining rows one at a time, combining adjacent ray pairs.
    Adjacency is decided combinatorially from the zero sets.
    """
    n = p.n
    dim = n + 1
    system = [ineq.scaled() for ineq in p.inequalities]
    cone_rows = [tuple(a) + (-b,) for a, b in system]
    cone_rows.append((0,) * n + (-1,))
    orthant = {tuple(-int(k == v) for k in range(n)) + (0,) for v in range(n)}
    orthant.add((0,) * n + (-1,))
    initial = [i for i, r in enumerate(cone_rows) if r in orthant]
    initial = list(dict.fromkeys(initial))
    seen_rows = {cone_rows[i] for i in initial}
    if len(seen_rows) != dim:
        raise ValueError("polytope lacks explicit nonnegativity rows")
    initial = [next(i for i in initial if cone_rows[i] == r) for r in sorted(seen_rows)]
    # initial rays: unit vectors, tight on every initial row except their own
    rays: list[tuple[tuple[int, ...], int]] = []
    processed: list[int] = []
    for i in initial:
        r = cone_rows[i]
        k = next(j for j, c in enumerate(r) if c)
        ray = tuple(int(j == k) for j in range(dim))
        rays.append((ray, 0))
    for bit, i in enumerate(initial):
        processed.append(i)
        rays = [
            (ray, z | (1 << bit)) if _dot(cone_rows[i], ray) == 0 else (ray, z) for ray, z in rays
        ]
    for i in range(len(cone_rows)):
        if i in initial:
            continue
        row = cone_rows[i]
        bit = len(processed)
        processed.append(i)
        vals = [_dot(row, ray) for ray, _ in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        new: list[tuple[tuple[int, ...], int]] = [
            (ray, z | (1 << bit)) if vals[k] == 0 else (ray, z)
            for k, (ray, z) in enumerate(rays)
            if vals[k] <= 0
        ]
        for a in pos:
            for b in neg:
                common = rays[a][1] & rays[b][1]
                if common.bit_count() < dim - 2:
                    continue
                if any(
                    k != a and k != b and (z & common) == common for k, (_, z) in enumerate(rays)
                ):
                    continue
                ra, rb = rays[a][0], rays[b][0]
                sa, sb = vals[a], vals[b]
                combo = [sa * y - sb * x for x, y in zip(ra, rb)]
                g = math.gcd(*combo)
                new.append((tuple(c // g for c in combo), common | (1 << bit)))
        rays = new
    out = set()
    for ray, _ in rays:
        t = ray[-1]
        if t == 0:
            raise ValueError("polytope is unbounded")
        out.add(tuple(Fraction(c, t) for c in ray[:-1]))
    return sorted(out)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def enumerate_vertices(
    p: RationalPolytope, bound: int = VERTEX_ENUM_GUARD, method: str = "dd"
) -> VertexSet:
    """All vertices, exact and sorted, each certified by an active-row basis.

    ``method="dd"`` uses double description; ``method="bases"`` tries every
    square subsystem and is only practical for small systems.
    """
    if p.n > bound:
        raise UndecidedError(f"vertex enumeration in dimension {p.n} exceeds the guard {bound}")
    if method == "dd":
        verts = _vertices_by_double_description(p)
    elif method == "bases":
        verts = _vertices_by_bases(p)
    else:
        raise ValueError(f"unknown method {method!r}")
    for v in verts:
        if not _certify(p, v):
            raise AssertionError(f"point {v} is not a certified vertex")
    return VertexSet(tuple(verts), tuple(all(c.denominator == 1 for c in v) for v in verts))


def _component_vertex_sets(g: Graph, variant: Variant, bound: int) -> Iterator[VertexSet]:
    # the polytope of a disjoint union is the product of the component polytopes
    for comp in connected_components(g):
        yield enumerate_vertices(build_polytope(g.induced_subgraph(comp), variant), bound)


def is_h_perfect(g: Graph, bound: int = VERTEX_ENUM_GUARD) -> bool:
    """Whether every vertex of HSTAB is integral, decided component by component."""
    return all(not vs.fractional() for vs in _component_vertex_sets(g, Variant.HSTAB, bound))


def is_t_perfect(g: Graph, bound: int = VERTEX_ENUM_GUARD) -> bool:
    return all(not vs.fractional() for vs in _component_vertex_sets(g, Variant.TSTAB, bound))


# ------------------------------------------------------------ lattice points


def _box_chunks(n: int, lo: int, hi: int) -> Iterator[np.ndarray]:
    """All integer points of ``[lo, hi]^n`` in bounded-size chunks."""
    width = hi - lo + 1
    if width <= 0:
        return
    if n == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    tail = 0
    while tail < n and width ** (tail + 1) <= _BOX_CHUNK:
        tail += 1
    tail = max(tail, 1)
    head = n - tail
    grid = np.indices((width,) * tail).reshape(tail, -1).T + lo
    if head == 0:
        yield grid
        return
    for prefix in np.ndindex(*((width,) * head)):
        block = np.empty((grid.shape[0], n), dtype=np.int64)
        block[:, :head] = np.array(prefix) + lo
        block[:, head:] = grid
        yield block


def lattice_points(p: RationalPolytope, dilation: int, strict: bool = False) -> np.ndarray:
    """Integer points of ``dilation * p`` (or of its interior), by box scan.

    Relies on ``0 <= x <= 1`` being part of every STAB-family system, so the
    scan over ``[0, dilation]^n`` is exhaustive.
    """
    a, b = p.integer_system()
    rhs = b * dilation - (1 if strict else 0)
    lo, hi = (1, dilation - 1) if strict else (0, dilation)
    keep = [chunk[np.all(chunk @ a.T <= rhs, axis=1)] for chunk in _box_chunks(p.n, lo, hi)]
    if not keep:
        return np.zeros((0, p.n), dtype=np.int64)
    pts = np.concatenate(keep)
    return pts[np.lexsort(pts.T[::-1])] if len(pts) else pts


def count_lattice_points(p: RationalPolytope, dilation: int, strict: bool = False) -> int:
    a, b = p.integer_system()
    rhs = b * dilation - (1 if strict else 0)
    lo, hi = (1, dilation - 1) if strict else (0, dilation)
    return int(sum(np.count_nonzero(np.all(c @ a.T <= rhs, axis=1)) for c in _box_chunks(p.n, lo, hi)))
