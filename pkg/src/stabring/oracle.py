"""Brute-force verification by trace-ideal membership.

A monomial lies in the trace of the canonical module exactly when it splits
as ``canon + inverse`` with ``canon`` in ``U(1)`` and ``inverse`` in
``U(-1)``. Vertex bounds force ``1 <= canon(z) <= value(z) + 1``, so the
search over vertex values is finite. For a fixed vertex part the admissible
degrees of ``canon`` form an interval computed in closed form from the rows,
so the degree never needs to be searched.

Rows never mix connected components, and only the degree is shared. Each
component therefore contributes a union of intervals for the degree of
``canon``, and the monomial is a member iff these unions have a common point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classify import HPerfectInfo, classify, h_perfect_status
from .exceptions import InternalInconsistencyError, NoWitnessError
from .graph import Graph, connected_components, k_maximal_elements, maximal_cliques, odd_holes, unequal_clique_pair
from .lattice import (
    LatticeFunction,
    VariantSystem,
    a_invariant,
    canonical_slice_cross_check,
    in_U,
    iter_generators,
    slice_array,
)
from .polytope import Variant

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TraceQuery:
    monomial: LatticeFunction
    member: bool
    canon: LatticeFunction | None = None
    inverse: LatticeFunction | None = None

    def to_json(self) -> dict:
        out: dict = {"monomial": self.monomial.to_json(), "member": self.member}
        if self.member:
            out["certificate"] = {"canon": self.canon.to_json(), "inverse": self.inverse.to_json()}
        return out


def _ceil_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return -((-a) // b)


def _component_table(csys: VariantSystem, local: tuple[int, ...]):
    """All vertex parts ``canon`` for one component, lexicographic, with degree bounds.

    Returns ``(canon_parts, lo, inv_lo)`` where ``canon``'s degree must be at least ``lo``
    and ``inverse``'s degree at least ``inv_lo``.
    """
    key = ("trace", local)
    memo = csys._memo
    if key in memo:
        return memo[key]
    ranges = [np.arange(1, m + 2, dtype=np.int64) for m in local]
    if any(r.size == 0 for r in ranges):
        canon_parts = np.zeros((0, len(local)), dtype=np.int64)
    else:
        grids = np.meshgrid(*ranges, indexing="ij")
        canon_parts = np.stack([gr.ravel() for gr in grids], axis=1)
    local_arr = np.asarray(local, dtype=np.int64)
    inverse_parts = local_arr - canon_parts
    A, c, e = csys.A, csys.c, csys.e
    lo = _ceil_div(canon_parts @ A.T + e, c).max(axis=1) if len(canon_parts) else np.zeros(0, dtype=np.int64)
    inv_lo = _ceil_div(inverse_parts @ A.T - e, c).max(axis=1) if len(canon_parts) else np.zeros(0, dtype=np.int64)
    memo[key] = (canon_parts, lo, inv_lo)
    return memo[key]


def trace_member(sys: VariantSystem, monomial: LatticeFunction) -> TraceQuery:
    """Decide trace membership; the certificate is the lexicographically first ``canon``."""
    vals = monomial.values
    tables = []
    for comp, csys in sys.components():
        local = tuple(vals[v] for v in comp)
        if min(local) < 0:
            # canon >= 1 and inverse >= -1 force monomial >= 0
            return TraceQuery(monomial, False)
        tables.append((comp, _component_table(csys, local)))
    # the smallest common degree is the lower end of some component interval
    candidates = sorted({int(x) for _, (_, lo, _) in tables for x in lo})
    for a in candidates:
        b = monomial.deg - a
        picks = []
        for comp, (canon_parts, lo, inv_lo) in tables:
            ok = np.flatnonzero((lo <= a) & (inv_lo <= b))
            if ok.size == 0:
                break
            picks.append((comp, canon_parts[ok[0]]))
        else:
            canon_vals = [0] * sys.n
            for comp, row in picks:
                for v, x in zip(comp, row):
                    canon_vals[v] = int(x)
            canon = LatticeFunction(tuple(canon_vals), a)
            inverse = monomial - canon
            if not (in_U(sys, 1, canon) and in_U(sys, -1, inverse)):
                raise InternalInconsistencyError(f"invalid trace certificate for {monomial}")
            return TraceQuery(monomial, True, canon, inverse)
    return TraceQuery(monomial, False)


def gorenstein_trace(sys: VariantSystem) -> bool:
    """Gorenstein iff the unit monomial lies in the trace."""
    return trace_member(sys, LatticeFunction.zero(sys.n)).member


# --------------------------------------------------------- nearly Gorenstein


@dataclass(frozen=True)
class NearlyCheck:
    """``status`` is ``confirmed``, ``refuted`` or ``inconclusive``."""

    status: str
    N_max: int
    witness: LatticeFunction | None = None
    generators_checked: int = 0
    top_generator_degree: int = 0
    saturated: bool = False
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "N_max": self.N_max,
            "witness": None if self.witness is None else self.witness.to_json(),
            "generatorsChecked": self.generators_checked,
            "topGeneratorDegree": self.top_generator_degree,
            "saturated": self.saturated,
            "reason": self.reason,
        }


def verify_nearly(sys: VariantSystem, N_max: int) -> NearlyCheck:
    """Check that every semigroup generator of degree at most ``N_max`` is in the trace.

    A Gorenstein ring is confirmed at once. Otherwise ``confirmed`` also needs
    the generator search to have saturated: no generators in the two top
    degrees of the window.
    """
    if N_max < 1:
        raise ValueError("N_max must be at least 1")
    if gorenstein_trace(sys):
        return NearlyCheck("confirmed", N_max, saturated=True, reason="unit monomial is in the trace")
    checked = 0
    top = 0
    for N, gens in iter_generators(sys, N_max):
        if gens:
            top = N
        for gen in gens:
            checked += 1
            if not trace_member(sys, gen).member:
                return NearlyCheck("refuted", N_max, gen, checked, top, reason="generator outside the trace")
    saturated = top <= N_max - 2
    if saturated:
        return NearlyCheck("confirmed", N_max, None, checked, top, True, "all generators are in the trace")
    return NearlyCheck(
        "inconclusive", N_max, None, checked, top, False, f"generators still appear in degree {top}"
    )


# ----------------------------------------------------------------- witnesses


def _indicator(n: int, support, value: int, deg: int) -> LatticeFunction:
    vals = [0] * n
    for v in support:
        vals[v] = value
    return LatticeFunction(tuple(vals), deg)


def witness_non_gps(g: Graph, variant: Variant | str, n: int) -> LatticeFunction:
    """Degree-``n`` ring monomial outside the trace, showing the ring is not GPS.

    First form: a component whose maximal cliques (maximal elements of the
    family of cliques with at most three vertices, for TSTAB) differ in size.
    Take two of different sizes that meet, and put ``n`` on a shared vertex.
    Second form (HSTAB and TSTAB): a pure component of clique size ``m``
    with an odd hole of length ``2l + 1`` where ``l (m - 1) > 2``. Put ``n`` on
    every second vertex of the hole.
    """
    variant = Variant.parse(variant)
    if n < 1:
        raise ValueError("n must be positive")
    fam = k_maximal_elements if variant is Variant.TSTAB else maximal_cliques
    comps = connected_components(g)
    for comp in comps:
        sub = g.induced_subgraph(comp)
        pair = unequal_clique_pair(sub, fam(sub), intersecting=True)
        if pair is not None:
            p = comp[min(set(pair[0]) & set(pair[1]))]
            return _indicator(g.n, [p], n, n)
    if variant is Variant.QSTAB:
        raise NoWitnessError("every component is pure; no witness for QSTAB")
    for comp in comps:
        sub = g.induced_subgraph(comp)
        m = max(len(k) for k in fam(sub))
        for hole in odd_holes(sub):
            half = (len(hole) - 1) // 2
            if half * (m - 1) > 2:
                return _indicator(g.n, [comp[hole[i]] for i in range(1, 2 * half, 2)], n, n)
    raise NoWitnessError("no non-pure component and no offending odd hole")


# ---------------------------------------------------------------------- GPS


@dataclass(frozen=True)
class GpsCheck:
    """``status`` is ``consistent``, ``refuted`` or ``inconclusive``."""

    status: str
    window: tuple[int, int]
    sampled: dict[int, int]
    non_members: dict[int, int]
    witness: list[LatticeFunction] = field(default_factory=list)
    agrees: bool | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "window": list(self.window),
            "sampled": {str(k): v for k, v in self.sampled.items()},
            "nonMembers": {str(k): v for k, v in self.non_members.items()},
            "witness": [w.to_json() for w in self.witness],
            "agrees": self.agrees,
        }


def verify_gps_bounded(
    sys: VariantSystem,
    window: tuple[int, int],
    claimed: bool | str | None = None,
    seed: int = 0,
    sample_limit: int = 2000,
) -> GpsCheck:
    """Bounded evidence on whether the trace contains every monomial of large degree.

    ``refuted`` means the witness family stays outside the trace throughout the
    window; ``consistent`` means every sampled monomial of the top degree is a
    member. Neither proves the property. ``agrees`` compares with ``claimed``
    when the claim is a boolean.
    """
    lo, hi = window
    if lo < 1 or hi < lo:
        raise ValueError(f"bad window {window}")
    rng = np.random.default_rng(seed)
    sampled: dict[int, int] = {}
    bad: dict[int, int] = {}
    for N in range(lo, hi + 1):
        pts = slice_array(sys, 0, N)
        if len(pts) > sample_limit:
            pts = pts[np.sort(rng.choice(len(pts), sample_limit, replace=False))]
        sampled[N] = len(pts)
        bad[N] = sum(not trace_member(sys, LatticeFunction.of(p, N)).member for p in pts)
    witness: list[LatticeFunction] = []
    try:
        fam = [witness_non_gps(sys.graph, sys.variant, k) for k in range(lo, hi + 1)]
    except NoWitnessError:
        fam = []
    if fam and not any(trace_member(sys, w).member for w in fam):
        status, witness = "refuted", fam
    elif bad[hi] == 0:
        status = "consistent"
    else:
        status = "inconclusive"
    agrees = None
    if isinstance(claimed, bool) and status != "inconclusive":
        agrees = claimed == (status == "consistent")
    return GpsCheck(status, (lo, hi), sampled, bad, witness, agrees)


# ---------------------------------------------------------------- harness


@dataclass
class Claim:
    name: str
    classifier: object
    oracle: object
    agree: bool | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "claim": self.name,
            "classifier": self.classifier,
            "oracle": self.oracle,
            "agree": self.agree,
            "detail": self.detail,
        }


@dataclass
class CrossCheckReport:
    variant: Variant
    h_perfect: HPerfectInfo
    claims: list[Claim]

    @property
    def disagreements(self) -> list[Claim]:
        return [c for c in self.claims if c.agree is False]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "variant": self.variant.value,
            "hPerfect": self.h_perfect.status.value,
            "claims": [c.to_json() for c in self.claims],
            "ok": self.ok,
        }


@dataclass(frozen=True)
class Budget:
    max_degree: int | None = None
    window: tuple[int, int] | None = None
    seed: int = 0
    canonical_vertex_limit: int = 7
    sample_limit: int = 2000


def cross_check(
    g: Graph,
    variant: Variant | str,
    budget: Budget | None = None,
    h_status: HPerfectInfo | None = None,
) -> CrossCheckReport:
    """Run the classifier and every applicable oracle; record agreement per claim."""
    variant = Variant.parse(variant)
    budget = budget or Budget()
    h = h_status or h_perfect_status(g)
    report = classify(g, variant, h)
    sys = VariantSystem.of(g, variant)
    claims: list[Claim] = []

    gor = gorenstein_trace(sys)
    claims.append(Claim("gorenstein", report.gorenstein.value, gor, gor == report.gorenstein.value))

    a = a_invariant(sys)
    closed = sys.closed_form_a_invariant()
    claims.append(Claim("a-invariant", closed, a, a == closed))

    if g.n <= budget.canonical_vertex_limit:
        top = -a + 3
        ok = all(canonical_slice_cross_check(g, variant, N) for N in range(0, top + 1))
        claims.append(Claim("canonical-module", "U(1) slices", "strict interior points", ok, {"N_max": top}))

    gap = _clique_gap(g, variant)
    if gap > 0:
        members = [
            str(LatticeFunction.of(p, N))
            for N in range(gap)
            for p in slice_array(sys, 0, N)
            if trace_member(sys, LatticeFunction.of(p, N)).member
        ]
        claims.append(Claim("trace-bound", f"no member below degree {gap}", members, not members))

    N_max = budget.max_degree or max(g.n, 1)
    if report.nearly is not None and report.nearly.nearly is not None:
        chk = verify_nearly(sys, N_max)
        agree = None if chk.status == "inconclusive" else (chk.status == "confirmed") == report.nearly.nearly
        claims.append(Claim("nearly", report.nearly.value, chk.status, agree, chk.to_json()))

    window = budget.window or (max(gap, 1), max(gap, 1) + 2)
    gchk = verify_gps_bounded(sys, window, report.gps.value, budget.seed, budget.sample_limit)
    claims.append(Claim("gps", report.gps.value, gchk.status, gchk.agrees, gchk.to_json()))

    try:
        fam = [witness_non_gps(g, variant, k) for k in range(1, 5)]
    except NoWitnessError:
        fam = []
    if fam:
        outside = [not trace_member(sys, w).member for w in fam]
        claims.append(
            Claim(
                "witness-family",
                "outside the trace for n = 1..4",
                outside,
                all(outside),
                {"witness": [w.to_json() for w in fam]},
            )
        )
    return CrossCheckReport(variant, h, claims)


def _clique_gap(g: Graph, variant: Variant) -> int:
    fam = k_maximal_elements(g) if variant is Variant.TSTAB else maximal_cliques(g)
    sizes = [len(k) for k in fam]
    return max(sizes) - min(sizes)
