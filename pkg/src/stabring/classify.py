"""Combinatorial Gorenstein, GPS and nearly-Gorenstein criteria.

Nothing here touches lattice points: every verdict is read off cliques, odd
holes and the component spectrum. The :mod:`stabring.oracle` module checks
these verdicts independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .exceptions import InternalInconsistencyError, UndecidedError
from .graph import (
    ComponentSpectrum,
    Graph,
    clique_number,
    components,
    is_perfect,
    k_maximal_elements,
    maximal_cliques,
    odd_holes,
    unequal_clique_pair,
)
from .polytope import VERTEX_ENUM_GUARD, Variant, build_polytope, enumerate_vertices

SCHEMA_VERSION = 1


class HPerfect(str, Enum):
    VERIFIED = "verified"
    ASSUMED = "assumed"
    REFUTED = "refuted"
    UNDECIDED = "undecided"

    @property
    def usable(self) -> bool:
        return self in (HPerfect.VERIFIED, HPerfect.ASSUMED)


@dataclass(frozen=True)
class HPerfectInfo:
    status: HPerfect
    fractional_vertex: tuple | None = None
    component: tuple[int, ...] | None = None
    override: bool = False

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.fractional_vertex is not None:
            out["fractionalVertex"] = [str(x) for x in self.fractional_vertex]
            out["component"] = list(self.component or ())
        if self.override:
            out["override"] = True
        return out


def h_perfect_status(g: Graph, assume: bool = False, bound: int = VERTEX_ENUM_GUARD) -> HPerfectInfo:
    """Decide h-perfectness component by component.

    ``assume`` turns an undecided answer into ``assumed``. A refuted answer
    stays refuted; ``override`` is recorded so callers may still evaluate the
    criteria on the HSTAB ring.
    """
    from .graph import connected_components

    undecided = False
    for comp in connected_components(g):
        sub = g.induced_subgraph(comp)
        try:
            verts = enumerate_vertices(build_polytope(sub, Variant.HSTAB), bound)
        except UndecidedError:
            undecided = True
            continue
        frac = verts.fractional()
        if frac:
            return HPerfectInfo(HPerfect.REFUTED, frac[0], comp, override=assume)
    if undecided:
        return HPerfectInfo(HPerfect.ASSUMED if assume else HPerfect.UNDECIDED)
    return HPerfectInfo(HPerfect.VERIFIED)


# ------------------------------------------------------------ Gorenstein


@dataclass(frozen=True)
class GorensteinVerdict:
    value: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"value": self.value, "witness": self.witness}


def _hstab_gorenstein(g: Graph) -> GorensteinVerdict:
    pair = unequal_clique_pair(g)
    if pair is not None:
        return GorensteinVerdict(False, {"reason": "not pure", "cliques": [list(k) for k in pair]})
    w = clique_number(g)
    if w == 2:
        long_holes = [h for h in odd_holes(g) if len(h) >= 7]
        if long_holes:
            return GorensteinVerdict(
                False, {"reason": "clique number 2 with an odd hole of length >= 7", "hole": list(long_holes[0])}
            )
    elif w >= 3:
        holes = odd_holes(g)
        if holes:
            return GorensteinVerdict(
                False, {"reason": "clique number >= 3 with an odd hole", "hole": list(holes[0])}
            )
    return GorensteinVerdict(True)


def _qstab_gorenstein(g: Graph) -> GorensteinVerdict:
    pair = unequal_clique_pair(g)
    if pair is not None:
        return GorensteinVerdict(False, {"reason": "not pure", "cliques": [list(k) for k in pair]})
    return GorensteinVerdict(True)


def _tstab_gorenstein(g: Graph) -> GorensteinVerdict:
    if not g.edges:
        return GorensteinVerdict(True)
    holes = odd_holes(g)
    # branch: no isolated vertex, no triangle, no odd hole of length >= 7
    isolated = [v for v in range(g.n) if not g.adjacency[v]]
    triangles = [k for k in k_maximal_elements(g) if len(k) == 3]
    long_holes = [h for h in holes if len(h) >= 7]
    if isolated:
        fail_b = {"isolatedVertex": isolated[0]}
    elif triangles:
        fail_b = {"triangle": list(triangles[0])}
    elif long_holes:
        fail_b = {"hole": list(long_holes[0])}
    else:
        return GorensteinVerdict(True)
    # branch: every maximal clique has at least 3 vertices, no odd hole
    small = [k for k in maximal_cliques(g) if len(k) < 3]
    if small:
        fail_c = {"smallClique": list(small[0])}
    elif holes:
        fail_c = {"hole": list(holes[0])}
    else:
        return GorensteinVerdict(True)
    return GorensteinVerdict(False, {"reason": "edges present and both remaining branches fail", "b": fail_b, "c": fail_c})


def gorenstein(g: Graph, variant: Variant | str) -> GorensteinVerdict:
    variant = Variant.parse(variant)
    if variant is Variant.HSTAB:
        return _hstab_gorenstein(g)
    if variant is Variant.QSTAB:
        return _qstab_gorenstein(g)
    return _tstab_gorenstein(g)


# ----------------------------------------------------------------- GPS


@dataclass(frozen=True)
class GpsVerdict:
    """``value`` is True, False, ``"necessary-conditions-only"`` or ``"withheld"``."""

    value: bool | str
    per_class: dict[int, bool]
    note: str = ""

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "perClass": {str(d): v for d, v in self.per_class.items()},
            "note": self.note,
        }


def class_gorenstein(g: Graph, variant: Variant, spectrum: ComponentSpectrum | None = None) -> dict[int, bool]:
    """Gorenstein verdict for the union of components of each clique-number class.

    TSTAB groups by the largest clique of at most three vertices instead.
    """
    spectrum = spectrum or components(g)
    verts = spectrum.t_class_vertices if variant is Variant.TSTAB else spectrum.class_vertices
    return {d: gorenstein(g.induced_subgraph(vs), variant).value for d, vs in verts.items()}


def gps(g: Graph, variant: Variant | str, h_status: HPerfect | HPerfectInfo) -> GpsVerdict:
    variant = Variant.parse(variant)
    status = h_status.status if isinstance(h_status, HPerfectInfo) else HPerfect(h_status)
    override = isinstance(h_status, HPerfectInfo) and h_status.override
    per = class_gorenstein(g, variant)
    if variant is Variant.HSTAB:
        if status.usable:
            return GpsVerdict(all(per.values()), per, "iff criterion for h-perfect graphs")
        if override:
            if not all(per.values()):
                return GpsVerdict(False, per, "necessary condition fails on the HSTAB ring (h-perfectness overridden)")
            return GpsVerdict("necessary-conditions-only", per, "h-perfectness overridden; only necessary conditions hold")
        return GpsVerdict("withheld", per, f"h-perfectness is {status.value}; the criterion needs an h-perfect graph")
    if not all(per.values()):
        return GpsVerdict(False, per, "a necessary condition fails")
    return GpsVerdict("necessary-conditions-only", per, "only necessary conditions are known for this variant")


# ------------------------------------------------------- nearly Gorenstein


@dataclass(frozen=True)
class NearlyVerdict:
    """``value`` is ``gorenstein``, ``nearly-not-gorenstein``, ``not-nearly`` or ``withheld``."""

    value: str
    u: int
    degrees: tuple[int, ...]
    per_class: dict[int, bool]
    componentwise: bool | None = None
    note: str = ""

    @property
    def nearly(self) -> bool | None:
        if self.value == "withheld":
            return None
        return self.value != "not-nearly"

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "u": self.u,
            "d": list(self.degrees),
            "perClass": {str(d): v for d, v in self.per_class.items()},
            "componentwise": self.componentwise,
            "note": self.note,
        }


def nearly_gorenstein(g: Graph, h_status: HPerfect | HPerfectInfo) -> NearlyVerdict:
    """Nearly-Gorenstein verdict for the stable set ring of an h-perfect graph.

    Also evaluates the componentwise form (every component Gorenstein and
    clique numbers at most one apart) and insists that both forms agree.
    """
    status = h_status.status if isinstance(h_status, HPerfectInfo) else HPerfect(h_status)
    override = isinstance(h_status, HPerfectInfo) and h_status.override
    spectrum = components(g)
    per = class_gorenstein(g, Variant.HSTAB, spectrum)
    if not (status.usable or override):
        return NearlyVerdict("withheld", spectrum.u, spectrum.degrees, per, note=f"h-perfectness is {status.value}")
    if gorenstein(g, Variant.HSTAB).value:
        value = "gorenstein"
    elif spectrum.u == 2 and spectrum.degrees[1] - spectrum.degrees[0] == 1 and all(per.values()):
        value = "nearly-not-gorenstein"
    else:
        value = "not-nearly"
    comp_ok = all(
        gorenstein(g.induced_subgraph(c), Variant.HSTAB).value for c in spectrum.components
    ) and max(spectrum.clique_numbers) - min(spectrum.clique_numbers) <= 1
    if comp_ok != (value != "not-nearly"):
        raise InternalInconsistencyError(
            f"class-union form gives {value} but componentwise form gives {comp_ok}"
        )
    note = "" if status.usable else "h-perfectness overridden"
    return NearlyVerdict(value, spectrum.u, spectrum.degrees, per, comp_ok, note)


# -------------------------------------------------------------- report


@dataclass
class ClassificationReport:
    variant: Variant
    gorenstein: GorensteinVerdict
    gps: GpsVerdict
    nearly: NearlyVerdict | None
    spectrum: ComponentSpectrum
    h_perfect: HPerfectInfo
    annotations: dict = field(default_factory=dict)

    @property
    def withheld(self) -> bool:
        return self.gps.value == "withheld" or (self.nearly is not None and self.nearly.value == "withheld")

    def to_json(self) -> dict:
        nearly = (
            self.nearly.to_json()
            if self.nearly is not None
            else {"value": None, "note": "classified only for the stable set ring (HSTAB)"}
        )
        return {
            "schemaVersion": SCHEMA_VERSION,
            "variant": self.variant.value,
            "gorenstein": self.gorenstein.to_json(),
            "gps": self.gps.to_json(),
            "nearly": nearly,
            "spectrum": self.spectrum.to_json(),
            "hPerfect": self.h_perfect.status.value,
            "hPerfectDetail": self.h_perfect.to_json(),
            "annotations": self.annotations,
        }


def _annotations(g: Graph, h: HPerfectInfo) -> dict:
    try:
        perfect: bool | None = is_perfect(g)
    except UndecidedError:
        perfect = None
    return {"perfect": perfect, "hPerfect": h.status.value}


def classify(g: Graph, variant: Variant | str, h_status: HPerfectInfo | None = None) -> ClassificationReport:
    variant = Variant.parse(variant)
    h = h_status or h_perfect_status(g)
    nearly = nearly_gorenstein(g, h) if variant is Variant.HSTAB else None
    return ClassificationReport(
        variant,
        gorenstein(g, variant),
        gps(g, variant, h),
        nearly,
        components(g),
        h,
        _annotations(g, h),
    )
