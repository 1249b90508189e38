from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import small_graphs
from stabring.classify import (
    HPerfect,
    HPerfectInfo,
    class_gorenstein,
    classify,
    gorenstein,
    gps,
    h_perfect_status,
    nearly_gorenstein,
)
from stabring.corpus import acceptance_corpus, complete, cycle, path, two_triangles, wheel
from stabring.graph import Graph, disjoint_union
from stabring.polytope import Variant

VERIFIED = HPerfectInfo(HPerfect.VERIFIED)


def test_gorenstein_examples(named):
    assert gorenstein(named["C5"], "hstab").value
    c7 = gorenstein(named["C7"], "hstab")
    assert not c7.value and c7.witness["hole"] == [0, 1, 2, 3, 4, 5, 6]
    rem = gorenstein(named["Remark"], "hstab")
    assert not rem.value and rem.witness["cliques"] == [[0, 1, 2], [2, 3]]


@pytest.mark.parametrize(
    "name,h,q,t",
    [
        ("K1", True, True, True),
        ("K4", True, True, True),
        ("C5", True, True, True),
        ("C7", False, True, False),
        ("P3", True, True, True),
        ("W5", False, True, False),
        ("Remark", False, False, False),
        ("K1+K2", False, False, False),
    ],
)
def test_gorenstein_table(named, name, h, q, t):
    g = named[name]
    assert (gorenstein(g, "hstab").value, gorenstein(g, "qstab").value, gorenstein(g, "tstab").value) == (h, q, t)


def test_tstab_branches():
    # edgeless graphs are always Gorenstein
    assert gorenstein(Graph.from_edges(3, []), "tstab").value
    # triangle-free, no isolated vertex, holes of length 5 only
    assert gorenstein(disjoint_union(cycle(5), path(2)), "tstab").value
    # every maximal clique has three or more vertices and there is no hole
    assert gorenstein(disjoint_union(complete(3), complete(4)), "tstab").value
    w = gorenstein(disjoint_union(complete(3), complete(1)), "tstab").witness
    assert w["b"] == {"isolatedVertex": 3} and w["c"] == {"smallClique": [3]}


def test_gps_examples(named):
    assert gps(named["K1+K3"], "hstab", VERIFIED).value is True
    r = gps(named["K3+Remark"], "hstab", VERIFIED)
    assert r.value is False and r.per_class == {3: False}
    r = gps(named["C5+C7"], "hstab", VERIFIED)
    assert r.value is False and r.per_class == {2: False}


def test_gps_is_withheld_without_h_perfectness(named):
    refuted = h_perfect_status(named["W5"])
    assert refuted.status is HPerfect.REFUTED
    assert gps(named["W5"], "hstab", refuted).value == "withheld"
    assert gps(named["W5"], "hstab", HPerfectInfo(HPerfect.UNDECIDED)).value == "withheld"
    overridden = h_perfect_status(named["W5"], assume=True)
    assert overridden.status is HPerfect.REFUTED and overridden.override
    assert gps(named["W5"], "hstab", overridden).value is False


def test_gps_other_variants_are_necessary_only(named):
    assert gps(named["K1+K3"], "qstab", VERIFIED).value == "necessary-conditions-only"
    assert gps(named["K3+Remark"], "qstab", VERIFIED).value is False
    # K3 and K4 share a class for TSTAB
    r = gps(disjoint_union(complete(3), complete(4)), "tstab", VERIFIED)
    assert r.per_class == {3: True}


@pytest.mark.parametrize(
    "name,value",
    [
        ("K1+K2", "nearly-not-gorenstein"),
        ("C5+K3", "nearly-not-gorenstein"),
        ("K2+K3", "nearly-not-gorenstein"),
        ("K1+K3", "not-nearly"),
        ("K2+K4", "not-nearly"),
        ("K3+Remark", "not-nearly"),
        ("C5", "gorenstein"),
        ("C7", "not-nearly"),
    ],
)
def test_nearly_examples(named, name, value):
    r = nearly_gorenstein(named[name], h_perfect_status(named[name]))
    assert r.value == value


def test_nearly_reports_spectrum(named):
    r = nearly_gorenstein(named["K1+K2"], VERIFIED)
    assert r.u == 2 and r.degrees == (1, 2) and r.per_class == {1: True, 2: True}
    assert r.componentwise is True
    assert nearly_gorenstein(named["W5"], h_perfect_status(named["W5"])).value == "withheld"


def test_class_unions():
    g = disjoint_union(cycle(5), complete(2), cycle(7))
    assert class_gorenstein(g, Variant.HSTAB) == {2: False}
    assert class_gorenstein(disjoint_union(cycle(5), complete(2)), Variant.HSTAB) == {2: True}


def _consistent(rep):
    j = rep.to_json()
    near = j["nearly"]["value"]
    if j["gorenstein"]["value"]:
        assert near in ("gorenstein", None, "withheld")
    if near == "nearly-not-gorenstein":
        assert j["gorenstein"]["value"] is False
        assert j["gps"]["value"] is not False
    if j["gps"]["value"] is False:
        assert near != "nearly-not-gorenstein"
    if rep.spectrum.u == 1 and near not in (None, "withheld"):
        assert (near == "gorenstein") == j["gorenstein"]["value"]


@pytest.mark.parametrize("entry", acceptance_corpus()[::7], ids=lambda e: e.name)
def test_report_invariants_over_corpus(entry):
    h = h_perfect_status(entry.graph)
    for v in Variant:
        _consistent(classify(entry.graph, v, h))


@given(small_graphs(max_n=7))
@settings(max_examples=60, deadline=None)
def test_report_invariants_random(g):
    h = h_perfect_status(g, assume=True)
    for v in Variant:
        _consistent(classify(g, v, h))


def test_gorenstein_implies_gps(named):
    for g in named.values():
        h = h_perfect_status(g)
        for v in Variant:
            rep = classify(g, v, h)
            if rep.gorenstein.value and rep.gps.value != "withheld":
                assert rep.gps.value in (True, "necessary-conditions-only")


def test_report_json_shape(named):
    j = classify(named["C5"], "hstab").to_json()
    assert j["schemaVersion"] == 1
    assert set(j) >= {"variant", "gorenstein", "gps", "nearly", "spectrum", "hPerfect"}
    assert j["spectrum"]["I"] == [2] and j["spectrum"]["u"] == 1
    assert j["hPerfect"] == "verified" and j["annotations"]["perfect"] is False
    q = classify(named["C5"], "qstab").to_json()
    assert q["nearly"]["value"] is None


def test_h_perfect_undecided_and_assumed():
    big = Graph.from_edges(13, [(i, i + 1) for i in range(12)])
    assert h_perfect_status(big).status is HPerfect.UNDECIDED
    assert h_perfect_status(big, assume=True).status is HPerfect.ASSUMED
    # components are checked separately, so a union of small pieces is decided
    many = disjoint_union(*[complete(3)] * 5)
    assert h_perfect_status(many).status is HPerfect.VERIFIED
    assert h_perfect_status(two_triangles()).status is HPerfect.VERIFIED
    assert h_perfect_status(wheel(5)).fractional_vertex is not None
