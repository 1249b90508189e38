"""Gorenstein-type classification of Ehrhart rings of stable set polytope relaxations."""

from __future__ import annotations

from .classify import ClassificationReport, classify, gorenstein, gps, h_perfect_status, nearly_gorenstein
from .graph import Graph, components, disjoint_union, maximal_cliques, odd_holes, parse_graph, read_graph
from .lattice import LatticeFunction, VariantSystem, a_invariant, hilbert_function, in_U, semigroup_generators
from .oracle import cross_check, gorenstein_trace, trace_member, verify_gps_bounded, verify_nearly, witness_non_gps
from .polytope import Variant, build_polytope, enumerate_vertices, is_h_perfect, is_t_perfect

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "Graph",
    "LatticeFunction",
    "Variant",
    "VariantSystem",
    "a_invariant",
    "build_polytope",
    "classify",
    "components",
    "cross_check",
    "disjoint_union",
    "enumerate_vertices",
    "gorenstein",
    "gorenstein_trace",
    "gps",
    "h_perfect_status",
    "hilbert_function",
    "in_U",
    "is_h_perfect",
    "is_t_perfect",
    "maximal_cliques",
    "nearly_gorenstein",
    "odd_holes",
    "parse_graph",
    "read_graph",
    "semigroup_generators",
    "trace_member",
    "verify_gps_bounded",
    "verify_nearly",
    "witness_non_gps",
]
