"""Kostant cascades, closed-form indices of parabolic subalgebras and their
nilpotent radicals, and a brute-force Chevalley-basis oracle."""

from .cascade import Cascade, CascadeElement, cardinality_of_full_cascade, cascade, gamma_set
from .index import IndexReport, ParabolicSpec, enumerate_equality, index_report, parabolic_spec
from .rootsys import RootSystem, SimpleType, build_root_system

__all__ = [
    "Cascade",
    "CascadeElement",
    "IndexReport",
    "ParabolicSpec",
    "RootSystem",
    "SimpleType",
    "build_root_system",
    "cardinality_of_full_cascade",
    "cascade",
    "enumerate_equality",
    "gamma_set",
    "index_report",
    "parabolic_spec",
]
