"""Spectral Turan problems for the gem: canonical forms, exhaustive
enumeration, local search and certification of extremal graphs."""

from .canon import CanonicalForm, canonical_form, is_isomorphic
from .families import FamilyKind, FamilySpec, build_family, extremal_spec, pendant_spec
from .forbidden import GEM, ForbiddenSpec, classify_neighborhood, contains_subgraph, is_free
from .graph import Graph, GraphError
from .kernels import BACKEND
from .spectral import PerronData, check_lemma22, perron, spectral_radius

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CanonicalForm",
    "FamilyKind",
    "FamilySpec",
    "ForbiddenSpec",
    "GEM",
    "Graph",
    "GraphError",
    "PerronData",
    "build_family",
    "canonical_form",
    "check_lemma22",
    "classify_neighborhood",
    "contains_subgraph",
    "extremal_spec",
    "is_free",
    "is_isomorphic",
    "pendant_spec",
    "perron",
    "spectral_radius",
]
