"""Canonical forms: equal forms iff isomorphic graphs."""

from __future__ import annotations

from dataclasses import dataclass

from . import graph6, kernels
from .graph import Graph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """graph6 text of the canonically relabelled graph, as bytes."""

    bytes: bytes

    def graph(self) -> Graph:
        return graph6.decode(self.bytes.decode("ascii"))

    def __str__(self) -> str:
        return self.bytes.decode("ascii")


def canonical_order(g: Graph) -> list[int]:
    """Vertex order such that ``g.relabel(order)`` is the canonical graph."""
    order, _ = kernels.canon_label(g.n, g.rows)
    return list(order)


def canonical_graph(g: Graph) -> Graph:
    order, cert = kernels.canon_label(g.n, g.rows)
    return Graph._trusted(g.n, tuple(cert))


def canonical_form(g: Graph) -> CanonicalForm:
    return CanonicalForm(graph6.encode(canonical_graph(g)).encode("ascii"))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_graph(g) == canonical_graph(h)
