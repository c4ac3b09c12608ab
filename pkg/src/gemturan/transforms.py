"""Edge-preserving graph surgeries: Kelmans-type rotation, end-block
reattachment and the splitting of outer vertices onto a hub edge."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError, iter_bits
from .structure import Block, structure


@dataclass(frozen=True)
class RotationMove:
    """Move edges v-v_i (v_i in ``moved``) over to u-v_i."""

    u: int
    v: int
    moved: frozenset[int]

    def __init__(self, u: int, v: int, moved: Iterable[int]):
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "moved", frozenset(moved))

    def validate(self, g: Graph) -> None:
        u, v = self.u, self.v
        if u == v:
            raise GraphError("rotation needs distinct u and v")
        if not self.moved:
            raise GraphError("rotation moves no edges")
        if u in self.moved:
            raise GraphError("u cannot be among the moved vertices")
        for w in self.moved:
            if not g.has_edge(v, w):
                raise GraphError(f"moved vertex {w} is not adjacent to v={v}")
            if g.has_edge(u, w):
                raise GraphError(f"moved vertex {w} is already adjacent to u={u}")


def rotate_edges(g: Graph, move: RotationMove) -> Graph:
    """G - sum v v_i + sum u v_i. The Perron condition x_u >= x_v is the
    caller's business."""
    move.validate(g)
    ws = sorted(move.moved)
    return g.with_edges(
        add=[(move.u, w) for w in ws], remove=[(move.v, w) for w in ws]
    )


def rotation_candidates(g: Graph, u: int, v: int) -> list[int]:
    """Vertices eligible to move from v to u: N(v) minus N[u]."""
    return list(iter_bits(g.rows[v] & ~g.rows[u] & ~(1 << u)))


@dataclass(frozen=True)
class Reattachment:
    graph: Graph
    block: Block | None = None
    cut_vertex: int | None = None

    @property
    def applied(self) -> bool:
        return self.block is not None


def reattach_end_block(g: Graph, u: int) -> Reattachment:
    """Hang an end-block that avoids ``u`` off ``u`` instead of its cut vertex.

    Picks the first qualifying end-block in decomposition order; returns the
    graph unchanged (``applied`` false) when there is none.
    """
    st = structure(g)
    for block in st.end_blocks:
        if u in block.vertices:
            continue
        cuts = block.vertices & st.cut_vertices
        if len(cuts) != 1:
            continue
        (v,) = cuts
        moved = [w for w in sorted(block.vertices) if w != v and g.has_edge(v, w)]
        new = rotate_edges(g, RotationMove(u, v, moved))
        return Reattachment(new, block, v)
    return Reattachment(g)


def _check_split(g: Graph, hub: int, v: int, w_list: Sequence[int]) -> None:
    if not g.has_edge(hub, v):
        raise GraphError(f"hub {hub} and star centre {v} must be adjacent")
    leaves = g.rows[v] & ~(1 << hub)
    if len(set(w_list)) != len(w_list):
        raise GraphError("w_list has repeated vertices")
    for w in w_list:
        if w in (hub, v):
            raise GraphError(f"w={w} coincides with the hub or the star centre")
        d = g.degree(w)
        if d < 2:
            raise GraphError(f"w={w} has degree {d} < 2")
        if g.rows[w] & ~leaves:
            raise GraphError(f"w={w} has neighbours outside N(v) - {{hub}}")


def w_split_stages(
    g: Graph, hub: int, v: int, w_list: Sequence[int]
) -> tuple[Graph, Graph, list[list[int]]]:
    """The two intermediate graphs of the split, before isolated-vertex cleanup.

    Returns ``(padded, rewired, new_vertices)``: ``padded`` is g plus isolated
    placeholder vertices, ``rewired`` moves each w's edges onto them, and
    ``new_vertices[i]`` lists the placeholders of ``w_list[i]`` (for odd
    degree the hub-only pendant comes first).
    """
    _check_split(g, hub, v, w_list)
    n = g.n
    new_vertices = []
    for w in w_list:
        d = g.degree(w)
        k = d // 2 + d % 2
        new_vertices.append(list(range(n, n + k)))
        n += k
    padded = g.add_vertices(n - g.n)
    add, remove = [], []
    for w, verts in zip(w_list, new_vertices):
        remove += [(w, y) for y in g.neighbors(w)]
        d = g.degree(w)
        if d % 2:
            add.append((hub, verts[0]))
            verts = verts[1:]
        for k in verts:
            add += [(hub, k), (v, k)]
    rewired = padded.with_edges(add=add, remove=remove)
    return padded, rewired, new_vertices


def w_split(g: Graph, hub: int, v: int, w_list: Sequence[int]) -> Graph:
    """Replace each w (all neighbours among the leaves of the star centred at
    ``v``) by floor(d/2) common neighbours of hub and v, plus one pendant at
    the hub when d is odd; isolated vertices are then dropped."""
    _, rewired, _ = w_split_stages(g, hub, v, w_list)
    return rewired.remove_isolated()
