"""Planar open books supporting the canonical contact structure.

The page is a sphere with -e_v - d_v holes drilled near each vertex v, and
the monodromy is the product of right-handed Dehn twists along one parallel
circle per hole plus one curve per tree edge.  Each edge curve encircles
the holes of one side of the tree cut at that edge; we always store the
side *away* from the canonical dual root so the braid construction can read
the twist boxes straight off this data.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dualcap
from .plumbing import PlumbingGraph, ValidationFailure, validate


@dataclass(frozen=True)
class TwistCurve:
    kind: str  # "boundary" or "edge"
    holes: tuple[int, ...]
    edge: tuple[int, int] | None = None

    def to_json_dict(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.edge is not None:
            doc["edge"] = list(self.edge)
        doc["holes"] = list(self.holes)
        return doc


@dataclass(frozen=True)
class OpenBookDescription:
    holes: tuple[tuple[int, int], ...]  # (hole id, owner vertex id)
    boundary_curves: tuple[TwistCurve, ...]
    edge_curves: tuple[TwistCurve, ...]
    page_genus: int = 0

    @property
    def curves(self) -> tuple[TwistCurve, ...]:
        return self.boundary_curves + self.edge_curves

    def holes_of(self, vertex: int) -> tuple[int, ...]:
        return tuple(h for h, owner in self.holes if owner == vertex)

    def to_json_dict(self) -> dict:
        return {
            "holes": [{"id": h, "vertex": owner} for h, owner in self.holes],
            "curves": [c.to_json_dict() for c in self.curves],
        }


def build_open_book(g: PlumbingGraph) -> OpenBookDescription:
    """Holes and twist curves of the planar open book for a valid graph.

    Hole ids are assigned by ascending owner id, then local index.  Raises
    ValidationFailure unless ``validate(g)`` is all-true, which also
    guarantees at least one hole in total.
    """
    report = validate(g)
    if not report.all_ok:
        raise ValidationFailure(report)

    counts = dualcap.string_counts(g)  # -e_v - d_v before any root removal
    holes: list[tuple[int, int]] = []
    for vid in g.ids():
        for _ in range(counts[vid]):
            holes.append((len(holes), vid))

    boundary = tuple(TwistCurve(kind="boundary", holes=(h,)) for h, _ in holes)

    try:
        anchor = dualcap.choose_root(g)
    except dualcap.NoAdmissibleRootError:  # unreachable for valid graphs
        anchor = g.ids()[0]
    edge_curves = []
    for edge in g.edges:
        a, b = edge
        far = b if a in _side_of(g, edge, anchor) else a
        far_vertices = _side_of(g, edge, far)
        encircled = tuple(sorted(h for h, owner in holes if owner in far_vertices))
        edge_curves.append(TwistCurve(kind="edge", holes=encircled, edge=edge))

    return OpenBookDescription(
        holes=tuple(holes),
        boundary_curves=boundary,
        edge_curves=tuple(edge_curves),
        page_genus=0,
    )


def _side_of(g: PlumbingGraph, edge: tuple[int, int], start: int) -> set[int]:
    """Vertices of the component of the tree minus ``edge`` containing start."""
    adj = g.adjacency()
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if {v, w} == set(edge):
                continue
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def curves_crossed(ob: OpenBookDescription, hole: int, outer: int) -> int:
    """Twist curves separating ``hole`` from the ``outer`` hole.

    This counts curves whose hole set contains exactly one of the two, and
    equals (tree distance between the owners) + 2: the two parallel circles
    plus one edge curve per path edge.  The dual string owned by the same
    vertex as ``hole`` is framed by exactly minus this number.
    """
    if hole == outer:
        raise ValueError("need two distinct holes")
    known = {h for h, _ in ob.holes}
    if hole not in known or outer not in known:
        raise KeyError("unknown hole id")
    crossed = 0
    for curve in ob.curves:
        inside = (hole in curve.holes) + (outer in curve.holes)
        if inside == 1:
            crossed += 1
    return crossed
