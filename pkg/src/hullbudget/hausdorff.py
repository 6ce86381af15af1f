"""Exact one-sided Hausdorff evaluation for subset hulls.

For a subset Q of a point set P, the quantity of interest is the largest
distance from any point of P to the convex hull of Q.  Two evaluators are
provided: the direct one (point-to-polygon distances, always exact) and a
line-based one that only probes distances to the lines supporting hull edges
via extreme-point queries.  The line-based value never exceeds the direct
value; the two agree whenever the maximum is realized in the interior of an
edge's orthogonal slab, which is the regime the search engine uses it in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .extremal import ExtremalIndex
from .geometry import (
    ConvexPolygon,
    Point,
    PointSet,
    SquaredDistance,
    convex_hull,
    sq_dist_point_convex_polygon,
)


@dataclass(frozen=True, slots=True)
class HullVertexFeature:
    """The maximum is realized at a hull vertex of Q (index into P)."""

    q: int


@dataclass(frozen=True, slots=True)
class HullEdgeLineFeature:
    """The maximum is realized on the line supporting hull edge (a, b)."""

    a: int
    b: int


WitnessFeature = Union[HullVertexFeature, HullEdgeLineFeature]


@dataclass(frozen=True)
class HausdorffResult:
    value_sq: SquaredDistance
    witness_point: Optional[Point]
    witness_feature: Optional[WitnessFeature]


def subset_hull(ps: PointSet, subset: Sequence[int]) -> ConvexPolygon:
    """Hull of the subset given by indices into ``ps`` (validated)."""
    if not subset:
        raise ValueError("subset must be nonempty")
    idxs = list(subset)
    if len(set(idxs)) != len(idxs):
        raise ValueError("subset indices must be distinct")
    for i in idxs:
        if not 0 <= i < ps.n:
            raise ValueError(f"subset index {i} out of range for n={ps.n}")
    return convex_hull([ps[i] for i in idxs])


def hausdorff_sq(ps: PointSet, subset: Sequence[int]) -> HausdorffResult:
    """Exact max over p in P of the squared distance from p to CH(subset)."""
    hull = subset_hull(ps, subset)
    best = Fraction(0)
    witness: Optional[Point] = None
    feature: Optional[WitnessFeature] = None
    for p in ps:
        d, f = _point_poly_sq_with_feature(p, hull)
        if witness is None or d > best:
            best, witness, feature = d, p, f
    return HausdorffResult(best, witness, feature)


def _point_poly_sq_with_feature(
    p: Point, poly: ConvexPolygon
) -> tuple[Fraction, Optional[WitnessFeature]]:
    verts = poly.vertices
    if poly.m == 1:
        q = verts[0]
        return Fraction((p.x - q.x) ** 2 + (p.y - q.y) ** 2), HullVertexFeature(q.index)
    if poly.m >= 3 and poly.contains(p):
        return Fraction(0), None
    best: Optional[Fraction] = None
    feat: Optional[WitnessFeature] = None
    for a, b in poly.edges():
        abx, aby = b.x - a.x, b.y - a.y
        apx, apy = p.x - a.x, p.y - a.y
        ab2 = abx * abx + aby * aby
        dot = apx * abx + apy * aby
        if dot <= 0:
            d = Fraction(apx * apx + apy * apy)
            f: WitnessFeature = HullVertexFeature(a.index)
        elif dot >= ab2:
            bpx, bpy = p.x - b.x, p.y - b.y
            d = Fraction(bpx * bpx + bpy * bpy)
            f = HullVertexFeature(b.index)
        else:
            cross = apx * aby - apy * abx
            d = Fraction(cross * cross, ab2)
            f = HullEdgeLineFeature(a.index, b.index)
        if best is None or d < best:
            best, feat = d, f
    assert best is not None
    return best, feat if best > 0 else None


def hausdorff_sq_via_lines(
    ps: PointSet, subset: Sequence[int], idx: ExtremalIndex
) -> HausdorffResult:
    """Line-based evaluation: max over hull edges of the farthest point of P
    from the edge's supporting line, among points outside that edge.

    Each ccw edge (a, b) of CH(subset) is queried reversed, so the probed
    strict-left halfplane is the outside of the hull.  A 2-vertex hull is a
    segment with two sides; both orientations are queried.  Undefined for a
    1-vertex hull (no supporting line exists) -- use :func:`hausdorff_sq`.
    """
    hull = subset_hull(ps, subset)
    if hull.m < 2:
        raise ValueError("line-based evaluation requires a hull with >= 2 vertices")
    best = Fraction(0)
    witness: Optional[Point] = None
    feature: Optional[WitnessFeature] = None
    pairs = list(hull.edges())
    if hull.m == 2:
        a, b = hull.vertices
        pairs = [(a, b), (b, a)]
    for a, b in pairs:
        cv = idx.line_height(b, a)  # outside of ccw edge (a,b) = left of b->a
        if cv.value_sq > best:
            best = cv.value_sq
            witness = ps[cv.kind.p] if cv.kind.p is not None else None
            feature = HullEdgeLineFeature(a.index, b.index)
    return HausdorffResult(best, witness, feature)
