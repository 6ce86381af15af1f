"""Exact planar primitives over arbitrary-precision integer coordinates.

Points carry Python ints, every derived quantity is an integer or a
``fractions.Fraction`` (used for squared distances), and every predicate is a
sign test on an integer expression.  No floating point enters any decision
made in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

# Squared distances are exact non-negative rationals.  Fraction keeps them in
# lowest terms and compares by cross multiplication, which is all we need.
SquaredDistance = Fraction


@dataclass(frozen=True, slots=True)
class Point:
    """Integer-coordinate planar point with an ordinal into its owning set.

    ``index`` is -1 for detached points that do not belong to a PointSet.
    """

    x: int
    y: int
    index: int = -1

    def __post_init__(self) -> None:
        if not isinstance(self.x, int) or not isinstance(self.y, int):
            raise TypeError("coordinates must be ints, got (%r, %r)" % (self.x, self.y))

    @property
    def xy(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        if self.index < 0:
            return f"Point({self.x}, {self.y})"
        return f"Point({self.x}, {self.y}, index={self.index})"


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b-a) x (c-a).

    +1 means c lies strictly left of the directed line a->b (counterclockwise
    turn), -1 strictly right, 0 collinear.
    """
    v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def sq_dist(p: Point, q: Point) -> SquaredDistance:
    """Exact squared euclidean distance between two points."""
    return Fraction((p.x - q.x) ** 2 + (p.y - q.y) ** 2)


@dataclass(frozen=True, slots=True)
class DirectedLine:
    """Line through two distinct points, directed from ``a`` to ``b``."""

    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a.xy == self.b.xy:
            raise ValueError("directed line requires two distinct points")


def left_of(line: DirectedLine, p: Point) -> bool:
    """True iff ``p`` lies strictly left of the directed line.

    Points on the line are not considered left; this keeps halfplane maxima
    well-defined when inputs are collinear.
    """
    return orientation(line.a, line.b, p) > 0


def sq_dist_point_line(p: Point, line: DirectedLine) -> SquaredDistance:
    """Exact squared distance from ``p`` to the (infinite) line."""
    ax, ay = line.a.xy
    bx, by = line.b.xy
    dx, dy = bx - ax, by - ay
    cross = dx * (p.y - ay) - dy * (p.x - ax)
    return Fraction(cross * cross, dx * dx + dy * dy)


def sq_dist_point_segment(p: Point, a: Point, b: Point) -> SquaredDistance:
    """Exact squared distance from ``p`` to the closed segment ``ab``.

    Degenerates to the point distance when ``a == b``.  Uses the integer
    projection test: distance to the line when the orthogonal projection of
    ``p`` falls inside the segment, otherwise to the nearer endpoint.
    """
    num, den = _seg_sq_dist_ratio(p.x, p.y, a.x, a.y, b.x, b.y)
    return Fraction(num, den)


def _seg_sq_dist_ratio(px: int, py: int, ax: int, ay: int, bx: int, by: int) -> tuple[int, int]:
    # Unreduced (numerator, denominator); denominator is 1 for endpoint cases.
    abx, aby = bx - ax, by - ay
    apx, apy = px - ax, py - ay
    ab2 = abx * abx + aby * aby
    if ab2 == 0:
        return (apx * apx + apy * apy, 1)
    dot = apx * abx + apy * aby
    if dot <= 0:
        return (apx * apx + apy * apy, 1)
    if dot >= ab2:
        bpx, bpy = px - bx, py - by
        return (bpx * bpx + bpy * bpy, 1)
    cross = apx * aby - apy * abx
    return (cross * cross, ab2)


class PointSet:
    """Ordered, deduplicated set of integer points.

    Duplicates are dropped at construction, keeping the first occurrence;
    surviving points are re-indexed consecutively so ``ps[i].index == i``.
    Immutable after construction; derived structures are cached lazily.
    """

    __slots__ = ("points", "_cache", "__dict__")

    def __init__(self, coords: Iterable[tuple[int, int] | Point]):
        seen: set[tuple[int, int]] = set()
        pts: list[Point] = []
        for c in coords:
            xy = c.xy if isinstance(c, Point) else (c[0], c[1])
            if not isinstance(xy[0], int) or not isinstance(xy[1], int):
                raise TypeError("PointSet requires integer coordinates, got %r" % (xy,))
            if xy in seen:
                continue
            seen.add(xy)
            pts.append(Point(xy[0], xy[1], len(pts)))
        if not pts:
            raise ValueError("PointSet requires at least one point")
        self.points: tuple[Point, ...] = tuple(pts)
        self._cache: dict = {}  # cross-module memo space (decider tables etc.)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    @cached_property
    def coords(self) -> list[tuple[int, int]]:
        return [p.xy for p in self.points]

    @cached_property
    def coords_array(self) -> np.ndarray:
        """n x 2 int64 coordinate array (valid only within int64 range)."""
        return np.array(self.coords, dtype=np.int64)

    @cached_property
    def coord_bound(self) -> int:
        return max(max(abs(x), abs(y)) for x, y in self.coords)

    @cached_property
    def hull(self) -> "ConvexPolygon":
        return convex_hull(self)

    @cached_property
    def sorted_pair_sq(self) -> np.ndarray:
        """All C(n,2) squared pairwise distances, sorted ascending (int64).

        Requires coordinates small enough that squared distances fit int64;
        falls back to an object array of Python ints otherwise.
        """
        if self.n < 2:
            return np.empty(0, dtype=np.int64)
        a = self.coords_array
        if self.coord_bound <= 1_000_000_000:
            iu = np.triu_indices(self.n, k=1)
            d = a[iu[0]] - a[iu[1]]
            vals = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
        else:
            pts = self.coords
            out = []
            for i in range(self.n):
                xi, yi = pts[i]
                for j in range(i + 1, self.n):
                    out.append((xi - pts[j][0]) ** 2 + (yi - pts[j][1]) ** 2)
            vals = np.array(out, dtype=object)
        vals.sort(kind="stable")
        return vals

    def __repr__(self) -> str:
        return f"PointSet(n={self.n})"


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon given by vertices in counterclockwise order.

    May degenerate to a single point or a segment (1 or 2 vertices).  With
    three or more vertices, no three consecutive vertices are collinear.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        m = len(self.vertices)
        if m == 0:
            raise ValueError("polygon needs at least one vertex")
        if m >= 3:
            for i in range(m):
                a = self.vertices[i]
                b = self.vertices[(i + 1) % m]
                c = self.vertices[(i + 2) % m]
                if orientation(a, b, c) <= 0:
                    raise ValueError("vertices are not in strictly convex ccw position")

    @property
    def m(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[tuple[Point, Point]]:
        """Consecutive ccw vertex pairs; a segment yields its single edge."""
        m = len(self.vertices)
        if m == 1:
            return
        if m == 2:
            yield self.vertices[0], self.vertices[1]
            return
        for i in range(m):
            yield self.vertices[i], self.vertices[(i + 1) % m]

    def contains(self, p: Point) -> bool:
        """True iff ``p`` lies inside or on the boundary."""
        m = len(self.vertices)
        if m == 1:
            return p.xy == self.vertices[0].xy
        if m == 2:
            a, b = self.vertices
            return (
                orientation(a, b, p) == 0
                and min(a.x, b.x) <= p.x <= max(a.x, b.x)
                and min(a.y, b.y) <= p.y <= max(a.y, b.y)
            )
        return all(orientation(a, b, p) >= 0 for a, b in self.edges())


def convex_hull(ps: PointSet | Sequence[Point]) -> ConvexPolygon:
    """Monotone-chain convex hull; collinear points interior to edges dropped.

    Output vertices are in counterclockwise order starting from the
    lexicographically smallest point, and carry their original indices.
    """
    pts = list(ps.points if isinstance(ps, PointSet) else ps)
    pts.sort(key=lambda p: p.xy)
    if len(pts) == 1:
        return ConvexPolygon((pts[0],))

    def build(seq: list[Point]) -> list[Point]:
        chain: list[Point] = []
        for p in seq:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2 and len(pts) >= 2:
        # all points collinear: keep the two extreme points as a segment
        verts = [pts[0], pts[-1]]
    return ConvexPolygon(tuple(verts))


def sq_dist_point_convex_polygon(p: Point, poly: ConvexPolygon) -> SquaredDistance:
    """Exact squared distance from ``p`` to a convex polygon (0 if inside)."""
    m = poly.m
    if m == 1:
        return sq_dist(p, poly.vertices[0])
    if m >= 3 and poly.contains(p):
        return Fraction(0)
    best: Optional[Fraction] = None
    for a, b in poly.edges():
        d = sq_dist_point_segment(p, a, b)
        if best is None or d < best:
            best = d
    assert best is not None
    return best
