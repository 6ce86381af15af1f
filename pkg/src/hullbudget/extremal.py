"""Extreme-point queries via the hull's normal fan.

Preprocessing computes the convex hull and the outward normals of its edges.
The normals wind counterclockwise exactly once, so the set of directions
splits into angular cones, one per hull vertex: vertex ``q_i`` is the unique
maximizer of ``<p, u>`` for every ``u`` strictly inside the cone between the
outward normals of its two incident edges.  A query locates its cone by
binary search using exact sign tests; no angles are ever computed in floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .geometry import ConvexPolygon, Point, PointSet, SquaredDistance


@dataclass(frozen=True, slots=True)
class Direction:
    """Nonzero integer direction vector, understood projectively."""

    dx: int
    dy: int

    def __post_init__(self) -> None:
        if self.dx == 0 and self.dy == 0:
            raise ValueError("direction must be nonzero")


@dataclass(frozen=True, slots=True)
class PairDistance:
    """Critical value witness: squared distance between points i and j."""

    i: int
    j: int


@dataclass(frozen=True, slots=True)
class LineHeight:
    """Critical value witness: squared distance of point ``p`` to the line
    through ``a`` and ``b`` (``p`` strictly left of a->b); ``p`` is None when
    the left halfplane is empty and the value is the 0 sentinel."""

    a: int
    b: int
    p: Optional[int]


CriticalKind = Union[PairDistance, LineHeight]


@dataclass(frozen=True, slots=True)
class CriticalValue:
    value_sq: SquaredDistance
    kind: CriticalKind


def _half(dx: int, dy: int) -> int:
    # 0 for the half-turn [angle 0, pi) measured from the +x axis, 1 otherwise;
    # used only relative to a fixed reference via _offset_lt below.
    if dy > 0 or (dy == 0 and dx > 0):
        return 0
    return 1


class ExtremalIndex:
    """O(log h) extreme-point queries over a fixed point set."""

    __slots__ = ("ps", "hull", "_normals", "_probe_count")

    def __init__(self, ps: PointSet):
        self.ps = ps
        self.hull: ConvexPolygon = ps.hull
        verts = self.hull.vertices
        normals: list[tuple[int, int]] = []
        if self.hull.m >= 3:
            m = self.hull.m
            for i in range(m):
                a = verts[i]
                b = verts[(i + 1) % m]
                # outward normal of a ccw edge is the right-hand normal
                normals.append((b.y - a.y, a.x - b.x))
        self._normals = normals
        self._probe_count = 0

    # -- exact cyclic angular order ------------------------------------

    @staticmethod
    def _offset_lt(ref: tuple[int, int], u: tuple[int, int], v: tuple[int, int]) -> bool:
        """True iff the ccw angular offset from ``ref`` of ``u`` is strictly
        less than that of ``v`` (offsets in [0, 2*pi))."""
        rx, ry = ref
        hu = _rel_half(rx, ry, u)
        hv = _rel_half(rx, ry, v)
        if hu != hv:
            return hu < hv
        return u[0] * v[1] - u[1] * v[0] > 0

    def extremal(self, u: Direction) -> Point:
        """A point of the set maximizing the dot product with ``u``.

        Exact ties are broken toward the lexicographically smallest point.
        """
        verts = self.hull.vertices
        m = self.hull.m
        ux, uy = u.dx, u.dy
        if m == 1:
            return verts[0]
        if m == 2:
            a, b = verts
            da = a.x * ux + a.y * uy
            db = b.x * ux + b.y * uy
            if da > db:
                return a
            if db > da:
                return b
            return a if a.xy < b.xy else b
        i = self._locate(ux, uy)
        # boundary of the fan: query parallel to an edge normal ties the
        # edge's two endpoints
        nx, ny = self._normals[i]
        if ux * ny - uy * nx == 0 and ux * nx + uy * ny > 0:
            a, b = verts[i], verts[(i + 1) % m]
            return a if a.xy < b.xy else b
        return verts[i]

    def _locate(self, ux: int, uy: int) -> int:
        """Index i such that u lies in the cone [normal[i-1], normal[i]].

        Normal offsets from normals[0] are strictly increasing, so this is a
        plain binary search for the first normal at-or-past the query's
        angular offset; falling off the end wraps into vertex 0's cone.
        """
        normals = self._normals
        ref = normals[0]
        u = (ux, uy)
        lo, hi = 0, len(normals)
        while lo < hi:
            mid = (lo + hi) // 2
            self._probe_count += 1
            if self._offset_lt(ref, normals[mid], u):
                lo = mid + 1
            else:
                hi = mid
        return 0 if lo == len(normals) else lo

    def extremal_with_probes(self, u: Direction) -> tuple[Point, int]:
        """Query plus the number of fan comparisons it performed."""
        before = self._probe_count
        p = self.extremal(u)
        return p, self._probe_count - before

    # -- derived line query ---------------------------------------------

    def line_height(self, a: Point, b: Point) -> CriticalValue:
        """Max squared line distance over points strictly left of a->b.

        Queries the extreme point in the left normal direction of the line;
        an empty left halfplane yields the value-0 sentinel.
        """
        if a.xy == b.xy:
            raise ValueError("line_height requires two distinct points")
        dx, dy = b.x - a.x, b.y - a.y
        p = self.extremal(Direction(-dy, dx))
        cross = dx * (p.y - a.y) - dy * (p.x - a.x)
        if cross > 0:
            value = Fraction(cross * cross, dx * dx + dy * dy)
            return CriticalValue(value, LineHeight(a.index, b.index, p.index))
        return CriticalValue(Fraction(0), LineHeight(a.index, b.index, None))


def _rel_half(rx: int, ry: int, u: tuple[int, int]) -> int:
    """0 if the ccw offset of u from r lies in [0, pi), else 1."""
    cr = rx * u[1] - ry * u[0]
    if cr > 0:
        return 0
    if cr < 0:
        return 1
    # parallel: same direction -> offset 0, opposite -> offset pi
    return 0 if rx * u[0] + ry * u[1] > 0 else 1


def build_extremal_index(ps: PointSet) -> ExtremalIndex:
    """Build (and cache on the point set) the extreme-point query index."""
    idx = ps._cache.get("extremal_index")
    if idx is None:
        idx = ExtremalIndex(ps)
        ps._cache["extremal_index"] = idx
    return idx
