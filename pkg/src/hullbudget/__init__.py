"""hullbudget: exact best k-point convex-hull approximation.

Given n integer-coordinate points in the plane and a budget k, find the
subset of at most k points whose convex hull minimizes the largest distance
from any input point (one-sided Hausdorff distance between the hulls), with
exact rational arithmetic throughout.
"""

from .decider import (
    DeciderVerdict,
    Mode,
    Threshold,
    brute_decide,
    closed,
    decide,
    decide_reference,
    open_below,
    subset_value_sq,
)
from .extremal import (
    CriticalValue,
    Direction,
    ExtremalIndex,
    LineHeight,
    PairDistance,
    build_extremal_index,
)
from .geometry import (
    ConvexPolygon,
    DirectedLine,
    Point,
    PointSet,
    SquaredDistance,
    convex_hull,
    left_of,
    orientation,
    sq_dist,
    sq_dist_point_convex_polygon,
    sq_dist_point_line,
    sq_dist_point_segment,
)
from .hausdorff import (
    HausdorffResult,
    hausdorff_sq,
    hausdorff_sq_via_lines,
)

__version__ = "0.1.0"
