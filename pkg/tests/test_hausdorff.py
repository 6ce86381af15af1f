import itertools
import random
from fractions import Fraction

import pytest

from hullbudget.extremal import ExtremalIndex, build_extremal_index
from hullbudget.geometry import Point, PointSet, convex_hull, sq_dist_point_convex_polygon
from hullbudget.hausdorff import (
    HullEdgeLineFeature,
    HullVertexFeature,
    hausdorff_sq,
    hausdorff_sq_via_lines,
)

S5 = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])
CORNERS = [0, 1, 2, 3]


def brute_hausdorff_sq(ps, subset):
    hull = convex_hull([ps[i] for i in subset])
    return max(sq_dist_point_convex_polygon(p, hull) for p in ps)


def test_hausdorff_examples():
    r = hausdorff_sq(S5, [0])
    assert r.value_sq == 32 and r.witness_point.xy == (4, 4)
    assert hausdorff_sq(S5, CORNERS).value_sq == 0
    # frozen from the brute-force per-point polygon-distance oracle
    assert brute_hausdorff_sq(S5, [0, 2]) == 8
    r = hausdorff_sq(S5, [0, 2])
    assert r.value_sq == 8
    assert r.witness_point.xy in {(4, 0), (0, 4)}


def test_hausdorff_rejects_bad_subsets():
    with pytest.raises(ValueError):
        hausdorff_sq(S5, [])
    with pytest.raises(ValueError):
        hausdorff_sq(S5, [0, 0])
    with pytest.raises(ValueError):
        hausdorff_sq(S5, [7])


def test_via_lines_examples():
    idx = build_extremal_index(S5)
    r = hausdorff_sq_via_lines(S5, [0, 1], idx)  # segment (0,0)-(4,0)
    assert r.value_sq == 16
    assert hausdorff_sq_via_lines(S5, CORNERS, idx).value_sq == 0
    r = hausdorff_sq_via_lines(S5, [0, 2], idx)  # diagonal; max is line-realized
    assert r.value_sq == 8 == hausdorff_sq(S5, [0, 2]).value_sq


def test_via_lines_rejects_single_point():
    idx = build_extremal_index(S5)
    with pytest.raises(ValueError):
        hausdorff_sq_via_lines(S5, [4], idx)


def _random_sets(rng, trials, nmax, bound=50):
    for _ in range(trials):
        n = rng.randint(2, nmax)
        ps = PointSet([(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(n)])
        k = rng.randint(1, ps.n)
        subset = sorted(rng.sample(range(ps.n), k))
        yield ps, subset


def test_hausdorff_matches_brute():
    rng = random.Random(42)
    for ps, subset in _random_sets(rng, 200, 14):
        assert hausdorff_sq(ps, subset).value_sq == brute_hausdorff_sq(ps, subset)


def test_via_lines_lower_bounds_exact():
    rng = random.Random(1234)
    for ps, subset in _random_sets(rng, 300, 12):
        if len(subset) < 2 or convex_hull([ps[i] for i in subset]).m < 2:
            continue
        idx = build_extremal_index(ps)
        lo = hausdorff_sq_via_lines(ps, subset, idx).value_sq
        hi = hausdorff_sq(ps, subset).value_sq
        assert lo <= hi


def test_via_lines_agrees_when_edge_realized():
    # whenever the exact evaluator's witness feature is an edge line, the
    # line-based evaluation matches it exactly
    rng = random.Random(987)
    hits = 0
    for ps, subset in _random_sets(rng, 400, 12):
        if len(subset) < 2 or convex_hull([ps[i] for i in subset]).m < 2:
            continue
        r = hausdorff_sq(ps, subset)
        if isinstance(r.witness_feature, HullEdgeLineFeature):
            hits += 1
            idx = build_extremal_index(ps)
            assert hausdorff_sq_via_lines(ps, subset, idx).value_sq == r.value_sq
    assert hits > 20  # the regime is actually exercised


def test_self_distance_zero_and_monotonicity():
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randint(1, 12)
        ps = PointSet([(rng.randint(-30, 30), rng.randint(-30, 30)) for _ in range(n)])
        assert hausdorff_sq(ps, list(range(ps.n))).value_sq == 0
        if ps.n >= 2:
            k = rng.randint(1, ps.n - 1)
            sub = sorted(rng.sample(range(ps.n), k))
            extra = rng.choice([i for i in range(ps.n) if i not in sub])
            bigger = sorted(sub + [extra])
            assert hausdorff_sq(ps, bigger).value_sq <= hausdorff_sq(ps, sub).value_sq
