import math
import random
from fractions import Fraction

import pytest

from hullbudget.extremal import (
    Direction,
    ExtremalIndex,
    LineHeight,
    build_extremal_index,
)
from hullbudget.geometry import DirectedLine, Point, PointSet, left_of, sq_dist_point_line

S5 = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])
T = PointSet([(0, 0), (4, 0), (0, 4)])


def brute_extremal(ps, dx, dy):
    best = max(p.x * dx + p.y * dy for p in ps)
    return best, min(p.xy for p in ps if p.x * dx + p.y * dy == best)


def brute_line_height(ps, a, b):
    line = DirectedLine(a, b)
    vals = [sq_dist_point_line(p, line) for p in ps if left_of(line, p)]
    return max(vals) if vals else Fraction(0)


def test_fan_sizes():
    assert len(ExtremalIndex(S5)._normals) == 4
    assert ExtremalIndex(PointSet([(0, 0), (1, 1), (2, 2)])).hull.m == 2
    assert ExtremalIndex(PointSet([(3, 3)])).hull.m == 1


def test_extremal_examples():
    idx = ExtremalIndex(S5)
    assert idx.extremal(Direction(1, 2)).xy == (4, 4)
    assert idx.extremal(Direction(0, 1)).xy == (0, 4)  # tie with (4,4), lex-min
    assert idx.extremal(Direction(-1, 0)).xy == (0, 0)  # tie with (0,4), lex-min


def test_extremal_degenerate():
    idx = ExtremalIndex(PointSet([(0, 0), (2, 2)]))
    assert idx.extremal(Direction(1, 1)).xy == (2, 2)
    assert idx.extremal(Direction(-1, -1)).xy == (0, 0)
    assert idx.extremal(Direction(1, -1)).xy == (0, 0)  # tie, lex-min
    one = ExtremalIndex(PointSet([(5, 5)]))
    assert one.extremal(Direction(3, -7)).xy == (5, 5)


def test_extremal_matches_linear_scan():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 120)
        ps = PointSet([(rng.randint(-500, 500), rng.randint(-500, 500)) for _ in range(n)])
        idx = ExtremalIndex(ps)
        for _ in range(20):
            dx, dy = rng.randint(-90, 90), rng.randint(-90, 90)
            if dx == 0 and dy == 0:
                dy = 1
            got = idx.extremal(Direction(dx, dy))
            best, lexmin = brute_extremal(ps, dx, dy)
            assert got.x * dx + got.y * dy == best
            assert got.xy == lexmin


def test_probe_count_logarithmic():
    rng = random.Random(99)
    # many points on a circle -> big hull
    pts = []
    for i in range(720):
        a = 2 * math.pi * i / 720
        pts.append((round(10_000 * math.cos(a)), round(10_000 * math.sin(a))))
    ps = PointSet(pts)
    idx = ExtremalIndex(ps)
    h = idx.hull.m
    cap = math.ceil(math.log2(h)) + 2
    for _ in range(200):
        dx, dy = rng.randint(-999, 999), rng.randint(-999, 999)
        if dx == 0 and dy == 0:
            continue
        _, probes = idx.extremal_with_probes(Direction(dx, dy))
        assert probes <= cap


def test_line_height_examples():
    idx = ExtremalIndex(S5)
    cv = idx.line_height(S5[0], S5[1])  # (0,0)->(4,0)
    assert cv.value_sq == 16
    assert isinstance(cv.kind, LineHeight) and cv.kind.p is not None

    idxT = ExtremalIndex(T)
    cv = idxT.line_height(T[1], T[2])  # (4,0)->(0,4)
    assert cv.value_sq == 8
    assert cv.kind.p == 0  # witness (0,0)
    cv = idxT.line_height(T[1], T[0])  # (4,0)->(0,0): empty halfplane below
    assert cv.value_sq == 0 and cv.kind.p is None


def test_line_height_matches_brute_all_pairs():
    rng = random.Random(13)
    for trial in range(25):
        n = rng.randint(2, 40)
        ps = PointSet([(rng.randint(-80, 80), rng.randint(-80, 80)) for _ in range(n)])
        idx = ExtremalIndex(ps)
        for a in ps:
            for b in ps:
                if a.index == b.index:
                    continue
                assert idx.line_height(a, b).value_sq == brute_line_height(ps, a, b)


def test_order_independence():
    rng = random.Random(5)
    coords = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(60)]
    ps1 = PointSet(coords)
    shuffled = coords[:]
    rng.shuffle(shuffled)
    ps2 = PointSet(shuffled)
    i1, i2 = ExtremalIndex(ps1), ExtremalIndex(ps2)
    for _ in range(200):
        dx, dy = rng.randint(-30, 30), rng.randint(-30, 30)
        if dx == 0 and dy == 0:
            continue
        assert i1.extremal(Direction(dx, dy)).xy == i2.extremal(Direction(dx, dy)).xy


def test_build_cached():
    ps = PointSet([(0, 0), (1, 0), (0, 1)])
    assert build_extremal_index(ps) is build_extremal_index(ps)


def test_direction_validation():
    with pytest.raises(ValueError):
        Direction(0, 0)
