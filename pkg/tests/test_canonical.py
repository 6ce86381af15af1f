import random
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from hullbudget.canonical import (
    CanonicalValues,
    SampleBag,
    canonical_value_count,
    draw_sample_bag,
    enumerate_canonical_set,
    pairwise_rank_select,
    sample_line_value,
)
from hullbudget.extremal import build_extremal_index
from hullbudget.geometry import PointSet

T = PointSet([(0, 0), (4, 0), (0, 4)])
S5 = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(seed))


def test_rank_select_examples():
    ps = PointSet([(0, 0), (1, 0), (3, 0)])
    assert pairwise_rank_select(ps, 2) == 4
    assert pairwise_rank_select(ps, 1) == 1
    assert pairwise_rank_select(ps, 3) == 9
    # frozen from sorting all 10 squared pairwise distances of S5
    assert sorted(
        (S5[i].x - S5[j].x) ** 2 + (S5[i].y - S5[j].y) ** 2
        for i in range(5) for j in range(i + 1, 5)
    )[9] == 32
    assert pairwise_rank_select(S5, 10) == 32
    with pytest.raises(ValueError):
        pairwise_rank_select(S5, 11)
    with pytest.raises(ValueError):
        pairwise_rank_select(S5, 0)


def test_rank_select_matches_sort():
    rng = random.Random(8)
    for _ in range(10):
        n = rng.randint(2, 100)
        ps = PointSet([(rng.randint(-200, 200), rng.randint(-200, 200)) for _ in range(n)])
        vals = sorted(
            (ps[i].x - ps[j].x) ** 2 + (ps[i].y - ps[j].y) ** 2
            for i in range(ps.n) for j in range(i + 1, ps.n)
        )
        for r in rng.sample(range(1, len(vals) + 1), min(10, len(vals))):
            assert pairwise_rank_select(ps, r) == vals[r - 1]


def test_triangle_line_value_distribution():
    # enumerate all 6 ordered pairs: values {16, 0, 0, 16, 8, 0}
    idx = build_extremal_index(T)
    vals = []
    for a in T:
        for b in T:
            if a.index != b.index:
                vals.append(idx.line_height(a, b).value_sq)
    assert Counter(vals) == {Fraction(16): 2, Fraction(0): 3, Fraction(8): 1}


def test_sample_determinism_and_range():
    idx = build_extremal_index(T)
    seq1 = [sample_line_value(idx, rng_for(7)).value_sq for _ in range(1)]
    seq2 = [sample_line_value(idx, rng_for(7)).value_sq for _ in range(1)]
    assert seq1 == seq2
    rng = rng_for(11)
    for _ in range(50):
        v = sample_line_value(idx, rng).value_sq
        assert v in (Fraction(0), Fraction(8), Fraction(16))


def test_two_point_sampling():
    ps = PointSet([(0, 0), (5, 0)])
    idx = build_extremal_index(ps)
    rng = rng_for(3)
    for _ in range(10):
        assert sample_line_value(idx, rng).value_sq == 0


def test_draw_sample_bag_filtering():
    idx = build_extremal_index(T)
    empty = draw_sample_bag(idx, 0, (Fraction(0), None), rng_for(1))
    assert empty.pi_size == 0 and empty.values == ()
    bag = draw_sample_bag(idx, 600, (Fraction(1), Fraction(100)), rng_for(5))
    assert bag.pi_size == 600
    vals = Counter(cv.value_sq for cv in bag.values)
    assert set(vals) == {Fraction(8), Fraction(16)}
    # 16 appears for 2 of 6 ordered pairs, 8 for 1 of 6
    assert 0.3 < vals[Fraction(16)] / max(1, vals[Fraction(8)]) / 2 < 3.0
    none = draw_sample_bag(idx, 200, (Fraction(32), Fraction(33)), rng_for(5))
    assert none.values == ()


def test_vectorized_bag_matches_exact_path():
    rng = random.Random(17)
    for trial in range(6):
        n = rng.randint(70, 120)  # above the vectorization cutoff
        ps = PointSet([(rng.randint(-300, 300), rng.randint(-300, 300)) for _ in range(n)])
        idx = build_extremal_index(ps)
        xs = sorted(cv.value_sq for cv in enumerate_canonical_set(ps))
        lo, hi = xs[len(xs) // 4], xs[3 * len(xs) // 4]
        fast = draw_sample_bag(idx, 500, (lo, hi), rng_for(trial))
        slow = draw_sample_bag(idx, 500, (lo, hi), rng_for(trial), force_exact=True)
        assert [cv.value_sq for cv in fast.values] == [cv.value_sq for cv in slow.values]
        assert [(cv.kind.a, cv.kind.b) for cv in fast.values] == [
            (cv.kind.a, cv.kind.b) for cv in slow.values
        ]


def test_enumerate_examples():
    vals = [cv.value_sq for cv in enumerate_canonical_set(T)]
    assert vals == [8, 16, 32]
    s5_vals = [cv.value_sq for cv in enumerate_canonical_set(S5)]
    assert {8, 16, 32}.issubset(set(s5_vals))
    two = PointSet([(0, 0), (3, 4)])
    assert [cv.value_sq for cv in enumerate_canonical_set(two)] == [25]


def test_enumerate_sorted_and_reproducible_kinds():
    rng = random.Random(23)
    for _ in range(10):
        n = rng.randint(2, 30)
        ps = PointSet([(rng.randint(-40, 40), rng.randint(-40, 40)) for _ in range(n)])
        out = enumerate_canonical_set(ps)
        vals = [cv.value_sq for cv in out]
        assert vals == sorted(vals)
        assert len(set(vals)) == len(vals)
        assert all(v > 0 for v in vals)
        idx = build_extremal_index(ps)
        for cv in out:
            kind = cv.kind
            if hasattr(kind, "j"):  # pair distance
                p, q = ps[kind.i], ps[kind.j]
                assert Fraction((p.x - q.x) ** 2 + (p.y - q.y) ** 2) == cv.value_sq
            else:
                assert idx.line_height(ps[kind.a], ps[kind.b]).value_sq == cv.value_sq


def test_canonical_values_array_path_matches_enumeration():
    rng = random.Random(41)
    for _ in range(5):
        n = rng.randint(40, 90)
        ps = PointSet([(rng.randint(-500, 500), rng.randint(-500, 500)) for _ in range(n)])
        want = [cv.value_sq for cv in enumerate_canonical_set(ps)]
        cvs = CanonicalValues(ps)
        assert len(cvs) == len(want)
        for r in rng.sample(range(len(want)), min(25, len(want))):
            assert cvs.value_at(r) == want[r]
        assert canonical_value_count(ps) == len(want)
