import random
from fractions import Fraction

import pytest

from hullbudget.canonical import enumerate_canonical_set
from hullbudget.decider import (
    Mode,
    Threshold,
    brute_decide,
    closed,
    decide,
    decide_reference,
    open_below,
    subset_value_sq,
)
from hullbudget.geometry import PointSet

S5 = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])


def thresholds_for(ps):
    """All canonical values plus midpoints between consecutive ones, plus a
    value beyond the maximum, in both modes."""
    vals = [cv.value_sq for cv in enumerate_canonical_set(ps)]
    probes = list(vals)
    for a, b in zip(vals, vals[1:]):
        probes.append((a + b) / 2)
    probes.append(vals[-1] * 2)
    probes.append(vals[0] / 2)
    out = []
    for v in probes:
        out.append(Threshold(v, Mode.CLOSED))
        out.append(Threshold(v, Mode.OPEN))
    return out


def check_verdict_pair(ps, t, k, got, want):
    assert got.feasible == want.feasible, (t, k, got, want)
    if want.feasible:
        assert got.kopt == want.kopt, (t, k, got, want)
        assert len(got.subset) == got.kopt
        assert t.accepts(subset_value_sq(ps, got.subset))


def random_pointset(rng, n, bound=25):
    return PointSet([(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(n)])


def test_spec_examples():
    check_verdict_pair(S5, closed(8), 1, decide(S5, closed(8), 1), brute_decide(S5, closed(8), 1))
    v = decide(S5, closed(8), 1)
    assert v.feasible and v.kopt == 1 and v.subset == (4,)
    v = decide(S5, open_below(8), 5)
    assert v.feasible and v.kopt == 4 and v.subset == (0, 1, 2, 3)
    assert decide(S5, closed(7), 3).is_exceeds
    # brute examples
    assert brute_decide(S5, closed(0), 4).kopt == 4
    assert brute_decide(S5, closed(0), 3).is_exceeds
    assert brute_decide(S5, closed(10**6), 1).kopt == 1


def test_brute_guard():
    big = PointSet([(i, i * i) for i in range(17)])
    with pytest.raises(ValueError):
        brute_decide(big, closed(1), 1)


def test_exhaustive_equivalence_small():
    """decide == decide_reference == brute_decide over every canonical
    threshold, midpoint, both modes, every k, on random instances."""
    rng = random.Random(20240901)
    for trial in range(60):
        n = rng.randint(3, 9)
        ps = random_pointset(rng, n, bound=12)
        for t in thresholds_for(ps):
            for k in range(1, ps.n + 1):
                b = brute_decide(ps, t, k)
                r = decide_reference(ps, t, k)
                d = decide(ps, t, k)
                check_verdict_pair(ps, t, k, r, b)
                check_verdict_pair(ps, t, k, d, b)


def test_equivalence_medium():
    """decide == decide_reference on larger instances where brute force is
    out of reach, across canonical thresholds near the interesting range."""
    rng = random.Random(77)
    for trial in range(12):
        n = rng.randint(12, 26)
        ps = random_pointset(rng, n, bound=40)
        vals = [cv.value_sq for cv in enumerate_canonical_set(ps)]
        picks = [vals[len(vals) // 8], vals[len(vals) // 3], vals[len(vals) // 2],
                 vals[2 * len(vals) // 3], vals[-1]]
        mids = [(a + b) / 2 for a, b in zip(picks, picks[1:])]
        for v in picks + mids:
            for mode in (Mode.CLOSED, Mode.OPEN):
                t = Threshold(v, mode)
                for k in (1, 2, 3, 5, 8, n):
                    r = decide_reference(ps, t, k)
                    d = decide(ps, t, k)
                    assert r.feasible == d.feasible, (trial, t, k)
                    if r.feasible:
                        assert r.kopt == d.kopt, (trial, t, k, r, d)
                        assert t.accepts(subset_value_sq(ps, d.subset))


def test_monotonicity_in_threshold_and_k():
    rng = random.Random(11)
    for trial in range(25):
        ps = random_pointset(rng, rng.randint(4, 10), bound=15)
        vals = [cv.value_sq for cv in enumerate_canonical_set(ps)]
        ks = range(1, ps.n + 1)
        picks = sorted(rng.sample(vals, min(4, len(vals))))
        for k in ks:
            prev_kopt = None
            for v in picks:
                cur = decide(ps, closed(v), ps.n)
                assert cur.feasible
                if prev_kopt is not None:
                    assert cur.kopt <= prev_kopt  # larger threshold never needs more
                prev_kopt = cur.kopt
                # open at v is at least as demanding as closed at v
                o = decide(ps, open_below(v), ps.n)
                if o.feasible:
                    assert o.kopt >= cur.kopt
                # feasibility at k implies feasibility at k+1 with equal kopt
                at_k = decide(ps, closed(v), k)
                if at_k.feasible and k < ps.n:
                    nxt = decide(ps, closed(v), k + 1)
                    assert nxt.feasible and nxt.kopt == at_k.kopt


def test_hints_do_not_change_answers():
    rng = random.Random(3)
    for trial in range(20):
        ps = random_pointset(rng, rng.randint(4, 9), bound=10)
        vals = [cv.value_sq for cv in enumerate_canonical_set(ps)]
        v = vals[len(vals) // 2]
        for mode in (Mode.CLOSED, Mode.OPEN):
            t = Threshold(v, mode)
            for k in range(1, ps.n + 1):
                base = decide(ps, t, k)
                if base.feasible:
                    # sound hints: exact kopt as lower bound, its subset as hint
                    with_hints = decide(ps, t, k, lower_bound=base.kopt,
                                        feasible_hint=base.subset)
                    assert with_hints.feasible and with_hints.kopt == base.kopt
                    loose = decide(ps, t, k, lower_bound=max(1, base.kopt - 1))
                    assert loose.feasible and loose.kopt == base.kopt
                # an infeasible hint must be ignored
                junk = decide(ps, t, k, feasible_hint=list(range(min(2, ps.n))))
                assert junk.feasible == base.feasible
                if base.feasible:
                    assert junk.kopt == base.kopt


def test_collinear_inputs():
    ps = PointSet([(i, 0) for i in range(7)])
    assert decide(ps, closed(0), 2).kopt == 2
    assert decide(ps, closed(0), 1).is_exceeds
    # the middle point (3,0) is 3 away from both hull endpoints
    assert decide(ps, closed(9), 1).feasible
    assert decide(ps, closed(8), 1).is_exceeds
    assert brute_decide(ps, closed(9), 1).feasible
    assert brute_decide(ps, closed(8), 1).is_exceeds


def test_single_point():
    ps = PointSet([(5, 5)])
    assert decide(ps, closed(0), 1).kopt == 1
    assert decide(ps, open_below(1), 1).kopt == 1
    assert decide(ps, open_below(0), 1).is_exceeds
