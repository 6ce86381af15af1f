"""Minimum-cardinality subset decisions at a squared-distance threshold.

``decide(P, t, k)`` answers: is there a subset Q of P with |Q| <= k whose
hull keeps every point of P within the threshold (one-sided Hausdorff), and
if so, what is the minimum such cardinality and a realizing subset?

The key reductions:

* Only the hull vertices of P need explicit coverage: the distance to CH(Q)
  is a convex function, so its maximum over CH(P) is attained at a vertex.
* In an optimal Q every point is a vertex of CH(Q), and walking the hull of
  P counterclockwise, the nearest-feature projections onto CH(Q) advance
  cyclically, so the hull vertices split into contiguous cyclic arcs, one
  per edge of CH(Q), each arc within the threshold of its edge segment.

Feasibility for m >= 3 therefore reduces to finding a closed walk of m
candidate points whose consecutive segments cover consecutive vertex arcs
tiling the cycle.  Soundness of a found walk is unconditional (each walk
segment lies inside CH of the walk's points); completeness follows from the
arc decomposition above.  Three implementations with independent structure
are provided (exhaustive, simple reference DP, tiered production DP) and
are tested against each other; the exhaustive one is the semantic anchor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .fastnum import INT64_SAFE_COORD_BOUND, le_ratio_vec
from .geometry import (
    Point,
    PointSet,
    SquaredDistance,
    _seg_sq_dist_ratio,
    convex_hull,
    sq_dist_point_convex_polygon,
)

BRUTE_MAX_N = 16
REFERENCE_MAX_N = 48
_SCALAR_N = 32  # below this, numpy call overhead beats vectorization


class Mode(Enum):
    CLOSED = "closed"  # D_H^2 <= value
    OPEN = "open"      # D_H^2 <  value (the infinitesimally shifted test)


@dataclass(frozen=True)
class Threshold:
    value_sq: SquaredDistance
    mode: Mode

    def accepts(self, d_sq: Fraction) -> bool:
        if self.mode is Mode.CLOSED:
            return d_sq <= self.value_sq
        return d_sq < self.value_sq

    @property
    def strict(self) -> bool:
        return self.mode is Mode.OPEN

    def __str__(self) -> str:
        op = "<" if self.strict else "<="
        return f"D^2 {op} {self.value_sq}"


def closed(value_sq) -> Threshold:
    return Threshold(Fraction(value_sq), Mode.CLOSED)


def open_below(value_sq) -> Threshold:
    return Threshold(Fraction(value_sq), Mode.OPEN)


@dataclass(frozen=True)
class DeciderVerdict:
    """Either ``kopt > k`` (exceeds) or a minimum-cardinality witness."""

    feasible: bool
    kopt: Optional[int] = None
    subset: Optional[tuple[int, ...]] = None

    @staticmethod
    def exceeds() -> "DeciderVerdict":
        return DeciderVerdict(False)

    @staticmethod
    def of(subset: Sequence[int]) -> "DeciderVerdict":
        sub = tuple(sorted(set(subset)))
        return DeciderVerdict(True, len(sub), sub)

    @property
    def is_exceeds(self) -> bool:
        return not self.feasible


# ---------------------------------------------------------------------------
# shared exact machinery


def hull_vertex_indices(ps: PointSet) -> list[int]:
    return [v.index for v in ps.hull.vertices]


def _covered_exact(vx, vy, ax, ay, bx, by, tnum, tden, strict) -> bool:
    num, den = _seg_sq_dist_ratio(vx, vy, ax, ay, bx, by)
    lhs = num * tden
    rhs = tnum * den
    return lhs < rhs if strict else lhs <= rhs


def subset_value_sq(ps: PointSet, subset: Sequence[int]) -> Fraction:
    """Exact one-sided Hausdorff value of a subset, via hull vertices only."""
    hull_q = convex_hull([ps[i] for i in subset])
    return max(sq_dist_point_convex_polygon(ps[i], hull_q) for i in hull_vertex_indices(ps))


# ---------------------------------------------------------------------------
# exhaustive oracle (n <= BRUTE_MAX_N)


def _brute_table(ps: PointSet) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Per cardinality m (1-based), the minimum achievable value and its
    first-found realizing subset, enumerating all subsets once per set."""
    table = ps._cache.get("brute_table")
    if table is not None:
        return table
    n = ps.n
    if n > BRUTE_MAX_N:
        raise ValueError(f"brute enumeration limited to n <= {BRUTE_MAX_N}, got {n}")
    pts = ps.points
    best: list[Optional[tuple[Fraction, tuple[int, ...]]]] = [None] * (n + 1)
    for mask in range(1, 1 << n):
        idxs = [i for i in range(n) if mask >> i & 1]
        m = len(idxs)
        hull_q = convex_hull([pts[i] for i in idxs])
        val = max(sq_dist_point_convex_polygon(p, hull_q) for p in pts)
        if best[m] is None or val < best[m][0]:
            best[m] = (val, tuple(idxs))
    table = [b for b in best[1:]]
    ps._cache["brute_table"] = table
    return table


def brute_decide(ps: PointSet, t: Threshold, k: int) -> DeciderVerdict:
    """Exhaustive decision over subsets in increasing cardinality."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = _brute_table(ps)
    for m in range(1, min(k, ps.n) + 1):
        val, subset = table[m - 1]
        if t.accepts(val):
            return DeciderVerdict.of(subset)
    return DeciderVerdict.exceeds()


def brute_min_table(ps: PointSet) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Public view of the brute table: entry m-1 is (min value, subset) over
    subsets of cardinality exactly m."""
    return list(_brute_table(ps))


# ---------------------------------------------------------------------------
# simple reference DP (n <= REFERENCE_MAX_N): anchors at every (vertex
# position, point) pair; arcs start exactly at the anchored position.

_WILD = -1


def decide_reference(ps: PointSet, t: Threshold, k: int) -> DeciderVerdict:
    if k < 1:
        raise ValueError("k must be >= 1")
    n = ps.n
    if n > REFERENCE_MAX_N:
        raise ValueError(f"reference decider limited to n <= {REFERENCE_MAX_N}")
    tnum, tden = t.value_sq.numerator, t.value_sq.denominator
    strict = t.strict
    hull_idx = hull_vertex_indices(ps)
    h = len(hull_idx)

    if tnum < 0 or (strict and tnum == 0):
        return DeciderVerdict.exceeds()
    if not strict and tnum == 0:
        return DeciderVerdict.of(hull_idx) if h <= k else DeciderVerdict.exceeds()

    pts = ps.coords
    V = [pts[i] for i in hull_idx]

    def cov(vi: int, y: int, z: int) -> bool:
        vx, vy = V[vi]
        return _covered_exact(vx, vy, *pts[y], *pts[z], tnum, tden, strict)

    # m = 1
    for q in range(n):
        if all(cov(i, q, q) for i in range(h)):
            return DeciderVerdict.of([q])
    if k == 1:
        return DeciderVerdict.exceeds()
    # m = 2
    for a in range(n):
        for b in range(a + 1, n):
            if all(cov(i, a, b) for i in range(h)):
                return DeciderVerdict.of([a, b])
    if k == 2 or h <= 2:
        return DeciderVerdict.exceeds()

    run_memo: dict[tuple[int, int, int], int] = {}

    def runlen(y: int, z: int, p: int) -> int:
        """Length of the covered vertex run starting at position p (mod h)."""
        if y > z:
            y, z = z, y
        p0 = p % h
        key = (y, z, p0)
        r = run_memo.get(key)
        if r is None:
            r = 0
            while r < h and cov((p0 + r) % h, y, z):
                r += 1
            run_memo[key] = r
        return r

    best_m: Optional[int] = None
    best_subset: Optional[tuple[int, ...]] = None
    if h <= k:
        best_m, best_subset = h, tuple(hull_idx)

    for sigma in range(h):
        target = sigma + h
        for anchor in range(n):
            limit = min(k, (best_m - 1) if best_m is not None else k)
            if limit < 3:
                break
            # frontier: point -> (pos, trail);  wild: (pos, trail) or None
            frontier: dict[int, tuple[int, tuple[int, ...]]] = {}
            wild: Optional[tuple[int, tuple[int, ...]]] = None
            for z in range(n):
                r = runlen(anchor, z, sigma)
                if r > 0:
                    pos = sigma + min(r, h)
                    cur = frontier.get(z)
                    if cur is None or pos > cur[0]:
                        frontier[z] = (pos, (anchor, z))
            depth = 1
            found = None
            while depth < limit and (frontier or wild):
                depth += 1
                new_frontier: dict[int, tuple[int, tuple[int, ...]]] = {}
                new_wild: Optional[tuple[int, tuple[int, ...]]] = None
                for y, (pos, trail) in frontier.items():
                    if pos < target:
                        for z in range(n):
                            r = runlen(y, z, pos)
                            if r > 0:
                                npos = min(pos + r, target)
                                cur = new_frontier.get(z)
                                if cur is None or npos > cur[0]:
                                    new_frontier[z] = (npos, trail + (z,))
                    # empty arc: endpoint becomes unconstrained
                    if new_wild is None or pos > new_wild[0]:
                        new_wild = (pos, trail)
                if wild is not None:
                    wpos, wtrail = wild
                    if wpos < target:
                        for z in range(n):
                            r = max(runlen(w, z, wpos) for w in range(n))
                            if r > 0:
                                npos = min(wpos + r, target)
                                # materialize the wildcard's concrete point
                                wconc = next(
                                    w for w in range(n) if runlen(w, z, wpos) == r
                                )
                                cur = new_frontier.get(z)
                                if cur is None or npos > cur[0]:
                                    new_frontier[z] = (npos, wtrail + (wconc, z))
                frontier, wild = new_frontier, new_wild
                if depth >= 3:
                    hit = frontier.get(anchor)
                    if hit is not None and hit[0] >= target:
                        found = hit[1]
                    elif wild is not None and wild[0] >= target:
                        found = wild[1] + (anchor,)
                if found is not None:
                    break
            if found is not None:
                subset = tuple(sorted(set(found)))
                if best_m is None or len(subset) < best_m:
                    best_m, best_subset = len(subset), subset
    if best_m is not None and best_m <= k:
        return DeciderVerdict.of(best_subset)
    return DeciderVerdict.exceeds()


# ---------------------------------------------------------------------------
# production decider


class _Ctx:
    """Per-call working state: exact coverage primitives over int64 arrays,
    slab-width run table, and memoized wildcard expansions."""

    def __init__(self, ps: PointSet, t: Threshold):
        self.ps = ps
        self.n = ps.n
        if ps.coord_bound > INT64_SAFE_COORD_BOUND:
            raise ValueError(
                "coordinates exceed the int64-safe bound of the fast decider; "
                "scale inputs below 1e9 or use decide_reference/brute_decide"
            )
        self.coords = ps.coords
        arr = ps.coords_array
        self.X = arr[:, 0].copy()
        self.Y = arr[:, 1].copy()
        self.hull_idx = hull_vertex_indices(ps)
        self.h = len(self.hull_idx)
        self.V = [self.coords[i] for i in self.hull_idx]
        self.tnum = t.value_sq.numerator
        self.tden = t.value_sq.denominator
        self.tnum_f = float(self.tnum)
        self.tden_f = float(self.tden)
        self.strict = t.strict
        self._w_table: Optional[list[int]] = None
        self._best2: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        self._run_scalar_memo: dict[tuple[int, int, int], int] = {}
        self._back_scalar_memo: dict[tuple[int, int], int] = {}
        self._lb_arrays: dict[int, np.ndarray] = {}

    # -- exact predicates ------------------------------------------------

    def cov_vec(self, vi: int, y: int, zidx: np.ndarray) -> np.ndarray:
        """Exact mask: hull vertex vi within threshold of segment (y, z)."""
        if self.n <= _SCALAR_N:
            return np.fromiter(
                (self.cov_scalar(vi, y, int(z)) for z in zidx), dtype=bool, count=len(zidx)
            )
        vx, vy = self.V[vi]
        yx, yy = self.coords[y]
        zx = self.X[zidx]
        zy = self.Y[zidx]
        abx = zx - yx
        aby = zy - yy
        ab2 = abx * abx + aby * aby
        apx = vx - yx
        apy = vy - yy
        dot = apx * abx + apy * aby
        bpx = vx - zx
        bpy = vy - zy
        dz2 = bpx * bpx + bpy * bpy
        dy2 = apx * apx + apy * apy  # scalar: distance to endpoint y
        cross = apx * aby - apy * abx
        case_line = (dot > 0) & (dot < ab2)
        case_y = dot <= 0
        crossf = cross.astype(np.float64)
        numf = np.where(case_line, crossf * crossf, np.where(case_y, float(dy2), dz2.astype(np.float64)))
        denf = np.where(case_line, ab2.astype(np.float64), 1.0)

        def exact_pair(i: int) -> tuple[int, int]:
            return _seg_sq_dist_ratio(vx, vy, yx, yy, int(zx[i]), int(zy[i]))

        return le_ratio_vec(numf, denf, self.tnum_f, self.tden_f, self.strict,
                            exact_pair, self.tnum, self.tden)

    def point_cov_vec(self, vi: int) -> np.ndarray:
        """Mask over all points: d^2(point, hull vertex vi) within threshold."""
        if self.n <= _SCALAR_N:
            vx, vy = self.V[vi]
            out = np.empty(self.n, dtype=bool)
            for i, (px, py) in enumerate(self.coords):
                d2 = (px - vx) ** 2 + (py - vy) ** 2
                lhs, rhs = d2 * self.tden, self.tnum
                out[i] = lhs < rhs if self.strict else lhs <= rhs
            return out
        vx, vy = self.V[vi]
        dx = self.X - vx
        dy = self.Y - vy
        d2 = dx * dx + dy * dy

        def exact_pair(i: int) -> tuple[int, int]:
            return (int(d2[i]), 1)

        return le_ratio_vec(d2.astype(np.float64), 1.0, self.tnum_f, self.tden_f,
                            self.strict, exact_pair, self.tnum, self.tden)

    def cov_scalar(self, vi: int, y: int, z: int) -> bool:
        vx, vy = self.V[vi]
        return _covered_exact(vx, vy, *self.coords[y], *self.coords[z],
                              self.tnum, self.tden, self.strict)

    def run_scalar(self, y: int, z: int, p: int) -> int:
        """Covered run length starting at position p (mod h), capped at h."""
        if y > z:
            y, z = z, y
        p0 = p % self.h
        key = (y, z, p0)
        r = self._run_scalar_memo.get(key)
        if r is None:
            r = 0
            while r < self.h and self.cov_scalar((p0 + r) % self.h, y, z):
                r += 1
            self._run_scalar_memo[key] = r
        return r

    def reach_vec(self, y: int, zidx: np.ndarray, p: int, cap: int) -> np.ndarray:
        """Absolute reach of runs from position p for segments (y, z)."""
        if self.n <= _SCALAR_N:
            return np.fromiter(
                (min(p + self.run_scalar(y, int(z), p), cap) for z in zidx),
                dtype=np.int64,
                count=len(zidx),
            )
        reach = np.full(zidx.shape[0], p, dtype=np.int64)
        alive = np.arange(zidx.shape[0])
        q = p
        while q < cap and alive.size:
            m = self.cov_vec(q % self.h, y, zidx[alive])
            alive = alive[m]
            reach[alive] = q + 1
            q += 1
        return reach

    def back_scalar(self, y: int, z: int) -> int:
        if y > z:
            y, z = z, y
        key = (y, z)
        b = self._back_scalar_memo.get(key)
        if b is None:
            b = 0
            while b < self.h and self.cov_scalar((-1 - b) % self.h, y, z):
                b += 1
            self._back_scalar_memo[key] = b
        return b

    def backlen_vec(self, y: int, zidx: np.ndarray) -> np.ndarray:
        """Length of the covered run extending backward from position -1."""
        if self.n <= _SCALAR_N:
            return np.fromiter(
                (self.back_scalar(y, int(z)) for z in zidx), dtype=np.int64, count=len(zidx)
            )
        back = np.zeros(zidx.shape[0], dtype=np.int64)
        alive = np.arange(zidx.shape[0])
        q = 1
        while q < self.h and alive.size:
            m = self.cov_vec((-q) % self.h, y, zidx[alive])
            alive = alive[m]
            back[alive] = q
            q += 1
        return back

    def best2(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        """Per endpoint z: the max reach from p over every possible previous
        point w (the wildcard expansion), plus the first argmax w."""
        hit = self._best2.get(p)
        if hit is not None:
            return hit
        n = self.n
        allz = np.arange(n)
        best = np.full(n, p, dtype=np.int64)
        arg = np.zeros(n, dtype=np.int64)
        for w in range(n):
            r = self.reach_vec(w, allz, p, p + self.h)
            better = r > best
            best[better] = r[better]
            arg[better] = w
        self._best2[p] = (best, arg)
        return best, arg

    # -- slab-width lower bound -------------------------------------------

    def _run_width_fits(self, i: int, L: int) -> bool:
        """True iff hull vertices i..i+L-1 fit in a slab of width 2r."""
        if L <= 2:
            return True
        ii = [(i + j) % self.h for j in range(L)]
        rx = np.array([self.V[j][0] for j in ii], dtype=np.int64)
        ry = np.array([self.V[j][1] for j in ii], dtype=np.int64)
        # closed convex polygon: chain edges plus the closing chord
        four_tnum = 4 * self.tnum
        for e in range(L):
            ex1, ey1 = int(rx[e]), int(ry[e])
            ex2, ey2 = int(rx[(e + 1) % L]), int(ry[(e + 1) % L])
            dx, dy = ex2 - ex1, ey2 - ey1
            ab2 = dx * dx + dy * dy
            if ab2 == 0:
                continue
            cr = dx * (ry - ey1) - dy * (rx - ex1)
            mc = int(np.abs(cr).max())
            lhs = mc * mc * self.tden
            rhs = four_tnum * ab2
            if (lhs < rhs) if self.strict else (lhs <= rhs):
                return True
        return False

    def w_table(self) -> list[int]:
        if self._w_table is not None:
            return self._w_table
        h = self.h
        width_sq = _hull_width_sq(self.ps)
        lhs = width_sq.numerator * self.tden
        rhs = 4 * self.tnum * width_sq.denominator
        if (lhs < rhs) if self.strict else (lhs <= rhs):
            # the whole hull fits in one slab: every run does too
            self._w_table = [h] * h
            return self._w_table
        W = []
        for i in range(h):
            lo = 2  # any 2 points fit a zero-width slab
            hi = h
            # exponential then binary search; fits() is monotone in L
            step = 2
            while lo + step <= hi and self._run_width_fits(i, lo + step):
                lo += step
                step *= 2
            hi = min(hi, lo + step)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if self._run_width_fits(i, mid):
                    lo = mid
                else:
                    hi = mid - 1
            W.append(lo)
        self._w_table = W
        return W

    def lb_jumps(self, p: int, target: int) -> int:
        W = self.w_table()
        cnt = 0
        while p < target:
            p += W[p % self.h]
            cnt += 1
        return cnt

    def lb_jumps_array(self, target: int) -> np.ndarray:
        """jumps[p] = lb_jumps(p, target) for p in [0, target]; memoized."""
        arr = self._lb_arrays.get(target)
        if arr is None:
            W = self.w_table()
            arr = np.zeros(target + 1, dtype=np.int64)
            for p in range(target - 1, -1, -1):
                arr[p] = 1 + arr[min(p + W[p % self.h], target)]
            self._lb_arrays[target] = arr
        return arr

    def global_slab_lb(self) -> int:
        return min(self.lb_jumps(s, s + self.h) for s in range(self.h))


def _hull_width_sq(ps: PointSet) -> Fraction:
    """Squared width of the hull: min over hull edges of the max squared
    distance from the edge's line to the hull vertices.  Cached."""
    w = ps._cache.get("width_sq")
    if w is not None:
        return w
    idxs = hull_vertex_indices(ps)
    V = [ps.coords[i] for i in idxs]
    h = len(V)
    if h <= 2:
        w = Fraction(0)
    else:
        w = None
        for e in range(h):
            ex1, ey1 = V[e]
            ex2, ey2 = V[(e + 1) % h]
            dx, dy = ex2 - ex1, ey2 - ey1
            ab2 = dx * dx + dy * dy
            mc = max(abs(dx * (y - ey1) - dy * (x - ex1)) for x, y in V)
            cand = Fraction(mc * mc, ab2)
            if w is None or cand < w:
                w = cand
    ps._cache["width_sq"] = w
    return w


def _hull_diam_sq(ps: PointSet) -> Fraction:
    d = ps._cache.get("diam_sq")
    if d is not None:
        return d
    idxs = hull_vertex_indices(ps)
    V = [ps.coords[i] for i in idxs]
    best = 0
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            v = (V[i][0] - V[j][0]) ** 2 + (V[i][1] - V[j][1]) ** 2
            if v > best:
                best = v
    d = Fraction(best)
    ps._cache["diam_sq"] = d
    return d


_WILD_KEY = -1


def decide(
    ps: PointSet,
    t: Threshold,
    k: int,
    *,
    lower_bound: int = 1,
    feasible_hint: Optional[Sequence[int]] = None,
) -> DeciderVerdict:
    """Decide whether some subset of size <= k satisfies the threshold, and
    return the minimum cardinality plus a realizing subset if so.

    ``lower_bound`` is a caller-certified lower bound on the answer (derived,
    e.g., from monotonicity against previously decided thresholds); an
    unsound value voids the minimality guarantee.  ``feasible_hint`` is a
    candidate subset that is verified exactly before use; if its size equals
    the effective lower bound the search is skipped entirely.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lower_bound = max(1, lower_bound)
    tnum = t.value_sq.numerator
    hull_idx = hull_vertex_indices(ps)
    h = len(hull_idx)

    # degenerate thresholds: only the exact-hull subset can achieve 0
    if tnum < 0 or (t.strict and tnum == 0):
        return DeciderVerdict.exceeds()
    if not t.strict and tnum == 0:
        return DeciderVerdict.of(hull_idx) if h <= k else DeciderVerdict.exceeds()

    # the minimum cardinality is independent of k: remember it per threshold
    cache = ps._cache.setdefault("decide_cache", {})
    ckey = (tnum, t.value_sq.denominator, t.strict)
    rec = cache.get(ckey)
    if rec is not None:
        lb_c, kopt_c, sub_c = rec
        if kopt_c is not None:
            return DeciderVerdict.of(sub_c) if kopt_c <= k else DeciderVerdict.exceeds()
        if lb_c > k:
            return DeciderVerdict.exceeds()
        lower_bound = max(lower_bound, lb_c)

    verdict = _decide_search(ps, t, k, lower_bound, feasible_hint, hull_idx)
    if verdict.feasible:
        cache[ckey] = (verdict.kopt, verdict.kopt, verdict.subset)
    else:
        prev = rec[0] if rec is not None else 1
        cache[ckey] = (max(prev, k + 1), None, None)
    return verdict


def _decide_search(
    ps: PointSet,
    t: Threshold,
    k: int,
    lower_bound: int,
    feasible_hint: Optional[Sequence[int]],
    hull_idx: list[int],
) -> DeciderVerdict:
    tnum = t.value_sq.numerator
    h = len(hull_idx)
    incumbent: Optional[tuple[int, ...]] = None
    if feasible_hint is not None:
        hint = tuple(sorted(set(feasible_hint)))
        if 0 < len(hint) <= k and t.accepts(subset_value_sq(ps, hint)):
            incumbent = hint
            if len(incumbent) <= lower_bound:
                return DeciderVerdict.of(incumbent)
    if h <= k and (incumbent is None or h < len(incumbent)):
        incumbent = tuple(hull_idx)  # value 0: accepted since tnum > 0
        if len(incumbent) <= lower_bound:
            return DeciderVerdict.of(incumbent)

    ctx = _Ctx(ps, t)
    four = 4 * ctx.tnum

    # m = 1
    if lower_bound <= 1:
        diam = _hull_diam_sq(ps)
        if diam.numerator * ctx.tden <= four * diam.denominator:
            alive = np.ones(ps.n, dtype=bool)
            for vi in range(h):
                alive[alive] = ctx.point_cov_vec(vi)[alive]
                if not alive.any():
                    break
            else:
                return DeciderVerdict.of([int(np.argmax(alive))])
    if k == 1:
        return DeciderVerdict.exceeds()

    # m = 2
    if lower_bound <= 2:
        width = _hull_width_sq(ps)
        if width.numerator * ctx.tden <= four * width.denominator:
            pair = _scan_pairs(ctx)
            if pair is not None:
                return DeciderVerdict.of(pair)
    if k == 2 or h <= 2:
        if incumbent is not None:
            return DeciderVerdict.of(incumbent)
        return DeciderVerdict.exceeds()

    # m >= 3: bounded search over closed covering walks
    lb = max(lower_bound, 3, ctx.global_slab_lb())
    if incumbent is not None and len(incumbent) <= lb:
        return DeciderVerdict.of(incumbent)
    if lb > k:
        assert incumbent is None
        return DeciderVerdict.exceeds()

    best = _chain_search(ctx, k, incumbent, lb)
    if best is not None and len(best) <= k:
        return DeciderVerdict.of(best)
    return DeciderVerdict.exceeds()


def _scan_pairs(ctx: _Ctx) -> Optional[tuple[int, int]]:
    """First (lexicographic) pair whose segment covers every hull vertex."""
    n, h = ctx.n, ctx.h
    # probe vertices farthest from each anchor first: fastest mask shrink
    for a in range(n - 1):
        zidx = np.arange(a + 1, n)
        ax, ay = ctx.coords[a]
        order = sorted(
            range(h),
            key=lambda vi: -((ctx.V[vi][0] - ax) ** 2 + (ctx.V[vi][1] - ay) ** 2),
        )
        alive = zidx
        for vi in order:
            alive = alive[ctx.cov_vec(vi, a, alive)]
            if alive.size == 0:
                break
        else:
            return (a, int(alive[0]))
    return None


def _chain_search(
    ctx: _Ctx, k: int, incumbent: Optional[tuple[int, ...]], lb: int
) -> Optional[tuple[int, ...]]:
    """Exact minimum over closed covering walks of length in [3, k].

    Anchored at cut position 0: enumerate the source point b of the walk edge
    whose arc contains hull vertex 0.  A first edge (b, z) credits its
    maximal run through position 0 both forward (DP position) and backward
    (per-state closure target tau = h - backlen); the walk must return to b
    having covered [0, tau).  States are Pareto sets over (position, tau)
    per endpoint, with an any-point wildcard state modelling edges that
    cover an empty arc.  Branch-and-bound uses the slab-run jump bound.
    """
    n, h = ctx.n, ctx.h
    allz = np.arange(n)
    best_subset = incumbent
    bound = min(k, (len(incumbent) - 1) if incumbent is not None else k)

    # anchor order: near the cut vertex first (more likely to cover it)
    v0x, v0y = ctx.V[0]
    d0 = (ctx.X - v0x) ** 2 + (ctx.Y - v0y) ** 2
    anchor_order = np.argsort(d0, kind="stable")

    # greedy probes from the nearest anchors to seed the incumbent
    for b in anchor_order[: min(8, n)]:
        sub = _greedy_probe(ctx, int(b), bound)
        if sub is not None and (best_subset is None or len(sub) < len(best_subset)):
            best_subset = sub
            if len(best_subset) <= lb:
                return best_subset
            bound = min(bound, len(best_subset) - 1)

    for b_ in anchor_order:
        if bound < 3:
            break
        b = int(b_)
        got = _anchor_dp(ctx, b, bound)
        if got is not None:
            assert best_subset is None or len(got) < len(best_subset)
            best_subset = got
            if len(best_subset) <= lb:
                return best_subset
            bound = min(bound, len(best_subset) - 1)
    return best_subset


def _first_edge_states(ctx: _Ctx, b: int):
    """Initial (z, pos, tau) triples for anchor b: segments (b, z) covering
    hull vertex 0, with maximal runs forward and backward through it."""
    allz = np.arange(ctx.n)
    m0 = ctx.cov_vec(0, b, allz)
    zc = allz[m0]
    if zc.size == 0:
        return zc, None, None
    fwd = ctx.reach_vec(b, zc, 0, ctx.h)  # >= 1 by construction
    back = ctx.backlen_vec(b, zc)
    tau = ctx.h - back
    return zc, fwd, tau


def _greedy_probe(ctx: _Ctx, b: int, bound: int) -> Optional[tuple[int, ...]]:
    """One maximal-advancement walk from anchor b; feasible subset or None."""
    if bound < 3:
        return None
    zc, fwd, tau = _first_edge_states(ctx, b)
    if zc.size == 0:
        return None
    score = fwd - tau
    j = int(np.argmax(score))
    y, pos, target = int(zc[j]), int(fwd[j]), int(tau[j])
    trail = [b, y]
    allz = np.arange(ctx.n)
    depth = 1
    while depth < bound:
        depth += 1
        if pos >= target and depth >= 3:
            trail.append(b)  # close with an empty-arc edge
            return tuple(sorted(set(trail)))
        reach = ctx.reach_vec(y, allz, pos, target)
        if reach[b] >= target and depth >= 3:
            trail.append(b)
            return tuple(sorted(set(trail)))
        j = int(np.argmax(reach))
        if int(reach[j]) <= pos:
            return None  # stuck
        y, pos = j, int(reach[j])
        trail.append(y)
    return None


def _anchor_dp(ctx: _Ctx, b: int, bound: int) -> Optional[tuple[int, ...]]:
    """Layered Pareto DP from anchor b; best closed walk of length <= bound.

    Returns the subset of the shortest accepted walk, or None.  States per
    endpoint are Pareto-minimal lists of (pos, tau, trail); the wildcard key
    models an endpoint reached by an empty-arc edge.
    """
    zc, fwd, tau = _first_edge_states(ctx, b)
    if zc.size == 0:
        return None
    h = ctx.h
    allz = np.arange(ctx.n)
    frontier: dict[int, list[tuple[int, int, tuple]]] = {}
    for i in range(zc.size):
        pos, tg = int(fwd[i]), int(tau[i])
        if 1 + ctx.lb_jumps(pos, tg) > bound:
            continue
        _pareto_add(frontier, int(zc[i]), pos, tg, (b, int(zc[i])))
    depth = 1
    while frontier and depth < bound:
        depth += 1
        nxt: dict[int, list[tuple[int, int, tuple]]] = {}
        for key in sorted(frontier):
            for pos, tg, trail in frontier[key]:
                if key == _WILD_KEY:
                    reach, arg = ctx.best2(pos)
                    reach = np.minimum(reach, tg)
                else:
                    reach = ctx.reach_vec(key, allz, pos, tg)
                    arg = None
                    # spawn the wildcard (empty arc) from a progressing state
                    _pareto_add(nxt, _WILD_KEY, pos, tg, trail)
                # accept: a progressing edge back to the anchor closing the cycle
                if depth >= 3 and reach[b] >= tg:
                    if arg is None:
                        return tuple(sorted(set(trail + (b,))))
                    return tuple(sorted(set(trail + (int(arg[b]), b))))
                jumps = ctx.lb_jumps_array(tg)
                keep = (reach > pos) & (depth + jumps[np.minimum(reach, tg)] <= bound)
                for zi in np.nonzero(keep)[0]:
                    z = int(zi)
                    npos = int(reach[z])
                    if arg is None:
                        ntrail = trail + (z,)
                    else:
                        ntrail = trail + (int(arg[z]), z)
                    _pareto_add(nxt, z, npos, tg, ntrail)
        # wildcard closure: an empty final edge back to the anchor
        if depth >= 3:
            for pos, tg, trail in nxt.get(_WILD_KEY, ()):
                if pos >= tg:
                    return tuple(sorted(set(trail + (b,))))
        frontier = nxt
    return None


def _pareto_add(front: dict, key: int, pos: int, tau: int, trail: tuple) -> None:
    lst = front.get(key)
    if lst is None:
        front[key] = [(pos, tau, trail)]
        return
    for (p2, t2, _) in lst:
        if p2 >= pos and t2 <= tau:
            return  # dominated
    lst[:] = [(p2, t2, tr) for (p2, t2, tr) in lst if not (pos >= p2 and tau <= t2)]
    lst.append((pos, tau, trail))
