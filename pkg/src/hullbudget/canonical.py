"""The canonical set of candidate optimal values and machinery over it.

A budgeted optimum is always realized either as a squared distance between
two input points (the pair family) or as the squared distance from a point
to the line through two other points, maximized over the open halfplane left
of that directed line (the line family).  This module provides rank selection
in the pair family, uniform sampling from the line family, and exact
enumeration of the full deduplicated set for baselines and tests.

Values of the line family are represented compactly as integer pairs
(cross, den) with value cross^2/den, so enumeration at tens of millions of
ordered pairs stays in int64 arrays; exact Fractions are materialized only
on access and wherever float keys are too close to call.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .extremal import CriticalValue, ExtremalIndex, LineHeight, PairDistance
from .fastnum import _MARGIN, ratio_in_open_interval_mask
from .geometry import PointSet, SquaredDistance

_VECTOR_COORD_BOUND = 30_000_000  # float64 dot products stay exact below this


def pairwise_rank_select(ps: PointSet, rank: int) -> SquaredDistance:
    """The rank-th smallest (1-based) of the C(n,2) squared pair distances,
    counted with multiplicity."""
    if ps.n < 2:
        raise ValueError("rank selection requires n >= 2")
    total = ps.n * (ps.n - 1) // 2
    if not 1 <= rank <= total:
        raise ValueError(f"rank {rank} out of range [1, {total}]")
    return Fraction(int(ps.sorted_pair_sq[rank - 1]))


def _draw_pairs(n: int, m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """m ordered pairs (i, j), i != j, uniform over the n(n-1) choices."""
    i = rng.integers(0, n, size=m, dtype=np.int64)
    j = rng.integers(0, n - 1, size=m, dtype=np.int64)
    j = j + (j >= i)
    return i, j


def sample_line_value(idx: ExtremalIndex, rng: np.random.Generator) -> CriticalValue:
    """One uniform draw from the line family (ordered-pair semantics)."""
    n = idx.ps.n
    if n < 2:
        raise ValueError("sampling requires n >= 2")
    i, j = _draw_pairs(n, 1, rng)
    return idx.line_height(idx.ps[int(i[0])], idx.ps[int(j[0])])


@dataclass(frozen=True)
class SampleBag:
    """Result of a batch of line-family draws.

    ``values`` holds only the draws strictly inside the requested interval,
    in draw order; ``pi_size`` is the total number of draws and
    ``source_pairs`` the number of ordered pairs they were drawn from.
    """

    values: tuple[CriticalValue, ...]
    pi_size: int
    source_pairs: int
    rng_seed: Optional[int] = None


def draw_sample_bag(
    idx: ExtremalIndex,
    m: int,
    interval: tuple[Fraction, Optional[Fraction]],
    rng: np.random.Generator,
    rng_seed: Optional[int] = None,
    force_exact: bool = False,
) -> SampleBag:
    """Draw ``m`` line-family values, keeping those strictly inside
    ``interval`` (lo, hi); ``hi`` may be None for +infinity.

    The vectorized path computes every value exactly in int64/float64 with
    margin-checked interval tests (exact fallback inside the band), so the
    retained values are identical to the pure path's.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    ps = idx.ps
    n = ps.n
    lo, hi = interval
    if m == 0 or n < 2:
        return SampleBag((), m, n * (n - 1), rng_seed)
    if force_exact or n < 64 or ps.coord_bound > _VECTOR_COORD_BOUND:
        ii, jj = _draw_pairs(n, m, rng)
        vals = []
        for t in range(m):
            cv = idx.line_height(ps[int(ii[t])], ps[int(jj[t])])
            if cv.value_sq > lo and (hi is None or cv.value_sq < hi):
                vals.append(cv)
        return SampleBag(tuple(vals), m, n * (n - 1), rng_seed)

    ii, jj = _draw_pairs(n, m, rng)
    hull_xy = np.array([ps.coords[i] for i in _hull_indices(ps)], dtype=np.int64)
    hull_f = hull_xy.astype(np.float64)
    X = ps.coords_array[:, 0]
    Y = ps.coords_array[:, 1]
    vals = []
    chunk = 1 << 19
    for s in range(0, m, chunk):
        a_i = ii[s : s + chunk]
        b_i = jj[s : s + chunk]
        ax, ay = X[a_i], Y[a_i]
        dx, dy = X[b_i] - ax, Y[b_i] - ay
        # left normal of the directed line; dot products are exact in float64
        ndir = np.stack([-dy, dx], axis=1).astype(np.float64)
        dots = ndir @ hull_f.T
        win = np.argmax(dots, axis=1)
        px = hull_xy[win, 0]
        py = hull_xy[win, 1]
        cross = dx * (py - ay) - dy * (px - ax)  # int64, exact
        den = dx * dx + dy * dy
        pos = cross > 0
        if not pos.any():
            continue
        crossp = cross[pos]
        denp = den[pos]
        cf = crossp.astype(np.float64)
        numf = cf * cf

        def exact_pair(t: int) -> tuple[int, int]:
            c = int(crossp[t])
            return (c * c, int(denp[t]))

        inmask = ratio_in_open_interval_mask(numf, denp.astype(np.float64), lo, hi, exact_pair)
        if not inmask.any():
            continue
        sel = np.nonzero(pos)[0][inmask]
        for t in sel:
            c = int(cross[t])
            d = int(den[t])
            kind = LineHeight(int(a_i[t]), int(b_i[t]), int(_hull_indices(ps)[int(win[t])]))
            vals.append(CriticalValue(Fraction(c * c, d), kind))
    return SampleBag(tuple(vals), m, n * (n - 1), rng_seed)


def _hull_indices(ps: PointSet) -> list[int]:
    idxs = ps._cache.get("hull_indices")
    if idxs is None:
        idxs = [v.index for v in ps.hull.vertices]
        ps._cache["hull_indices"] = idxs
    return idxs


# ---------------------------------------------------------------------------
# exact enumeration

ENUMERATE_MAX_N = 600


def enumerate_canonical_set(ps: PointSet) -> list[CriticalValue]:
    """All strictly positive candidate values, deduplicated and sorted.

    Each distinct value carries one representative witness: the first pair
    (i < j order) or, failing that, the first ordered pair (a, b) whose
    halfplane maximum realizes it.  Guarded to moderate n; larger instances
    should use :class:`CanonicalValues`.
    """
    if ps.n < 2:
        raise ValueError("canonical set requires n >= 2")
    if ps.n > ENUMERATE_MAX_N:
        raise ValueError(f"enumerate_canonical_set limited to n <= {ENUMERATE_MAX_N}")
    from .extremal import build_extremal_index

    idx = build_extremal_index(ps)
    seen: dict[Fraction, CriticalValue] = {}
    for i in range(ps.n):
        for j in range(i + 1, ps.n):
            dx = ps.coords[i][0] - ps.coords[j][0]
            dy = ps.coords[i][1] - ps.coords[j][1]
            v = Fraction(dx * dx + dy * dy)
            if v > 0 and v not in seen:
                seen[v] = CriticalValue(v, PairDistance(i, j))
    for a in range(ps.n):
        for b in range(ps.n):
            if a == b:
                continue
            cv = idx.line_height(ps[a], ps[b])
            if cv.value_sq > 0 and cv.value_sq not in seen:
                seen[cv.value_sq] = cv
    return [seen[v] for v in sorted(seen)]


class CanonicalValues:
    """Array-backed sorted distinct canonical values for large instances.

    Holds compact integer representations and materializes exact Fractions
    per access; ordering is by float key with exact resolution of any
    too-close-to-call neighbours, so ranks are exact.
    """

    def __init__(self, ps: PointSet):
        if ps.n < 2:
            raise ValueError("canonical set requires n >= 2")
        if ps.coord_bound > _VECTOR_COORD_BOUND:
            raise ValueError("coordinate bound too large for the array path")
        self.ps = ps
        pair_d2 = ps.sorted_pair_sq  # sorted int64, with multiplicity
        cross, den = _all_line_values(ps)
        keys = np.concatenate([pair_d2.astype(np.float64),
                               (cross.astype(np.float64) ** 2) / den.astype(np.float64)])
        self._pair_d2 = pair_d2
        self._cross = cross
        self._den = den
        self._npair = pair_d2.shape[0]
        order = np.argsort(keys, kind="stable")
        exact = self._exact_at
        # distinct representatives in ascending exact order
        reps: list[int] = []
        i = 0
        mm = order.shape[0]
        while i < mm:
            j = i
            while j + 1 < mm:
                ka, kb = keys[order[j]], keys[order[j + 1]]
                if abs(kb - ka) <= _MARGIN * max(abs(ka), abs(kb), 1e-300):
                    j += 1
                else:
                    break
            if j == i:
                reps.append(int(order[i]))
            else:
                firsts: dict[Fraction, int] = {}
                for g in order[i : j + 1]:
                    v = exact(int(g))
                    if v not in firsts:
                        firsts[v] = int(g)
                reps.extend(g for _, g in sorted(firsts.items()))
            i = j + 1
        self._reps = np.array(reps, dtype=np.int64)

    def _exact_at(self, g: int) -> Fraction:
        if g < self._npair:
            return Fraction(int(self._pair_d2[g]))
        t = g - self._npair
        c = int(self._cross[t])
        return Fraction(c * c, int(self._den[t]))

    def __len__(self) -> int:
        return self._reps.shape[0]

    def value_at(self, r: int) -> Fraction:
        """Exact value of the r-th (0-based) distinct canonical value."""
        return self._exact_at(int(self._reps[r]))


def canonical_value_count(ps: PointSet) -> int:
    """Number of distinct strictly positive canonical values."""
    if ps.n <= ENUMERATE_MAX_N:
        return len(enumerate_canonical_set(ps))
    return len(CanonicalValues(ps))


def _all_line_values(ps: PointSet) -> tuple[np.ndarray, np.ndarray]:
    """(cross, den) arrays over ordered pairs with a nonempty left halfplane
    (strictly positive values only), in lexicographic (a, b) order."""
    n = ps.n
    hull_idx = _hull_indices(ps)
    hull_xy = np.array([ps.coords[i] for i in hull_idx], dtype=np.int64)
    hull_f = hull_xy.astype(np.float64)
    X = ps.coords_array[:, 0]
    Y = ps.coords_array[:, 1]
    crosses = []
    dens = []
    base = np.arange(n)
    ablock = max(1, (1 << 21) // max(1, n - 1))
    for a0 in range(0, n, ablock):
        a1 = min(a0 + ablock, n)
        a_i = np.repeat(np.arange(a0, a1), n - 1)
        b_i = np.concatenate([np.delete(base, a) for a in range(a0, a1)])
        ax, ay = X[a_i], Y[a_i]
        dx, dy = X[b_i] - ax, Y[b_i] - ay
        ndir = np.stack([-dy, dx], axis=1).astype(np.float64)
        dots = ndir @ hull_f.T
        win = np.argmax(dots, axis=1)
        px = hull_xy[win, 0]
        py = hull_xy[win, 1]
        cross = dx * (py - ay) - dy * (px - ax)
        den = dx * dx + dy * dy
        pos = cross > 0
        crosses.append(cross[pos])
        dens.append(den[pos])
    return np.concatenate(crosses), np.concatenate(dens)
