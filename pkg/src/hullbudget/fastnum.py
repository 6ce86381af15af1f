"""Vectorized exact-decision helpers.

The pattern throughout: linear and quadratic integer expressions (dots,
crosses, squared norms) are computed exactly in int64; comparisons whose
products would overflow are done in float64 with a conservative error margin,
and only the indices inside the margin band are re-decided with Python big
ints.  Results are therefore always exact; floats only prune work.

All helpers assume coordinate magnitudes at most ~1e9 so that the int64
intermediates above cannot overflow (the expressions are bounded by 8*B^2).
Callers with larger coordinates must use the pure-Python paths.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

INT64_SAFE_COORD_BOUND = 1_000_000_000

# 2^-46: ~128x the worst-case accumulated relative rounding error of the
# 3-4 flop comparison expressions below; anything inside the band is re-done
# exactly, so the constant only trades float pruning power for fallback work.
_MARGIN = 2.0 ** -46


def le_ratio_vec(
    num_f: np.ndarray,
    den_f: np.ndarray | float,
    tnum_f: float,
    tden_f: float,
    strict: bool,
    exact_pair: Callable[[int], tuple[int, int]],
    tnum: int,
    tden: int,
) -> np.ndarray:
    """Exact elementwise truth of num/den <= (or <) tnum/tden, all terms >= 0.

    ``num_f``/``den_f`` are float renditions of exact integers;
    ``exact_pair(i)`` must return the exact (num, den) for index i and is only
    consulted inside the uncertainty band.
    """
    lhs = num_f * tden_f
    rhs = tnum_f * den_f
    margin = (np.abs(lhs) + np.abs(rhs)) * _MARGIN
    if strict:
        out = lhs < rhs - margin
        unsure = ~out & (lhs <= rhs + margin)
    else:
        out = lhs <= rhs - margin
        unsure = ~out & (lhs <= rhs + margin)
    if unsure.any():
        idxs = np.nonzero(unsure)[0]
        for i in idxs:
            n_i, d_i = exact_pair(int(i))
            v = n_i * tden
            w = tnum * d_i
            out[i] = v < w if strict else v <= w
    return out


def ratio_in_open_interval_mask(
    num_f: np.ndarray,
    den_f: np.ndarray,
    lo: Fraction,
    hi: Fraction | None,
    exact_pair: Callable[[int], tuple[int, int]],
) -> np.ndarray:
    """Mask of indices with lo < num/den < hi (hi may be None for +inf)."""
    lo_n, lo_d = lo.numerator, lo.denominator
    gt_lo = ~le_ratio_vec(
        num_f, den_f, float(lo_n), float(lo_d), False, exact_pair, lo_n, lo_d
    )
    if hi is None:
        return gt_lo
    hi_n, hi_d = hi.numerator, hi.denominator
    lt_hi = le_ratio_vec(
        num_f, den_f, float(hi_n), float(hi_d), True, exact_pair, hi_n, hi_d
    )
    return gt_lo & lt_hi


def sort_ratios_exact(nums: list[int], dens: list[int]) -> list[int]:
    """Argsort of exact non-negative rationals nums[i]/dens[i].

    Floats provide the primary order; runs of indices whose float keys are
    within the error band of each other are re-sorted exactly.  Returns the
    permutation as a list of indices.
    """
    m = len(nums)
    if m == 0:
        return []
    keys = np.array([float(n) / float(d) for n, d in zip(nums, dens)], dtype=np.float64)
    order = np.argsort(keys, kind="stable")
    out = [int(i) for i in order]
    # group ambiguous neighbours: |ka - kb| <= margin * max -> exact compare
    i = 0
    while i < m - 1:
        j = i
        while j + 1 < m:
            ka, kb = keys[out[j]], keys[out[j + 1]]
            if abs(kb - ka) <= _MARGIN * max(abs(ka), abs(kb), 1e-300):
                j += 1
            else:
                break
        if j > i:
            chunk = out[i : j + 1]
            chunk.sort(key=lambda t: Fraction(nums[t], dens[t]))
            out[i : j + 1] = chunk
            i = j
        else:
            i += 1
    return out
