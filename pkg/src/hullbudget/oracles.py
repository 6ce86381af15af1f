"""Independent ground-truth solvers used to certify the search engine.

``brute_solve`` enumerates every subset (tiny instances only).
``baseline_solve`` sorts the full canonical value set and binary searches it
with the threshold decider: quadratic work, but simple enough to trust, and
practical into the low thousands of points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .canonical import ENUMERATE_MAX_N, CanonicalValues, enumerate_canonical_set
from .decider import (
    Mode,
    Threshold,
    brute_min_table,
    decide,
    hull_vertex_indices,
)
from .geometry import PointSet, SquaredDistance
from .hausdorff import hausdorff_sq

BRUTE_SOLVE_MAX_N = 14


@dataclass(frozen=True)
class OracleReport:
    ropt_sq: SquaredDistance
    subset: tuple[int, ...]
    method: str  # "brute_force" | "canonical_binary_search"
    checked_invariants: tuple[str, ...] = ()


def brute_solve(ps: PointSet, k: int) -> OracleReport:
    """Exact optimum by exhaustive enumeration of subsets of size <= k."""
    if ps.n > BRUTE_SOLVE_MAX_N:
        raise ValueError(f"brute_solve limited to n <= {BRUTE_SOLVE_MAX_N}")
    if k < 1:
        raise ValueError("k must be >= 1")
    table = brute_min_table(ps)
    best_val: Optional[Fraction] = None
    best_subset: Optional[tuple[int, ...]] = None
    for m in range(1, min(k, ps.n) + 1):
        val, subset = table[m - 1]
        if best_val is None or val < best_val:
            best_val, best_subset = val, subset
    checked = []
    if hausdorff_sq(ps, best_subset).value_sq == best_val:
        checked.append("subset_realizes_value")
    return OracleReport(best_val, tuple(sorted(best_subset)), "brute_force",
                        tuple(checked))


def baseline_solve(ps: PointSet, k: int, instrument: bool = False) -> OracleReport:
    """Exact optimum by binary search over the sorted canonical set.

    Returns the smallest canonical value whose closed decision is feasible;
    when the hull itself fits the budget the optimum is zero and no canonical
    search is needed.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    hull_idx = hull_vertex_indices(ps)
    if len(hull_idx) <= k:
        return OracleReport(Fraction(0), tuple(sorted(hull_idx)),
                            "canonical_binary_search", ("hull_within_budget",))

    if ps.n <= ENUMERATE_MAX_N:
        values = [cv.value_sq for cv in enumerate_canonical_set(ps)]
        value_at = values.__getitem__
        count = len(values)
    else:
        cvs = CanonicalValues(ps)
        value_at = cvs.value_at
        count = len(cvs)

    lo, hi = 0, count - 1
    hi_kopt = 1
    hi_subset = None
    best_subset: Optional[tuple[int, ...]] = None
    while lo < hi:
        mid = (lo + hi) // 2
        v = value_at(mid)
        verdict = decide(ps, Threshold(v, Mode.CLOSED), k,
                         lower_bound=hi_kopt, feasible_hint=hi_subset)
        if verdict.feasible:
            hi = mid
            hi_kopt, hi_subset = verdict.kopt, verdict.subset
            best_subset = verdict.subset
        else:
            lo = mid + 1
    answer = value_at(lo)
    if best_subset is None:
        # the search never went left: the answer is the largest value
        final = decide(ps, Threshold(answer, Mode.CLOSED), k,
                       lower_bound=hi_kopt, feasible_hint=hi_subset)
        if final.is_exceeds:
            raise AssertionError("no canonical value is feasible; bug")
        best_subset = final.subset
    checked = []
    if instrument:
        if decide(ps, Threshold(answer, Mode.OPEN), k).is_exceeds:
            checked.append("open_at_answer_exceeds")
        else:
            raise AssertionError("baseline answer is not minimal")
        if hausdorff_sq(ps, best_subset).value_sq <= answer:
            checked.append("subset_within_answer")
    return OracleReport(answer, tuple(sorted(best_subset)),
                        "canonical_binary_search", tuple(checked))
