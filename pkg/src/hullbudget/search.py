"""Three-stage search for the exact budgeted optimum.

The engine maintains an open interval (low, high) of squared values known to
bracket the optimum strictly: no subset of size <= k fits within low, some
subset fits within high, and the optimum lies strictly between.  Candidate
values are tested for optimality by a pair of threshold decisions (closed at
the value, open just below it); each non-optimal test shrinks the interval.

Stage 1 binary searches the pairwise-distance family by rank.  Stage 2 draws
a large uniform sample of line-family values, keeps the ones inside the
interval, and binary searches them.  Stage 3 peels the remaining line-family
values one per iteration in decreasing order, using line-based Hausdorff
evaluations of decided subsets, until the optimality test succeeds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .canonical import draw_sample_bag, enumerate_canonical_set
from .decider import DeciderVerdict, Mode, Threshold, decide, hull_vertex_indices
from .extremal import build_extremal_index
from .geometry import PointSet, SquaredDistance
from .hausdorff import hausdorff_sq, hausdorff_sq_via_lines, subset_hull


class InvariantViolation(AssertionError):
    """An internal bracketing invariant failed; indicates a bug."""


@dataclass
class TuningParams:
    t_override: Optional[float] = None
    sample_constant: int = 4
    stage3_cap_constant: int = 8
    instrument: bool = False

    def t_value(self, n: int, k: int) -> float:
        if self.t_override is not None:
            if self.t_override <= 0:
                raise ValueError("t override must be positive")
            return float(self.t_override)
        return math.sqrt(n * k / max(1.0, math.log2(n)))

    def sample_size(self, n: int, k: int) -> int:
        if n < 2:
            return 0
        return math.ceil(self.sample_constant * n * self.t_value(n, k) * math.log2(n))


@dataclass
class RunStats:
    decider_calls: int = 0
    decider_calls_by_stage: dict = field(default_factory=dict)
    audit_decider_calls: int = 0
    stage1_steps: int = 0
    sample_bag_size: int = 0
    candidate_count: int = 0
    peel_iterations: int = 0
    alpha_fallbacks: int = 0
    probe_modes: list = field(default_factory=list)
    cap_fallback: bool = False
    done_stage: str = ""
    t_param: float = 0.0
    wall_times: dict = field(default_factory=dict)

    def deterministic_dict(self) -> dict:
        """The reproducible portion (wall times excluded)."""
        return {
            "decider_calls": self.decider_calls,
            "decider_calls_by_stage": dict(sorted(self.decider_calls_by_stage.items())),
            "stage1_steps": self.stage1_steps,
            "sample_bag_size": self.sample_bag_size,
            "candidate_count": self.candidate_count,
            "peel_iterations": self.peel_iterations,
            "alpha_fallbacks": self.alpha_fallbacks,
            "probe_modes": list(self.probe_modes),
            "cap_fallback": self.cap_fallback,
            "done_stage": self.done_stage,
        }


@dataclass
class SearchInterval:
    """Open bracketing interval on squared values; high None means infinity."""

    low: SquaredDistance
    high: Optional[SquaredDistance]
    low_tested: bool = True
    high_tested: bool = False

    def contains_strict(self, v: Fraction) -> bool:
        return v > self.low and (self.high is None or v < self.high)


@dataclass(frozen=True)
class Solution:
    subset: tuple[int, ...]
    ropt_sq: SquaredDistance
    ropt_float: float
    stats: RunStats


@dataclass(frozen=True)
class TestOutcome:
    kind: str  # "optimal" | "left" | "right"
    subset: Optional[tuple[int, ...]] = None
    kopt: Optional[int] = None
    value: Optional[Fraction] = None


def hull_vertex_shortcut(ps: PointSet, k: int) -> Optional[Solution]:
    """Zero-distance solution when the hull itself fits the budget."""
    hull_idx = hull_vertex_indices(ps)
    if len(hull_idx) <= k:
        stats = RunStats(done_stage="shortcut")
        return Solution(tuple(sorted(hull_idx)), Fraction(0), 0.0, stats)
    return None


class SearchEngine:
    """One solve run; owns the interval, stats, and decision bookkeeping."""

    def __init__(self, ps: PointSet, k: int, params: Optional[TuningParams] = None,
                 seed: int = 0):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.ps = ps
        self.k = k
        self.params = params or TuningParams()
        self.seed = int(seed)
        self.stats = RunStats()
        self.interval = SearchInterval(Fraction(0), None)
        # bracketing knowledge for decider hints: kopt at the closed high
        # endpoint and a subset realizing it (monotonicity makes kopt at any
        # probe below high at least high_kopt)
        self.high_kopt = 1
        self.high_subset: Optional[tuple[int, ...]] = None
        ss = np.random.SeedSequence(self.seed)
        self._streams = ss.spawn(3)
        self._xi_values: Optional[set] = None

    # -- decision plumbing -------------------------------------------------

    def _decide(self, t: Threshold, stage: str, lower_bound: int = 1,
                feasible_hint: Optional[Sequence[int]] = None) -> DeciderVerdict:
        self.stats.decider_calls += 1
        self.stats.decider_calls_by_stage[stage] = (
            self.stats.decider_calls_by_stage.get(stage, 0) + 1
        )
        verdict = decide(self.ps, t, self.k, lower_bound=lower_bound,
                         feasible_hint=feasible_hint)
        if self.params.instrument and verdict.feasible:
            self.stats.audit_decider_calls += 1
            val = hausdorff_sq(self.ps, verdict.subset).value_sq
            if not t.accepts(val):
                raise InvariantViolation(f"decider returned infeasible subset at {t}")
        return verdict

    def test_optimal(self, v: Fraction, stage: str,
                     closed_lower: Optional[int] = None,
                     closed_hint: Optional[Sequence[int]] = None) -> TestOutcome:
        """The paired closed/open decision at a candidate value, updating the
        interval on a non-optimal outcome.  ``closed_lower``/``closed_hint``
        let the caller pass a certified bound for the closed decision (used
        by stage 3, where the probed value is realized by a known subset)."""
        if not self.interval.contains_strict(v):
            raise ValueError("test value must lie strictly inside the interval")
        if self.params.instrument:
            self._check_xi_membership(v)
        closed_v = self._decide(Threshold(v, Mode.CLOSED), stage,
                                lower_bound=max(self.high_kopt, closed_lower or 1),
                                feasible_hint=closed_hint if closed_hint is not None
                                else self.high_subset)
        if closed_v.is_exceeds:
            self.interval.low = v
            self.interval.low_tested = True
            self._audit_interval()
            return TestOutcome("right")
        open_v = self._decide(Threshold(v, Mode.OPEN), stage,
                              lower_bound=closed_v.kopt,
                              feasible_hint=self.high_subset)
        if open_v.is_exceeds:
            return TestOutcome("optimal", closed_v.subset, closed_v.kopt, v)
        self.interval.high = v
        self.interval.high_tested = True
        self.high_kopt = closed_v.kopt
        self.high_subset = open_v.subset
        self._audit_interval()
        return TestOutcome("left")

    # -- instrumentation ---------------------------------------------------

    def _audit_interval(self) -> None:
        if not self.params.instrument:
            return
        self.stats.audit_decider_calls += 2
        low_t = Threshold(self.interval.low, Mode.CLOSED)
        if not decide(self.ps, low_t, self.k).is_exceeds:
            raise InvariantViolation("interval low endpoint is feasible")
        if self.interval.high is not None:
            high_t = Threshold(self.interval.high, Mode.CLOSED)
            if decide(self.ps, high_t, self.k).is_exceeds:
                raise InvariantViolation("interval high endpoint is infeasible")
        if self.ps.n <= 14:
            from .oracles import brute_solve

            want = brute_solve(self.ps, self.k).ropt_sq
            if not self.interval.contains_strict(want) and want != self.interval.high:
                raise InvariantViolation("optimum escaped the interval")

    def _check_xi_membership(self, v: Fraction) -> None:
        if self.ps.n > 60 or self.ps.n < 2:
            return
        if self._xi_values is None:
            self._xi_values = {cv.value_sq for cv in enumerate_canonical_set(self.ps)}
        if v not in self._xi_values:
            raise InvariantViolation(f"tested value {v} is not canonical")

    # -- stages -------------------------------------------------------------

    def stage1(self) -> Optional[Solution]:
        """Rank binary search over the pairwise-distance family."""
        t0 = time.perf_counter()
        arr = self.ps.sorted_pair_sq
        lo_i, hi_i = 0, len(arr)
        try:
            while lo_i < hi_i:
                mid = (lo_i + hi_i) // 2
                vi = int(arr[mid])
                v = Fraction(vi)
                self.stats.stage1_steps += 1
                outcome = self.test_optimal(v, "stage1")
                if outcome.kind == "optimal":
                    return self._finish(outcome, "stage1")
                if outcome.kind == "right":
                    lo_i = int(np.searchsorted(arr, vi, side="right"))
                else:
                    hi_i = int(np.searchsorted(arr, vi, side="left"))
            if self.params.instrument and self.ps.n <= 200:
                inside = int(np.searchsorted(arr, self.interval.high.numerator, "left")
                             ) - int(np.searchsorted(arr, self.interval.low.numerator, "right"))
                # endpoints here are integers (pair values have denominator 1)
                if self.interval.low.denominator == 1 and self.interval.high is not None \
                        and self.interval.high.denominator == 1 and inside > 0:
                    raise InvariantViolation("pair value left inside stage-1 interval")
            return None
        finally:
            self.stats.wall_times["stage1"] = (
                self.stats.wall_times.get("stage1", 0.0) + time.perf_counter() - t0
            )

    def stage2(self) -> Optional[Solution]:
        """Sampled line-family values: draw, filter to the interval, search."""
        t0 = time.perf_counter()
        try:
            n, k = self.ps.n, self.k
            m = self.params.sample_size(n, k)
            self.stats.t_param = self.params.t_value(n, k)
            idx = build_extremal_index(self.ps)
            rng = np.random.Generator(np.random.PCG64(self._streams[1]))
            bag = draw_sample_bag(idx, m, (self.interval.low, self.interval.high),
                                  rng, rng_seed=self.seed)
            self.stats.sample_bag_size = bag.pi_size
            vals = sorted({cv.value_sq for cv in bag.values})
            self.stats.candidate_count = len(vals)
            lo_i, hi_i = 0, len(vals)
            while lo_i < hi_i:
                mid = (lo_i + hi_i) // 2
                v = vals[mid]
                if not self.interval.contains_strict(v):
                    # fell outside after earlier updates; shrink by bisection
                    if self.interval.high is not None and v >= self.interval.high:
                        hi_i = mid
                    else:
                        lo_i = mid + 1
                    continue
                outcome = self.test_optimal(v, "stage2")
                if outcome.kind == "optimal":
                    return self._finish(outcome, "stage2")
                if outcome.kind == "right":
                    lo_i = mid + 1
                else:
                    hi_i = mid
            return None
        finally:
            self.stats.wall_times["stage2"] = (
                self.stats.wall_times.get("stage2", 0.0) + time.perf_counter() - t0
            )

    def stage3(self) -> Solution:
        """Peel line-family values off the top of the interval until optimal."""
        t0 = time.perf_counter()
        try:
            n, k = self.ps.n, self.k
            idx = build_extremal_index(self.ps)
            t_param = self.params.t_value(n, k)
            cap = self.params.stage3_cap_constant * max(
                1, math.ceil(self.params.sample_constant * n / t_param)) + 16
            while True:
                self.stats.peel_iterations += 1
                if self.stats.peel_iterations > cap:
                    return self._cap_fallback()
                R = self.interval.high
                if R is None:
                    raise InvariantViolation("stage 3 requires a finite high endpoint")
                mode = Mode.OPEN if self.interval.high_tested else Mode.CLOSED
                self.stats.probe_modes.append(mode.value)
                verd = self._decide(Threshold(R, mode), "stage3",
                                    lower_bound=self.high_kopt if mode is Mode.OPEN else 1,
                                    feasible_hint=self.high_subset)
                if verd.is_exceeds:
                    if mode is Mode.CLOSED:
                        raise InvariantViolation("high endpoint infeasible in stage 3")
                    # no subset beats R: R itself is optimal (defensive; the
                    # bracketing invariant normally excludes this)
                    sub = self.high_subset or ()
                    return self._solution(tuple(sorted(sub)), R, "stage3")
                alpha = self._subset_value(verd.subset, idx, R, strict=mode is Mode.OPEN)
                probe, probe_verd = alpha, verd
                if mode is Mode.CLOSED and alpha == R:
                    # equality case: ask strictly below R
                    verd2 = self._decide(Threshold(R, Mode.OPEN), "stage3",
                                         lower_bound=verd.kopt,
                                         feasible_hint=self.high_subset)
                    if verd2.is_exceeds:
                        return self._solution(verd.subset, R, "stage3")
                    probe = self._subset_value(verd2.subset, idx, R, strict=True)
                    probe_verd = verd2
                # the probe value is realized by probe_verd.subset, pinching
                # the closed decision's answer to exactly its cardinality
                outcome = self.test_optimal(probe, "stage3",
                                            closed_lower=probe_verd.kopt,
                                            closed_hint=probe_verd.subset)
                if outcome.kind == "optimal":
                    return self._finish(outcome, "stage3")
                if outcome.kind == "right":
                    raise InvariantViolation("peel value below the optimum")
        finally:
            self.stats.wall_times["stage3"] = (
                self.stats.wall_times.get("stage3", 0.0) + time.perf_counter() - t0
            )

    def _subset_value(self, subset: Sequence[int], idx, R: Fraction,
                      strict: bool) -> Fraction:
        """Exact Hausdorff value of a decided subset via supporting lines,
        falling back to the direct evaluator whenever the line value is not
        usable (single-point hull, or outside the expected range)."""
        hull_q = subset_hull(self.ps, subset)
        if hull_q.m < 2:
            self.stats.alpha_fallbacks += 1
            return hausdorff_sq(self.ps, subset).value_sq
        val = hausdorff_sq_via_lines(self.ps, subset, idx).value_sq
        in_range = val > self.interval.low and (val < R if strict else val <= R)
        if not in_range:
            self.stats.alpha_fallbacks += 1
            return hausdorff_sq(self.ps, subset).value_sq
        if self.params.instrument:
            direct = hausdorff_sq(self.ps, subset).value_sq
            if direct != val:
                raise InvariantViolation(
                    "line-based Hausdorff disagrees with the direct evaluation")
        return val

    # -- assembly ------------------------------------------------------------

    def _finish(self, outcome: TestOutcome, stage: str) -> Solution:
        return self._solution(outcome.subset, outcome.value, stage)

    def _solution(self, subset: Sequence[int], value: Fraction, stage: str) -> Solution:
        sub = tuple(sorted(subset))
        self.stats.done_stage = stage
        got = hausdorff_sq(self.ps, sub).value_sq
        if got != value or len(sub) > self.k:
            raise InvariantViolation(
                f"solution check failed: |Q|={len(sub)} value {got} != {value}")
        return Solution(sub, value, float(value), self.stats)

    def _cap_fallback(self) -> Solution:
        from .oracles import baseline_solve

        self.stats.cap_fallback = True
        report = baseline_solve(self.ps, self.k)
        self.stats.done_stage = "fallback"
        return Solution(tuple(sorted(report.subset)), report.ropt_sq,
                        float(report.ropt_sq), self.stats)

    def run(self) -> Solution:
        hull_idx = hull_vertex_indices(self.ps)
        if len(hull_idx) <= self.k:
            self.stats.done_stage = "shortcut"
            return Solution(tuple(sorted(hull_idx)), Fraction(0), 0.0, self.stats)
        sol = self.stage1()
        if sol is None:
            sol = self.stage2()
        if sol is None:
            sol = self.stage3()
        return sol


def solve(ps: PointSet, k: int, params: Optional[TuningParams] = None,
          seed: int = 0) -> Solution:
    """Exact optimum: the size-<=k subset minimizing the one-sided Hausdorff
    distance of its hull to the full set, with full run statistics."""
    t0 = time.perf_counter()
    engine = SearchEngine(ps, k, params, seed)
    sol = engine.run()
    sol.stats.wall_times["total"] = time.perf_counter() - t0
    return sol
