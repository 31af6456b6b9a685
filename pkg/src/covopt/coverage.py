"""Interval coverage arithmetic.

A sequence's characterization metric occupies a closed interval of values.
The union of such intervals, kept as merged disjoint pieces, is the covered
dynamic range. Discontinuities between pieces accumulate into ``epsilon``,
so the covered measure always satisfies

    measure == (span_hi - span_lo) - epsilon

bit-exactly (epsilon is the summed gap lengths; measure is derived from it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegenerateCoverageError, ValidationError

# A subset counts as complete once its percent is within this of 100.
FULL_COVERAGE_TOL = 1e-9


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval [lo, hi] of a characterization value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError(
                f"interval bounds must be finite, got [{self.lo}, {self.hi}]"
            )
        if self.lo > self.hi:
            raise ValidationError(
                f"interval lower bound {self.lo} exceeds upper bound {self.hi}"
            )

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class CoverageSet:
    """Union of intervals as disjoint merged pieces, with gap accounting.

    ``pieces`` are sorted by lo and pairwise separated by a strictly
    positive gap. ``epsilon`` is the total gap length inside the spanned
    range; ``measure`` the covered length. ``span_lo``/``span_hi`` are None
    for the empty set.
    """

    pieces: tuple[Interval, ...]
    measure: float
    epsilon: float
    span_lo: float | None
    span_hi: float | None

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def span(self) -> float:
        """Length of the bounding range (0 for the empty set)."""
        if not self.pieces:
            return 0.0
        return self.span_hi - self.span_lo


_EMPTY = CoverageSet(pieces=(), measure=0.0, epsilon=0.0, span_lo=None, span_hi=None)


def empty_coverage() -> CoverageSet:
    return _EMPTY


def _from_pieces(pieces: tuple[Interval, ...]) -> CoverageSet:
    if not pieces:
        return _EMPTY
    span_lo = pieces[0].lo
    span_hi = pieces[-1].hi
    # epsilon first, measure derived from it: keeps the outer-measure
    # identity exact instead of only up to rounding.
    epsilon = math.fsum(
        nxt.lo - cur.hi for cur, nxt in zip(pieces, pieces[1:])
    )
    measure = (span_hi - span_lo) - epsilon
    return CoverageSet(pieces, measure, epsilon, span_lo, span_hi)


def _check_gap_tol(gap_tol: float) -> None:
    if not math.isfinite(gap_tol) or gap_tol < 0:
        raise ValidationError(f"gap tolerance must be a finite non-negative real, got {gap_tol}")


def union_of(intervals: Iterable[Interval], gap_tol: float = 0.0) -> CoverageSet:
    """Merge intervals into a CoverageSet.

    Touching intervals merge; disjoint ones leave a gap that feeds epsilon.
    Gaps of at most ``gap_tol`` are closed (treated as covered). The result
    is independent of input order.
    """
    _check_gap_tol(gap_tol)
    ivs = sorted(intervals)
    if not ivs:
        return _EMPTY
    pieces: list[Interval] = []
    cur_lo, cur_hi = ivs[0].lo, ivs[0].hi
    for iv in ivs[1:]:
        if iv.lo - cur_hi <= gap_tol:
            if iv.hi > cur_hi:
                cur_hi = iv.hi
        else:
            pieces.append(Interval(cur_lo, cur_hi))
            cur_lo, cur_hi = iv.lo, iv.hi
    pieces.append(Interval(cur_lo, cur_hi))
    return _from_pieces(tuple(pieces))


def extend(cov: CoverageSet, interval: Interval, gap_tol: float = 0.0) -> CoverageSet:
    """Return the coverage grown by one more interval.

    Equivalent to unioning ``interval`` into ``cov.pieces``; the result is
    exactly what ``union_of`` would build from the combined inputs.
    """
    return union_of(cov.pieces + (interval,), gap_tol)


def coverage_percent(subset_cov: CoverageSet, target_cov: CoverageSet) -> float:
    """Share of the target measure covered by the subset, in percent.

    A zero-measure target is a point mass: any non-empty subset covers it
    fully (100), the empty subset not at all (0).
    """
    if target_cov.measure == 0:
        return 100.0 if subset_cov.pieces else 0.0
    return 100.0 * subset_cov.measure / target_cov.measure


def coverage_cost(counts: Sequence[int], subset_cov: CoverageSet) -> float:
    """Measurements spent per unit of covered range: sum(counts) / measure."""
    for c in counts:
        if c < 1:
            raise ValidationError(f"measurement counts must be positive, got {c}")
    if subset_cov.measure == 0:
        raise DegenerateCoverageError(
            "coverage cost is undefined for a subset with zero covered measure"
        )
    return sum(counts) / subset_cov.measure


def clamp_percent(percent: float) -> float:
    """Snap a raw percent into [0, 100], treating near-complete as complete."""
    if percent >= 100.0 - FULL_COVERAGE_TOL:
        return 100.0
    if percent < 0.0:
        return 0.0
    return percent


def is_complete(percent: float) -> bool:
    return percent >= 100.0 - FULL_COVERAGE_TOL
