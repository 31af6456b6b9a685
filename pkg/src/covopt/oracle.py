"""Exact and statistical reference implementations.

``brute_force_select`` enumerates subsets outright and is the ground truth
the fast selectors are audited against; ``monte_carlo_measure`` estimates a
union's measure by uniform sampling without reusing the merge code it checks.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Sequence

import numpy as np

from .coverage import Interval, coverage_percent, is_complete, union_of
from .errors import InfeasibleError, ValidationError
from .model import Instance
from .selection import SelectionResult, build_result, check_objective

BRUTE_FORCE_LIMIT = 20


def _key_list(instance: Instance, combo: Sequence[int]) -> tuple[tuple[str, str], ...]:
    return tuple(sorted((instance.items[i].key.dataset, instance.items[i].key.sequence)
                        for i in combo))


def brute_force_select(
    instance: Instance, objective: str, limit: int = BRUTE_FORCE_LIMIT
) -> SelectionResult:
    """Optimal subset by exhaustive enumeration.

    Refuses instances larger than ``limit`` items. For ``ls`` the search
    walks subset sizes upward and stops at the first size admitting full
    coverage (smaller sizes cannot); for ``lc`` every subset is scored.
    Ties resolve by the lexicographically smallest sorted key list.
    """
    check_objective(objective)
    n = len(instance.items)
    if n > limit:
        raise InfeasibleError(
            f"brute force enumeration refused: {n} items exceeds the limit of {limit}"
        )
    target = instance.target
    gap_tol = instance.gap_tol
    intervals = [it.interval for it in instance.items]
    counts = [it.count for it in instance.items]

    def covers(combo: tuple[int, ...]) -> bool:
        cov = union_of((intervals[i] for i in combo), gap_tol)
        return is_complete(coverage_percent(cov, target))

    if objective == "ls":
        for size in range(1, n + 1):
            best: tuple | None = None
            best_combo: tuple[int, ...] | None = None
            for combo in combinations(range(n), size):
                if not covers(combo):
                    continue
                ranking = (sum(counts[i] for i in combo), _key_list(instance, combo))
                if best is None or ranking < best:
                    best = ranking
                    best_combo = combo
            if best_combo is not None:
                return build_result(instance, best_combo, objective, "brute")
    else:
        best = None
        best_combo = None
        for size in range(1, n + 1):
            for combo in combinations(range(n), size):
                if not covers(combo):
                    continue
                cov = union_of((intervals[i] for i in combo), gap_tol)
                total = sum(counts[i] for i in combo)
                cost = total / cov.measure if cov.measure > 0 else math.inf
                ranking = (cost, size, _key_list(instance, combo))
                if best is None or ranking < best:
                    best = ranking
                    best_combo = combo
        if best_combo is not None:
            return build_result(instance, best_combo, objective, "brute")
    raise AssertionError("the full item set must cover its own union")


def _hits_exact(los: np.ndarray, his: np.ndarray, x: np.ndarray) -> int:
    # x is covered iff it lies in at least one interval, i.e. the number of
    # started intervals #{lo_i <= x} exceeds the number of finished ones
    # #{hi_i < x}. Endpoint arrays are sorted independently; no merging.
    inside = (
        np.searchsorted(los, x, side="right") - np.searchsorted(his, x, side="left")
    ) > 0
    return int(np.count_nonzero(inside))


_N_BUCKETS = 4096


def monte_carlo_measure(
    intervals: Sequence[Interval], samples: int, seed: int
) -> float:
    """Estimate the union's measure by uniform sampling over the bounding span.

    Returns span times the fraction of samples covered by any interval.
    Deterministic for a fixed seed (PCG64). Samples are classified by
    endpoint counting, never by the merged-piece representation.
    """
    ivs = list(intervals)
    if not ivs:
        raise ValidationError("monte_carlo_measure requires at least one interval")
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    los = np.sort(np.array([iv.lo for iv in ivs], dtype=float))
    his = np.sort(np.array([iv.hi for iv in ivs], dtype=float))
    lo = float(los[0])
    hi = float(his[-1])
    span = hi - lo
    rng = np.random.default_rng(seed)
    x = rng.uniform(lo, hi, samples)
    if span == 0.0:
        return 0.0
    if samples < 8 * _N_BUCKETS:
        return span * (_hits_exact(los, his, x) / samples)
    # Bucket acceleration. v -> floor((v - lo) * scale) is monotone in v, so
    # inside a bucket holding no endpoint every sample compares identically
    # against every endpoint: its covered status is a per-bucket constant.
    # Only samples sharing a bucket with an endpoint need the exact test.
    scale = _N_BUCKETS / span
    bx = ((x - lo) * scale).astype(np.int32)
    np.minimum(bx, _N_BUCKETS - 1, out=bx)
    b_lo = np.minimum(((los - lo) * scale).astype(np.int32), _N_BUCKETS - 1)
    b_hi = np.minimum(((his - lo) * scale).astype(np.int32), _N_BUCKETS - 1)
    cnt_lo = np.bincount(b_lo, minlength=_N_BUCKETS)
    cnt_hi = np.bincount(b_hi, minlength=_N_BUCKETS)
    started_before = np.concatenate(([0], np.cumsum(cnt_lo)[:-1]))
    finished_before = np.concatenate(([0], np.cumsum(cnt_hi)[:-1]))
    ambiguous = (cnt_lo + cnt_hi) > 0
    covered_clear = (started_before > finished_before) & ~ambiguous
    per_bucket = np.bincount(bx, minlength=_N_BUCKETS)
    hits = int((per_bucket * covered_clear).sum())
    amb_x = x[ambiguous[bx]]
    if amb_x.size:
        hits += _hits_exact(los, his, amb_x)
    return span * (hits / samples)
