"""Statistical validation of selected subsets.

A chosen subset should be representative: the distribution of an outcome
score (e.g. trajectory error) over the subset should sit close to the
distribution over the full pool. Closeness is the 1-D Wasserstein distance;
significance comes from comparing the candidate subset against random
subsets of the same size.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import IO, Mapping, Sequence

import numpy as np

from .errors import InfeasibleError, ValidationError
from .model import SequenceKey, _check_float, _check_name, _open_source

SCORES_CSV_HEADER = ["dataset", "sequence", "score"]

# Cap on how many same-size subsets exhaustive mode will enumerate.
MAX_EXHAUSTIVE = 1_000_000


@dataclass(frozen=True)
class ScoreTable:
    """Per-sequence outcome scores, e.g. a trajectory error per sequence."""

    scores: Mapping[SequenceKey, float]

    def __len__(self) -> int:
        return len(self.scores)

    def values_for(self, keys: Sequence[SequenceKey]) -> list[float]:
        missing = [str(k) for k in keys if k not in self.scores]
        if missing:
            raise ValidationError(f"scores missing for: {', '.join(sorted(missing))}")
        return [self.scores[k] for k in keys]


def parse_scores(source: str | Path | IO) -> ScoreTable:
    """Parse a scores CSV with header ``dataset,sequence,score``."""
    text, _ = _open_source(source)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValidationError("scores CSV is empty")
    if [c.strip() for c in rows[0]] != SCORES_CSV_HEADER:
        raise ValidationError(
            f"scores CSV header must be exactly {','.join(SCORES_CSV_HEADER)!r}, "
            f"got {','.join(rows[0])!r}"
        )
    scores: dict[SequenceKey, float] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        where = f"line {lineno}"
        if len(row) != 3:
            raise ValidationError(f"{where}: expected 3 columns, got {len(row)}")
        dataset = _check_name(row[0], "dataset", where)
        sequence = _check_name(row[1], "sequence", where)
        value = _check_float(row[2], "score", where)
        key = SequenceKey(dataset, sequence)
        if key in scores:
            raise ValidationError(f"{where}: duplicate score for {key}")
        scores[key] = value
    if not scores:
        raise ValidationError("scores CSV contains no data rows")
    return ScoreTable(scores)


def _as_sample(values: Sequence[float], name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(f"{name} must be a non-empty 1-D sample")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def wasserstein_1d(a: Sequence[float], b: Sequence[float]) -> float:
    """1-D Wasserstein distance between two empirical distributions.

    Integrates |CDF_a - CDF_b| over the merged support; for equal sample
    sizes this equals the mean absolute difference of order statistics.
    """
    av = np.sort(_as_sample(a, "sample a"))
    bv = np.sort(_as_sample(b, "sample b"))
    support = np.sort(np.concatenate([av, bv]))
    widths = np.diff(support)
    cdf_a = np.searchsorted(av, support[:-1], side="right") / av.size
    cdf_b = np.searchsorted(bv, support[:-1], side="right") / bv.size
    return float(np.sum(np.abs(cdf_a - cdf_b) * widths))


def distribution_summary(values: Sequence[float]) -> dict[str, float]:
    """Mean, median, sample std (n-1; zero for a single value), min, max."""
    arr = _as_sample(values, "values")
    std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    return {
        "mean": float(np.mean(arr)),
        "median": float(np.median(arr)),
        "std": std,
        "min": float(np.min(arr)),
        "max": float(np.max(arr)),
    }


def _iteration_rng(seed: int, iteration: int) -> np.random.Generator:
    # Sub-seeding by (seed, iteration) keeps serial and parallel runs identical.
    return np.random.default_rng([seed, iteration])


def random_subset_distances(
    values: Sequence[float], size: int, iterations: int, seed: int
) -> np.ndarray:
    """Wasserstein distances of ``iterations`` random size-``size`` subsets.

    Subsets are drawn uniformly without replacement from ``values`` (PCG64,
    deterministic per seed) and each is compared against the full sample.
    """
    arr = _as_sample(values, "values")
    if not 1 <= size <= arr.size:
        raise ValidationError(f"subset size must be in [1, {arr.size}], got {size}")
    if iterations < 1:
        raise ValidationError(f"iterations must be >= 1, got {iterations}")
    out = np.empty(iterations, dtype=float)
    for i in range(iterations):
        rng = _iteration_rng(seed, i)
        picked = rng.choice(arr.size, size=size, replace=False)
        out[i] = wasserstein_1d(arr[picked], arr)
    return out


def exhaustive_subset_distances(values: Sequence[float], size: int) -> np.ndarray:
    """Wasserstein distances of every size-``size`` subset against the full sample."""
    arr = _as_sample(values, "values")
    if not 1 <= size <= arr.size:
        raise ValidationError(f"subset size must be in [1, {arr.size}], got {size}")
    total = math.comb(arr.size, size)
    if total > MAX_EXHAUSTIVE:
        raise InfeasibleError(
            f"exhaustive enumeration of {total} subsets exceeds the cap of {MAX_EXHAUSTIVE}; "
            "use sampled mode"
        )
    return np.array(
        [wasserstein_1d(arr[list(combo)], arr) for combo in combinations(range(arr.size), size)]
    )


@dataclass(frozen=True)
class RandomSubsetResult:
    """Outcome of the random-subset significance test.

    ``p_value`` is the fraction of comparison subsets whose distance to the
    full distribution is at most the candidate's. ``distance_ratio`` is
    candidate distance over the mean random distance (None when that mean
    is zero).
    """

    candidate_distance: float
    p_value: float
    random_summary: dict[str, float]
    distance_ratio: float | None
    mode: str  # "sampled" or "exhaustive"
    draws: int


def random_subset_test(
    scores: ScoreTable,
    candidate: Sequence[SequenceKey],
    iterations: int = 2000,
    seed: int = 0,
    exhaustive: bool = False,
) -> RandomSubsetResult:
    """Compare a candidate subset's distance against random same-size subsets."""
    keys = list(candidate)
    if not keys:
        raise ValidationError("candidate subset must be non-empty")
    if len(set(keys)) != len(keys):
        raise ValidationError("candidate subset contains duplicate sequences")
    subset_values = scores.values_for(keys)
    if len(keys) >= len(scores):
        raise ValidationError(
            "candidate subset must be smaller than the full score table "
            "(distance would be trivially zero)"
        )
    full_values = list(scores.scores.values())
    candidate_distance = wasserstein_1d(subset_values, full_values)
    if exhaustive:
        distances = exhaustive_subset_distances(full_values, len(keys))
        mode = "exhaustive"
    else:
        distances = random_subset_distances(full_values, len(keys), iterations, seed)
        mode = "sampled"
    p_value = float(np.count_nonzero(distances <= candidate_distance) / distances.size)
    summary = distribution_summary(distances)
    ratio = candidate_distance / summary["mean"] if summary["mean"] > 0 else None
    return RandomSubsetResult(
        candidate_distance=candidate_distance,
        p_value=p_value,
        random_summary=summary,
        distance_ratio=ratio,
        mode=mode,
        draws=int(distances.size),
    )
