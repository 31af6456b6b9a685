"""Shared test data and reference implementations.

Provides the hand-built fixture suite with frozen, exhaustively verified
optima, a seeded random-instance generator, independent reference
implementations (segment-sweep union measure, exhaustive optimizer) used to
cross-check the library, and an in-process CLI runner.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
from dataclasses import dataclass

import numpy as np
from hypothesis import strategies as st

from covopt import (
    Catalog,
    Instance,
    Interval,
    SequenceKey,
    SequenceRecord,
    build_instance,
)
from covopt.cli import main as cli_main

METRIC = "demo"

# Seed bases for the deterministic random-instance pools. Changing any of
# these invalidates the frozen acceptance expectations.
SEED_POOL_LARGE = 916  # 1000 instances, n <= 50, endpoints in [0, 1000]
SEED_POOL_SMALL = 917  # 300 instances, n <= 12 (exhaustive search feasible)
SEED_POOL_UNIT = 918   # small pools for module-level property checks


# ---------------------------------------------------------------------------
# Fixture suite


@dataclass(frozen=True)
class Fixture:
    """A small instance with frozen, exhaustively verified expectations.

    ``rows`` hold (sequence, lo, hi, count); the dataset equals ``name``.
    ``ls_*`` describe the fewest-sequences optimum, ``lc_*`` the
    lowest-cost optimum; subsets are sorted sequence-name tuples.
    ``greedy_ls_size`` is what the greedy sweep under fewest-sequences
    defaults returns (strictly above ``ls_size`` on the hard fixtures).
    """

    name: str
    rows: tuple[tuple[str, float, float, int], ...]
    target_measure: float
    ls_size: int
    ls_measurements: int
    ls_subset: tuple[str, ...]
    lc_cost: float
    lc_subset: tuple[str, ...]
    greedy_ls_size: int


FIXTURES: tuple[Fixture, ...] = (
    # Two flank intervals cover everything; the widest (middle) one is a
    # greedy trap: picked first, it forces a third pick.
    Fixture(
        name="F1",
        rows=(("L", 0, 5, 40), ("M", 1, 9, 100), ("R", 5, 10, 40)),
        target_measure=10.0,
        ls_size=2, ls_measurements=80, ls_subset=("L", "R"),
        lc_cost=8.0, lc_subset=("L", "R"),
        greedy_ls_size=3,
    ),
    # Disjoint tail piece: all three sequences are necessary.
    Fixture(
        name="F2",
        rows=(("A", 0, 4, 10), ("B", 2, 6, 20), ("C", 8, 10, 5)),
        target_measure=8.0,
        ls_size=3, ls_measurements=35, ls_subset=("A", "B", "C"),
        lc_cost=4.375, lc_subset=("A", "B", "C"),
        greedy_ls_size=3,
    ),
    # The two objectives disagree: one expensive full-range sequence vs
    # two cheap halves.
    Fixture(
        name="F3",
        rows=(("A", 0, 10, 1000), ("B", 0, 6, 10), ("C", 4, 10, 10)),
        target_measure=10.0,
        ls_size=1, ls_measurements=1000, ls_subset=("A",),
        lc_cost=2.0, lc_subset=("B", "C"),
        greedy_ls_size=1,
    ),
    # Same greedy trap as F1 with asymmetric flanks.
    Fixture(
        name="F4",
        rows=(("W", 0, 7, 30), ("X", 3, 11, 40), ("Y", 6, 13, 30)),
        target_measure=13.0,
        ls_size=2, ls_measurements=60, ls_subset=("W", "Y"),
        lc_cost=60 / 13, lc_subset=("W", "Y"),
        greedy_ls_size=3,
    ),
    # Single sequence pool.
    Fixture(
        name="F5",
        rows=(("S", 2, 8, 100),),
        target_measure=6.0,
        ls_size=1, ls_measurements=100, ls_subset=("S",),
        lc_cost=100 / 6, lc_subset=("S",),
        greedy_ls_size=1,
    ),
    # Zero-length intervals: points contribute no measure and are never
    # worth picking.
    Fixture(
        name="F6",
        rows=(("A", 1, 1, 5), ("B", 0, 4, 10), ("C", 4, 4, 3)),
        target_measure=4.0,
        ls_size=1, ls_measurements=10, ls_subset=("B",),
        lc_cost=2.5, lc_subset=("B",),
        greedy_ls_size=1,
    ),
    # One dominant sequence plus two cheap slivers (a lowest-cost trap for
    # rate-based ranking; the optimum is the single big sequence).
    Fixture(
        name="F7",
        rows=(("big", 0, 10, 100), ("sm1", 0, 1, 1), ("sm2", 9, 10, 1)),
        target_measure=10.0,
        ls_size=1, ls_measurements=100, ls_subset=("big",),
        lc_cost=10.0, lc_subset=("big",),
        greedy_ls_size=1,
    ),
    # F1-style trap at a different scale.
    Fixture(
        name="F8",
        rows=(("J", 0, 8, 25), ("K", 2, 15, 70), ("N", 8, 16, 25)),
        target_measure=16.0,
        ls_size=2, ls_measurements=50, ls_subset=("J", "N"),
        lc_cost=3.125, lc_subset=("J", "N"),
        greedy_ls_size=3,
    ),
    # Eight sequences; lowest cost needs a four-piece mosaic that skips
    # the full-range sequence entirely.
    Fixture(
        name="F9",
        rows=(("A", 0, 2, 4), ("B", 1, 5, 10), ("C", 4, 7, 9), ("D", 6, 9, 8),
              ("E", 8, 10, 4), ("F", 0, 10, 60), ("G", 2, 6, 7), ("H", 5, 9, 9)),
        target_measure=10.0,
        ls_size=1, ls_measurements=60, ls_subset=("F",),
        lc_cost=2.3, lc_subset=("A", "D", "E", "G"),
        greedy_ls_size=1,
    ),
    # Gapped target; the two objectives pick different covers.
    Fixture(
        name="F10",
        rows=(("A", 0, 3, 6), ("B", 1, 3, 2), ("C", 5, 9, 8), ("D", 5, 7, 2),
              ("E", 0, 2, 2)),
        target_measure=7.0,
        ls_size=2, ls_measurements=14, ls_subset=("A", "C"),
        lc_cost=12 / 7, lc_subset=("B", "C", "E"),
        greedy_ls_size=2,
    ),
)

FIXTURES_BY_NAME = {fx.name: fx for fx in FIXTURES}

# Fixtures where the greedy sweep under fewest-sequences defaults is
# strictly suboptimal.
GREEDY_SUBOPTIMAL = tuple(
    fx.name for fx in FIXTURES if fx.greedy_ls_size > fx.ls_size
)


def fixture_catalog(fx: Fixture) -> Catalog:
    records = [
        SequenceRecord(SequenceKey(fx.name, seq), count, {METRIC: Interval(lo, hi)})
        for seq, lo, hi, count in fx.rows
    ]
    return Catalog.from_records(records)


def fixture_instance(fx: Fixture) -> Instance:
    return build_instance(fixture_catalog(fx), METRIC)


def fixture_csv(fx: Fixture) -> str:
    lines = ["dataset,sequence,metric,min,max,count"]
    for seq, lo, hi, count in fx.rows:
        lines.append(f"{fx.name},{seq},{METRIC},{lo},{hi},{count}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Seeded random instances


def random_instance(idx: int, max_n: int, seed_base: int) -> Instance:
    """Deterministic single-metric instance: uniform endpoints in [0, 1000]."""
    rng = np.random.default_rng([seed_base, idx])
    n = int(rng.integers(1, max_n + 1))
    lows = rng.uniform(0.0, 1000.0, n)
    highs = rng.uniform(0.0, 1000.0, n)
    counts = rng.integers(1, 10001, n)
    records = []
    for i in range(n):
        lo, hi = sorted((float(lows[i]), float(highs[i])))
        records.append(
            SequenceRecord(
                SequenceKey("rand", f"s{i:03d}"), int(counts[i]), {"m": Interval(lo, hi)}
            )
        )
    return build_instance(Catalog.from_records(records), "m")


# ---------------------------------------------------------------------------
# Independent reference implementations


def ref_union_measure(intervals) -> float:
    """Union measure via elementary-segment sweep (no merged-piece logic).

    Splits the axis at every endpoint and sums the segments that at least
    one interval fully contains. Quadratic, but independent of the merge
    representation the library uses.
    """
    ivs = list(intervals)
    endpoints = sorted({e for iv in ivs for e in (iv.lo, iv.hi)})
    return math.fsum(
        b - a
        for a, b in zip(endpoints, endpoints[1:])
        if any(iv.lo <= a and b <= iv.hi for iv in ivs)
    )


def ref_brute(instance: Instance, objective: str):
    """Independent exhaustive optimum used to validate the library's search.

    Returns (subset_names_sorted, value) where value is (size, measurements)
    for ``ls`` and the cost for ``lc``. Coverage and cost are computed with
    ``ref_union_measure`` only.
    """
    items = instance.items
    n = len(items)
    target = ref_union_measure(it.interval for it in items)
    best_rank = None
    best = None
    for mask in range(1, 2**n):
        combo = [i for i in range(n) if mask >> i & 1]
        m = ref_union_measure(items[i].interval for i in combo)
        if m < target - 1e-9 * max(1.0, target):
            continue
        total = sum(items[i].count for i in combo)
        names = tuple(sorted(items[i].key.sequence for i in combo))
        if objective == "ls":
            rank = (len(combo), total, names)
            value = (len(combo), total)
        else:
            cost = total / m if m > 0 else math.inf
            rank = (cost, len(combo), names)
            value = cost
        if best_rank is None or rank < best_rank:
            best_rank = rank
            best = (names, value)
    assert best is not None, "reference search found no covering subset"
    return best


def naive_monte_carlo(intervals, samples: int, seed: int) -> float:
    """Plain endpoint-counting sampler; mirrors the library's RNG stream."""
    los = np.sort(np.array([iv.lo for iv in intervals], dtype=float))
    his = np.sort(np.array([iv.hi for iv in intervals], dtype=float))
    lo, hi = float(los[0]), float(his[-1])
    span = hi - lo
    rng = np.random.default_rng(seed)
    x = rng.uniform(lo, hi, samples)
    if span == 0.0:
        return 0.0
    inside = (
        np.searchsorted(los, x, side="right") - np.searchsorted(his, x, side="left")
    ) > 0
    return span * (int(np.count_nonzero(inside)) / samples)


# ---------------------------------------------------------------------------
# CLI runner


def run_cli(argv, env: dict[str, str] | None = None):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    saved: dict[str, str | None] = {}
    env = env or {}
    for key, value in env.items():
        saved[key] = os.environ.get(key)
        os.environ[key] = value
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main(list(argv))
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# Hypothesis strategies

finite_coord = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)

interval_st = st.builds(
    lambda a, b: Interval(min(a, b), max(a, b)), finite_coord, finite_coord
)

interval_lists = st.lists(interval_st, min_size=0, max_size=30)

sample_st = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=8,
)
