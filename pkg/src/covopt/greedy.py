"""Greedy and baseline subset selection.

The greedy selector sweeps items in a heuristic order and keeps only the
ones that actually grow the covered measure, stopping as soon as the pool's
full dynamic range is covered. The baseline does the same sweep in plain
catalog order, mimicking an evaluation campaign that simply runs everything.
"""

from __future__ import annotations

import math
from typing import Sequence

from .coverage import coverage_percent, extend, empty_coverage, is_complete
from .errors import ValidationError
from .model import Instance
from .selection import SelectionResult, build_result, check_objective

HEURISTICS = ("atc-desc", "cost-asc", "min-asc")

# Sensible sweep order per objective: widest range first when minimizing
# subset size, cheapest measurements-per-range first when minimizing cost.
DEFAULT_HEURISTIC = {"ls": "atc-desc", "lc": "cost-asc"}


def rank_sequences(instance: Instance, heuristic: str) -> list[int]:
    """Order item indices by heuristic; all ties break by (dataset, sequence).

    * ``atc-desc``  — interval length, longest first;
    * ``cost-asc``  — count per unit length, cheapest first (zero-length last);
    * ``min-asc``   — interval lower bound, smallest first.
    """
    items = instance.items
    if heuristic == "atc-desc":
        def sort_key(i: int):
            return (-items[i].interval.length, items[i].key)
    elif heuristic == "cost-asc":
        def sort_key(i: int):
            length = items[i].interval.length
            rate = items[i].count / length if length > 0 else math.inf
            return (rate, items[i].key)
    elif heuristic == "min-asc":
        def sort_key(i: int):
            return (items[i].interval.lo, items[i].key)
    else:
        raise ValidationError(
            f"heuristic must be one of {'/'.join(HEURISTICS)}, got {heuristic!r}"
        )
    return sorted(range(len(items)), key=sort_key)


def _sweep(instance: Instance, order: Sequence[int]) -> list[int]:
    """Walk items in the given order, keeping measure-increasing picks."""
    target = instance.target
    if target.measure == 0:
        # Point-mass pool: the first pick alone covers it (percent convention).
        return [order[0]] if order else []
    cov = empty_coverage()
    chosen: list[int] = []
    for i in order:
        grown = extend(cov, instance.items[i].interval, instance.gap_tol)
        if grown.measure > cov.measure:
            cov = grown
            chosen.append(i)
            if is_complete(coverage_percent(cov, target)):
                break
    return chosen


def greedy_select(
    instance: Instance, objective: str, heuristic: str | None = None
) -> SelectionResult:
    """Greedy selection under the given objective.

    ``ls`` targets the fewest sequences, ``lc`` the lowest coverage cost;
    the heuristic defaults accordingly but can be overridden.
    """
    check_objective(objective)
    if heuristic is None:
        heuristic = DEFAULT_HEURISTIC[objective]
    order = rank_sequences(instance, heuristic)
    chosen = _sweep(instance, order)
    return build_result(instance, chosen, objective, "greedy", heuristic)


def baseline_select(instance: Instance, objective: str) -> SelectionResult:
    """Sweep in catalog order: the run-everything reference campaign."""
    check_objective(objective)
    chosen = _sweep(instance, range(len(instance.items)))
    return build_result(instance, chosen, objective, "baseline")
