"""Shared selection-result plumbing used by every selector."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coverage import CoverageSet, coverage_percent, union_of
from .errors import ValidationError
from .model import Instance, SequenceKey

OBJECTIVES = ("ls", "lc")
ALGORITHMS = ("greedy", "dp", "brute", "baseline")


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one selection run.

    ``subset`` lists the chosen sequences in selection order. ``cost`` is
    measurements per unit covered range, or None when the covered measure
    is zero (undefined).
    """

    subset: tuple[SequenceKey, ...]
    cov: CoverageSet
    percent: float
    cost: float | None
    size: int
    objective: str
    algorithm: str
    heuristic: str | None = None
    total_measurements: int = 0


def check_objective(objective: str) -> str:
    if objective not in OBJECTIVES:
        raise ValidationError(
            f"objective must be one of {'/'.join(OBJECTIVES)}, got {objective!r}"
        )
    return objective


def build_result(
    instance: Instance,
    chosen: Sequence[int],
    objective: str,
    algorithm: str,
    heuristic: str | None = None,
) -> SelectionResult:
    """Assemble a SelectionResult from chosen item indices (selection order)."""
    items = [instance.items[i] for i in chosen]
    cov = union_of((it.interval for it in items), instance.gap_tol)
    percent = coverage_percent(cov, instance.target)
    total = sum(it.count for it in items)
    cost = total / cov.measure if cov.measure > 0 else None
    return SelectionResult(
        subset=tuple(it.key for it in items),
        cov=cov,
        percent=percent,
        cost=cost,
        size=len(items),
        objective=objective,
        algorithm=algorithm,
        heuristic=heuristic,
        total_measurements=total,
    )
