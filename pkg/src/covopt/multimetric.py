"""Multi-metric selection: per-metric subsets joined by set union."""

from __future__ import annotations

from typing import Sequence

from .errors import ValidationError
from .greedy import greedy_select
from .dp import dp_select
from .model import Catalog, SequenceKey, build_instance
from .selection import SelectionResult, check_objective


def _check_metrics(metrics: Sequence[str]) -> list[str]:
    names = list(metrics)
    if not names:
        raise ValidationError("at least one metric is required")
    if len(set(names)) != len(names):
        raise ValidationError(f"metric list contains duplicates: {names}")
    return names


def _select_one(catalog: Catalog, metric: str, objective: str, algorithm: str,
                gap_tol: float) -> SelectionResult:
    instance = build_instance(catalog, metric, gap_tol)
    if algorithm == "greedy":
        return greedy_select(instance, objective)
    if algorithm == "dp":
        return dp_select(instance, objective)
    raise ValidationError(
        f"multi-metric selection supports greedy or dp, got {algorithm!r}"
    )


def multi_select_union(
    catalog: Catalog,
    metrics: Sequence[str],
    objective: str,
    algorithm: str = "dp",
    gap_tol: float = 0.0,
) -> tuple[set[SequenceKey], list[SelectionResult]]:
    """Select per metric and join the subsets.

    Returns the joint subset (a sequence picked for any metric is run once)
    and the per-metric results in metric order.
    """
    check_objective(objective)
    names = _check_metrics(metrics)
    results = [
        _select_one(catalog, metric, objective, algorithm, gap_tol)
        for metric in names
    ]
    joint: set[SequenceKey] = set()
    for res in results:
        joint.update(res.subset)
    return joint, results


def joint_coverage_curve(
    catalog: Catalog,
    metrics: Sequence[str],
    objective: str,
    algorithm: str = "dp",
    gap_tol: float = 0.0,
) -> list[tuple[int, int]]:
    """Joint subset size after each metric-list prefix; non-decreasing in k."""
    check_objective(objective)
    names = _check_metrics(metrics)
    results = [
        _select_one(catalog, metric, objective, algorithm, gap_tol)
        for metric in names
    ]
    curve: list[tuple[int, int]] = []
    joint: set[SequenceKey] = set()
    for k, res in enumerate(results, start=1):
        joint.update(res.subset)
        curve.append((k, len(joint)))
    return curve
