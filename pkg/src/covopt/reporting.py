"""Report arithmetic and rendering helpers.

Machine formats (json, csv) carry numbers at 6 significant digits; markdown
tables round to 2 decimal places. Full precision is kept internally.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .selection import SelectionResult


def reduction_percent(subset_size: int, pool_size: int) -> float:
    """Percent of the pool avoided by running only the subset."""
    if pool_size < 1:
        raise ValidationError(f"pool size must be >= 1, got {pool_size}")
    if subset_size < 0 or subset_size > pool_size:
        raise ValidationError(
            f"subset size {subset_size} must lie in [0, {pool_size}]"
        )
    return 100.0 * (1.0 - subset_size / pool_size)


@dataclass(frozen=True)
class GroupAggregate:
    """Arithmetic means of one metric group's selection results."""

    group: str
    metric_count: int
    mean_cost: float | None
    mean_percent: float
    mean_size: float
    undefined_cost_count: int


def aggregate_by_group(
    results: Sequence[tuple[str, str, SelectionResult]]
) -> dict[str, GroupAggregate]:
    """Average cost/percent/size per group of (metric, group, result) entries.

    Results with undefined cost are excluded from the cost mean and counted.
    """
    if not results:
        raise ValidationError("nothing to aggregate: empty results")
    grouped: dict[str, list[SelectionResult]] = {}
    for metric, group, result in results:
        if not group:
            raise ValidationError(f"metric {metric!r} has an empty group tag")
        grouped.setdefault(group, []).append(result)
    out: dict[str, GroupAggregate] = {}
    for group in sorted(grouped):
        members = grouped[group]
        costs = [r.cost for r in members if r.cost is not None]
        undefined = len(members) - len(costs)
        out[group] = GroupAggregate(
            group=group,
            metric_count=len(members),
            mean_cost=sum(costs) / len(costs) if costs else None,
            mean_percent=sum(r.percent for r in members) / len(members),
            mean_size=sum(r.size for r in members) / len(members),
            undefined_cost_count=undefined,
        )
    return out


# ---------------------------------------------------------------------------
# Number and table formatting


def sig6(value: float | int | None):
    """6-significant-digit number for machine formats (None passes through)."""
    if value is None:
        return None
    if isinstance(value, int):
        return value
    return float(format(value, ".6g"))


def sig6_str(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(value, ".6g")


def md_num(value: float | int | None) -> str:
    """2-decimal rendering for markdown tables; undefined prints as '-'."""
    if value is None:
        return "-"
    if isinstance(value, int):
        return str(value)
    return f"{value:.2f}"


def csv_table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return out.getvalue()


def md_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"
