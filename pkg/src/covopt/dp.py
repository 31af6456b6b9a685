"""Tabulation-based subset selection over quantized coverage states.

The table has 11 cells: cell 1 is the empty-subset base state and cells
2..11 hold the best known subset whose coverage percent falls in the
corresponding 10-point bin (cell 11 = complete coverage). Every pass tries
to extend each occupied cell by each absent item; a candidate lands in the
bin of its percent and replaces the occupant only if it is strictly better
there. Passes repeat until nothing changes, which makes the outcome
independent of sweep order; the answer is whatever occupies cell 11.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coverage import (
    CoverageSet,
    clamp_percent,
    coverage_percent,
    empty_coverage,
    extend,
)
from .model import Instance
from .selection import SelectionResult, build_result, check_objective

N_CELLS = 11


def quantize_bin(percent: float) -> int:
    """Map a coverage percent in [0, 100] to its table cell (1..11)."""
    if not 0.0 <= percent <= 100.0:
        raise ValueError(f"percent out of range [0, 100]: {percent}")
    return min(N_CELLS, int(percent // 10) + 1)


@dataclass(frozen=True)
class DpCell:
    """One table occupant: a subset with its coverage and bookkeeping.

    ``items`` keeps the order in which the chain added them; ``keys`` is the
    sorted key list used for deterministic tie-breaking.
    """

    items: tuple[int, ...]
    cov: CoverageSet
    count: int
    total_measurements: int
    keys: tuple[tuple[str, str], ...]


def _preference(cell: DpCell, objective: str):
    # Greater measure wins; on ties the objective decides, then the
    # lexicographically smallest sorted key list.
    if objective == "ls":
        return (-cell.cov.measure, cell.count, cell.total_measurements, cell.keys)
    return (-cell.cov.measure, cell.total_measurements, cell.count, cell.keys)


def replace_cell(existing: DpCell | None, candidate: DpCell, objective: str) -> DpCell:
    """Pick the better occupant for a cell; an empty cell takes the candidate."""
    if existing is None:
        return candidate
    if _preference(candidate, objective) < _preference(existing, objective):
        return candidate
    return existing


@dataclass
class DpRun:
    """Full tabulation trace: final cells, pass count, per-pass snapshots."""

    cells: list[DpCell | None]  # index 1..11; index 0 unused
    passes: int
    snapshots: list[tuple[DpCell | None, ...]]  # cells[1..11] after each pass


def run_dp(instance: Instance, objective: str) -> DpRun:
    """Iterate table passes to a fixpoint and return the whole trace."""
    check_objective(objective)
    items = instance.items
    target = instance.target
    n = len(items)
    cells: list[DpCell | None] = [None] * (N_CELLS + 1)
    cells[1] = DpCell((), empty_coverage(), 0, 0, ())
    snapshots: list[tuple[DpCell | None, ...]] = []
    passes = 0
    while True:
        passes += 1
        changed = False
        for loc in range(1, N_CELLS + 1):
            cell = cells[loc]
            if cell is None:
                continue
            members = set(cell.items)
            for j in range(n):
                if j in members:
                    continue
                item = items[j]
                cov = extend(cell.cov, item.interval, instance.gap_tol)
                percent = clamp_percent(coverage_percent(cov, target))
                dest = quantize_bin(percent)
                candidate = DpCell(
                    items=cell.items + (j,),
                    cov=cov,
                    count=cell.count + 1,
                    total_measurements=cell.total_measurements + item.count,
                    keys=tuple(sorted(cell.keys + ((item.key.dataset, item.key.sequence),))),
                )
                winner = replace_cell(cells[dest], candidate, objective)
                if winner is not cells[dest]:
                    cells[dest] = winner
                    changed = True
        snapshots.append(tuple(cells[1:]))
        if not changed:
            break
    return DpRun(cells=cells, passes=passes, snapshots=snapshots)


def dp_select(instance: Instance, objective: str) -> SelectionResult:
    """Tabulated selection; returns the complete-coverage cell's subset."""
    run = run_dp(instance, objective)
    final = run.cells[N_CELLS]
    assert final is not None, "fixpoint reached without a complete-coverage cell"
    return build_result(instance, final.items, objective, "dp")
