"""covopt: dynamic-range coverage measurement and minimal benchmark subset selection.

Benchmark sequences characterize themselves by metrics whose values occupy
intervals; covopt measures how much of each metric's dynamic range a set of
sequences covers, selects minimal subsets that keep full coverage (greedy
and tabulation-based optimizers, with brute-force oracles), and validates
chosen subsets statistically.
"""

from .coverage import (
    FULL_COVERAGE_TOL,
    CoverageSet,
    Interval,
    clamp_percent,
    coverage_cost,
    coverage_percent,
    empty_coverage,
    extend,
    is_complete,
    union_of,
)
from .dp import DpCell, DpRun, dp_select, quantize_bin, replace_cell, run_dp
from .errors import (
    CovoptError,
    DegenerateCoverageError,
    InfeasibleError,
    ValidationError,
)
from .greedy import (
    DEFAULT_HEURISTIC,
    HEURISTICS,
    baseline_select,
    greedy_select,
    rank_sequences,
)
from .model import (
    Catalog,
    Instance,
    Item,
    SequenceKey,
    SequenceRecord,
    build_instance,
    dump_intervals_csv,
    parse_catalog,
)
from .multimetric import joint_coverage_curve, multi_select_union
from .oracle import BRUTE_FORCE_LIMIT, brute_force_select, monte_carlo_measure
from .reporting import GroupAggregate, aggregate_by_group, reduction_percent
from .selection import SelectionResult, build_result
from .stats import (
    RandomSubsetResult,
    ScoreTable,
    distribution_summary,
    exhaustive_subset_distances,
    parse_scores,
    random_subset_distances,
    random_subset_test,
    wasserstein_1d,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTE_FORCE_LIMIT",
    "Catalog",
    "CovoptError",
    "CoverageSet",
    "DEFAULT_HEURISTIC",
    "DegenerateCoverageError",
    "DpCell",
    "DpRun",
    "FULL_COVERAGE_TOL",
    "GroupAggregate",
    "HEURISTICS",
    "InfeasibleError",
    "Instance",
    "Interval",
    "Item",
    "RandomSubsetResult",
    "ScoreTable",
    "SelectionResult",
    "SequenceKey",
    "SequenceRecord",
    "ValidationError",
    "aggregate_by_group",
    "baseline_select",
    "brute_force_select",
    "build_instance",
    "build_result",
    "clamp_percent",
    "coverage_cost",
    "coverage_percent",
    "distribution_summary",
    "dp_select",
    "dump_intervals_csv",
    "empty_coverage",
    "exhaustive_subset_distances",
    "extend",
    "greedy_select",
    "is_complete",
    "joint_coverage_curve",
    "monte_carlo_measure",
    "multi_select_union",
    "parse_catalog",
    "parse_scores",
    "quantize_bin",
    "random_subset_distances",
    "random_subset_test",
    "rank_sequences",
    "reduction_percent",
    "replace_cell",
    "run_dp",
    "union_of",
    "wasserstein_1d",
    "__version__",
]
