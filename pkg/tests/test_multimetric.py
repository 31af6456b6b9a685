"""Joint selection across several metrics."""

import pytest

from covopt import (
    Catalog,
    Interval,
    SequenceKey,
    SequenceRecord,
    build_instance,
    coverage_percent,
    joint_coverage_curve,
    multi_select_union,
    union_of,
)
from covopt.errors import ValidationError

import helpers


def _catalog(rows):
    return Catalog.from_records(
        SequenceRecord(
            SequenceKey("syn", name),
            count,
            {metric: Interval(lo, hi) for metric, (lo, hi) in metrics.items()},
        )
        for name, metrics, count in rows
    )


# Each metric has a different single-sequence optimum, so the joint subset
# is the three-way union.
CATALOG_DISJOINT = _catalog(
    [
        ("s1", {"m1": (0, 10), "m2": (0, 2), "m3": (5, 6)}, 10),
        ("s2", {"m1": (0, 5), "m2": (0, 10), "m3": (0, 5)}, 5),
        ("s3", {"m1": (5, 10), "m2": (8, 10), "m3": (5, 10)}, 5),
        ("s4", {"m1": (2, 3), "m2": (4, 6), "m3": (0, 10)}, 1),
    ]
)

# One sequence is optimal for both metrics, so the joint subset collapses.
CATALOG_SHARED = _catalog(
    [
        ("t1", {"m1": (0, 10), "m2": (0, 10)}, 5),
        ("t2", {"m1": (0, 4), "m2": (6, 10)}, 1),
    ]
)


def _joint_covers_every_metric(catalog, metrics, joint):
    for metric in metrics:
        instance = build_instance(catalog, metric)
        cov = union_of(
            it.interval for it in instance.items if it.key in joint
        )
        assert coverage_percent(cov, instance.target) == 100.0


@pytest.mark.parametrize("algorithm", ["dp", "greedy"])
class TestMultiSelectUnion:
    def test_disjoint_optima_union(self, algorithm):
        metrics = ["m1", "m2", "m3"]
        joint, results = multi_select_union(
            CATALOG_DISJOINT, metrics, "ls", algorithm
        )
        assert sorted(k.sequence for k in joint) == ["s1", "s2", "s4"]
        assert [r.size for r in results] == [1, 1, 1]
        assert [r.objective for r in results] == ["ls"] * 3
        _joint_covers_every_metric(CATALOG_DISJOINT, metrics, joint)

    def test_shared_optimum_collapses(self, algorithm):
        joint, results = multi_select_union(
            CATALOG_SHARED, ["m1", "m2"], "ls", algorithm
        )
        assert sorted(k.sequence for k in joint) == ["t1"]
        assert len(joint) == 1
        _joint_covers_every_metric(CATALOG_SHARED, ["m1", "m2"], joint)

    def test_size_bounds(self, algorithm):
        for catalog, metrics in (
            (CATALOG_DISJOINT, ["m1", "m2", "m3"]),
            (CATALOG_SHARED, ["m1", "m2"]),
        ):
            joint, results = multi_select_union(catalog, metrics, "ls", algorithm)
            sizes = [r.size for r in results]
            assert max(sizes) <= len(joint) <= sum(sizes)

    def test_metric_order_does_not_change_the_joint_set(self, algorithm):
        joint_a, _ = multi_select_union(
            CATALOG_DISJOINT, ["m1", "m2", "m3"], "ls", algorithm
        )
        joint_b, _ = multi_select_union(
            CATALOG_DISJOINT, ["m3", "m1", "m2"], "ls", algorithm
        )
        assert joint_a == joint_b

    def test_deterministic(self, algorithm):
        first = multi_select_union(CATALOG_DISJOINT, ["m1", "m2"], "lc", algorithm)
        second = multi_select_union(CATALOG_DISJOINT, ["m1", "m2"], "lc", algorithm)
        assert first == second


class TestJointCoverageCurve:
    def test_prefix_sizes(self):
        curve = joint_coverage_curve(CATALOG_DISJOINT, ["m1", "m2", "m3"], "ls", "dp")
        assert curve == [(1, 1), (2, 2), (3, 3)]

    def test_collapsing_curve(self):
        curve = joint_coverage_curve(CATALOG_SHARED, ["m1", "m2"], "ls", "dp")
        assert curve == [(1, 1), (2, 1)]

    def test_non_decreasing_and_consistent_with_union(self):
        metrics = ["m2", "m3", "m1"]
        curve = joint_coverage_curve(CATALOG_DISJOINT, metrics, "lc", "greedy")
        sizes = [size for _, size in curve]
        assert sizes == sorted(sizes)
        joint, _ = multi_select_union(CATALOG_DISJOINT, metrics, "lc", "greedy")
        assert curve[-1] == (len(metrics), len(joint))


class TestValidation:
    def test_empty_metric_list(self):
        with pytest.raises(ValidationError, match="metric"):
            multi_select_union(CATALOG_SHARED, [], "ls")

    def test_duplicate_metric(self):
        with pytest.raises(ValidationError, match="duplicate"):
            multi_select_union(CATALOG_SHARED, ["m1", "m1"], "ls")

    def test_unknown_algorithm(self):
        with pytest.raises(ValidationError, match="greedy or dp"):
            multi_select_union(CATALOG_SHARED, ["m1"], "ls", "brute")

    def test_unknown_metric_propagates(self):
        with pytest.raises(ValidationError, match="m9"):
            multi_select_union(CATALOG_SHARED, ["m1", "m9"], "ls")

    def test_unknown_objective(self):
        with pytest.raises(ValidationError, match="objective"):
            joint_coverage_curve(CATALOG_SHARED, ["m1"], "speed")
