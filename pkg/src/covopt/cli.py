"""covopt command line interface.

Commands: ``coverage``, ``select``, ``multi``, ``stats wasserstein``,
``stats random-test``, ``report aggregate``. Reports render as json
(default), csv, or markdown and are byte-identical across reruns with the
same inputs, flags, and seed.

Exit codes: 0 success, 1 usage error, 2 data validation error,
3 infeasible or degenerate computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .dp import dp_select
from .errors import DegenerateCoverageError, InfeasibleError, ValidationError
from .greedy import baseline_select, greedy_select
from .model import Catalog, SequenceKey, build_instance, parse_catalog
from .multimetric import joint_coverage_curve, multi_select_union
from .oracle import BRUTE_FORCE_LIMIT, brute_force_select
from .reporting import (
    aggregate_by_group,
    csv_table,
    md_num,
    md_table,
    reduction_percent,
    sig6,
    sig6_str,
)
from .selection import SelectionResult
from .stats import parse_scores, random_subset_test, wasserstein_1d, distribution_summary

SEED_ENV_VAR = "COVOPT_SEED"

# CLI heuristic names to internal ranking identifiers.
HEURISTIC_FLAGS = {"atc": "atc-desc", "cost": "cost-asc", "min-start": "min-asc"}


class UsageError(Exception):
    """Bad invocation that argparse cannot express (exit 1)."""


class _Parser(argparse.ArgumentParser):
    # Usage problems exit 1; argparse's default of 2 is reserved for
    # input/validation errors here.
    def error(self, message):  # noqa: A002 - argparse API
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_catalog(path: str, gap_tol: float) -> Catalog:
    fmt = "vectors-json" if Path(path).suffix.lower() == ".json" else "intervals-csv"
    if gap_tol < 0:
        raise UsageError(f"--gap-tol must be non-negative, got {gap_tol}")
    return parse_catalog(path, fmt)


def _parse_subset_ids(raw: str) -> list[SequenceKey]:
    keys: list[SequenceKey] = []
    for part in raw.split(","):
        part = part.strip()
        if not part or "/" not in part:
            raise ValidationError(
                f"subset entries must look like dataset/sequence, got {part!r}"
            )
        dataset, _, sequence = part.partition("/")
        if not dataset or not sequence:
            raise ValidationError(
                f"subset entries must look like dataset/sequence, got {part!r}"
            )
        keys.append(SequenceKey(dataset, sequence))
    return keys


def _parse_metric_list(raw: str) -> list[str]:
    names = [m.strip() for m in raw.split(",")]
    if any(not m for m in names):
        raise ValidationError(f"--metrics must be a comma-separated list, got {raw!r}")
    return names


def _parse_tagged_metrics(raw: str) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    for part in raw.split(","):
        part = part.strip()
        name, sep, group = part.partition(":")
        if not sep or not name or not group:
            raise ValidationError(
                f"aggregate metrics must be tagged as name:group, got {part!r}"
            )
        pairs.append((name, group))
    return pairs


def _resolve_seed(args: argparse.Namespace) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _key_obj(key: SequenceKey) -> dict[str, str]:
    return {"dataset": key.dataset, "sequence": key.sequence}


def _subset_cell(keys: Sequence[SequenceKey]) -> str:
    return ";".join(str(k) for k in keys)


def _run_selector(instance, objective: str, algorithm: str,
                  heuristic: str | None, brute_limit: int) -> SelectionResult:
    if algorithm == "greedy":
        return greedy_select(instance, objective, heuristic)
    if heuristic is not None:
        raise UsageError("--heuristic applies only to --algorithm greedy")
    if algorithm == "dp":
        return dp_select(instance, objective)
    if algorithm == "brute":
        return brute_force_select(instance, objective, brute_limit)
    return baseline_select(instance, objective)


# ---------------------------------------------------------------------------
# coverage


def _cmd_coverage(args) -> dict:
    catalog = _load_catalog(args.catalog, args.gap_tol)
    instance = build_instance(catalog, args.metric, args.gap_tol)
    cov = instance.target
    return {
        "command": "coverage",
        "metric": args.metric,
        "gap_tol": sig6(args.gap_tol),
        "sequences": len(instance.items),
        "span_lo": sig6(cov.span_lo),
        "span_hi": sig6(cov.span_hi),
        "span": sig6(cov.span),
        "epsilon": sig6(cov.epsilon),
        "measure": sig6(cov.measure),
        "pieces": [[sig6(p.lo), sig6(p.hi)] for p in cov.pieces],
    }


def _csv_coverage(p: dict) -> str:
    pieces = ";".join(f"{lo}..{hi}" for lo, hi in p["pieces"])
    header = ["metric", "sequences", "span_lo", "span_hi", "span",
              "epsilon", "measure", "pieces"]
    row = [p["metric"], p["sequences"], sig6_str(p["span_lo"]),
           sig6_str(p["span_hi"]), sig6_str(p["span"]), sig6_str(p["epsilon"]),
           sig6_str(p["measure"]), pieces]
    return csv_table(header, [row])


def _md_coverage(p: dict) -> str:
    table = md_table(
        ["Metric", "Sequences", "Span", "ε", "Measure"],
        [[p["metric"], str(p["sequences"]), md_num(p["span"]),
          md_num(p["epsilon"]), md_num(p["measure"])]],
    )
    pieces = ", ".join(f"[{md_num(lo)}, {md_num(hi)}]" for lo, hi in p["pieces"])
    return table + f"\nPieces: {pieces}\n"


# ---------------------------------------------------------------------------
# select


def _cmd_select(args) -> dict:
    catalog = _load_catalog(args.catalog, args.gap_tol)
    instance = build_instance(catalog, args.metric, args.gap_tol)
    heuristic = HEURISTIC_FLAGS[args.heuristic] if args.heuristic else None
    result = _run_selector(instance, args.objective, args.algorithm,
                           heuristic, args.brute_limit)
    pool = len(instance.items)
    return {
        "command": "select",
        "metric": args.metric,
        "objective": args.objective,
        "algorithm": args.algorithm,
        "heuristic": result.heuristic,
        "gap_tol": sig6(args.gap_tol),
        "pool_size": pool,
        "subset": [_key_obj(k) for k in result.subset],
        "size": result.size,
        "percent": sig6(result.percent),
        "cost": sig6(result.cost),
        "measure": sig6(result.cov.measure),
        "total_measurements": result.total_measurements,
        "reduction_percent": sig6(reduction_percent(result.size, pool)),
    }


def _select_keys(p: dict) -> list[SequenceKey]:
    return [SequenceKey(e["dataset"], e["sequence"]) for e in p["subset"]]


def _csv_select(p: dict) -> str:
    header = ["metric", "objective", "algorithm", "heuristic", "pool_size",
              "size", "percent", "cost", "measure", "total_measurements",
              "reduction_percent", "subset"]
    row = [p["metric"], p["objective"], p["algorithm"], p["heuristic"] or "",
           p["pool_size"], p["size"], sig6_str(p["percent"]), sig6_str(p["cost"]),
           sig6_str(p["measure"]), p["total_measurements"],
           sig6_str(p["reduction_percent"]), _subset_cell(_select_keys(p))]
    return csv_table(header, [row])


def _md_select(p: dict) -> str:
    method = p["algorithm"] if not p["heuristic"] else f"{p['algorithm']} ({p['heuristic']})"
    table = md_table(
        ["Method", "Objective", "C(Q̃)", "P(Q̃)", "ñ"],
        [[method, p["objective"].upper(), md_num(p["cost"]),
          md_num(p["percent"]), str(p["size"])]],
    )
    subset = ", ".join(str(k) for k in _select_keys(p))
    reduction = md_num(p["reduction_percent"])
    return table + f"\nSubset: {subset}\nReduction: {reduction} % of {p['pool_size']} sequences\n"


# ---------------------------------------------------------------------------
# multi


def _cmd_multi(args) -> dict:
    catalog = _load_catalog(args.catalog, args.gap_tol)
    metrics = _parse_metric_list(args.metrics)
    if args.order == "alpha":
        metrics = sorted(metrics)
    joint, results = multi_select_union(
        catalog, metrics, args.objective, args.algorithm, args.gap_tol
    )
    curve = joint_coverage_curve(
        catalog, metrics, args.objective, args.algorithm, args.gap_tol
    )
    per_metric = [
        {
            "metric": metric,
            "size": res.size,
            "percent": sig6(res.percent),
            "cost": sig6(res.cost),
            "subset": [_key_obj(k) for k in res.subset],
        }
        for metric, res in zip(metrics, results)
    ]
    return {
        "command": "multi",
        "metrics": metrics,
        "objective": args.objective,
        "algorithm": args.algorithm,
        "order": args.order,
        "gap_tol": sig6(args.gap_tol),
        "joint_subset": [_key_obj(k) for k in sorted(joint)],
        "joint_size": len(joint),
        "per_metric": per_metric,
        "curve": [[k, size] for k, size in curve],
    }


def _csv_multi(p: dict) -> str:
    header = ["row_type", "metric", "k", "size", "percent", "cost", "subset"]
    rows: list[list[object]] = []
    for entry in p["per_metric"]:
        keys = [SequenceKey(e["dataset"], e["sequence"]) for e in entry["subset"]]
        rows.append(["metric", entry["metric"], "", entry["size"],
                     sig6_str(entry["percent"]), sig6_str(entry["cost"]),
                     _subset_cell(keys)])
    joint_keys = [SequenceKey(e["dataset"], e["sequence"]) for e in p["joint_subset"]]
    rows.append(["joint", "", "", p["joint_size"], "", "", _subset_cell(joint_keys)])
    for k, size in p["curve"]:
        rows.append(["curve", "", k, size, "", "", ""])
    return csv_table(header, rows)


def _md_multi(p: dict) -> str:
    rows = []
    for entry in p["per_metric"]:
        rows.append([entry["metric"], md_num(entry["cost"]),
                     md_num(entry["percent"]), str(entry["size"])])
    table = md_table(["Metric", "C(Q̃)", "P(Q̃)", "ñ"], rows)
    joint = ", ".join(
        str(SequenceKey(e["dataset"], e["sequence"])) for e in p["joint_subset"]
    )
    curve = ", ".join(f"{k}:{size}" for k, size in p["curve"])
    return (table + f"\nJoint subset ({p['joint_size']}): {joint}\n"
            f"Coverage curve (metrics:size): {curve}\n")


# ---------------------------------------------------------------------------
# stats


def _cmd_stats_wasserstein(args) -> dict:
    scores = parse_scores(args.scores)
    keys = _parse_subset_ids(args.subset)
    subset_values = scores.values_for(keys)
    full_values = list(scores.scores.values())
    distance = wasserstein_1d(subset_values, full_values)
    return {
        "command": "stats-wasserstein",
        "subset": [_key_obj(k) for k in keys],
        "subset_size": len(keys),
        "pool_size": len(scores),
        "distance": sig6(distance),
        "subset_summary": {k: sig6(v) for k, v in distribution_summary(subset_values).items()},
        "full_summary": {k: sig6(v) for k, v in distribution_summary(full_values).items()},
    }


def _csv_stats_wasserstein(p: dict) -> str:
    header = ["subset_size", "pool_size", "distance"]
    row: list[object] = [p["subset_size"], p["pool_size"], sig6_str(p["distance"])]
    for side in ("subset", "full"):
        for stat in ("mean", "median", "std", "min", "max"):
            header.append(f"{side}_{stat}")
            row.append(sig6_str(p[f"{side}_summary"][stat]))
    return csv_table(header, [row])


def _md_stats_wasserstein(p: dict) -> str:
    rows = []
    for side in ("subset", "full"):
        s = p[f"{side}_summary"]
        rows.append([side, md_num(s["mean"]), md_num(s["median"]),
                     md_num(s["std"]), md_num(s["min"]), md_num(s["max"])])
    table = md_table(["Sample", "Mean", "Median", "Std", "Min", "Max"], rows)
    return table + f"\nWasserstein distance: {md_num(p['distance'])}\n"


def _cmd_stats_random_test(args) -> dict:
    scores = parse_scores(args.scores)
    keys = _parse_subset_ids(args.subset)
    seed = _resolve_seed(args)
    result = random_subset_test(
        scores, keys, iterations=args.iterations, seed=seed,
        exhaustive=args.exhaustive,
    )
    return {
        "command": "stats-random-test",
        "subset": [_key_obj(k) for k in keys],
        "subset_size": len(keys),
        "pool_size": len(scores),
        "mode": result.mode,
        "draws": result.draws,
        "seed": seed,
        "candidate_distance": sig6(result.candidate_distance),
        "p_value": sig6(result.p_value),
        "distance_ratio": sig6(result.distance_ratio),
        "random_summary": {k: sig6(v) for k, v in result.random_summary.items()},
    }


def _csv_stats_random_test(p: dict) -> str:
    header = ["subset_size", "pool_size", "mode", "draws", "seed",
              "candidate_distance", "p_value", "distance_ratio",
              "random_mean", "random_median", "random_std", "random_min", "random_max"]
    s = p["random_summary"]
    row = [p["subset_size"], p["pool_size"], p["mode"], p["draws"], p["seed"],
           sig6_str(p["candidate_distance"]), sig6_str(p["p_value"]),
           sig6_str(p["distance_ratio"]), sig6_str(s["mean"]), sig6_str(s["median"]),
           sig6_str(s["std"]), sig6_str(s["min"]), sig6_str(s["max"])]
    return csv_table(header, [row])


def _md_stats_random_test(p: dict) -> str:
    s = p["random_summary"]
    table = md_table(
        ["Candidate W₁", "Random mean", "Random std", "p-value", "Ratio"],
        [[md_num(p["candidate_distance"]), md_num(s["mean"]), md_num(s["std"]),
          md_num(p["p_value"]), md_num(p["distance_ratio"])]],
    )
    return table + (f"\nMode: {p['mode']} ({p['draws']} subsets of size "
                    f"{p['subset_size']} from {p['pool_size']})\n")


# ---------------------------------------------------------------------------
# report aggregate


def _cmd_report_aggregate(args) -> dict:
    catalog = _load_catalog(args.catalog, args.gap_tol)
    tagged = _parse_tagged_metrics(args.metrics)
    heuristic = HEURISTIC_FLAGS[args.heuristic] if args.heuristic else None
    triples = []
    per_metric = []
    for metric, group in tagged:
        instance = build_instance(catalog, metric, args.gap_tol)
        result = _run_selector(instance, args.objective, args.algorithm,
                               heuristic, args.brute_limit)
        triples.append((metric, group, result))
        per_metric.append({
            "metric": metric,
            "group": group,
            "size": result.size,
            "percent": sig6(result.percent),
            "cost": sig6(result.cost),
        })
    aggregates = aggregate_by_group(triples)
    groups = [
        {
            "group": agg.group,
            "metrics": agg.metric_count,
            "mean_cost": sig6(agg.mean_cost),
            "mean_percent": sig6(agg.mean_percent),
            "mean_size": sig6(agg.mean_size),
            "undefined_cost_count": agg.undefined_cost_count,
        }
        for agg in aggregates.values()
    ]
    return {
        "command": "report-aggregate",
        "objective": args.objective,
        "algorithm": args.algorithm,
        "gap_tol": sig6(args.gap_tol),
        "groups": groups,
        "per_metric": per_metric,
    }


def _csv_report_aggregate(p: dict) -> str:
    header = ["group", "metrics", "mean_cost", "mean_percent", "mean_size",
              "undefined_cost_count"]
    rows = [
        [g["group"], g["metrics"], sig6_str(g["mean_cost"]),
         sig6_str(g["mean_percent"]), sig6_str(g["mean_size"]),
         g["undefined_cost_count"]]
        for g in p["groups"]
    ]
    return csv_table(header, rows)


def _md_report_aggregate(p: dict) -> str:
    rows = [
        [g["group"], str(g["metrics"]), md_num(g["mean_cost"]),
         md_num(g["mean_percent"]), md_num(g["mean_size"])]
        for g in p["groups"]
    ]
    return md_table(["Group", "Metrics", "C(Q̃)", "P(Q̃)", "ñ"], rows)


# ---------------------------------------------------------------------------
# wiring

_CSV_RENDERERS = {
    "coverage": _csv_coverage,
    "select": _csv_select,
    "multi": _csv_multi,
    "stats-wasserstein": _csv_stats_wasserstein,
    "stats-random-test": _csv_stats_random_test,
    "report-aggregate": _csv_report_aggregate,
}

_MD_RENDERERS = {
    "coverage": _md_coverage,
    "select": _md_select,
    "multi": _md_multi,
    "stats-wasserstein": _md_stats_wasserstein,
    "stats-random-test": _md_stats_random_test,
    "report-aggregate": _md_report_aggregate,
}


def render_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return _CSV_RENDERERS[payload["command"]](payload)
    return _MD_RENDERERS[payload["command"]](payload)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["json", "csv", "markdown"],
                        default="json", help="report output format")


def _add_catalog_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--catalog", required=True,
                        help="catalog file (.csv intervals or .json vectors)")
    parser.add_argument("--gap-tol", type=float, default=0.0, metavar="REAL",
                        help="merge coverage gaps up to this length (default 0)")


def _add_selector_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--objective", choices=["ls", "lc"], required=True,
                        help="ls = fewest sequences, lc = lowest coverage cost")
    parser.add_argument("--heuristic", choices=sorted(HEURISTIC_FLAGS),
                        help="greedy ranking heuristic (greedy only)")
    parser.add_argument("--brute-limit", type=int, default=BRUTE_FORCE_LIMIT,
                        metavar="INT", help="max items brute force will enumerate")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="covopt",
                     description="Dynamic-range coverage and benchmark subset selection.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    cov = sub.add_parser("coverage", help="measure a metric's covered dynamic range")
    _add_catalog_flags(cov)
    cov.add_argument("--metric", required=True, help="metric to analyze")
    _add_common(cov)
    cov.set_defaults(handler=_cmd_coverage)

    sel = sub.add_parser("select", help="select an evaluation subset for one metric")
    _add_catalog_flags(sel)
    sel.add_argument("--metric", required=True, help="metric to cover")
    _add_selector_flags(sel)
    sel.add_argument("--algorithm", choices=["greedy", "dp", "brute", "baseline"],
                     default="dp", help="selection algorithm")
    _add_common(sel)
    sel.set_defaults(handler=_cmd_select)

    multi = sub.add_parser("multi", help="joint subset across several metrics")
    _add_catalog_flags(multi)
    multi.add_argument("--metrics", required=True, metavar="A,B,C",
                       help="comma-separated metric names")
    multi.add_argument("--objective", choices=["ls", "lc"], required=True)
    multi.add_argument("--algorithm", choices=["greedy", "dp"], default="dp")
    multi.add_argument("--order", choices=["given", "alpha"], default="given",
                       help="process metrics as given or alphabetically")
    _add_common(multi)
    multi.set_defaults(handler=_cmd_multi)

    stats = sub.add_parser("stats", help="statistical subset validation")
    stats_sub = stats.add_subparsers(dest="stats_command", required=True,
                                     metavar="SUBCOMMAND")

    wd = stats_sub.add_parser("wasserstein",
                              help="distance between subset and full score distributions")
    wd.add_argument("--scores", required=True, help="scores CSV (dataset,sequence,score)")
    wd.add_argument("--subset", required=True, metavar="DS/SEQ,...",
                    help="comma-separated sequence ids")
    _add_common(wd)
    wd.set_defaults(handler=_cmd_stats_wasserstein)

    rt = stats_sub.add_parser("random-test",
                              help="candidate subset vs random same-size subsets")
    rt.add_argument("--scores", required=True, help="scores CSV (dataset,sequence,score)")
    rt.add_argument("--subset", required=True, metavar="DS/SEQ,...",
                    help="comma-separated sequence ids")
    rt.add_argument("--iterations", type=int, default=2000, metavar="INT",
                    help="random subsets to draw (sampled mode)")
    rt.add_argument("--seed", type=int, default=None, metavar="INT",
                    help=f"RNG seed (fallback: ${SEED_ENV_VAR}, then 0)")
    rt.add_argument("--exhaustive", action="store_true",
                    help="enumerate every same-size subset instead of sampling")
    _add_common(rt)
    rt.set_defaults(handler=_cmd_stats_random_test)

    report = sub.add_parser("report", help="derived report tables")
    report_sub = report.add_subparsers(dest="report_command", required=True,
                                       metavar="SUBCOMMAND")

    agg = report_sub.add_parser("aggregate",
                                help="per-group means of per-metric selections")
    _add_catalog_flags(agg)
    agg.add_argument("--metrics", required=True, metavar="A:G1,B:G2",
                     help="comma-separated metric:group pairs")
    _add_selector_flags(agg)
    agg.add_argument("--algorithm", choices=["greedy", "dp", "brute", "baseline"],
                     default="dp")
    _add_common(agg)
    agg.set_defaults(handler=_cmd_report_aggregate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        payload = args.handler(args)
    except UsageError as exc:
        print(f"covopt: error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"covopt: {exc}", file=sys.stderr)
        return 2
    except (DegenerateCoverageError, InfeasibleError) as exc:
        print(f"covopt: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"covopt: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(payload, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
