"""Catalog model: benchmark sequences, their metric intervals, and ingestion.

Two input formats are supported:

* intervals CSV with header ``dataset,sequence,metric,min,max,count`` — one
  row per (sequence, metric), UTF-8, ``.`` decimal separator;
* vectors JSON ``{"sequences": [{"dataset", "sequence", "count",
  "metrics": {name: [values...]}}]}`` — intervals are derived as
  [min(values), max(values)].

``build_instance`` projects a catalog onto one metric, producing the items
and full-pool target that the selectors consume.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Mapping

from .coverage import CoverageSet, Interval, union_of
from .errors import ValidationError

INTERVALS_CSV_HEADER = ["dataset", "sequence", "metric", "min", "max", "count"]


@dataclass(frozen=True, order=True)
class SequenceKey:
    """Identity of a benchmark sequence; orders lexicographically."""

    dataset: str
    sequence: str

    def __str__(self) -> str:
        return f"{self.dataset}/{self.sequence}"


@dataclass(frozen=True)
class SequenceRecord:
    """One sequence: its measurement count and per-metric value intervals."""

    key: SequenceKey
    count: int
    intervals: Mapping[str, Interval]


@dataclass(frozen=True)
class Catalog:
    """Ordered collection of sequence records."""

    records: tuple[SequenceRecord, ...]
    metrics: frozenset[str]

    @classmethod
    def from_records(cls, records: Iterable[SequenceRecord]) -> "Catalog":
        recs = tuple(records)
        seen: set[SequenceKey] = set()
        for rec in recs:
            if rec.key in seen:
                raise ValidationError(f"duplicate sequence {rec.key}")
            seen.add(rec.key)
        metrics = frozenset(m for rec in recs for m in rec.intervals)
        return cls(recs, metrics)


@dataclass(frozen=True)
class Item:
    """One selectable unit of an instance: a sequence's interval and count."""

    key: SequenceKey
    interval: Interval
    count: int


@dataclass(frozen=True)
class Instance:
    """A single-metric selection problem: items plus the full-pool target."""

    metric: str
    items: tuple[Item, ...]
    target: CoverageSet
    gap_tol: float = 0.0


def _check_count(raw: object, where: str) -> int:
    if isinstance(raw, bool):
        raise ValidationError(f"{where}: count must be an integer, got {raw!r}")
    if isinstance(raw, str):
        stripped = raw.strip()
        if not stripped.lstrip("+-").isdigit():
            raise ValidationError(f"{where}: count must be an integer, got {raw!r}")
        count = int(stripped)
    elif isinstance(raw, int):
        count = raw
    else:
        raise ValidationError(f"{where}: count must be an integer, got {raw!r}")
    if count < 1:
        raise ValidationError(f"{where}: count must be >= 1, got {count}")
    return count


def _check_float(raw: str | float, field: str, where: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ValidationError(f"{where}: {field} must be a real number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"{where}: {field} must be finite, got {raw!r}")
    return value


def _check_name(raw: str, field: str, where: str) -> str:
    if not isinstance(raw, str) or not raw:
        raise ValidationError(f"{where}: {field} must be a non-empty string")
    return raw


def _open_source(source: str | Path | IO) -> tuple[str, bool]:
    """Return the text content of a path, text stream, or byte stream."""
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8"), True
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8"), False
    return data, False


def parse_catalog(source: str | Path | IO, fmt: str = "intervals-csv") -> Catalog:
    """Parse a catalog from ``intervals-csv`` or ``vectors-json`` input."""
    text, _ = _open_source(source)
    if fmt == "intervals-csv":
        return _parse_intervals_csv(text)
    if fmt == "vectors-json":
        return _parse_vectors_json(text)
    raise ValidationError(f"unknown catalog format {fmt!r}")


def _parse_intervals_csv(text: str) -> Catalog:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ValidationError("intervals CSV is empty")
    if [c.strip() for c in rows[0]] != INTERVALS_CSV_HEADER:
        raise ValidationError(
            "intervals CSV header must be exactly "
            f"{','.join(INTERVALS_CSV_HEADER)!r}, got {','.join(rows[0])!r}"
        )
    order: list[SequenceKey] = []
    counts: dict[SequenceKey, int] = {}
    intervals: dict[SequenceKey, dict[str, Interval]] = {}
    seen_rows: set[tuple[str, str, str]] = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        where = f"line {lineno}"
        if len(row) != 6:
            raise ValidationError(f"{where}: expected 6 columns, got {len(row)}")
        dataset = _check_name(row[0], "dataset", where)
        sequence = _check_name(row[1], "sequence", where)
        metric = _check_name(row[2], "metric", where)
        lo = _check_float(row[3], "min", where)
        hi = _check_float(row[4], "max", where)
        count = _check_count(row[5], where)
        if lo > hi:
            raise ValidationError(f"{where}: min {row[3]} exceeds max {row[4]}")
        triple = (dataset, sequence, metric)
        if triple in seen_rows:
            raise ValidationError(
                f"{where}: duplicate entry for {dataset}/{sequence} metric {metric!r}"
            )
        seen_rows.add(triple)
        key = SequenceKey(dataset, sequence)
        if key not in counts:
            counts[key] = count
            intervals[key] = {}
            order.append(key)
        elif counts[key] != count:
            raise ValidationError(
                f"{where}: count {count} conflicts with earlier count "
                f"{counts[key]} for {key}"
            )
        intervals[key][metric] = Interval(lo, hi)
    if not order:
        raise ValidationError("intervals CSV contains no data rows")
    records = tuple(
        SequenceRecord(key, counts[key], intervals[key]) for key in order
    )
    return Catalog.from_records(records)


def _parse_vectors_json(text: str) -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"vectors JSON is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "sequences" not in doc:
        raise ValidationError('vectors JSON must be an object with a "sequences" list')
    entries = doc["sequences"]
    if not isinstance(entries, list) or not entries:
        raise ValidationError('"sequences" must be a non-empty list')
    records = []
    for idx, entry in enumerate(entries):
        where = f"sequences[{idx}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: must be an object")
        dataset = _check_name(entry.get("dataset"), "dataset", where)
        sequence = _check_name(entry.get("sequence"), "sequence", where)
        count = _check_count(entry.get("count"), where)
        metrics = entry.get("metrics")
        if not isinstance(metrics, dict) or not metrics:
            raise ValidationError(f"{where}: metrics must be a non-empty object")
        intervals: dict[str, Interval] = {}
        for name, values in metrics.items():
            _check_name(name, "metric name", where)
            if not isinstance(values, list) or not values:
                raise ValidationError(
                    f"{where}: metric {name!r} must map to a non-empty list of values"
                )
            vals = [
                _check_float(v, f"metric {name!r} value", where) for v in values
            ]
            intervals[name] = Interval(min(vals), max(vals))
        records.append(SequenceRecord(SequenceKey(dataset, sequence), count, intervals))
    return Catalog.from_records(records)


def dump_intervals_csv(catalog: Catalog) -> str:
    """Serialize a catalog back to intervals CSV; parsing it again round-trips."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(INTERVALS_CSV_HEADER)
    for rec in catalog.records:
        for metric, iv in rec.intervals.items():
            writer.writerow(
                [rec.key.dataset, rec.key.sequence, metric,
                 repr(float(iv.lo)), repr(float(iv.hi)), rec.count]
            )
    return out.getvalue()


def build_instance(catalog: Catalog, metric: str, gap_tol: float = 0.0) -> Instance:
    """Project the catalog onto one metric.

    Items keep catalog order; the target is the coverage union of every
    item's interval (the full evaluation pool).
    """
    items = tuple(
        Item(rec.key, rec.intervals[metric], rec.count)
        for rec in catalog.records
        if metric in rec.intervals
    )
    if not items:
        available = ", ".join(sorted(catalog.metrics)) or "(none)"
        raise ValidationError(
            f"metric {metric!r} not present in catalog; available metrics: {available}"
        )
    target = union_of((it.interval for it in items), gap_tol)
    return Instance(metric=metric, items=items, target=target, gap_tol=gap_tol)
