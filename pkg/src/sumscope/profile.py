"""Corpus-level aggregation of the intrinsic metrics.

Streams document-summary pairs, computes one metric row per pair, and
reduces them into per-corpus means (compensated summation) plus a pairwise
correlation matrix over the six intrinsic metrics.  Undefined values are
skipped when averaging and deleted pairwise when correlating, with defined
counts reported.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from . import lexical
from .corpus import CorpusRecord
from .errors import DegenerateInput, FormatError, IoError

METRIC_FIELDS = (
    "compression_token",
    "compression_sent",
    "coverage",
    "density",
    "redundancy",
    "uniformity",
)

CSV_COLUMNS = (
    "id",
    "doc_tokens",
    "doc_sentences",
    "summary_tokens",
    "summary_sentences",
) + METRIC_FIELDS


@dataclass(frozen=True)
class MetricRecord:
    doc_id: str
    doc_tokens: int
    doc_sentences: int
    summary_tokens: int
    summary_sentences: int
    compression_token: float
    compression_sent: float
    coverage: float
    density: float
    redundancy: float | None
    uniformity: float | None

    def metric(self, name: str) -> float | None:
        return getattr(self, name)


def compute_metric_record(record: CorpusRecord) -> MetricRecord:
    """All five intrinsic metrics plus lengths for one document-summary pair."""
    metrics = lexical.data_metrics(record)
    return MetricRecord(
        doc_id=record.document.id,
        doc_tokens=record.document.token_count,
        doc_sentences=record.document.sentence_count,
        summary_tokens=record.reference.token_count,
        summary_sentences=record.reference.sentence_count,
        compression_token=metrics.compression_token,
        compression_sent=metrics.compression_sent,
        coverage=metrics.coverage,
        density=metrics.density,
        redundancy=metrics.redundancy,
        uniformity=metrics.uniformity,
    )


class _KahanMean:
    """Compensated running mean over optionally missing values."""

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0
        self.count = 0

    def add(self, value: float | None):
        if value is None:
            return
        self.count += 1
        y = value - self.compensation
        t = self.total + y
        self.compensation = (t - self.total) - y
        self.total = t

    @property
    def mean(self) -> float | None:
        return self.total / self.count if self.count else None


@dataclass(frozen=True)
class ProfileReport:
    record_count: int
    means: dict[str, float | None]
    defined_counts: dict[str, int]
    metrics: tuple[str, ...]
    correlation: list[list[float | None]]


def correlation_matrix(
    records: Sequence[MetricRecord], metrics: Sequence[str] = METRIC_FIELDS
) -> list[list[float | None]]:
    """Pairwise Pearson matrix with pairwise deletion of undefined rows.

    Cells with fewer than 2 usable rows or a constant column are undefined
    (None); defined diagonal cells are exactly 1.
    """
    columns = {m: [r.metric(m) for r in records] for m in metrics}
    size = len(metrics)
    matrix: list[list[float | None]] = [[None] * size for _ in range(size)]
    for i, mi in enumerate(metrics):
        for j in range(i, size):
            mj = metrics[j]
            xs, ys = [], []
            for x, y in zip(columns[mi], columns[mj]):
                if x is not None and y is not None:
                    xs.append(x)
                    ys.append(y)
            try:
                r = lexical.pearson(xs, ys)
            except DegenerateInput:
                value = None
            else:
                value = 1.0 if i == j else r
            matrix[i][j] = value
            matrix[j][i] = value
    return matrix


def profile_corpus(records: Iterable[CorpusRecord]) -> ProfileReport:
    """Stream records into per-metric means and the correlation matrix."""
    accumulators = {m: _KahanMean() for m in METRIC_FIELDS}
    length_accumulators = {
        name: _KahanMean()
        for name in ("doc_tokens", "doc_sentences", "summary_tokens", "summary_sentences")
    }
    rows: list[MetricRecord] = []
    for record in records:
        row = compute_metric_record(record)
        rows.append(row)
        for name in METRIC_FIELDS:
            accumulators[name].add(row.metric(name))
        for name, acc in length_accumulators.items():
            acc.add(float(getattr(row, name)))
    if not rows:
        raise DegenerateInput("cannot profile an empty corpus")

    means: dict[str, float | None] = {
        name: acc.mean for name, acc in length_accumulators.items()
    }
    defined: dict[str, int] = {name: acc.count for name, acc in length_accumulators.items()}
    for name in METRIC_FIELDS:
        means[name] = accumulators[name].mean
        defined[name] = accumulators[name].count

    return ProfileReport(
        record_count=len(rows),
        means=means,
        defined_counts=defined,
        metrics=METRIC_FIELDS,
        correlation=correlation_matrix(rows),
    )


def emit_report(report: ProfileReport, format: str) -> bytes:
    """Serialize deterministically; CSV columns and JSON keys hold a fixed
    documented order, undefined values emit as null / empty cell."""
    if format == "json":
        payload = {
            "record_count": report.record_count,
            "means": {k: report.means[k] for k in sorted(report.means)},
            "defined_counts": {
                k: report.defined_counts[k] for k in sorted(report.defined_counts)
            },
            "metrics": list(report.metrics),
            "correlation": report.correlation,
        }
        return (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["record_count", report.record_count])
        writer.writerow(["metric", "mean", "defined_count"])
        for name in sorted(report.means):
            mean = report.means[name]
            writer.writerow(
                [name, "" if mean is None else repr(mean), report.defined_counts[name]]
            )
        writer.writerow(["correlation"] + list(report.metrics))
        for name, row in zip(report.metrics, report.correlation):
            writer.writerow(
                [name] + ["" if v is None else repr(v) for v in row]
            )
        return buf.getvalue().encode("utf-8")
    raise FormatError(f"unknown report format: {format!r}")


def write_metric_csv(rows: Iterable[MetricRecord], fh) -> None:
    """One CSV row per document-summary pair, fixed column order."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.doc_id,
                row.doc_tokens,
                row.doc_sentences,
                row.summary_tokens,
                row.summary_sentences,
            ]
            + [
                "" if row.metric(name) is None else repr(row.metric(name))
                for name in METRIC_FIELDS
            ]
        )


def read_metric_csv(path: str) -> list[MetricRecord]:
    """Read back the per-record CSV written by :func:`write_metric_csv`."""
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"metrics CSV not found: {path}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("metrics CSV is empty") from None
        if tuple(header) != CSV_COLUMNS:
            raise FormatError(
                f"unexpected metrics CSV header: {header!r}"
            )
        rows: list[MetricRecord] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise FormatError(f"line {lineno}: expected {len(CSV_COLUMNS)} columns")
            try:
                rows.append(
                    MetricRecord(
                        doc_id=row[0],
                        doc_tokens=int(row[1]),
                        doc_sentences=int(row[2]),
                        summary_tokens=int(row[3]),
                        summary_sentences=int(row[4]),
                        compression_token=float(row[5]),
                        compression_sent=float(row[6]),
                        coverage=float(row[7]),
                        density=float(row[8]),
                        redundancy=float(row[9]) if row[9] else None,
                        uniformity=float(row[10]) if row[10] else None,
                    )
                )
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
    return rows
