"""Command-line entry point.

Subcommands wire the library into batch workflows over JSONL corpora:
``profile`` (intrinsic metrics report), ``summarize`` (graph extractive
candidates), ``oracle`` (greedy extractive upper bounds), ``evaluate``
(multi-dimensional candidate scoring), ``correlate`` (metric correlation
matrix from a per-record CSV) and ``tune`` (grid search of the bias
weights).

Exit codes: 0 success, 64 usage error, 2 missing input, 3 data error.
Diagnostics go to stderr as key=value pairs.  Every command is
deterministic given its flags and seed.
"""

from __future__ import annotations

import argparse
import functools
import json
import io
import os
import sys
from collections.abc import Callable, Iterable, Iterator

import numpy as np

from . import evaldim, graphsum, lexical, oracle as oracle_mod, profile as profile_mod
from . import vectorize
from .corpus import (
    CorpusLineError,
    CorpusRecord,
    Document,
    SummaryText,
    iter_corpus_lines,
)
from .errors import (
    AlignmentError,
    DegenerateInput,
    DimensionError,
    EmptySelection,
    FormatError,
    InvalidPosition,
    InvalidRank,
    IoError,
    ParseError,
    SchemaError,
    UsageError,
)
from .graphsum import CentralityConfig
from .oracle import OracleConfig

_DATA_ERRORS = (
    ParseError,
    SchemaError,
    FormatError,
    AlignmentError,
    DegenerateInput,
    EmptySelection,
    InvalidRank,
    InvalidPosition,
    DimensionError,
)

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_DATA = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _require_file(path: str) -> str:
    if not os.path.exists(path):
        raise IoError(path)
    return path


def _default_workers() -> int:
    return os.cpu_count() or 1


def _pmap(fn: Callable, items: Iterable, workers: int, chunk: int = 256) -> Iterator:
    """Order-preserving map over a stream, chunked through a process pool."""
    if workers <= 1:
        yield from map(fn, items)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        batch: list = []
        for item in items:
            batch.append(item)
            if len(batch) >= chunk * workers:
                yield from pool.map(fn, batch, chunksize=chunk)
                batch = []
        if batch:
            yield from pool.map(fn, batch, chunksize=chunk)


def _records(path: str) -> Iterator[CorpusRecord]:
    for _, record in iter_corpus_lines(_require_file(path)):
        yield record


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_line(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- profile


def cmd_profile(args) -> int:
    rows = list(
        _pmap(
            profile_mod.compute_metric_record,
            _records(args.input),
            args.workers,
        )
    )
    if not rows:
        raise DegenerateInput(f"no records in {args.input}")
    report = _report_from_rows(rows)

    _write_bytes(args.out, profile_mod.emit_report(report, args.format))
    records_out = args.records_out or _sibling(args.out, ".records.csv")
    buf = io.StringIO()
    profile_mod.write_metric_csv(rows, buf)
    _write_text(records_out, buf.getvalue())

    if args.figures:
        from . import figures

        figures.render_profile_figures(report, rows, _strip_ext(args.out))
    print(f"records={report.record_count} out={args.out} metrics={records_out}")
    return EXIT_OK


def _report_from_rows(rows) -> profile_mod.ProfileReport:
    # Reduce precomputed rows exactly the way profile_corpus does.
    accumulators = {m: profile_mod._KahanMean() for m in profile_mod.METRIC_FIELDS}
    lengths = {
        name: profile_mod._KahanMean()
        for name in ("doc_tokens", "doc_sentences", "summary_tokens", "summary_sentences")
    }
    for row in rows:
        for name in profile_mod.METRIC_FIELDS:
            accumulators[name].add(row.metric(name))
        for name, acc in lengths.items():
            acc.add(float(getattr(row, name)))
    means = {name: acc.mean for name, acc in lengths.items()}
    defined = {name: acc.count for name, acc in lengths.items()}
    for name in profile_mod.METRIC_FIELDS:
        means[name] = accumulators[name].mean
        defined[name] = accumulators[name].count
    return profile_mod.ProfileReport(
        record_count=len(rows),
        means=means,
        defined_counts=defined,
        metrics=profile_mod.METRIC_FIELDS,
        correlation=profile_mod.correlation_matrix(rows),
    )


def _sibling(path: str, suffix: str) -> str:
    return _strip_ext(path) + suffix


def _strip_ext(path: str) -> str:
    base, _ = os.path.splitext(path)
    return base or path


def _write_bytes(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


# -------------------------------------------------------------- summarize


def _build_tfidf_encoder(args) -> vectorize.TfidfModel:
    # Document frequency counted per document sentence by default; the
    # whole-document granularity is available behind --df-granularity.
    def df_units() -> Iterator[list[str]]:
        for record in _records(args.input):
            if args.df_granularity == "document":
                yield record.document.all_tokens()
            else:
                for sentence in record.document.flat_sentences:
                    yield list(sentence.tokens)

    model = vectorize.fit_tfidf(df_units(), args.min_df)
    if len(model.vocabulary) > args.svd_rank:
        model = vectorize.fit_projection(
            model, df_units(), args.svd_rank, seed=args.seed
        )
    return model


def _tfidf_vectors(record: CorpusRecord, model: vectorize.TfidfModel) -> np.ndarray:
    return np.stack(
        [
            vectorize.tfidf_vector(model, list(s.tokens))
            for s in record.document.flat_sentences
        ]
    )


def _summarize_one(record: CorpusRecord, model, table, config) -> dict:
    if model is not None:
        vectors = _tfidf_vectors(record, model)
    else:
        vectors = table.sentence_vectors_for(record.document)
    indices = graphsum.summarize_record(record, vectors, config)
    flat = record.document.flat_sentences
    return {
        "id": record.document.id,
        "sentence_indices": indices,
        "summary_sentences": [flat[i].raw for i in indices],
    }


def cmd_summarize(args) -> int:
    if args.encoder == "embed" and not args.embeddings:
        raise UsageError("--encoder embed requires --embeddings")
    config = CentralityConfig(
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        alpha=args.alpha,
        mu1=args.mu1,
        budget_tokens=args.budget,
        bias_enabled=args.bias == "discourse",
    )
    model = None
    table = None
    if args.encoder == "tfidf":
        model = _build_tfidf_encoder(args)
    else:
        table = vectorize.load_embeddings(_require_file(args.embeddings))

    worker = functools.partial(_summarize_one, model=model, table=table, config=config)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        count = 0
        for row in _pmap(worker, _records(args.input), args.workers, chunk=32):
            fh.write(_json_line(row))
            count += 1
    print(f"records={count} out={args.out}")
    return EXIT_OK


# ----------------------------------------------------------------- oracle


def _oracle_one(record: CorpusRecord, config: OracleConfig) -> dict:
    indices = oracle_mod.greedy_oracle(record.document, record.reference, config)
    flat = record.document.flat_sentences
    return {
        "id": record.document.id,
        "sentence_indices": indices,
        "summary_sentences": [flat[i].raw for i in indices],
    }


def cmd_oracle(args) -> int:
    config = OracleConfig(
        rouge_variant=args.rouge,
        order_mode=args.order,
        seed=args.seed,
        max_sentences=args.max_sentences,
        max_tokens=args.budget,
    )
    worker = functools.partial(_oracle_one, config=config)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        count = 0
        for row in _pmap(worker, _records(args.input), args.workers, chunk=32):
            fh.write(_json_line(row))
            count += 1
    print(f"records={count} out={args.out}")
    return EXIT_OK


# --------------------------------------------------------------- evaluate

EVAL_DIMS = ("rouge", "soft", "informativeness", "coherence")
REFERENCE_ID_SUFFIX = "#reference"


def _load_candidates(path: str) -> dict[str, SummaryText]:
    candidates: dict[str, SummaryText] = {}
    with open(_require_file(path), encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            doc_id = obj.get("id")
            sentences = obj.get("summary_sentences")
            if not isinstance(doc_id, str) or not isinstance(sentences, list):
                raise SchemaError(
                    f"{path}: line {lineno}: candidate needs id and summary_sentences"
                )
            candidates[doc_id] = SummaryText.from_raw_sentences(
                [str(s) for s in sentences]
            )
    return candidates


def _evaluate_one(
    doc_id: str,
    candidate: SummaryText,
    record: CorpusRecord,
    dims: list[str],
    nsp: dict[str, list[float]] | None,
    table: vectorize.EmbeddingTable | None,
) -> dict:
    row: dict = {"id": doc_id}
    if "rouge" in dims:
        r1, r2, rl = evaldim.relevance_rouge(candidate, record.reference)
        for name, score in (("rouge1", r1), ("rouge2", r2), ("rougeL", rl)):
            row[name] = {
                "precision": score.precision,
                "recall": score.recall,
                "f1": score.f1,
            }
    if "soft" in dims:
        dim = table.dim or 1
        cand_list = table.token_vectors_for(doc_id, candidate)
        ref_list = table.token_vectors_for(doc_id + REFERENCE_ID_SUFFIX, record.reference)
        cand_vecs = np.vstack(cand_list) if cand_list else np.zeros((0, dim))
        ref_vecs = np.vstack(ref_list) if ref_list else np.zeros((0, dim))
        row["soft_overlap"] = evaldim.relevance_soft(cand_vecs, ref_vecs)
    if "informativeness" in dims:
        row["informativeness"] = evaldim.informativeness(candidate, record.document)
    if "coherence" in dims:
        scores = nsp.get(doc_id)
        if scores is None:
            raise AlignmentError(f"no NSP scores for candidate id={doc_id!r}")
        row["coherence"] = evaldim.semantic_coherence(candidate, scores)
    return row


def cmd_evaluate(args) -> int:
    dims = [d.strip() for d in args.dims.split(",") if d.strip()]
    for dim in dims:
        if dim not in EVAL_DIMS:
            raise UsageError(f"unknown dimension {dim!r}; choose from {EVAL_DIMS}")
    if not dims:
        raise UsageError("--dims must name at least one dimension")
    if "coherence" in dims and not args.nsp:
        raise UsageError("--dims coherence requires --nsp")
    if "soft" in dims and not args.embeddings:
        raise UsageError("--dims soft requires --embeddings (token vectors)")

    candidates = _load_candidates(args.candidates)
    nsp = evaldim.load_nsp_scores(_require_file(args.nsp)) if args.nsp else None
    table = (
        vectorize.load_embeddings(_require_file(args.embeddings))
        if args.embeddings
        else None
    )

    rows = []
    seen: set[str] = set()
    for record in _records(args.input):
        candidate = candidates.get(record.document.id)
        if candidate is None:
            continue
        seen.add(record.document.id)
        rows.append(
            _evaluate_one(record.document.id, candidate, record, dims, nsp, table)
        )
    unmatched = sorted(set(candidates) - seen)
    if unmatched:
        raise AlignmentError(
            f"candidate ids missing from corpus: {', '.join(unmatched)}"
        )

    means = _evaluation_means(rows)
    if args.format == "json":
        payload = {"count": len(rows), "candidates": rows, "means": means}
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    else:
        _write_text(args.out, _evaluation_csv(rows, means))
    print(f"candidates={len(rows)} out={args.out}")
    return EXIT_OK


_MEAN_KEYS = (
    ("rouge1_f1", lambda row: row.get("rouge1", {}).get("f1")),
    ("rouge2_f1", lambda row: row.get("rouge2", {}).get("f1")),
    ("rougeL_f1", lambda row: row.get("rougeL", {}).get("f1")),
    ("soft_overlap", lambda row: row.get("soft_overlap")),
    ("informativeness", lambda row: row.get("informativeness")),
    ("coherence", lambda row: row.get("coherence")),
)


def _evaluation_means(rows: list[dict]) -> dict:
    means: dict[str, float | None] = {}
    for key, getter in _MEAN_KEYS:
        values = [getter(row) for row in rows]
        values = [v for v in values if v is not None]
        means[key] = sum(values) / len(values) if values else None
    return means


def _evaluation_csv(rows: list[dict], means: dict) -> str:
    import csv as _csv

    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    header = ["id"]
    for name in ("rouge1", "rouge2", "rougeL"):
        header += [f"{name}_precision", f"{name}_recall", f"{name}_f1"]
    header += ["soft_overlap", "informativeness", "coherence"]
    writer.writerow(header)

    def _cell(value) -> str:
        return "" if value is None else repr(value)

    for row in rows:
        out = [row["id"]]
        for name in ("rouge1", "rouge2", "rougeL"):
            score = row.get(name)
            if score is None:
                out += ["", "", ""]
            else:
                out += [repr(score["precision"]), repr(score["recall"]), repr(score["f1"])]
        out += [
            _cell(row.get("soft_overlap")),
            _cell(row.get("informativeness")),
            _cell(row.get("coherence")),
        ]
        writer.writerow(out)
    writer.writerow(
        ["mean", "", "", _cell(means["rouge1_f1"]), "", "", _cell(means["rouge2_f1"]),
         "", "", _cell(means["rougeL_f1"]), _cell(means["soft_overlap"]),
         _cell(means["informativeness"]), _cell(means["coherence"])]
    )
    return buf.getvalue()


# -------------------------------------------------------------- correlate


def cmd_correlate(args) -> int:
    rows = profile_mod.read_metric_csv(_require_file(args.input))
    if len(rows) < 2:
        raise DegenerateInput("correlation requires at least 2 metric rows")
    matrix = profile_mod.correlation_matrix(rows)
    payload = {
        "metrics": list(profile_mod.METRIC_FIELDS),
        "correlation": matrix,
    }
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    if args.figures:
        from . import figures

        figures.render_correlation_heatmap(
            profile_mod.METRIC_FIELDS, matrix, _strip_ext(args.out) + ".correlation.png"
        )
    print(f"rows={len(rows)} out={args.out}")
    return EXIT_OK


# ------------------------------------------------------------------- tune


def _parse_grid(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"invalid grid {text!r}: {exc}") from exc
    if not values:
        raise UsageError(f"empty grid {text!r}")
    return values


def cmd_tune(args) -> int:
    if args.encoder == "embed" and not args.embeddings:
        raise UsageError("--encoder embed requires --embeddings")
    records = list(_records(args.input))
    if not records:
        raise DegenerateInput(f"no records in {args.input}")

    if args.encoder == "tfidf":
        model = _build_tfidf_encoder(args)

        def encoder(document: Document) -> np.ndarray:
            return np.stack(
                [
                    vectorize.tfidf_vector(model, list(s.tokens))
                    for s in document.flat_sentences
                ]
            )

    else:
        table = vectorize.load_embeddings(_require_file(args.embeddings))

        def encoder(document: Document) -> np.ndarray:
            return table.sentence_vectors_for(document)

    base = CentralityConfig(
        lambda1=args.lambda1, lambda2=args.lambda2, budget_tokens=args.budget
    )
    best = graphsum.tune(
        records,
        encoder,
        alpha_grid=_parse_grid(args.alpha_grid),
        mu1_grid=_parse_grid(args.mu1_grid),
        base_config=base,
    )
    payload = {
        "lambda1": best.lambda1,
        "lambda2": best.lambda2,
        "alpha": best.alpha,
        "mu1": best.mu1,
        "budget_tokens": best.budget_tokens,
        "bias_enabled": best.bias_enabled,
    }
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    print(f"records={len(records)} out={args.out} alpha={best.alpha} mu1={best.mu1}")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="sumscope", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def _common(p):
        p.add_argument("--workers", type=int, default=_default_workers())
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("profile", help="intrinsic metric report for a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--records-out", default=None)
    p.add_argument("--figures", action="store_true")
    _common(p)
    p.set_defaults(handler=cmd_profile)

    p = sub.add_parser("summarize", help="graph-centrality extractive candidates")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--encoder", choices=("tfidf", "embed"), default="tfidf")
    p.add_argument("--embeddings", default=None)
    p.add_argument("--bias", choices=("none", "discourse"), default="discourse")
    p.add_argument("--budget", type=int, default=graphsum.DEFAULT_BUDGET_TOKENS)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--mu1", type=float, default=1.0)
    p.add_argument("--lambda1", type=float, default=0.5)
    p.add_argument("--lambda2", type=float, default=1.0)
    p.add_argument("--min-df", type=float, default=0.01)
    p.add_argument("--svd-rank", type=int, default=768)
    p.add_argument("--df-granularity", choices=("sentence", "document"), default="sentence")
    _common(p)
    p.set_defaults(handler=cmd_summarize)

    p = sub.add_parser("oracle", help="greedy overlap-maximizing oracle summaries")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rouge", choices=oracle_mod.ROUGE_VARIANTS, default="1")
    p.add_argument("--order", choices=oracle_mod.ORDER_MODES, default="original")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--max-sentences", type=int, default=None)
    _common(p)
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("evaluate", help="score candidate summaries")
    p.add_argument("--candidates", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dims", default="rouge,informativeness")
    p.add_argument("--nsp", default=None)
    p.add_argument("--embeddings", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _common(p)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("correlate", help="correlation matrix from a metrics CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--figures", action="store_true")
    p.set_defaults(handler=cmd_correlate)

    p = sub.add_parser("tune", help="grid-search discourse bias weights")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--encoder", choices=("tfidf", "embed"), default="tfidf")
    p.add_argument("--embeddings", default=None)
    p.add_argument("--alpha-grid", default=",".join(str(v) for v in graphsum.ALPHA_GRID))
    p.add_argument("--mu1-grid", default=",".join(str(v) for v in graphsum.MU1_GRID))
    p.add_argument("--budget", type=int, default=graphsum.DEFAULT_BUDGET_TOKENS)
    p.add_argument("--lambda1", type=float, default=0.5)
    p.add_argument("--lambda2", type=float, default=1.0)
    p.add_argument("--min-df", type=float, default=0.01)
    p.add_argument("--svd-rank", type=int, default=768)
    p.add_argument("--df-granularity", choices=("sentence", "document"), default="sentence")
    _common(p)
    p.set_defaults(handler=cmd_tune)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error=usage detail={exc}", file=sys.stderr)
        return EXIT_USAGE
    except IoError as exc:
        print(f"error=missing-input path={exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except FileNotFoundError as exc:
        print(f"error=missing-input path={exc.filename}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except CorpusLineError as exc:
        print(f"error=data line={exc.lineno} detail={exc}", file=sys.stderr)
        return EXIT_DATA
    except _DATA_ERRORS as exc:
        print(f"error=data detail={exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
