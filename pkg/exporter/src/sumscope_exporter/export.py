"""Export jobs: corpus text in, embedding / NSP JSONL out.

Output files follow the toolkit's loader formats exactly.  The first line is
always a header object ``{"_meta": {"model", "dim", "mode"}}`` recording the
encoder; data lines carry ``{"id", "dim", "sentences", "tokens"?}`` or
``{"id", "scores"}``.  Runs are deterministic in eval mode, so re-exporting
the same corpus with the same model yields byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .corpus import TextEntry, read_candidates, read_corpus
from .encoders import build_encoder

MODES = ("sentences", "tokens", "nsp")


@dataclass(frozen=True)
class ExportJob:
    corpus_path: str
    output_path: str
    mode: str
    model: str = "hash-64"
    batch_size: int = 16
    device: str = "cpu"
    text: str = "documents"  # documents | references | candidates

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.text not in ("documents", "references", "candidates"):
            raise ValueError(f"unknown text selector {self.text!r}")


def _load_entries(job: ExportJob) -> list[TextEntry]:
    if job.text == "candidates" or job.mode == "nsp":
        return read_candidates(job.corpus_path)
    return read_corpus(job.corpus_path, job.text)


def _round(values: np.ndarray) -> list[float]:
    # Fixed precision keeps files compact and platform-independent.
    return [round(float(v), 8) for v in values]


def export_sentence_embeddings(job: ExportJob) -> str:
    encoder = build_encoder(job.model, device=job.device, batch_size=job.batch_size)
    entries = _load_entries(job)
    dim = int(encoder.encode_sentences([]).shape[1])
    with open(job.output_path, "w", encoding="utf-8", newline="") as fh:
        header = {"_meta": {"model": job.model, "dim": dim, "mode": "sentences"}}
        fh.write(json.dumps(header) + "\n")
        for entry in entries:
            matrix = encoder.encode_sentences(entry.sentences)
            fh.write(
                json.dumps(
                    {
                        "id": entry.text_id,
                        "dim": dim,
                        "sentences": [_round(row) for row in matrix],
                    }
                )
                + "\n"
            )
    return job.output_path


def export_token_embeddings(job: ExportJob) -> str:
    encoder = build_encoder(job.model, device=job.device, batch_size=job.batch_size)
    entries = _load_entries(job)
    dim = int(encoder.encode_words("").shape[1])
    with open(job.output_path, "w", encoding="utf-8", newline="") as fh:
        header = {"_meta": {"model": job.model, "dim": dim, "mode": "tokens"}}
        fh.write(json.dumps(header) + "\n")
        for entry in entries:
            sentence_rows = []
            token_rows = []
            for sentence in entry.sentences:
                words = encoder.encode_words(sentence)
                token_rows.append([_round(w) for w in words])
                if words.shape[0]:
                    mean = words.mean(axis=0)
                    norm = np.linalg.norm(mean)
                    sentence_rows.append(_round(mean / norm if norm > 0 else mean))
                else:
                    sentence_rows.append(_round(np.zeros(dim)))
            fh.write(
                json.dumps(
                    {
                        "id": entry.text_id,
                        "dim": dim,
                        "sentences": sentence_rows,
                        "tokens": token_rows,
                    }
                )
                + "\n"
            )
    return job.output_path


def export_nsp_scores(job: ExportJob) -> str:
    encoder = build_encoder(job.model, device=job.device, batch_size=job.batch_size)
    candidates = read_candidates(job.corpus_path)
    with open(job.output_path, "w", encoding="utf-8", newline="") as fh:
        header = {"_meta": {"model": job.model, "dim": None, "mode": "nsp"}}
        fh.write(json.dumps(header) + "\n")
        for entry in candidates:
            scores = encoder.next_sentence_scores(entry.sentences)
            scores = [round(min(1.0, max(0.0, s)), 8) for s in scores]
            fh.write(json.dumps({"id": entry.text_id, "scores": scores}) + "\n")
    return job.output_path


def run_job(job: ExportJob) -> str:
    if job.mode == "sentences":
        return export_sentence_embeddings(job)
    if job.mode == "tokens":
        return export_token_embeddings(job)
    return export_nsp_scores(job)
