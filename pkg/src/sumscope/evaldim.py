"""Multi-dimensional evaluation of candidate summaries.

Three dimensions: relevance (hard n-gram/LCS overlap against the reference,
plus a soft greedy token-matching overlap over externally supplied
embeddings), informativeness (fraction of source sections covered under
per-sentence best-overlap assignment), and semantic coherence (mean
next-sentence probability over consecutive candidate sentence pairs, scores
supplied externally).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .corpus import Document, SummaryText
from .errors import AlignmentError, DegenerateInput, DimensionError, FormatError, IoError
from .lexical import RougeScore, rouge_l, rouge_n


@dataclass(frozen=True)
class EvalReport:
    rouge1: RougeScore
    rouge2: RougeScore
    rougeL: RougeScore
    soft_overlap: float | None = None
    informativeness: float | None = None
    coherence: float | None = None


def relevance_rouge(
    candidate: SummaryText, reference: SummaryText
) -> tuple[RougeScore, RougeScore, RougeScore]:
    """Unigram, bigram and LCS overlap over the flattened token sequences."""
    cand = candidate.all_tokens()
    ref = reference.all_tokens()
    if not cand or not ref:
        raise DegenerateInput("relevance requires non-empty candidate and reference")
    return (
        rouge_n(cand, ref, 1),
        rouge_n(cand, ref, 2),
        rouge_l(cand, ref),
    )


def relevance_soft(
    candidate_vectors: np.ndarray, reference_vectors: np.ndarray
) -> float:
    """Greedy soft token overlap over dense token vectors.

    Recall averages, over reference tokens, the best cosine against any
    candidate token; precision is symmetric; negative cosines floor at 0 so
    the combined F1 stays in [0, 1].
    """
    cand = np.asarray(candidate_vectors, dtype=float)
    ref = np.asarray(reference_vectors, dtype=float)
    if cand.ndim != 2 or ref.ndim != 2 or cand.shape[0] == 0 or ref.shape[0] == 0:
        raise DegenerateInput("soft overlap requires non-empty token vector sets")
    if cand.shape[1] != ref.shape[1]:
        raise DimensionError(
            f"dimension mismatch: {cand.shape[1]} vs {ref.shape[1]}"
        )

    def _unit(rows: np.ndarray) -> np.ndarray:
        norms = np.linalg.norm(rows, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        return rows / norms

    sims = _unit(cand) @ _unit(ref).T
    sims = np.clip(sims, 0.0, None)
    precision = float(sims.max(axis=1).mean())
    recall = float(sims.max(axis=0).mean())
    if precision + recall == 0:
        return 0.0
    return min(1.0, 2 * precision * recall / (precision + recall))


def informativeness(candidate: SummaryText, document: Document) -> float:
    """Fraction of sections covered by the candidate.

    Each candidate sentence attaches to the section where its LCS-overlap F1
    against the section text is highest (earlier section on ties).
    """
    n_sections = len(document.sections)
    if n_sections == 0:
        raise DegenerateInput("document has no sections")
    if candidate.sentence_count == 0:
        return 0.0
    section_tokens = [
        [t for s in section.sentences for t in s.tokens]
        for section in document.sections
    ]
    covered: set[int] = set()
    for sentence in candidate.sentences:
        best_idx = 0
        best_score = -1.0
        for idx, tokens in enumerate(section_tokens):
            score = rouge_l(list(sentence.tokens), tokens).f1
            if score > best_score:
                best_score = score
                best_idx = idx
        covered.add(best_idx)
    return len(covered) / n_sections


def semantic_coherence(
    candidate: SummaryText, scores: list[float], normalized: bool = False
) -> float:
    """Mean next-sentence probability over consecutive candidate pairs.

    The literal form divides the sum of the ``||S|| - 1`` pair scores by
    ``||S||`` (a single-sentence candidate scores 0); ``normalized=True``
    divides by ``||S|| - 1`` instead.
    """
    m = candidate.sentence_count
    if len(scores) != max(m - 1, 0):
        raise AlignmentError(
            f"{len(scores)} pair scores for a {m}-sentence candidate"
        )
    total = float(sum(scores))
    if normalized:
        return total / (m - 1) if m > 1 else 0.0
    return total / m if m > 0 else 0.0


def load_nsp_scores(path: str) -> dict[str, list[float]]:
    """Load next-sentence-probability JSONL: ``{"id", "scores": [...]}`` per
    candidate, values in [0, 1].  A leading ``{"_meta": ...}`` line is
    tolerated."""
    if not os.path.exists(path):
        raise IoError(f"NSP score file not found: {path}")
    table: dict[str, list[float]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise FormatError(f"line {lineno}: expected a JSON object")
            if "_meta" in obj:
                continue
            doc_id = obj.get("id")
            scores = obj.get("scores")
            if not isinstance(doc_id, str) or not isinstance(scores, list):
                raise FormatError(f"line {lineno}: missing id or scores")
            values = []
            for value in scores:
                if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                    raise FormatError(
                        f"line {lineno}: scores must be reals in [0, 1]"
                    )
                values.append(float(value))
            if doc_id in table:
                raise FormatError(f"line {lineno}: duplicate id {doc_id!r}")
            table[doc_id] = values
    return table
