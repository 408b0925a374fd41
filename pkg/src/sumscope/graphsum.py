"""Unsupervised extractive summarization by directed graph centrality.

A sentence's score sums its cosine similarity to the rest of the document.
With discourse bias enabled the sum splits into an intra-section part over
sentence pairs and an inter-section part against section mean vectors, each
edge scaled by lambda1 or lambda2 depending on which endpoint sits nearer a
boundary.  Boundary proximity is min(x, alpha*(n - x)) over 1-based
positions, so smaller values mark sentences (or sections) closer to the
start or end, which receive more weight.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

import numpy as np

from .corpus import CorpusRecord, Document
from .errors import AlignmentError, DegenerateInput, EmptySelection, InvalidPosition
from .lexical import rouge_n
from .vectorize import cosine

ALPHA_GRID = (0.0, 0.5, 0.8, 1.0, 1.2)
MU1_GRID = (0.5, 1.0, 1.5)
DEFAULT_BUDGET_TOKENS = 242


@dataclass(frozen=True)
class CentralityConfig:
    lambda1: float = 0.5
    lambda2: float = 1.0
    alpha: float = 1.0
    mu1: float = 1.0
    budget_tokens: int = DEFAULT_BUDGET_TOKENS
    bias_enabled: bool = True

    def __post_init__(self):
        if self.budget_tokens < 1:
            raise DegenerateInput(f"budget_tokens must be >= 1, got {self.budget_tokens}")
        if self.lambda1 < 0 or self.lambda2 < 0 or self.alpha < 0:
            raise DegenerateInput("lambda and alpha weights must be >= 0")


@dataclass(frozen=True)
class CentralityScores:
    """Per-sentence scores aligned to ``Document.flat_sentences``.

    For unbiased runs the whole-document sum is reported as the intra
    component and the inter component is zero.
    """

    combined: np.ndarray
    intra: np.ndarray
    inter: np.ndarray


def boundary_distance(position: int, n: int, alpha: float) -> float:
    """min(x, alpha*(n - x)) over a 1-based position in a span of length n."""
    if not 1 <= position <= n:
        raise InvalidPosition(f"position {position} outside [1, {n}]")
    return min(float(position), alpha * (n - position))


def _check_alignment(vectors: np.ndarray, document: Document) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2 or vectors.shape[0] != document.sentence_count:
        raise AlignmentError(
            f"{vectors.shape[0] if vectors.ndim == 2 else '?'} vectors for "
            f"{document.sentence_count} sentences in id={document.id!r}"
        )
    return vectors


def _effective_lambdas(config: CentralityConfig) -> tuple[float, float]:
    if config.bias_enabled:
        return config.lambda1, config.lambda2
    return 1.0, 1.0


def intra_centrality(
    vectors: np.ndarray, document: Document, config: CentralityConfig
) -> np.ndarray:
    """Within-section directed sums of boundary-biased cosine similarity.

    An edge from sentence i to j (same section) carries lambda1 when
    d_b(i) >= d_b(j), else lambda2.
    """
    vectors = _check_alignment(vectors, document)
    lam1, lam2 = _effective_lambdas(config)
    scores = np.zeros(document.sentence_count)
    offset = 0
    for section in document.sections:
        count = len(section.sentences)
        if count > 1:
            d_b = [
                boundary_distance(pos, count, config.alpha)
                for pos in range(1, count + 1)
            ]
            for a in range(count):
                total = 0.0
                for b in range(count):
                    if a == b:
                        continue
                    sim = cosine(vectors[offset + a], vectors[offset + b])
                    total += sim * (lam1 if d_b[a] >= d_b[b] else lam2)
                scores[offset + a] = total
        offset += count
    return scores


def inter_centrality(
    vectors: np.ndarray,
    document: Document,
    config: CentralityConfig,
    include_own_section: bool = False,
) -> np.ndarray:
    """Sums of biased similarity to the mean vectors of the other sections.

    The bias compares 1-based section positions within the document.  A
    sentence's own section is excluded by default since self-section
    affinity is already the intra component's job; ``include_own_section``
    adds it back.
    """
    vectors = _check_alignment(vectors, document)
    lam1, lam2 = _effective_lambdas(config)
    n_sections = len(document.sections)
    scores = np.zeros(document.sentence_count)
    if n_sections < 2 and not include_own_section:
        return scores

    means = []
    offsets = []
    offset = 0
    for section in document.sections:
        count = len(section.sentences)
        means.append(vectors[offset : offset + count].mean(axis=0))
        offsets.append(offset)
        offset += count
    d_b = [
        boundary_distance(pos, n_sections, config.alpha)
        for pos in range(1, n_sections + 1)
    ]

    for sec_idx, section in enumerate(document.sections):
        for local, _ in enumerate(section.sentences):
            i = offsets[sec_idx] + local
            total = 0.0
            for other in range(n_sections):
                if other == sec_idx and not include_own_section:
                    continue
                sim = cosine(vectors[i], means[other])
                total += sim * (lam1 if d_b[sec_idx] >= d_b[other] else lam2)
            scores[i] = total
    return scores


def _plain_centrality(vectors: np.ndarray) -> np.ndarray:
    n = vectors.shape[0]
    scores = np.zeros(n)
    for i in range(n):
        scores[i] = sum(cosine(vectors[i], vectors[j]) for j in range(n) if j != i)
    return scores


def centrality(
    vectors: np.ndarray, document: Document, config: CentralityConfig
) -> CentralityScores:
    """Combined score mu1 * inter + intra; without bias, the plain
    whole-document sum of pairwise cosines."""
    vectors = _check_alignment(vectors, document)
    if not config.bias_enabled:
        plain = _plain_centrality(vectors)
        return CentralityScores(plain, plain, np.zeros_like(plain))
    intra = intra_centrality(vectors, document, config)
    inter = inter_centrality(vectors, document, config)
    return CentralityScores(config.mu1 * inter + intra, intra, inter)


def extract_summary(
    document: Document,
    scores: CentralityScores,
    budget_tokens: int,
    strict_stop: bool = False,
) -> list[int]:
    """Select sentence indices by descending score under a token budget.

    Sentences that do not fit the remaining budget are skipped and the scan
    continues (``strict_stop=True`` stops at the first overflow instead).
    Ties rank by earlier document position; the result is sorted by
    position.  Raises :class:`EmptySelection` when nothing fits.
    """
    combined = np.asarray(scores.combined, dtype=float)
    if combined.shape[0] != document.sentence_count:
        raise AlignmentError(
            f"{combined.shape[0]} scores for {document.sentence_count} sentences"
        )
    order = sorted(range(len(combined)), key=lambda i: (-combined[i], i))
    lengths = [len(s.tokens) for s in document.flat_sentences]
    remaining = budget_tokens
    chosen: list[int] = []
    for idx in order:
        if lengths[idx] <= remaining:
            chosen.append(idx)
            remaining -= lengths[idx]
        elif strict_stop:
            break
    if not chosen:
        raise EmptySelection(
            f"no sentence of id={document.id!r} fits budget_tokens={budget_tokens}"
        )
    return sorted(chosen)


def summarize_record(
    record: CorpusRecord, vectors: np.ndarray, config: CentralityConfig
) -> list[int]:
    scores = centrality(vectors, record.document, config)
    return extract_summary(record.document, scores, config.budget_tokens)


def tune(
    validation: Sequence[CorpusRecord],
    encoder: Callable[[Document], np.ndarray],
    alpha_grid: Sequence[float] = ALPHA_GRID,
    mu1_grid: Sequence[float] = MU1_GRID,
    base_config: CentralityConfig | None = None,
) -> CentralityConfig:
    """Exhaustive grid search maximizing mean unigram-overlap F1 against the
    references; ties keep the earlier grid point."""
    if not validation:
        raise DegenerateInput("tune requires a non-empty validation set")
    base = base_config if base_config is not None else CentralityConfig()
    encoded = [(record, encoder(record.document)) for record in validation]

    best_config = None
    best_score = -1.0
    for alpha in alpha_grid:
        for mu1 in mu1_grid:
            config = replace(base, alpha=alpha, mu1=mu1, bias_enabled=True)
            total = 0.0
            for record, vectors in encoded:
                indices = summarize_record(record, vectors, config)
                flat = record.document.flat_sentences
                candidate = [t for i in indices for t in flat[i].tokens]
                total += rouge_n(candidate, record.reference.all_tokens(), 1).f1
            mean_score = total / len(encoded)
            if mean_score > best_score:
                best_score = mean_score
                best_config = config
    return best_config
