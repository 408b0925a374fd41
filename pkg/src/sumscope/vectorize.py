"""Sentence representations and similarity kernels.

Two encoder families feed the graph summarizer: a Tf-Idf model fitted over
corpus sentences (optionally rank-reduced with a truncated SVD), and dense
embeddings supplied externally through a JSONL file.  Vectors are plain
numpy arrays, L2-normalized for non-empty sentences.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .corpus import Document, SummaryText
from .errors import (
    AlignmentError,
    DegenerateInput,
    DimensionError,
    FormatError,
    InvalidRank,
    IoError,
)

# Exact dense solve below this size; randomized subspace iteration above.
_DENSE_SVD_LIMIT = 64
_POWER_ITERATIONS = 4
_OVERSAMPLE = 8


@dataclass(frozen=True)
class SvdProjection:
    """Top-r right-singular-vector projection of a fitted matrix.

    ``components`` has shape (r, n) with orthonormal rows; applying the
    projection maps n-dimensional vectors to r dimensions.
    """

    components: np.ndarray
    singular_values: np.ndarray

    @property
    def rank(self) -> int:
        return self.components.shape[0]

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.components @ vector

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        return np.asarray(matrix @ self.components.T)


def _fix_signs(vt: np.ndarray) -> np.ndarray:
    """Deterministic sign convention: largest-magnitude entry positive."""
    out = vt.copy()
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))
        if out[i, j] < 0:
            out[i] = -out[i]
    return out


def truncated_svd(matrix, rank: int, seed: int = 0) -> SvdProjection:
    """Top-``rank`` right singular vectors of ``matrix`` (dense or sparse).

    Deterministic: exact dense solve for small matrices, otherwise seeded
    randomized subspace iteration with 4 power steps.
    """
    m, n = matrix.shape
    if rank < 1 or rank > min(m, n):
        raise InvalidRank(f"rank {rank} outside [1, {min(m, n)}] for {m}x{n} matrix")

    if min(m, n) <= _DENSE_SVD_LIMIT:
        dense = matrix.toarray() if sparse.issparse(matrix) else np.asarray(matrix, dtype=float)
        _, s, vt = np.linalg.svd(dense, full_matrices=False)
        return SvdProjection(_fix_signs(vt[:rank]), s[:rank].copy())

    rng = np.random.default_rng(seed)
    k = min(rank + _OVERSAMPLE, min(m, n))
    sketch = rng.standard_normal((n, k))
    basis, _ = np.linalg.qr(matrix @ sketch)
    for _ in range(_POWER_ITERATIONS):
        right, _ = np.linalg.qr(matrix.T @ basis)
        basis, _ = np.linalg.qr(matrix @ right)
    small = basis.T @ matrix
    small = small.toarray() if sparse.issparse(small) else np.asarray(small)
    _, s, vt = np.linalg.svd(small, full_matrices=False)
    return SvdProjection(_fix_signs(vt[:rank]), s[:rank].copy())


@dataclass
class TfidfModel:
    """Vocabulary, smoothed idf weights and an optional rank reduction."""

    vocabulary: dict[str, int]
    idf: np.ndarray
    min_df: float
    projection: SvdProjection | None = None

    @property
    def dimension(self) -> int:
        if self.projection is not None:
            return self.projection.rank
        return len(self.vocabulary)


def fit_tfidf(token_lists: Iterable[Sequence[str]], min_df: float) -> TfidfModel:
    """Fit document frequencies over ``token_lists`` (one unit per list).

    Vocabulary keeps tokens with df/N >= ``min_df``, ordered
    lexicographically; idf(t) = ln((1+N)/(1+df(t))) + 1.
    """
    if not 0 < min_df <= 1:
        raise DegenerateInput(f"min_df must lie in (0, 1], got {min_df}")
    df: Counter = Counter()
    n_units = 0
    for tokens in token_lists:
        n_units += 1
        df.update(set(tokens))
    if n_units == 0:
        raise DegenerateInput("cannot fit a Tf-Idf model on an empty corpus")

    vocab_tokens = sorted(t for t, count in df.items() if count / n_units >= min_df)
    if not vocab_tokens:
        raise DegenerateInput(
            f"no token reaches min_df={min_df} over {n_units} units"
        )
    vocabulary = {t: i for i, t in enumerate(vocab_tokens)}
    idf = np.array(
        [math.log((1 + n_units) / (1 + df[t])) + 1.0 for t in vocab_tokens]
    )
    return TfidfModel(vocabulary=vocabulary, idf=idf, min_df=min_df)


def _raw_tfidf(model: TfidfModel, tokens: Sequence[str]) -> np.ndarray:
    vec = np.zeros(len(model.vocabulary))
    for token, count in Counter(tokens).items():
        col = model.vocabulary.get(token)
        if col is not None:
            vec[col] = count * model.idf[col]
    norm = np.linalg.norm(vec)
    if norm > 0:
        vec /= norm
    return vec


def tfidf_vector(model: TfidfModel, tokens: Sequence[str]) -> np.ndarray:
    """Encode one sentence; all-out-of-vocabulary input gives a zero vector.

    Vectors are normalized before the optional projection and renormalized
    after it.
    """
    vec = _raw_tfidf(model, tokens)
    if model.projection is not None:
        vec = model.projection.apply(vec)
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
    return vec


def fit_projection(
    model: TfidfModel,
    token_lists: Iterable[Sequence[str]],
    rank: int,
    seed: int = 0,
) -> TfidfModel:
    """Attach a truncated-SVD rank reduction fitted on the encoded units."""
    rows = []
    cols = []
    data = []
    n_rows = 0
    for tokens in token_lists:
        vec = _raw_tfidf(model, tokens)
        for col in np.nonzero(vec)[0]:
            rows.append(n_rows)
            cols.append(int(col))
            data.append(vec[col])
        n_rows += 1
    if n_rows == 0:
        raise DegenerateInput("cannot fit a projection on an empty corpus")
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(n_rows, len(model.vocabulary))
    )
    projection = truncated_svd(matrix, rank, seed=seed)
    return TfidfModel(
        vocabulary=model.vocabulary,
        idf=model.idf,
        min_df=model.min_df,
        projection=projection,
    )


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; 0 when either vector has zero norm."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


@dataclass
class EmbeddingEntry:
    sentence_vectors: np.ndarray
    token_vectors: list[np.ndarray] | None = None


@dataclass
class EmbeddingTable:
    """Per-document dense vectors loaded from the embedding JSONL format."""

    entries: dict[str, EmbeddingEntry] = field(default_factory=dict)
    dim: int | None = None
    meta: dict | None = None

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.entries

    def sentence_vectors_for(self, document: Document) -> np.ndarray:
        entry = self.entries.get(document.id)
        if entry is None:
            raise AlignmentError(f"no embeddings for document id={document.id!r}")
        expected = document.sentence_count
        got = entry.sentence_vectors.shape[0]
        if got != expected:
            raise AlignmentError(
                f"id={document.id!r} has {got} sentence vectors, document has "
                f"{expected} sentences"
            )
        return entry.sentence_vectors

    def token_vectors_for(self, doc_id: str, summary: SummaryText) -> list[np.ndarray]:
        entry = self.entries.get(doc_id)
        if entry is None or entry.token_vectors is None:
            raise AlignmentError(f"no token embeddings for id={doc_id!r}")
        if len(entry.token_vectors) != summary.sentence_count:
            raise AlignmentError(
                f"id={doc_id!r} has token vectors for {len(entry.token_vectors)} "
                f"sentences, text has {summary.sentence_count}"
            )
        for sent, vecs in zip(summary.sentences, entry.token_vectors):
            if vecs.shape[0] != len(sent.tokens):
                raise AlignmentError(
                    f"id={doc_id!r} sentence {sent.position_in_document}: "
                    f"{vecs.shape[0]} token vectors for {len(sent.tokens)} tokens"
                )
        return entry.token_vectors


def _as_matrix(values, dim: int, context: str) -> np.ndarray:
    matrix = np.asarray(values, dtype=float)
    if matrix.size == 0:
        matrix = matrix.reshape(0, dim)
    if matrix.ndim != 2 or matrix.shape[1] != dim:
        raise FormatError(f"{context}: vectors do not all have dim={dim}")
    if not np.all(np.isfinite(matrix)):
        raise FormatError(f"{context}: non-finite values")
    return matrix


def load_embeddings(path: str) -> EmbeddingTable:
    """Load the embedding JSONL format.

    One object per document: ``{"id", "dim", "sentences": [[...], ...],
    "tokens": optional [[[...], ...], ...]}``.  A leading ``{"_meta": ...}``
    header line is recorded, not required.
    """
    if not os.path.exists(path):
        raise IoError(f"embeddings file not found: {path}")
    table = EmbeddingTable()
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
                table.meta = obj["_meta"]
                continue
            doc_id = obj.get("id")
            dim = obj.get("dim")
            if not isinstance(doc_id, str) or not isinstance(dim, int) or dim < 1:
                raise FormatError(f"line {lineno}: missing id or invalid dim")
            if table.dim is None:
                table.dim = dim
            elif dim != table.dim:
                raise FormatError(
                    f"line {lineno}: dim {dim} differs from earlier dim {table.dim}"
                )
            if doc_id in table.entries:
                raise FormatError(f"line {lineno}: duplicate id {doc_id!r}")
            sentences = obj.get("sentences")
            if not isinstance(sentences, list):
                raise FormatError(f"line {lineno}: missing sentences array")
            sent_matrix = _as_matrix(sentences, dim, f"line {lineno}")
            token_vectors = None
            if "tokens" in obj and obj["tokens"] is not None:
                raw_tokens = obj["tokens"]
                if not isinstance(raw_tokens, list) or len(raw_tokens) != len(sentences):
                    raise FormatError(
                        f"line {lineno}: tokens must hold one list per sentence"
                    )
                token_vectors = [
                    _as_matrix(per_sent, dim, f"line {lineno}")
                    for per_sent in raw_tokens
                ]
            table.entries[doc_id] = EmbeddingEntry(sent_matrix, token_vectors)
    return table
