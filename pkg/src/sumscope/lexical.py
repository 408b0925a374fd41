"""Lexical overlap metrics and intrinsic dataset statistics.

Covers n-gram and longest-common-subsequence overlap scores, greedy shared
fragments with the coverage/density statistics built on them, compression
ratios, pairwise sentence redundancy, RAKE keyword extraction, positional
uniformity of salient words, and the Pearson correlation used to relate the
metrics to one another.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from . import porter
from .corpus import CorpusRecord, Document, SummaryText, tokenize
from .errors import DegenerateInput
from .stopwords import active_stopwords

Tokens = Sequence[str]


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _maybe_stem(tokens: Tokens, stem: bool) -> list[str]:
    return [porter.stem(t) for t in tokens] if stem else list(tokens)


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Tokens, reference: Tokens, n: int, stem: bool = False) -> RougeScore:
    """Clipped n-gram multiset overlap; zero when either side has no n-grams."""
    if n < 1:
        raise DegenerateInput(f"n must be >= 1, got {n}")
    cand = _maybe_stem(candidate, stem)
    ref = _maybe_stem(reference, stem)
    cand_grams = _ngram_counts(cand, n)
    ref_grams = _ngram_counts(ref, n)
    cand_total = sum(cand_grams.values())
    ref_total = sum(ref_grams.values())
    if cand_total == 0 or ref_total == 0:
        return RougeScore(0.0, 0.0, 0.0)
    overlap = sum((cand_grams & ref_grams).values())
    precision = overlap / cand_total
    recall = overlap / ref_total
    return RougeScore(precision, recall, _f1(precision, recall))


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Longest common subsequence length, two-row dynamic programming."""
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    curr = [0] * (len(b) + 1)
    for x in a:
        for j, y in enumerate(b, start=1):
            if x == y:
                curr[j] = prev[j - 1] + 1
            else:
                curr[j] = curr[j - 1] if curr[j - 1] >= prev[j] else prev[j]
        prev, curr = curr, prev
    return prev[len(b)]


def rouge_l(candidate: Tokens, reference: Tokens, stem: bool = False) -> RougeScore:
    """LCS overlap over flat token sequences; zero for empty inputs."""
    cand = _maybe_stem(candidate, stem)
    ref = _maybe_stem(reference, stem)
    if not cand or not ref:
        return RougeScore(0.0, 0.0, 0.0)
    lcs = lcs_length(cand, ref)
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    return RougeScore(precision, recall, _f1(precision, recall))


@dataclass(frozen=True)
class Fragment:
    """A shared token run: 0-based start offsets in document and summary."""

    doc_start: int
    summ_start: int
    length: int


@dataclass(frozen=True)
class FragmentSet:
    fragments: tuple[Fragment, ...]
    summary_length: int

    @property
    def lengths(self) -> list[int]:
        return [f.length for f in self.fragments]

    @property
    def matched_tokens(self) -> int:
        return sum(f.length for f in self.fragments)


def greedy_fragments(doc: Tokens, summary: Tokens) -> FragmentSet:
    """Greedy left-to-right matching of the longest shared token runs.

    At each summary position the longest exact run starting anywhere in the
    document is taken (earliest document start on ties) and the scan advances
    past it; unmatched positions advance by one.
    """
    doc = list(doc)
    summary = list(summary)
    starts: dict[str, list[int]] = {}
    for j, tok in enumerate(doc):
        starts.setdefault(tok, []).append(j)

    fragments: list[Fragment] = []
    i = 0
    while i < len(summary):
        best_len = 0
        best_start = -1
        for j in starts.get(summary[i], ()):
            length = 0
            while (
                i + length < len(summary)
                and j + length < len(doc)
                and summary[i + length] == doc[j + length]
            ):
                length += 1
            if length > best_len:
                best_len = length
                best_start = j
        if best_len >= 1:
            fragments.append(Fragment(best_start, i, best_len))
            i += best_len
        else:
            i += 1
    return FragmentSet(tuple(fragments), len(summary))


def coverage(frags: FragmentSet) -> float:
    """Fraction of summary tokens inside shared fragments."""
    if frags.summary_length == 0:
        raise DegenerateInput("coverage undefined for an empty summary")
    return frags.matched_tokens / frags.summary_length


def density(frags: FragmentSet) -> float:
    """Mean squared fragment length per summary token."""
    if frags.summary_length == 0:
        raise DegenerateInput("density undefined for an empty summary")
    return sum(f.length * f.length for f in frags.fragments) / frags.summary_length


def compression(record: CorpusRecord) -> tuple[float, float]:
    """(token ratio, sentence ratio) of document length over summary length."""
    doc_tok = record.document.token_count
    doc_sent = record.document.sentence_count
    sum_tok = record.reference.token_count
    sum_sent = record.reference.sentence_count
    if sum_tok == 0 or sum_sent == 0:
        raise DegenerateInput("compression undefined for an empty summary")
    return doc_tok / sum_tok, doc_sent / sum_sent


def redundancy(summary: SummaryText) -> float | None:
    """Mean LCS-overlap F1 over all distinct sentence pairs; None below two
    sentences."""
    sents = [list(s.tokens) for s in summary.sentences]
    if len(sents) < 2:
        return None
    total = 0.0
    pairs = 0
    for i in range(len(sents)):
        for j in range(i + 1, len(sents)):
            total += rouge_l(sents[i], sents[j]).f1
            pairs += 1
    return total / pairs


@dataclass(frozen=True)
class DataMetrics:
    """The five intrinsic metrics of one document-summary pair."""

    compression_token: float
    compression_sent: float
    coverage: float
    density: float
    redundancy: float | None
    uniformity: float | None


def data_metrics(record: CorpusRecord) -> DataMetrics:
    comp_tok, comp_sent = compression(record)
    frags = greedy_fragments(
        record.document.all_tokens(), record.reference.all_tokens()
    )
    return DataMetrics(
        compression_token=comp_tok,
        compression_sent=comp_sent,
        coverage=coverage(frags),
        density=density(frags),
        redundancy=redundancy(record.reference),
        uniformity=uniformity(record.document, record.reference),
    )


@dataclass(frozen=True)
class Keyword:
    phrase: tuple[str, ...]
    score: float


# Characters that break candidate phrases inside a sentence.
_PHRASE_BREAK = re.compile(r"[.,;:!?()\[\]{}\"/‘’“”–—…]")


def rake_keywords(
    text: SummaryText,
    k: int,
    stopwords: frozenset[str] | None = None,
    max_phrase_len: int = 4,
) -> list[Keyword]:
    """Top-k keyword phrases by degree/frequency co-occurrence scoring.

    Candidate phrases are maximal stopword- and punctuation-free token runs
    within a sentence; runs longer than ``max_phrase_len`` are split at the
    cap.  Each word scores degree/frequency over the within-phrase
    co-occurrence graph and a phrase scores the sum of its word scores.
    Ties rank by first occurrence; fewer than k phrases may exist.
    """
    if k < 1:
        raise DegenerateInput(f"k must be >= 1, got {k}")
    stop = active_stopwords() if stopwords is None else stopwords

    occurrences: list[tuple[str, ...]] = []
    for sentence in text.sentences:
        for chunk in _PHRASE_BREAK.split(sentence.raw):
            run: list[str] = []
            for token in tokenize(chunk):
                if token in stop:
                    if run:
                        occurrences.append(tuple(run))
                        run = []
                    continue
                run.append(token)
                if len(run) == max_phrase_len:
                    occurrences.append(tuple(run))
                    run = []
            if run:
                occurrences.append(tuple(run))

    if not occurrences:
        return []

    freq: Counter = Counter()
    degree: Counter = Counter()
    for phrase in occurrences:
        for word in phrase:
            freq[word] += 1
            degree[word] += len(phrase)

    word_score = {w: degree[w] / freq[w] for w in freq}

    first_seen: dict[tuple[str, ...], int] = {}
    for idx, phrase in enumerate(occurrences):
        first_seen.setdefault(phrase, idx)

    scored = [
        (phrase, sum(word_score[w] for w in phrase)) for phrase in first_seen
    ]
    scored.sort(key=lambda item: (-item[1], first_seen[item[0]]))
    return [Keyword(phrase, score) for phrase, score in scored[:k]]


def uniformity(
    doc: Document,
    reference: SummaryText,
    stopwords: frozenset[str] | None = None,
    top_k: int = 20,
) -> float | None:
    """Normalized entropy of the decile positions of salient unigrams.

    Salient unigrams are the deduplicated words of the reference's top
    keywords; every occurrence in the document counts.  None when no salient
    unigram occurs in the document.
    """
    stop = active_stopwords() if stopwords is None else stopwords
    keywords = rake_keywords(reference, top_k, stopwords=stop)
    salient = {w for kw in keywords for w in kw.phrase if w not in stop}
    if not salient:
        return None

    doc_tokens = doc.all_tokens()
    n = len(doc_tokens)
    if n == 0:
        return None
    buckets = [0] * 10
    for pos, token in enumerate(doc_tokens):
        if token in salient:
            buckets[min(10 * pos // n, 9)] += 1
    total = sum(buckets)
    if total == 0:
        return None
    entropy = 0.0
    for count in buckets:
        if count:
            q = count / total
            entropy -= q * math.log(q)
    return entropy / math.log(10)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation, clamped into [-1, 1]."""
    if len(xs) != len(ys):
        raise DegenerateInput(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise DegenerateInput("need at least 2 observations")
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    sx = math.sqrt(sum(d * d for d in dx))
    sy = math.sqrt(sum(d * d for d in dy))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInput("correlation undefined for constant input")
    r = sum(a * b for a, b in zip(dx, dy)) / (sx * sy)
    return max(-1.0, min(1.0, r))
