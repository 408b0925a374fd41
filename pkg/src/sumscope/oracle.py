"""Greedy overlap-maximizing extractive oracle labels.

Builds an upper-bound sentence selection for a document by repeatedly adding
the sentence that most improves the chosen overlap score against the
reference, stopping when no candidate strictly improves it or the budget is
reached.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .corpus import Document, SummaryText
from .errors import DegenerateInput
from .lexical import RougeScore, rouge_l, rouge_n

ROUGE_VARIANTS = ("1", "2", "L")
ORDER_MODES = ("original", "random")


@dataclass(frozen=True)
class OracleConfig:
    rouge_variant: str = "1"
    order_mode: str = "original"
    seed: int = 0
    max_sentences: int | None = None
    max_tokens: int | None = None

    def __post_init__(self):
        if self.rouge_variant not in ROUGE_VARIANTS:
            raise DegenerateInput(
                f"rouge_variant must be one of {ROUGE_VARIANTS}, got {self.rouge_variant!r}"
            )
        if self.order_mode not in ORDER_MODES:
            raise DegenerateInput(
                f"order_mode must be one of {ORDER_MODES}, got {self.order_mode!r}"
            )
        if self.max_sentences is not None and self.max_sentences < 1:
            raise DegenerateInput("max_sentences must be positive")
        if self.max_tokens is not None and self.max_tokens < 1:
            raise DegenerateInput("max_tokens must be positive")


def _score(candidate: list[str], reference: list[str], variant: str) -> RougeScore:
    if variant == "L":
        return rouge_l(candidate, reference)
    return rouge_n(candidate, reference, int(variant))


def greedy_oracle(
    document: Document, reference: SummaryText, config: OracleConfig
) -> list[int]:
    """Greedy selection of document sentence indices against the reference.

    Candidates are considered in document order, or in an order permuted
    once per document with the seed; the running selection's text is the
    concatenation in that order, and the result is returned in it.  Ties
    keep the earlier candidate in consideration order.
    """
    sentences = [list(s.tokens) for s in document.flat_sentences]
    ref_tokens = reference.all_tokens()
    if not sentences or not ref_tokens:
        raise DegenerateInput("greedy oracle needs a non-empty document and reference")

    order = list(range(len(sentences)))
    if config.order_mode == "random":
        random.Random(config.seed).shuffle(order)

    selected: set[int] = set()
    current_score = 0.0
    total_tokens = 0

    while True:
        if config.max_sentences is not None and len(selected) >= config.max_sentences:
            break
        best_idx = None
        best_score = current_score
        for idx in order:
            if idx in selected:
                continue
            if (
                config.max_tokens is not None
                and total_tokens + len(sentences[idx]) > config.max_tokens
            ):
                continue
            trial = [
                t
                for i in order
                if i in selected or i == idx
                for t in sentences[i]
            ]
            score = _score(trial, ref_tokens, config.rouge_variant).f1
            if score > best_score:
                best_score = score
                best_idx = idx
        if best_idx is None:
            break
        selected.add(best_idx)
        total_tokens += len(sentences[best_idx])
        current_score = best_score

    return [i for i in order if i in selected]
