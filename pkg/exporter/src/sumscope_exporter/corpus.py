"""Minimal corpus and candidate reading for the exporter.

The exporter talks to the main toolkit only through its file formats, so it
carries its own reader for the JSONL corpus schema and a copy of the
documented tokenization rule (lowercase, whitespace split, hyphen split,
edge punctuation strip) so that word counts line up exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

_PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~" + "‘’“”–—…«»"
_SENT_MARKER = re.compile(r"</?S>", re.IGNORECASE)


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for raw in text.lower().split():
        for piece in raw.split("-"):
            piece = piece.strip(_PUNCT)
            if piece:
                tokens.append(piece)
    return tokens


@dataclass(frozen=True)
class TextEntry:
    """One unit of text to encode: an id and its sentences."""

    text_id: str
    sentences: list[str]


def _clean(sentence: str) -> str:
    return _SENT_MARKER.sub("", sentence).strip()


def _document_sentences(obj: dict) -> list[str]:
    if "sections" in obj:
        sentences = [s for section in obj["sections"] for s in section]
    else:
        sentences = obj.get("article_text", [])
    return [c for c in (_clean(s) for s in sentences) if c]


def _reference_sentences(obj: dict) -> list[str]:
    return [c for c in (_clean(s) for s in obj.get("abstract_text", [])) if c]


def read_corpus(path: str, text: str) -> list[TextEntry]:
    """Read documents or reference summaries from a corpus JSONL file.

    ``text="documents"`` yields document sentences under the article id;
    ``text="references"`` yields the reference summaries with the id
    suffixed ``#reference`` (the convention the evaluator looks up).
    """
    entries: list[TextEntry] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            doc_id = obj.get("article_id")
            if not isinstance(doc_id, str) or not doc_id:
                raise ValueError(f"{path}: line {lineno}: missing article_id")
            if text == "documents":
                entries.append(TextEntry(doc_id, _document_sentences(obj)))
            else:
                entries.append(
                    TextEntry(doc_id + "#reference", _reference_sentences(obj))
                )
    return entries


def read_candidates(path: str) -> list[TextEntry]:
    """Read a candidate JSONL file ({"id", "summary_sentences": [...]})."""
    entries: list[TextEntry] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            doc_id = obj.get("id")
            sentences = obj.get("summary_sentences")
            if not isinstance(doc_id, str) or not isinstance(sentences, list):
                raise ValueError(
                    f"{path}: line {lineno}: candidate needs id and summary_sentences"
                )
            entries.append(TextEntry(doc_id, [str(s) for s in sentences]))
    return entries
