"""Corpus parsing and text normalization.

Documents arrive as JSONL, one record per line, following the arXiv-style
schema: ``article_id``, ``abstract_text`` (list of reference-summary
sentences), and either ``sections`` (list of lists of sentence strings) with
``section_names``, or a flat ``article_text`` treated as one section named
"body".  Unknown fields are ignored.  All positions are 1-based.

Tokenization rule, fixed and deterministic: lowercase, split on Unicode
whitespace, split internal hyphens, strip leading/trailing punctuation per
piece, drop empties.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import ParseError, SchemaError

# ASCII punctuation plus common typographic quotes/dashes, stripped from
# token edges.  Includes '-' so edge hyphens vanish after the hyphen split.
_PUNCT = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~" + "‘’“”–—…«»"

_SENT_MARKER = re.compile(r"</?S>", re.IGNORECASE)
_PARAGRAPH_BREAK = re.compile(r"\n\s*\n")

_ABBREVIATIONS = ("e.g.", "i.e.", "et al.", "fig.", "eq.")


def tokenize(text: str) -> list[str]:
    """Normalize ``text`` into tokens. Empty input gives an empty list."""
    tokens: list[str] = []
    for raw in text.lower().split():
        for piece in raw.split("-"):
            piece = piece.strip(_PUNCT)
            if piece:
                tokens.append(piece)
    return tokens


def _ends_with_abbreviation(fragment: str) -> bool:
    lowered = fragment.lower()
    for abbr in _ABBREVIATIONS:
        if lowered.endswith(abbr):
            head = lowered[: -len(abbr)]
            if not head or not head[-1].isalpha():
                return True
    return False


def _split_block(text: str) -> list[str]:
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in ".!?":
            j = i + 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            is_boundary = k > j and k < n and text[k].isupper()
            if is_boundary and not _ends_with_abbreviation(text[start:j]):
                sentences.append(text[start:j].strip())
                start = k
                i = k
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def segment_sentences(raw_text: str) -> list[str]:
    """Fallback sentence splitter for corpora that are not pre-segmented.

    Splits at ``.``, ``!`` or ``?`` followed by whitespace and an uppercase
    letter; a short abbreviation list suppresses false splits; paragraph
    breaks (blank lines) are hard boundaries.
    """
    sentences: list[str] = []
    for block in _PARAGRAPH_BREAK.split(raw_text):
        block = block.strip()
        if block:
            sentences.extend(_split_block(block))
    return sentences


@dataclass(frozen=True)
class Sentence:
    """One sentence with its normalized tokens and 1-based positions.

    ``section_index`` and ``position_in_section`` are None for summary
    sentences, which live outside any section.
    """

    raw: str
    tokens: tuple[str, ...]
    position_in_document: int
    section_index: int | None = None
    position_in_section: int | None = None

    @classmethod
    def from_raw(
        cls,
        raw: str,
        position_in_document: int,
        section_index: int | None = None,
        position_in_section: int | None = None,
    ) -> "Sentence":
        return cls(
            raw=raw,
            tokens=tuple(tokenize(raw)),
            position_in_document=position_in_document,
            section_index=section_index,
            position_in_section=position_in_section,
        )


@dataclass(frozen=True)
class Section:
    """A named, 1-indexed section holding at least one sentence."""

    index: int
    sentences: tuple[Sentence, ...]
    name: str | None = None


@dataclass(frozen=True)
class Document:
    """Sectioned source text; ``flat_sentences`` concatenates the sections."""

    id: str
    sections: tuple[Section, ...]

    @property
    def flat_sentences(self) -> tuple[Sentence, ...]:
        return tuple(s for sec in self.sections for s in sec.sentences)

    @property
    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.flat_sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.flat_sentences)

    def all_tokens(self) -> list[str]:
        return [t for s in self.flat_sentences for t in s.tokens]

    @classmethod
    def from_sections(
        cls, doc_id: str, sections: list[tuple[str | None, list[str]]]
    ) -> "Document":
        """Build from ``[(name, [raw sentence, ...]), ...]``."""
        built: list[Section] = []
        flat_pos = 0
        for sec_idx, (name, raws) in enumerate(sections, start=1):
            sents = []
            for pos, raw in enumerate(raws, start=1):
                flat_pos += 1
                sents.append(
                    Sentence.from_raw(raw, flat_pos, sec_idx, pos)
                )
            built.append(Section(index=sec_idx, sentences=tuple(sents), name=name))
        return cls(id=doc_id, sections=tuple(built))


@dataclass(frozen=True)
class SummaryText:
    """Ordered sentences of a reference or candidate summary."""

    sentences: tuple[Sentence, ...]

    @property
    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    def all_tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s.tokens]

    @classmethod
    def from_raw_sentences(cls, raws: list[str]) -> "SummaryText":
        return cls(
            sentences=tuple(
                Sentence.from_raw(raw, pos) for pos, raw in enumerate(raws, start=1)
            )
        )


@dataclass(frozen=True)
class CorpusRecord:
    document: Document
    reference: SummaryText


def _clean_sentence_string(raw: object) -> str:
    """Drop <S>/</S> wrappers some distributions put around sentences."""
    if not isinstance(raw, str):
        raise SchemaError(f"sentence entries must be strings, got {type(raw).__name__}")
    return _SENT_MARKER.sub("", raw).strip()


def parse_corpus_line(json_text: str) -> CorpusRecord:
    """Parse one corpus JSONL line into a :class:`CorpusRecord`.

    Raises :class:`ParseError` on malformed JSON and :class:`SchemaError`
    when required fields are missing, empty, or inconsistent.
    """
    try:
        obj = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("corpus line must be a JSON object")

    doc_id = obj.get("article_id")
    if not isinstance(doc_id, str) or not doc_id:
        raise SchemaError("missing or empty article_id")

    abstract = obj.get("abstract_text")
    if not isinstance(abstract, list) or not abstract:
        raise SchemaError("missing or empty abstract_text")
    reference_raws = [_clean_sentence_string(s) for s in abstract]
    reference_raws = [s for s in reference_raws if s]
    if not reference_raws:
        raise SchemaError("abstract_text has no non-empty sentences")

    if "sections" in obj:
        sections_raw = obj["sections"]
        names = obj.get("section_names")
        if not isinstance(sections_raw, list):
            raise SchemaError("sections must be a list of sentence lists")
        if names is None:
            names = [None] * len(sections_raw)
        if not isinstance(names, list) or len(names) != len(sections_raw):
            raise SchemaError(
                f"sections/section_names length mismatch: "
                f"{len(sections_raw)} vs {len(names) if isinstance(names, list) else 'non-list'}"
            )
        section_specs: list[tuple[str | None, list[str]]] = []
        for name, sentences in zip(names, sections_raw):
            if not isinstance(sentences, list):
                raise SchemaError("each section must be a list of sentence strings")
            cleaned = [_clean_sentence_string(s) for s in sentences]
            cleaned = [s for s in cleaned if s]
            if cleaned:
                section_specs.append((name if isinstance(name, str) else None, cleaned))
    elif "article_text" in obj:
        body = obj["article_text"]
        if not isinstance(body, list):
            raise SchemaError("article_text must be a list of sentence strings")
        cleaned = [_clean_sentence_string(s) for s in body]
        cleaned = [s for s in cleaned if s]
        section_specs = [("body", cleaned)] if cleaned else []
    else:
        raise SchemaError("record has neither sections nor article_text")

    if not section_specs:
        raise SchemaError("document has no non-empty sections")

    document = Document.from_sections(doc_id, section_specs)
    reference = SummaryText.from_raw_sentences(reference_raws)
    if document.token_count == 0:
        raise SchemaError("document text normalizes to zero tokens")
    if reference.token_count == 0:
        raise SchemaError("reference summary normalizes to zero tokens")
    return CorpusRecord(document=document, reference=reference)


def record_to_json(record: CorpusRecord) -> str:
    """Serialize a record back to the corpus JSONL schema (round-trippable)."""
    obj = {
        "article_id": record.document.id,
        "abstract_text": [s.raw for s in record.reference.sentences],
        "sections": [
            [s.raw for s in sec.sentences] for sec in record.document.sections
        ],
        "section_names": [sec.name for sec in record.document.sections],
    }
    return json.dumps(obj, ensure_ascii=False)


def doc_stats(record: CorpusRecord) -> tuple[int, int, int, int]:
    """Token and sentence counts: (doc tokens, doc sentences, summary tokens,
    summary sentences)."""
    return (
        record.document.token_count,
        record.document.sentence_count,
        record.reference.token_count,
        record.reference.sentence_count,
    )


def iter_corpus_lines(path: str):
    """Yield ``(line_number, CorpusRecord)`` from a JSONL file, skipping
    blank lines.  Parse and schema errors propagate with the path and line
    number attached via :class:`CorpusLineError`."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, parse_corpus_line(line)
            except (ParseError, SchemaError) as exc:
                raise CorpusLineError(path, lineno, exc) from exc


class CorpusLineError(ParseError):
    """A corpus line failed to parse; carries the path and 1-based line."""

    def __init__(self, path: str, lineno: int, cause: Exception):
        super().__init__(f"{path}: line {lineno}: {cause}")
        self.path = path
        self.lineno = lineno
        self.cause = cause
