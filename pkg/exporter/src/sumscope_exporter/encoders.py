"""Encoder backends.

Two families share one interface (per-sentence vectors, per-word vectors,
next-sentence probabilities):

* ``hash-<dim>``: a dependency-free deterministic encoder.  Each word maps
  to a fixed pseudo-random unit vector derived from its SHA-256 digest and a
  sentence is the normalized mean of its word vectors.  Numerically
  identical across runs and machines; useful for tests and plumbing checks.

* Anything else is treated as a pretrained model identifier and loaded
  lazily through sentence-transformers / transformers in eval mode.  Word
  vectors mean-pool the model's subword pieces per word so counts always
  match the toolkit tokenizer's word count.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

from .corpus import tokenize

_HASH_MODEL = re.compile(r"^hash-(\d+)$")


def is_hash_model(model: str) -> bool:
    return _HASH_MODEL.match(model) is not None


class HashEncoder:
    """Deterministic offline encoder; no model weights required."""

    def __init__(self, model: str):
        match = _HASH_MODEL.match(model)
        if not match:
            raise ValueError(f"not a hash model id: {model!r}")
        self.model = model
        self.dim = int(match.group(1))
        if self.dim < 1:
            raise ValueError("hash encoder dimension must be >= 1")

    def _word_vector(self, word: str) -> np.ndarray:
        digest = hashlib.sha256(word.encode("utf-8")).digest()
        seed = int.from_bytes(digest[:8], "big")
        rng = np.random.default_rng(seed)
        vec = rng.standard_normal(self.dim)
        return vec / np.linalg.norm(vec)

    def encode_words(self, sentence: str) -> np.ndarray:
        words = tokenize(sentence)
        if not words:
            return np.zeros((0, self.dim))
        return np.stack([self._word_vector(w) for w in words])

    def encode_sentences(self, sentences: list[str]) -> np.ndarray:
        out = np.zeros((len(sentences), self.dim))
        for i, sentence in enumerate(sentences):
            words = self.encode_words(sentence)
            if words.shape[0]:
                mean = words.mean(axis=0)
                norm = np.linalg.norm(mean)
                out[i] = mean / norm if norm > 0 else mean
        return out

    def next_sentence_scores(self, sentences: list[str]) -> list[float]:
        if len(sentences) < 2:
            return []
        vectors = self.encode_sentences(sentences)
        scores = []
        for i in range(1, len(sentences)):
            u, v = vectors[i - 1], vectors[i]
            nu, nv = np.linalg.norm(u), np.linalg.norm(v)
            cos = float(np.dot(u, v) / (nu * nv)) if nu > 0 and nv > 0 else 0.0
            scores.append(min(1.0, max(0.0, (cos + 1.0) / 2.0)))
        return scores


class TransformerEncoder:
    """Pretrained-model encoder; imports its dependencies lazily."""

    def __init__(self, model: str, device: str = "cpu", batch_size: int = 16):
        self.model_name = model
        self.device = device
        self.batch_size = batch_size
        self._sentence_model = None
        self._token_model = None
        self._tokenizer = None
        self._nsp_model = None

    # -- sentence vectors -------------------------------------------------

    def encode_sentences(self, sentences: list[str]) -> np.ndarray:
        from sentence_transformers import SentenceTransformer

        if self._sentence_model is None:
            self._sentence_model = SentenceTransformer(
                self.model_name, device=self.device
            )
            self._sentence_model.eval()
        if not sentences:
            dim = self._sentence_model.get_sentence_embedding_dimension()
            return np.zeros((0, dim))
        return np.asarray(
            self._sentence_model.encode(
                sentences, batch_size=self.batch_size, show_progress_bar=False
            ),
            dtype=float,
        )

    # -- word vectors ------------------------------------------------------

    def _load_token_model(self):
        import torch
        from transformers import AutoModel, AutoTokenizer

        if self._token_model is None:
            self._tokenizer = AutoTokenizer.from_pretrained(self.model_name, use_fast=True)
            self._token_model = AutoModel.from_pretrained(self.model_name)
            self._token_model.to(self.device)
            self._token_model.eval()
        return torch

    def encode_words(self, sentence: str) -> np.ndarray:
        """One pooled vector per toolkit word: subword pieces average."""
        torch = self._load_token_model()
        words = tokenize(sentence)
        hidden = self._token_model.config.hidden_size
        if not words:
            return np.zeros((0, hidden))
        encoded = self._tokenizer(
            words, is_split_into_words=True, return_tensors="pt", truncation=True
        ).to(self.device)
        with torch.no_grad():
            states = self._token_model(**encoded).last_hidden_state[0].cpu().numpy()
        word_ids = encoded.word_ids(0)
        pooled = np.zeros((len(words), states.shape[1]))
        counts = np.zeros(len(words))
        for piece_idx, word_idx in enumerate(word_ids):
            if word_idx is None:
                continue
            pooled[word_idx] += states[piece_idx]
            counts[word_idx] += 1
        counts[counts == 0] = 1.0
        return pooled / counts[:, None]

    # -- next-sentence probabilities ----------------------------------------

    def next_sentence_scores(self, sentences: list[str]) -> list[float]:
        import torch
        from transformers import AutoTokenizer, BertForNextSentencePrediction

        if self._nsp_model is None:
            self._tokenizer = AutoTokenizer.from_pretrained(self.model_name, use_fast=True)
            self._nsp_model = BertForNextSentencePrediction.from_pretrained(self.model_name)
            self._nsp_model.to(self.device)
            self._nsp_model.eval()
        scores: list[float] = []
        for i in range(1, len(sentences)):
            encoded = self._tokenizer(
                sentences[i - 1], sentences[i], return_tensors="pt", truncation=True
            ).to(self.device)
            with torch.no_grad():
                logits = self._nsp_model(**encoded).logits[0]
                probs = torch.softmax(logits, dim=-1)
            # index 0 is the "is next sentence" class
            scores.append(min(1.0, max(0.0, float(probs[0]))))
        return scores


def build_encoder(model: str, device: str = "cpu", batch_size: int = 16):
    if is_hash_model(model):
        return HashEncoder(model)
    return TransformerEncoder(model, device=device, batch_size=batch_size)
