import numpy as np
import pytest

from sumscope.corpus import CorpusRecord, Document, SummaryText
from sumscope.errors import AlignmentError, DegenerateInput, EmptySelection, InvalidPosition
from sumscope.graphsum import (
    CentralityConfig,
    CentralityScores,
    boundary_distance,
    centrality,
    extract_summary,
    inter_centrality,
    intra_centrality,
    tune,
)
from sumscope.vectorize import cosine


def brute_force_components(vectors, document, config):
    """Independent double-loop re-derivation of both score components."""
    sentences = document.flat_sentences
    n = len(sentences)
    lam1, lam2 = (
        (config.lambda1, config.lambda2) if config.bias_enabled else (1.0, 1.0)
    )

    def d_b(position, span):
        return min(position, config.alpha * (span - position))

    section_size = {sec.index: len(sec.sentences) for sec in document.sections}
    intra = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if i == j or sentences[i].section_index != sentences[j].section_index:
                continue
            size = section_size[sentences[i].section_index]
            bias = (
                lam1
                if d_b(sentences[i].position_in_section, size)
                >= d_b(sentences[j].position_in_section, size)
                else lam2
            )
            intra[i] += cosine(vectors[i], vectors[j]) * bias

    n_sections = len(document.sections)
    means = {}
    for sec in document.sections:
        idx = [k for k in range(n) if sentences[k].section_index == sec.index]
        means[sec.index] = np.mean([vectors[k] for k in idx], axis=0)
    inter = np.zeros(n)
    for i in range(n):
        for other in means:
            if other == sentences[i].section_index:
                continue
            bias = (
                lam1
                if d_b(sentences[i].section_index, n_sections) >= d_b(other, n_sections)
                else lam2
            )
            inter[i] += cosine(vectors[i], means[other]) * bias
    return intra, inter


def random_sectioned_document(rng, max_sentences=8, max_sections=3):
    n_sections = int(rng.integers(1, max_sections + 1))
    remaining = int(rng.integers(n_sections, max_sentences + 1))
    sizes = []
    for k in range(n_sections):
        left = remaining - (n_sections - k - 1)
        size = int(rng.integers(1, left + 1)) if k < n_sections - 1 else left
        sizes.append(size)
        remaining -= size
    counter = 0
    sections = []
    for k, size in enumerate(sizes):
        raws = []
        for _ in range(size):
            raws.append(f"word{counter} word{counter + 1}")
            counter += 2
        sections.append((f"sec{k}", raws))
    return Document.from_sections("doc", sections)


def unit_vectors(rng, count, dim=5):
    vectors = rng.standard_normal((count, dim))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


class TestBoundaryDistance:
    def test_middle_of_span(self):
        assert boundary_distance(5, 10, 1.0) == 5.0

    def test_last_position_is_zero(self):
        assert boundary_distance(10, 10, 0.7) == 0.0

    def test_alpha_zero_collapses(self):
        assert boundary_distance(4, 10, 0.0) == 0.0

    def test_out_of_range(self):
        with pytest.raises(InvalidPosition):
            boundary_distance(0, 5, 1.0)
        with pytest.raises(InvalidPosition):
            boundary_distance(6, 5, 1.0)


class TestIntraCentrality:
    def test_two_identical_sentences_neutral_bias(self):
        doc = Document.from_sections("d", [("s", ["a b", "a b"])])
        vectors = np.array([[1.0, 0.0], [1.0, 0.0]])
        config = CentralityConfig(lambda1=1.0, lambda2=1.0, alpha=1.0)
        scores = intra_centrality(vectors, doc, config)
        assert scores == pytest.approx([1.0, 1.0])

    def test_single_sentence_section_scores_zero(self):
        doc = Document.from_sections("d", [("s", ["a b"]), ("t", ["c d"])])
        vectors = np.eye(2)
        config = CentralityConfig()
        assert intra_centrality(vectors, doc, config) == pytest.approx([0.0, 0.0])

    def test_three_sentences_match_brute_force(self):
        rng = np.random.default_rng(5)
        doc = Document.from_sections("d", [("s", ["a b", "c d", "e f"])])
        vectors = unit_vectors(rng, 3)
        config = CentralityConfig(lambda1=0.5, lambda2=1.0, alpha=1.0)
        expected, _ = brute_force_components(vectors, doc, config)
        assert intra_centrality(vectors, doc, config) == pytest.approx(expected, abs=1e-12)

    def test_alignment_error(self):
        doc = Document.from_sections("d", [("s", ["a b", "c d"])])
        with pytest.raises(AlignmentError):
            intra_centrality(np.eye(3), doc, CentralityConfig())


class TestInterCentrality:
    def test_single_section_all_zero(self):
        doc = Document.from_sections("d", [("s", ["a b", "c d"])])
        vectors = np.eye(2)
        assert inter_centrality(vectors, doc, CentralityConfig()) == pytest.approx([0.0, 0.0])

    def test_two_sections_neutral_bias_is_cosine_to_other_mean(self):
        doc = Document.from_sections("d", [("s", ["a b"]), ("t", ["c d", "e f"])])
        vectors = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        config = CentralityConfig(lambda1=1.0, lambda2=1.0)
        scores = inter_centrality(vectors, doc, config)
        other_mean = vectors[1:].mean(axis=0)
        assert scores[0] == pytest.approx(cosine(vectors[0], other_mean))
        first_mean = vectors[:1].mean(axis=0)
        assert scores[1] == pytest.approx(cosine(vectors[1], first_mean))

    def test_three_sections_match_brute_force(self):
        rng = np.random.default_rng(6)
        doc = Document.from_sections(
            "d", [("s", ["a b", "c d"]), ("t", ["e f"]), ("u", ["g h", "i j"])]
        )
        vectors = unit_vectors(rng, 5)
        config = CentralityConfig(lambda1=0.5, lambda2=1.0, alpha=0.8)
        _, expected = brute_force_components(vectors, doc, config)
        assert inter_centrality(vectors, doc, config) == pytest.approx(expected, abs=1e-12)


class TestCentrality:
    def test_symmetric_vectors_equal_scores_without_bias(self):
        doc = Document.from_sections("d", [("s", ["a b", "c d", "e f"])])
        vectors = np.array([[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
        scores = centrality(vectors, doc, CentralityConfig(bias_enabled=False))
        assert np.ptp(scores.combined) < 1e-9

    def test_mu1_zero_equals_intra(self):
        rng = np.random.default_rng(3)
        doc = random_sectioned_document(rng)
        vectors = unit_vectors(rng, doc.sentence_count)
        config = CentralityConfig(mu1=0.0)
        scores = centrality(vectors, doc, config)
        assert np.array_equal(scores.combined, scores.intra)

    def test_neutral_lambdas_equal_unbiased_part_sums(self):
        rng = np.random.default_rng(4)
        doc = Document.from_sections("d", [("s", ["a b", "c d"]), ("t", ["e f"])])
        vectors = unit_vectors(rng, 3)
        config = CentralityConfig(lambda1=1.0, lambda2=1.0, alpha=0.3, mu1=1.0)
        scores = centrality(vectors, doc, config)
        expected_intra, expected_inter = brute_force_components(
            vectors, doc, CentralityConfig(lambda1=1.0, lambda2=1.0, alpha=1.0, mu1=1.0)
        )
        assert scores.combined == pytest.approx(expected_inter + expected_intra, abs=1e-12)

    def test_unbiased_single_section_is_plain_pairwise_sum(self):
        rng = np.random.default_rng(8)
        doc = Document.from_sections("d", [("s", ["a b", "c d", "e f", "g h"])])
        vectors = unit_vectors(rng, 4)
        scores = centrality(vectors, doc, CentralityConfig(bias_enabled=False))
        for i in range(4):
            plain = sum(cosine(vectors[i], vectors[j]) for j in range(4) if j != i)
            assert scores.combined[i] == pytest.approx(plain, abs=1e-12)


class TestExtractSummary:
    def _doc(self, sentence_token_counts):
        raws = [
            " ".join(f"w{i}_{j}" for j in range(count))
            for i, count in enumerate(sentence_token_counts)
        ]
        return Document.from_sections("d", [("s", raws)])

    def _scores(self, values):
        arr = np.asarray(values, dtype=float)
        return CentralityScores(arr, arr, np.zeros_like(arr))

    def test_budget_covers_everything(self):
        doc = self._doc([3, 2, 4])
        indices = extract_summary(doc, self._scores([0.1, 0.9, 0.5]), budget_tokens=100)
        assert indices == [0, 1, 2]

    def test_budget_for_top_sentence_only(self):
        doc = self._doc([3, 3, 3])
        indices = extract_summary(doc, self._scores([1.0, 3.0, 2.0]), budget_tokens=3)
        assert indices == [1]

    def test_skip_and_continue(self):
        doc = self._doc([5, 4, 2])
        indices = extract_summary(doc, self._scores([3.0, 2.0, 1.0]), budget_tokens=7)
        assert indices == [0, 2]

    def test_strict_stop_mode(self):
        doc = self._doc([5, 4, 2])
        indices = extract_summary(
            doc, self._scores([3.0, 2.0, 1.0]), budget_tokens=7, strict_stop=True
        )
        assert indices == [0]

    def test_tie_prefers_earlier_position(self):
        doc = self._doc([2, 2, 2])
        indices = extract_summary(doc, self._scores([1.0, 1.0, 1.0]), budget_tokens=2)
        assert indices == [0]

    def test_nothing_fits(self):
        doc = self._doc([5, 6])
        with pytest.raises(EmptySelection):
            extract_summary(doc, self._scores([1.0, 2.0]), budget_tokens=3)

    def test_budget_safety_and_determinism(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            counts = [int(rng.integers(1, 9)) for _ in range(int(rng.integers(1, 10)))]
            doc = self._doc(counts)
            scores = self._scores(rng.standard_normal(len(counts)))
            budget = int(rng.integers(1, 25))
            try:
                indices = extract_summary(doc, scores, budget)
            except EmptySelection:
                assert min(counts) > budget
                continue
            assert sum(counts[i] for i in indices) <= budget
            assert indices == sorted(indices)
            assert indices == extract_summary(doc, scores, budget)

    def test_scale_invariance_of_ranking(self):
        rng = np.random.default_rng(21)
        doc = random_sectioned_document(rng)
        vectors = unit_vectors(rng, doc.sentence_count)
        config = CentralityConfig(budget_tokens=4)
        base = extract_summary(doc, centrality(vectors, doc, config), 4)
        scaled = extract_summary(doc, centrality(vectors * 7.5, doc, config), 4)
        assert base == scaled


class TestBiasDegeneracy:
    def test_alpha_zero_keeps_unbiased_ranking(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            doc = random_sectioned_document(rng)
            vectors = unit_vectors(rng, doc.sentence_count)
            neutral = centrality(
                vectors, doc, CentralityConfig(lambda1=1.0, lambda2=1.0, alpha=1.0)
            )
            collapsed = centrality(
                vectors, doc, CentralityConfig(lambda1=0.5, lambda2=1.0, alpha=0.0)
            )
            budget = max(2, doc.token_count // 2)
            assert extract_summary(doc, neutral, budget) == extract_summary(
                doc, collapsed, budget
            )


class TestTune:
    def _toy_records(self):
        doc1 = Document.from_sections(
            "t1", [("s", ["alpha beta gamma", "delta epsilon zeta"]), ("t", ["eta theta"])]
        )
        ref1 = SummaryText.from_raw_sentences(["alpha beta gamma"])
        doc2 = Document.from_sections(
            "t2", [("s", ["one two three", "four five six"]), ("t", ["seven eight"])]
        )
        ref2 = SummaryText.from_raw_sentences(["four five six"])
        return [CorpusRecord(doc1, ref1), CorpusRecord(doc2, ref2)]

    @staticmethod
    def _encoder(document):
        rng = np.random.default_rng(len(document.flat_sentences))
        return unit_vectors(rng, document.sentence_count)

    def test_single_grid_point(self):
        config = tune(
            self._toy_records(),
            self._encoder,
            alpha_grid=[0.8],
            mu1_grid=[1.5],
            base_config=CentralityConfig(budget_tokens=3),
        )
        assert config.alpha == 0.8
        assert config.mu1 == 1.5

    def test_matches_exhaustive_grid_argmax(self):
        from sumscope.graphsum import summarize_record
        from sumscope.lexical import rouge_n

        records = self._toy_records()
        grid_alpha = [0.0, 1.0]
        grid_mu1 = [0.5, 1.5]
        base = CentralityConfig(budget_tokens=3)

        best = None
        best_mean = -1.0
        for alpha in grid_alpha:
            for mu1 in grid_mu1:
                from dataclasses import replace

                config = replace(base, alpha=alpha, mu1=mu1)
                total = 0.0
                for record in records:
                    vectors = self._encoder(record.document)
                    indices = summarize_record(record, vectors, config)
                    flat = record.document.flat_sentences
                    tokens = [t for i in indices for t in flat[i].tokens]
                    total += rouge_n(tokens, record.reference.all_tokens(), 1).f1
                mean = total / len(records)
                if mean > best_mean:
                    best_mean = mean
                    best = (alpha, mu1)

        chosen = tune(
            records, self._encoder, alpha_grid=grid_alpha, mu1_grid=grid_mu1, base_config=base
        )
        assert (chosen.alpha, chosen.mu1) == best

    def test_empty_validation(self):
        with pytest.raises(DegenerateInput):
            tune([], self._encoder, [1.0], [1.0])


class TestConfigValidation:
    def test_bad_budget(self):
        with pytest.raises(DegenerateInput):
            CentralityConfig(budget_tokens=0)

    def test_negative_weight(self):
        with pytest.raises(DegenerateInput):
            CentralityConfig(lambda1=-0.1)
