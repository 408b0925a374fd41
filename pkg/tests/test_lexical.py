import math
import random

import pytest

from sumscope import porter
from sumscope.corpus import CorpusRecord, Document, SummaryText
from sumscope.errors import DegenerateInput
from sumscope.lexical import (
    FragmentSet,
    compression,
    coverage,
    data_metrics,
    density,
    greedy_fragments,
    pearson,
    rake_keywords,
    redundancy,
    rouge_l,
    rouge_n,
    uniformity,
)

DOC = "the quick brown fox jumps".split()
SUMMARY = "the brown fox leaps".split()


def random_tokens(rng, max_len=12, alphabet=5):
    return [
        chr(ord("a") + rng.randrange(alphabet)) for _ in range(rng.randrange(max_len + 1))
    ]


class TestRougeN:
    def test_identity(self):
        score = rouge_n(["a", "b", "c"], ["a", "b", "c"], 1)
        assert score.precision == score.recall == score.f1 == 1.0

    def test_half_overlap(self):
        score = rouge_n(["a", "b"], ["b", "c"], 1)
        assert score.precision == 0.5
        assert score.recall == 0.5
        assert score.f1 == 0.5

    def test_disjoint_bigrams(self):
        assert rouge_n(["a", "b", "c"], ["x", "y"], 2).f1 == 0.0

    def test_too_short_for_ngrams(self):
        assert rouge_n(["a"], ["a", "b"], 2) == rouge_n([], ["a"], 1)

    def test_swap_swaps_precision_and_recall(self):
        rng = random.Random(5)
        for _ in range(200):
            a, b = random_tokens(rng), random_tokens(rng)
            fwd = rouge_n(a, b, 1)
            rev = rouge_n(b, a, 1)
            assert fwd.precision == rev.recall
            assert fwd.recall == rev.precision
            assert fwd.f1 == pytest.approx(rev.f1, abs=1e-15)

    def test_stemming_flag(self):
        assert rouge_n(["running"], ["runs"], 1).f1 == 0.0
        assert rouge_n(["running"], ["runs"], 1, stem=True).f1 == 1.0


class TestRougeL:
    def test_identity(self):
        assert rouge_l(["a", "b"], ["a", "b"]).f1 == 1.0

    def test_reordered(self):
        score = rouge_l(["a", "c", "b"], ["a", "b", "c"])
        assert score.precision == pytest.approx(2 / 3)
        assert score.recall == pytest.approx(2 / 3)
        assert score.f1 == pytest.approx(2 / 3)

    def test_disjoint(self):
        assert rouge_l(["a"], ["b"]).f1 == 0.0

    def test_empty(self):
        assert rouge_l([], ["a"]).f1 == 0.0


class TestGreedyFragments:
    def test_hand_trace(self):
        frags = greedy_fragments(DOC, SUMMARY)
        assert frags.lengths == [1, 2]
        assert coverage(frags) == 0.75
        assert density(frags) == 1.25

    def test_identity(self):
        frags = greedy_fragments(DOC, DOC)
        assert frags.lengths == [len(DOC)]
        assert coverage(frags) == 1.0
        assert density(frags) == len(DOC)

    def test_disjoint(self):
        frags = greedy_fragments(DOC, ["x", "y"])
        assert frags.fragments == ()
        assert coverage(frags) == 0.0
        assert density(frags) == 0.0

    def test_earliest_doc_start_tie_break(self):
        frags = greedy_fragments(["a", "b", "a", "b"], ["a", "b"])
        assert frags.fragments[0].doc_start == 0

    def test_fragment_soundness(self):
        rng = random.Random(7)
        for _ in range(300):
            doc = random_tokens(rng)
            summary = random_tokens(rng)
            frags = greedy_fragments(doc, summary)
            covered_positions = set()
            for frag in frags.fragments:
                span_doc = doc[frag.doc_start : frag.doc_start + frag.length]
                span_sum = summary[frag.summ_start : frag.summ_start + frag.length]
                assert span_doc == span_sum
                positions = set(range(frag.summ_start, frag.summ_start + frag.length))
                assert not positions & covered_positions
                covered_positions |= positions
            assert frags.matched_tokens <= len(summary)

    def test_appending_nonmatching_token_never_raises_coverage(self):
        rng = random.Random(13)
        for _ in range(200):
            doc = random_tokens(rng)
            summary = random_tokens(rng)
            if not summary:
                continue
            base = greedy_fragments(doc, summary)
            extended = greedy_fragments(doc, summary + ["zzz"])
            assert coverage(extended) <= coverage(base)

    def test_empty_summary_degenerate(self):
        with pytest.raises(DegenerateInput):
            coverage(FragmentSet((), 0))
        with pytest.raises(DegenerateInput):
            density(FragmentSet((), 0))


class TestCompression:
    def test_arithmetic(self):
        doc = Document.from_sections(
            "d", [("body", ["t " * 10] * 10)]
        )  # 10 sentences x 10 tokens
        ref = SummaryText.from_raw_sentences(["t " * 10, "t " * 10])
        ratios = compression(CorpusRecord(doc, ref))
        assert ratios == (5.0, 5.0)

    def test_identity(self):
        doc = Document.from_sections("d", [("body", ["a b", "c d"])])
        ref = SummaryText.from_raw_sentences(["a b", "c d"])
        assert compression(CorpusRecord(doc, ref)) == (1.0, 1.0)


class TestRedundancy:
    def test_duplicate_pair(self):
        assert redundancy(SummaryText.from_raw_sentences(["a b c", "a b c"])) == 1.0

    def test_disjoint_pair(self):
        assert redundancy(SummaryText.from_raw_sentences(["a b", "c d"])) == 0.0

    def test_singleton_undefined(self):
        assert redundancy(SummaryText.from_raw_sentences(["a b"])) is None


class TestRake:
    def test_degree_frequency_scoring(self):
        text = SummaryText.from_raw_sentences(["red apples and green apples"])
        keywords = rake_keywords(text, 2)
        assert [list(k.phrase) for k in keywords] == [
            ["red", "apples"],
            ["green", "apples"],
        ]
        assert [k.score for k in keywords] == [4.0, 4.0]

    def test_empty_text(self):
        assert rake_keywords(SummaryText.from_raw_sentences([]), 3) == []

    def test_k_larger_than_phrase_count(self):
        text = SummaryText.from_raw_sentences(["red apples and green pears"])
        assert len(rake_keywords(text, 10)) == 2

    def test_punctuation_breaks_phrases(self):
        text = SummaryText.from_raw_sentences(["red apples, green pears"])
        phrases = [list(k.phrase) for k in rake_keywords(text, 10)]
        assert ["red", "apples"] in phrases
        assert ["green", "pears"] in phrases

    def test_no_stopwords_inside_phrases(self):
        text = SummaryText.from_raw_sentences(
            ["the fast red fox ran over the lazy dog and the cat"]
        )
        from sumscope.stopwords import DEFAULT_STOPWORDS

        for keyword in rake_keywords(text, 10):
            assert not set(keyword.phrase) & DEFAULT_STOPWORDS

    def test_phrase_length_cap(self):
        text = SummaryText.from_raw_sentences(["alpha beta gamma delta epsilon zeta"])
        for keyword in rake_keywords(text, 10, max_phrase_len=4):
            assert len(keyword.phrase) <= 4


def _doc_with_keyword_positions(positions, n=100):
    tokens = [f"filler{i}" for i in range(n)]
    for p in positions:
        tokens[p] = "zebra"
    return Document.from_sections("u", [("body", [" ".join(tokens)])])


ZEBRA_REF = SummaryText.from_raw_sentences(["zebra"])


class TestUniformity:
    def test_single_decile_mass(self):
        assert uniformity(_doc_with_keyword_positions([0, 3, 7]), ZEBRA_REF) == 0.0

    def test_uniform_mass(self):
        value = uniformity(
            _doc_with_keyword_positions([5, 15, 25, 35, 45, 55, 65, 75, 85, 95]),
            ZEBRA_REF,
        )
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_two_decile_even_split(self):
        value = uniformity(_doc_with_keyword_positions([1, 2, 51, 52]), ZEBRA_REF)
        assert value == pytest.approx(math.log(2) / math.log(10), abs=1e-9)

    def test_no_salient_occurrence(self):
        doc = Document.from_sections("u", [("body", ["nothing shared here"])])
        assert uniformity(doc, ZEBRA_REF) is None

    def test_within_decile_permutation_invariance(self):
        a = uniformity(_doc_with_keyword_positions([0, 1, 52, 53]), ZEBRA_REF)
        b = uniformity(_doc_with_keyword_positions([8, 9, 57, 58]), ZEBRA_REF)
        assert a == pytest.approx(b, abs=1e-12)

    def test_range_whenever_defined(self):
        rng = random.Random(3)
        for _ in range(100):
            positions = sorted(rng.sample(range(100), rng.randrange(1, 20)))
            value = uniformity(_doc_with_keyword_positions(positions), ZEBRA_REF)
            assert value is not None
            assert 0.0 <= value <= 1.0 + 1e-12


class TestPearson:
    def test_perfect_positive(self):
        assert pearson([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == pytest.approx(1.0)

    def test_perfect_negative(self):
        assert pearson([1.0, 2.0, 3.0], [-1.0, -2.0, -3.0]) == pytest.approx(-1.0)

    def test_hand_computed(self):
        assert pearson([1.0, 2.0, 3.0], [1.0, 2.0, 2.0]) == pytest.approx(
            math.sqrt(3) / 2, abs=1e-12
        )

    def test_affine_invariance(self):
        rng = random.Random(23)
        for _ in range(100):
            xs = [rng.uniform(-5, 5) for _ in range(10)]
            ys = [rng.uniform(-5, 5) for _ in range(10)]
            base = pearson(xs, ys)
            scaled = pearson([3.0 * x + 7.0 for x in xs], ys)
            assert scaled == pytest.approx(base, abs=1e-9)
            assert abs(base) <= 1.0

    def test_constant_input(self):
        with pytest.raises(DegenerateInput):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_too_short(self):
        with pytest.raises(DegenerateInput):
            pearson([1.0], [2.0])

    def test_length_mismatch(self):
        with pytest.raises(DegenerateInput):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])


class TestDataMetrics:
    def test_identity_pair(self):
        doc = Document.from_sections("d", [("body", ["alpha beta gamma delta"])])
        ref = SummaryText.from_raw_sentences(["alpha beta gamma delta"])
        metrics = data_metrics(CorpusRecord(doc, ref))
        assert metrics.coverage == 1.0
        assert metrics.density == 4.0
        assert metrics.compression_token == 1.0
        assert metrics.redundancy is None


class TestPorter:
    @pytest.mark.parametrize(
        "word,expected",
        [
            ("caresses", "caress"),
            ("ponies", "poni"),
            ("cats", "cat"),
            ("motoring", "motor"),
            ("hopping", "hop"),
            ("happy", "happi"),
            ("relational", "relat"),
            ("generalization", "gener"),
        ],
    )
    def test_known_stems(self, word, expected):
        assert porter.stem(word) == expected
