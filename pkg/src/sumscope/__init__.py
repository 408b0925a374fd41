"""Summarization corpus analytics and extractive summarization toolkit."""

from .corpus import (
    CorpusRecord,
    Document,
    Section,
    Sentence,
    SummaryText,
    doc_stats,
    parse_corpus_line,
    record_to_json,
    segment_sentences,
    tokenize,
)
from .evaldim import (
    EvalReport,
    informativeness,
    relevance_rouge,
    relevance_soft,
    semantic_coherence,
)
from .graphsum import (
    CentralityConfig,
    CentralityScores,
    boundary_distance,
    centrality,
    extract_summary,
    inter_centrality,
    intra_centrality,
    tune,
)
from .lexical import (
    DataMetrics,
    Fragment,
    FragmentSet,
    Keyword,
    RougeScore,
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
from .oracle import OracleConfig, greedy_oracle
from .profile import (
    MetricRecord,
    ProfileReport,
    compute_metric_record,
    correlation_matrix,
    emit_report,
    profile_corpus,
)
from .vectorize import (
    EmbeddingTable,
    TfidfModel,
    cosine,
    fit_tfidf,
    load_embeddings,
    tfidf_vector,
    truncated_svd,
)

__version__ = "0.1.0"
