"""mtqual: automatic and human evaluation of machine translation output.

Scores candidate translations against references with BLEU, NIST, GTM,
METEOR and TER at sentence, document and corpus level, aggregates human
adequacy judgments (5-point scale, ten linguistic parameters), and
correlates the two to rank systems.
"""

from .corpus import (
    DEFAULT_POLICY,
    EvaluationSet,
    Segment,
    TokenizationPolicy,
    load_evaluation_set,
    make_segments,
    ngrams,
    read_segment_file,
    tokenize,
)
from .errors import (
    AlignmentError,
    CorrelationError,
    IngestionError,
    MTQualError,
    ScoringError,
    UndefinedPrecisionError,
)
from .human import (
    PARAMETER_LABELS,
    SCALE_LABELS,
    CorrelationReport,
    HumanRating,
    HumanScore,
    MetricCorrelation,
    aggregate_human,
    build_correlation_report,
    parameter_label,
    pearson,
    rank_systems,
    read_ratings_csv,
    scale_label,
    spearman,
    write_ratings_csv,
)
from .metrics import (
    Alignment,
    BleuConfig,
    BleuScore,
    EditTrace,
    GtmScore,
    InfoWeightTable,
    MeteorConfig,
    MeteorScore,
    NistScore,
    SynonymLexicon,
    TerScore,
    align,
    bleu_score,
    brevity_penalty,
    build_info_weights,
    gtm_score,
    maximum_match_size,
    meteor_score,
    nist_score,
    ter_corpus,
    ter_score,
    word_edit_distance,
)
from .pipeline import (
    METRICS,
    MatrixCell,
    PipelineConfig,
    ScoreMatrix,
    render_report,
    run_matrix,
    sentence_series,
    system_scores,
)
from .stemmer import stem

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_POLICY", "EvaluationSet", "Segment", "TokenizationPolicy",
    "load_evaluation_set", "make_segments", "ngrams", "read_segment_file", "tokenize",
    "AlignmentError", "CorrelationError", "IngestionError", "MTQualError",
    "ScoringError", "UndefinedPrecisionError",
    "PARAMETER_LABELS", "SCALE_LABELS", "CorrelationReport", "HumanRating",
    "HumanScore", "MetricCorrelation", "aggregate_human", "build_correlation_report",
    "parameter_label", "pearson", "rank_systems", "read_ratings_csv", "scale_label",
    "spearman", "write_ratings_csv",
    "Alignment", "BleuConfig", "BleuScore", "EditTrace", "GtmScore",
    "InfoWeightTable", "MeteorConfig", "MeteorScore", "NistScore", "SynonymLexicon",
    "TerScore", "align", "bleu_score", "build_info_weights", "gtm_score",
    "maximum_match_size", "meteor_score", "nist_score", "ter_corpus", "ter_score",
    "word_edit_distance",
    "METRICS", "MatrixCell", "PipelineConfig", "ScoreMatrix", "render_report",
    "run_matrix", "sentence_series", "system_scores",
    "stem",
    "__version__",
]
