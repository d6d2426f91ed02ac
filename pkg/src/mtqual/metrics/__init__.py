"""Automatic MT evaluation metrics: BLEU, NIST, GTM, METEOR, TER."""

from .bleu import BleuConfig, BleuScore, bleu_score, brevity_penalty, modified_precision
from .gtm import GtmScore, gtm_score, maximum_match_size
from .meteor import (
    Alignment,
    MeteorConfig,
    MeteorScore,
    SynonymLexicon,
    align,
    meteor_score,
)
from .nist import InfoWeightTable, NistScore, build_info_weights, nist_score
from .ter import EditTrace, TerScore, ter_corpus, ter_score, word_edit_distance

__all__ = [
    "BleuConfig", "BleuScore", "bleu_score", "brevity_penalty", "modified_precision",
    "GtmScore", "gtm_score", "maximum_match_size",
    "Alignment", "MeteorConfig", "MeteorScore", "SynonymLexicon", "align", "meteor_score",
    "InfoWeightTable", "NistScore", "build_info_weights", "nist_score",
    "EditTrace", "TerScore", "ter_corpus", "ter_score", "word_edit_distance",
]
