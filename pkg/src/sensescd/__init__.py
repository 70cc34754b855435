"""Semantic change detection from word sense distributions.

Given occurrence embeddings from two corpora and a set of pre-trained static
sense embeddings, each occurrence of a target lemma is disambiguated by inner
product, the per-occurrence probabilities are averaged into per-corpus sense
distributions, and a divergence or distance measure over the two distributions
scores how much the lemma's meaning changed.
"""

__version__ = "0.1.0"

from .distributions import AlignedPair, SenseDistribution, aggregate, align, merge
from .errors import (
    FormatError,
    NoOccurrencesError,
    SenseScdError,
    UndefinedMetricError,
    UnresolvableLemmaError,
    ValidationError,
)
from .measures import MEASURE_NAMES, SmoothingConfig, compare
from .occurrences import CorpusInfo, OccurrenceEmbedding, OccurrenceFile, read_occurrences, write_occurrences
from .pipeline import ChangeReport, TargetWordResult, classify, rank_targets, score_corpora, score_target
from .sense_store import (
    SenseEmbeddings,
    SenseInventory,
    ValidationReport,
    load_inventory,
    load_sense_embeddings,
    validate_pair,
)
from .tuning import ThresholdConfig, ValidationItem, accuracy_at, tune
from .wsd import OccurrenceSenseProbs, WsdConfig, disambiguate, sense_scores, truncate_top_k
