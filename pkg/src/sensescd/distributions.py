"""Corpus-level sense distributions and support alignment."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NoOccurrencesError, ValidationError
from .wsd import OccurrenceSenseProbs


@dataclass
class SenseDistribution:
    """Mean of per-occurrence sense probabilities over one lemma in one corpus."""

    lemma: str
    corpus_id: str
    probs: dict[str, float]
    occurrence_count: int


@dataclass
class AlignedPair:
    """Two distributions expressed over the sorted union of their supports."""

    support: list[str]
    p1: np.ndarray
    p2: np.ndarray


def aggregate(occ_probs: Iterable[OccurrenceSenseProbs],
              lemma: str, corpus_id: str) -> SenseDistribution:
    """Average per-occurrence distributions into one corpus-level distribution.

    The per-sentence weight is uniform over the occurrences of the lemma, so
    the mean is again a proper distribution. An empty stream raises
    NoOccurrencesError rather than inventing a uniform prior.
    """
    sums: dict[str, float] = {}
    n = 0
    for rec in occ_probs:
        if rec.lemma != lemma:
            raise ValidationError(f"lemma mismatch: expected {lemma!r}, got {rec.lemma!r}")
        for sid, p in rec.probs.items():
            sums[sid] = sums.get(sid, 0.0) + p
        n += 1
    if n == 0:
        raise NoOccurrencesError(f"lemma {lemma!r} has no occurrences in corpus {corpus_id!r}")
    probs = {sid: total / n for sid, total in sums.items()}
    return SenseDistribution(lemma=lemma, corpus_id=corpus_id, probs=probs, occurrence_count=n)


def merge(shards: Iterable[SenseDistribution]) -> SenseDistribution:
    """Combine partial aggregates with occurrence-count weights.

    Equals aggregating the undivided stream, which makes sharded parallel
    reduction safe.
    """
    shards = list(shards)
    if not shards:
        raise ValidationError("no shards to merge")
    lemma, corpus_id = shards[0].lemma, shards[0].corpus_id
    sums: dict[str, float] = {}
    n = 0
    for shard in shards:
        if shard.lemma != lemma or shard.corpus_id != corpus_id:
            raise ValidationError("shards must share lemma and corpus_id")
        for sid, p in shard.probs.items():
            sums[sid] = sums.get(sid, 0.0) + p * shard.occurrence_count
        n += shard.occurrence_count
    probs = {sid: total / n for sid, total in sums.items()}
    return SenseDistribution(lemma=lemma, corpus_id=corpus_id, probs=probs, occurrence_count=n)


def align(d1: SenseDistribution, d2: SenseDistribution) -> AlignedPair:
    """Express both distributions over the sorted union of their supports.

    Senses absent from one side get probability 0, so each vector keeps its
    original total mass exactly.
    """
    if d1.lemma != d2.lemma:
        raise ValidationError(f"lemma mismatch: {d1.lemma!r} vs {d2.lemma!r}")
    if d1.occurrence_count == 0 or d2.occurrence_count == 0:
        raise ValidationError("cannot align an empty distribution")
    support = sorted(set(d1.probs) | set(d2.probs))
    p1 = np.asarray([d1.probs.get(sid, 0.0) for sid in support])
    p2 = np.asarray([d2.probs.get(sid, 0.0) for sid in support])
    return AlignedPair(support=support, p1=p1, p2=p2)
