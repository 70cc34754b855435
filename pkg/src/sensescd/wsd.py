"""Per-occurrence sense probabilities from inner products, with top-k truncation."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import UnresolvableLemmaError, ValidationError
from .occurrences import OccurrenceEmbedding
from .sense_store import SenseEmbeddings, SenseInventory, resolvable_senses


@dataclass(frozen=True)
class WsdConfig:
    """Knobs for occurrence-level disambiguation.

    k: number of top-ranked senses retained per occurrence.
    score_mode: 'clamp_normalize' keeps the linear normalization of raw inner
        products with negatives clamped to 0; 'softmax' exponentiates instead.
    normalize_vectors: L2-normalize both sides before the inner product.
    """

    k: int = 2
    score_mode: str = "clamp_normalize"
    normalize_vectors: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        if self.score_mode not in ("clamp_normalize", "softmax"):
            raise ValidationError(f"unknown score_mode {self.score_mode!r}")


@dataclass
class OccurrenceSenseProbs:
    """Normalized sense distribution for one occurrence."""

    lemma: str
    sentence_index: int
    probs: dict[str, float]


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max()
    e = np.exp(shifted)
    return e / e.sum()


def sense_scores(f: np.ndarray, candidates: list[tuple[str, np.ndarray]],
                 config: WsdConfig = WsdConfig(),
                 lemma: str = "", sentence_index: int = 0) -> OccurrenceSenseProbs:
    """Score each candidate sense by its inner product with the occurrence vector.

    Under clamp_normalize, negative products are clamped to 0 before linear
    normalization; if every product is <= 0 the scores fall back to a softmax
    so the result is always a valid distribution.
    """
    if not candidates:
        raise ValidationError("empty candidate list")
    f = np.asarray(f, dtype=np.float64)
    mat = np.stack([np.asarray(v, dtype=np.float64) for _, v in candidates])
    if mat.shape[1] != f.shape[0]:
        raise ValidationError(
            f"dimension mismatch: occurrence has {f.shape[0]}, senses have {mat.shape[1]}"
        )
    if config.normalize_vectors:
        f = f / max(np.linalg.norm(f), 1e-30)
        norms = np.maximum(np.linalg.norm(mat, axis=1), 1e-30)
        mat = mat / norms[:, None]
    raw = mat @ f
    if config.score_mode == "softmax":
        probs = _softmax(raw)
    else:
        clamped = np.maximum(raw, 0.0)
        total = clamped.sum()
        probs = clamped / total if total > 0 else _softmax(raw)
    return OccurrenceSenseProbs(
        lemma=lemma,
        sentence_index=sentence_index,
        probs={sid: float(p) for (sid, _), p in zip(candidates, probs)},
    )


def truncate_top_k(p: OccurrenceSenseProbs, k: int) -> OccurrenceSenseProbs:
    """Keep only the k most probable senses and renormalize.

    Ties at the k-th rank break by ascending lexicographic sense id; dropped
    senses keep an explicit 0 so the support stays visible downstream.
    """
    if k >= len(p.probs):
        return p
    order = sorted(p.probs, key=lambda sid: (-p.probs[sid], sid))
    kept = order[:k]
    mass = sum(p.probs[sid] for sid in kept)
    probs = {sid: (p.probs[sid] / mass if sid in kept else 0.0) for sid in p.probs}
    return replace(p, probs=probs)


def disambiguate(occ: OccurrenceEmbedding, inventory: SenseInventory,
                 embeddings: SenseEmbeddings, config: WsdConfig = WsdConfig()) -> OccurrenceSenseProbs:
    """Full per-occurrence disambiguation: inner-product scores then top-k."""
    senses = resolvable_senses(occ.lemma, inventory, embeddings)
    if not senses:
        raise UnresolvableLemmaError(f"no sense embeddings available for lemma {occ.lemma!r}")
    candidates = [(sid, embeddings.vectors[sid]) for sid in senses]
    scored = sense_scores(occ.vector, candidates, config,
                          lemma=occ.lemma, sentence_index=occ.sentence_index)
    return truncate_top_k(scored, config.k)
