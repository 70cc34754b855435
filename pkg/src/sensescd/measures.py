"""Divergence and distance measures over aligned sense-distribution pairs.

All values are in nats where a logarithm is involved. KL applies additive
epsilon smoothing (then renormalizes) because a sense present in only one
corpus would otherwise make it infinite; JS needs no smoothing since its
midpoint mixture dominates both arguments.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import AlignedPair
from .errors import ValidationError

MEASURE_NAMES = ("kl", "js", "bray_curtis", "canberra", "chebyshev", "cosine", "euclidean")


@dataclass(frozen=True)
class SmoothingConfig:
    epsilon: float = 1e-10

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")


def _vectors(pair: AlignedPair) -> tuple[np.ndarray, np.ndarray]:
    p1 = np.asarray(pair.p1, dtype=np.float64)
    p2 = np.asarray(pair.p2, dtype=np.float64)
    if not (np.all(np.isfinite(p1)) and np.all(np.isfinite(p2))):
        raise ValidationError("non-finite component in distribution pair")
    return p1, p2


def kl(pair: AlignedPair, smoothing: SmoothingConfig = SmoothingConfig()) -> float:
    p1, p2 = _vectors(pair)
    q1 = p1 + smoothing.epsilon
    q2 = p2 + smoothing.epsilon
    q1 /= q1.sum()
    q2 /= q2.sum()
    return float(np.sum(q1 * np.log(q1 / q2)))


def js(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    q = 0.5 * (p1 + p2)

    def _half(p):
        mask = p > 0
        return np.sum(p[mask] * np.log(p[mask] / q[mask]))

    return float(0.5 * _half(p1) + 0.5 * _half(p2))


def bray_curtis(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    return float(np.sum(np.abs(p1 - p2)) / np.sum(np.abs(p1 + p2)))


def canberra(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    num = np.abs(p1 - p2)
    den = np.abs(p1) + np.abs(p2)
    mask = den > 0
    return float(np.sum(num[mask] / den[mask]))


def chebyshev(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    return float(np.max(np.abs(p1 - p2)))


def cosine(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    n1 = np.linalg.norm(p1)
    n2 = np.linalg.norm(p2)
    if n1 == 0 or n2 == 0:
        raise ValidationError("cosine distance undefined for a zero vector")
    return float(1.0 - np.dot(p1, p2) / (n1 * n2))


def euclidean(pair: AlignedPair) -> float:
    p1, p2 = _vectors(pair)
    return float(np.linalg.norm(p1 - p2))


_DISPATCH = {
    "kl": kl,
    "js": js,
    "bray_curtis": bray_curtis,
    "canberra": canberra,
    "chebyshev": chebyshev,
    "cosine": cosine,
    "euclidean": euclidean,
}


def compare(pair: AlignedPair, measure: str,
            smoothing: SmoothingConfig = SmoothingConfig()) -> float:
    """Dispatch to the named measure."""
    if measure not in _DISPATCH:
        raise ValidationError(f"unknown measure {measure!r}; choose from {MEASURE_NAMES}")
    if measure == "kl":
        return kl(pair, smoothing)
    return _DISPATCH[measure](pair)
