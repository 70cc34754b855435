"""Classification accuracy and Spearman rank correlation against gold annotations."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import UndefinedMetricError, ValidationError


@dataclass
class GoldAnnotations:
    binary: dict[str, str] = field(default_factory=dict)   # lemma -> changed|stable
    graded: dict[str, float] = field(default_factory=dict)  # lemma -> rating


def load_gold(path, lemma_col: int = 0, binary_col: int | None = 1,
              graded_col: int | None = 2) -> GoldAnnotations:
    """Read a TSV gold file with configurable column positions.

    The default layout is lemma<TAB>binary<TAB>graded; SemEval-style two-column
    files map by pointing the absent column index at None. Binary values may
    be changed/stable or 1/0.
    """
    gold = GoldAnnotations()
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            cols = line.rstrip("\n").split("\t")
            lemma = cols[lemma_col]
            if binary_col is not None and binary_col < len(cols):
                raw = cols[binary_col].strip()
                if raw in ("changed", "1"):
                    gold.binary[lemma] = "changed"
                elif raw in ("stable", "0"):
                    gold.binary[lemma] = "stable"
                else:
                    raise ValidationError(f"{path}: bad binary label {raw!r} at line {line_no}")
            if graded_col is not None and graded_col < len(cols):
                gold.graded[lemma] = float(cols[graded_col])
    return gold


def accuracy(labels: dict[str, str], gold_binary: dict[str, str]) -> float:
    """Fraction of matching labels over the lemmas present in both maps."""
    overlap = [w for w in labels if w in gold_binary]
    if not overlap:
        raise ValidationError("no overlapping lemmas between predictions and gold")
    dropped = len(labels) - len(overlap)
    if dropped:
        warnings.warn(f"{dropped} predicted lemmas missing from gold were dropped")
    return sum(labels[w] == gold_binary[w] for w in overlap) / len(overlap)


def fractional_ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks with ties assigned the mean of the ranks they span."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(scores: dict[str, float], gold_graded: dict[str, float]) -> float:
    """Spearman's rho: Pearson correlation of fractional ranks over the overlap."""
    overlap = sorted(w for w in scores if w in gold_graded)
    if len(overlap) < 2:
        raise ValidationError("need >= 2 overlapping lemmas for rank correlation")
    x = fractional_ranks(np.asarray([scores[w] for w in overlap]))
    y = fractional_ranks(np.asarray([gold_graded[w] for w in overlap]))
    dx = x - x.mean()
    dy = y - y.mean()
    vx = np.sum(dx * dx)
    vy = np.sum(dy * dy)
    if vx == 0 or vy == 0:
        raise UndefinedMetricError("rank correlation undefined: zero rank variance")
    return float(np.sum(dx * dy) / np.sqrt(vx * vy))


@dataclass
class EvaluationReport:
    accuracy: float | None
    spearman_rho: float | None
    n_classified: int
    n_ranked: int
    spearman_status: str = "ok"


def evaluate(labels: dict[str, str], scores: dict[str, float],
             gold: GoldAnnotations) -> EvaluationReport:
    """Compute both subtask metrics over whatever gold data is available."""
    acc = None
    n_classified = 0
    if labels and gold.binary:
        n_classified = len([w for w in labels if w in gold.binary])
        acc = accuracy(labels, gold.binary)
    rho = None
    status = "ok"
    n_ranked = len([w for w in scores if w in gold.graded]) if gold.graded else 0
    if scores and gold.graded:
        try:
            rho = spearman(scores, gold.graded)
        except UndefinedMetricError:
            status = "undefined_zero_variance"
    return EvaluationReport(accuracy=acc, spearman_rho=rho,
                            n_classified=n_classified, n_ranked=n_ranked,
                            spearman_status=status)
