"""Matplotlib rendering of sense distributions and score rankings to files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .distributions import SenseDistribution  # noqa: E402
from .pipeline import ChangeReport, STATUS_SCORED  # noqa: E402


def plot_sense_distributions(d1: SenseDistribution, d2: SenseDistribution,
                             sense_order: list[str], out_path) -> None:
    """Side-by-side bar charts of one lemma's sense distribution per corpus."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.2), sharey=True)
    positions = range(len(sense_order))
    for ax, dist in zip(axes, (d1, d2)):
        ax.bar(positions, [dist.probs.get(s, 0.0) for s in sense_order], color="#4878a8")
        ax.set_title(f"{dist.lemma} in {dist.corpus_id} (n={dist.occurrence_count})", fontsize=10)
        ax.set_xticks(list(positions))
        ax.set_xticklabels([str(i + 1) for i in positions], fontsize=8)
        ax.set_xlabel("sense index")
    axes[0].set_ylabel("probability")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def plot_score_ranking(report: ChangeReport, out_path) -> None:
    """Horizontal bar chart of scored lemmas in rank order."""
    scored = {r.lemma: r.score for r in report.results if r.status == STATUS_SCORED}
    lemmas = list(reversed(report.ranking))
    scores = [scored[w] for w in lemmas]
    fig, ax = plt.subplots(figsize=(6, max(2.0, 0.3 * len(lemmas) + 1)))
    ax.barh(range(len(lemmas)), scores, color="#4878a8")
    ax.set_yticks(range(len(lemmas)))
    ax.set_yticklabels(lemmas, fontsize=8)
    ax.set_xlabel(f"{report.measure} score (k={report.k})")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
