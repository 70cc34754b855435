"""End-to-end scoring: disambiguate, aggregate, compare, rank, classify."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .distributions import SenseDistribution, aggregate, align
from .errors import NoOccurrencesError, UnresolvableLemmaError, ValidationError
from .measures import SmoothingConfig, compare
from .occurrences import OccurrenceEmbedding, OccurrenceFile
from .sense_store import SenseEmbeddings, SenseInventory, resolvable_senses
from .wsd import WsdConfig, disambiguate

STATUS_SCORED = "scored"
STATUS_ONE_SIDED = "one_sided"
STATUS_UNRESOLVABLE = "unresolvable"


@dataclass
class TargetWordResult:
    lemma: str
    score: float | None
    status: str
    occurrence_counts: tuple[int, int]
    distributions: tuple[SenseDistribution, SenseDistribution] | None = None


@dataclass
class ChangeReport:
    measure: str
    k: int
    results: list[TargetWordResult]
    ranking: list[str]
    labels: dict[str, str] = field(default_factory=dict)


def score_target(lemma: str,
                 occs1: list[OccurrenceEmbedding],
                 occs2: list[OccurrenceEmbedding],
                 inventory: SenseInventory,
                 embeddings: SenseEmbeddings,
                 wsd_config: WsdConfig = WsdConfig(),
                 measure: str = "js",
                 smoothing: SmoothingConfig = SmoothingConfig()) -> TargetWordResult:
    """Score one lemma's change between two corpora.

    Missing evidence comes back as a status (one_sided / unresolvable), not an
    exception, so a batch run can always produce a complete report.
    """
    counts = (len(occs1), len(occs2))
    if not resolvable_senses(lemma, inventory, embeddings):
        return TargetWordResult(lemma, None, STATUS_UNRESOLVABLE, counts)
    if not occs1 or not occs2:
        return TargetWordResult(lemma, None, STATUS_ONE_SIDED, counts)
    try:
        d1 = aggregate((disambiguate(o, inventory, embeddings, wsd_config) for o in occs1),
                       lemma, occs1[0].corpus_id)
        d2 = aggregate((disambiguate(o, inventory, embeddings, wsd_config) for o in occs2),
                       lemma, occs2[0].corpus_id)
    except UnresolvableLemmaError:
        return TargetWordResult(lemma, None, STATUS_UNRESOLVABLE, counts)
    except NoOccurrencesError:
        return TargetWordResult(lemma, None, STATUS_ONE_SIDED, counts)
    score = compare(align(d1, d2), measure, smoothing)
    return TargetWordResult(lemma, score, STATUS_SCORED, counts, (d1, d2))


def rank_targets(results: list[TargetWordResult]) -> list[str]:
    """Lemmas in descending score order; ties break by ascending lemma."""
    scored = [r for r in results if r.status == STATUS_SCORED]
    if not scored:
        raise ValidationError("no scored results to rank")
    return [r.lemma for r in sorted(scored, key=lambda r: (-r.score, r.lemma))]


def classify(results: list[TargetWordResult], threshold: float) -> dict[str, str]:
    """Label each lemma changed/stable by strict score > threshold.

    Lemmas without a score get 'stable': with no two-sided evidence this
    method cannot claim a change, and every target needs a label.
    """
    labels = {}
    for r in results:
        if r.status == STATUS_SCORED:
            labels[r.lemma] = "changed" if r.score > threshold else "stable"
        else:
            labels[r.lemma] = "stable"
    return labels


def score_corpora(targets: list[str],
                  file1: OccurrenceFile,
                  file2: OccurrenceFile,
                  inventory: SenseInventory,
                  embeddings: SenseEmbeddings,
                  wsd_config: WsdConfig = WsdConfig(),
                  measure: str = "js",
                  smoothing: SmoothingConfig = SmoothingConfig(),
                  workers: int = 1,
                  threshold: float | None = None) -> ChangeReport:
    """Score every target lemma across two occurrence files.

    Lemmas run independently in a worker pool; the report is assembled in a
    fixed lemma order, so output is identical for any worker count.
    """
    by_lemma1: dict[str, list[OccurrenceEmbedding]] = {t: [] for t in targets}
    by_lemma2: dict[str, list[OccurrenceEmbedding]] = {t: [] for t in targets}
    wanted = set(targets)
    for rec in file1.records:
        if rec.lemma in wanted:
            by_lemma1[rec.lemma].append(rec)
    for rec in file2.records:
        if rec.lemma in wanted:
            by_lemma2[rec.lemma].append(rec)

    def _one(lemma: str) -> TargetWordResult:
        return score_target(lemma, by_lemma1[lemma], by_lemma2[lemma],
                            inventory, embeddings, wsd_config, measure, smoothing)

    ordered = sorted(targets)
    if workers <= 1:
        results = [_one(t) for t in ordered]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one, ordered))

    ranking = rank_targets(results) if any(r.status == STATUS_SCORED for r in results) else []
    report = ChangeReport(measure=measure, k=wsd_config.k, results=results, ranking=ranking)
    if threshold is not None:
        report.labels = classify(results, threshold)
    return report


def _format_score(score: float | None) -> str:
    return "" if score is None else f"{score:.10f}"


def report_rows(report: ChangeReport) -> list[dict]:
    """Flatten a report into TSV-ready row dicts, scored lemmas first by rank."""
    rank_of = {lemma: i + 1 for i, lemma in enumerate(report.ranking)}
    ordered = sorted(report.results,
                     key=lambda r: (r.status != STATUS_SCORED, rank_of.get(r.lemma, 0), r.lemma))
    rows = []
    for r in ordered:
        rows.append({
            "lemma": r.lemma,
            "score": _format_score(r.score),
            "rank": str(rank_of.get(r.lemma, "")) if r.lemma in rank_of else "",
            "label": report.labels.get(r.lemma, ""),
            "n1": str(r.occurrence_counts[0]),
            "n2": str(r.occurrence_counts[1]),
            "status": r.status,
        })
    return rows


REPORT_COLUMNS = ("lemma", "score", "rank", "label", "n1", "n2", "status")


def write_report_tsv(report: ChangeReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\t".join(REPORT_COLUMNS) + "\n")
        for row in report_rows(report):
            f.write("\t".join(row[c] for c in REPORT_COLUMNS) + "\n")


def _dist_record(d: SenseDistribution) -> dict:
    return {
        "lemma": d.lemma,
        "corpus_id": d.corpus_id,
        "occurrence_count": d.occurrence_count,
        "probs": {sid: d.probs[sid] for sid in sorted(d.probs)},
    }


def write_report_json(report: ChangeReport, path, include_distributions: bool = False) -> None:
    payload = {
        "measure": report.measure,
        "k": report.k,
        "ranking": report.ranking,
        "labels": report.labels,
        "results": [],
    }
    for r in report.results:
        item = {
            "lemma": r.lemma,
            "score": r.score,
            "status": r.status,
            "n1": r.occurrence_counts[0],
            "n2": r.occurrence_counts[1],
        }
        if include_distributions and r.distributions is not None:
            item["distributions"] = [_dist_record(d) for d in r.distributions]
        payload["results"].append(item)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=False)
        f.write("\n")


def read_report_tsv(path) -> list[dict]:
    """Read back a TSV report into row dicts (scores parsed to float or None)."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        rows = []
        for line in f:
            values = line.rstrip("\n").split("\t")
            row = dict(zip(header, values))
            row["score"] = float(row["score"]) if row.get("score") else None
            rows.append(row)
    return rows
