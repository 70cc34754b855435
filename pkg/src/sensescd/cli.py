"""Command-line entry point.

Subcommands: score, rank, classify, tune, evaluate, dump-distributions,
validate. A key=value config file may supply any flag; explicit flags win.

Exit codes: 0 success, 1 computation error, 2 usage or input-validation error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import evaluation, pipeline, plots, tuning
from .errors import SenseScdError
from .measures import MEASURE_NAMES, SmoothingConfig
from .occurrences import read_occurrences
from .sense_store import load_inventory, load_sense_embeddings, validate_pair
from .wsd import WsdConfig


class UsageError(Exception):
    """Invalid flags or unusable input paths; maps to exit code 2."""


DEFAULTS = {
    "measure": "js",
    "k": 2,
    "epsilon": 1e-10,
    "score_mode": "clamp_normalize",
    "normalize_vectors": False,
    "seed": 42,
    "workers": 1,
    "repeats": 5,
    "trials": 50,
    "out_dir": ".",
    "embeddings_format": None,
    "threshold": None,
    "thresholds_json": None,
    "lemma_col": 0,
    "binary_col": 1,
    "graded_col": 2,
    "dump_distributions": False,
    "figures": False,
    "lemmas": None,
}

_BOOL_KEYS = {"normalize_vectors", "dump_distributions", "figures"}
_INT_KEYS = {"k", "seed", "workers", "repeats", "trials", "lemma_col", "binary_col", "graded_col"}
_FLOAT_KEYS = {"epsilon", "threshold"}


def _load_config_file(path) -> dict:
    if not os.path.isfile(path):
        raise UsageError(f"--config: file not found: {path}")
    values = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"--config: line {line_no} is not key=value: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key in _BOOL_KEYS:
                values[key] = value.lower() in ("1", "true", "yes")
            elif key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            else:
                values[key] = value
    return values


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Layer builtin defaults < config file < explicit flags."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_load_config_file(args.config))
    for key, value in vars(args).items():
        if value is not None:
            merged[key] = value
        elif key not in merged:
            merged[key] = None
    return argparse.Namespace(**merged)


def _require_file(path, flag: str):
    if not path:
        raise UsageError(f"{flag} is required")
    if not os.path.isfile(path):
        raise UsageError(f"{flag}: file not found: {path}")
    return path


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file supplying any flag (flags override)")
    p.add_argument("--out-dir", dest="out_dir", help="output directory (default .)")
    p.add_argument("--seed", type=int, help="base random seed (default 42)")


def _add_scoring_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--occurrences1", help="SSCD occurrence file for the earlier corpus")
    p.add_argument("--occurrences2", help="SSCD occurrence file for the later corpus")
    p.add_argument("--embeddings", help="sense embedding file (text or SSEB binary)")
    p.add_argument("--embeddings-format", dest="embeddings_format",
                   choices=["text", "binary"], help="force the embedding format")
    p.add_argument("--inventory", help="JSONL sense inventory")
    p.add_argument("--targets", help="optional newline-separated target lemma list; "
                                     "default: every inventory lemma present in either corpus")
    p.add_argument("--measure", choices=list(MEASURE_NAMES))
    p.add_argument("--k", type=int, help="top-k senses per occurrence (default 2)")
    p.add_argument("--epsilon", type=float, help="KL smoothing epsilon (default 1e-10)")
    p.add_argument("--score-mode", dest="score_mode",
                   choices=["clamp_normalize", "softmax"])
    p.add_argument("--normalize-vectors", dest="normalize_vectors",
                   action="store_true", default=None,
                   help="L2-normalize vectors before the inner product")
    p.add_argument("--workers", type=int, help="worker threads (default 1)")
    p.add_argument("--threshold", type=float, help="classification threshold")
    p.add_argument("--thresholds-json", dest="thresholds_json",
                   help="tuned threshold JSON (overridden by --threshold)")
    p.add_argument("--figures", action="store_true", default=None,
                   help="render matplotlib figures next to the reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensescd",
                                     description="Semantic change detection from sense distributions")
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score all targets, write TSV + JSON reports")
    _add_scoring_inputs(p_score)
    p_score.add_argument("--dump-distributions", dest="dump_distributions",
                         action="store_true", default=None,
                         help="embed per-corpus sense distributions in the JSON report")
    _add_common(p_score)

    p_rank = sub.add_parser("rank", help="score and emit ranking-only TSV")
    _add_scoring_inputs(p_rank)
    _add_common(p_rank)

    p_classify = sub.add_parser("classify", help="score and label with a threshold")
    _add_scoring_inputs(p_classify)
    _add_common(p_classify)

    p_tune = sub.add_parser("tune", help="tune a classification threshold on scored data")
    p_tune.add_argument("--report", help="TSV report produced by the score subcommand")
    p_tune.add_argument("--gold", help="gold TSV (lemma, binary label, graded score)")
    p_tune.add_argument("--measure", choices=list(MEASURE_NAMES))
    p_tune.add_argument("--repeats", type=int, help="tuning repeats (default 5)")
    p_tune.add_argument("--trials", type=int, help="trials per repeat (default 50)")
    p_tune.add_argument("--lemma-col", dest="lemma_col", type=int)
    p_tune.add_argument("--binary-col", dest="binary_col", type=int)
    p_tune.add_argument("--graded-col", dest="graded_col", type=int)
    p_tune.add_argument("--out", help="output JSON path (default <out-dir>/thresholds.json)")
    _add_common(p_tune)

    p_eval = sub.add_parser("evaluate", help="accuracy and Spearman's rho against gold")
    p_eval.add_argument("--report", help="TSV report produced by score/classify")
    p_eval.add_argument("--gold", help="gold TSV (lemma, binary label, graded score)")
    p_eval.add_argument("--lemma-col", dest="lemma_col", type=int)
    p_eval.add_argument("--binary-col", dest="binary_col", type=int)
    p_eval.add_argument("--graded-col", dest="graded_col", type=int)
    p_eval.add_argument("--out", help="output JSON path (default <out-dir>/evaluation.json)")
    _add_common(p_eval)

    p_dump = sub.add_parser("dump-distributions",
                            help="per-lemma per-corpus sense distributions (JSONL + TSV)")
    _add_scoring_inputs(p_dump)
    p_dump.add_argument("--lemmas", nargs="+", help="lemmas to dump (default: all scored)")
    _add_common(p_dump)

    p_val = sub.add_parser("validate", help="cross-check inventory against embeddings")
    p_val.add_argument("--embeddings")
    p_val.add_argument("--embeddings-format", dest="embeddings_format",
                       choices=["text", "binary"])
    p_val.add_argument("--inventory")
    _add_common(p_val)

    return parser


def _load_scoring_inputs(args):
    occ1 = read_occurrences(_require_file(args.occurrences1, "--occurrences1"))
    occ2 = read_occurrences(_require_file(args.occurrences2, "--occurrences2"))
    embeddings = load_sense_embeddings(_require_file(args.embeddings, "--embeddings"),
                                       args.embeddings_format)
    inventory = load_inventory(_require_file(args.inventory, "--inventory"))
    if getattr(args, "targets", None):
        with open(_require_file(args.targets, "--targets"), "r", encoding="utf-8") as f:
            targets = [line.strip() for line in f if line.strip()]
    else:
        present = set(occ1.info.occurrence_counts) | set(occ2.info.occurrence_counts)
        targets = [w for w in inventory.entries if w in present]
    if not targets:
        raise UsageError("no target lemmas: none of the inventory lemmas occur in either corpus")
    return occ1, occ2, embeddings, inventory, targets


def _resolve_threshold(args) -> float | None:
    if args.threshold is not None:
        return args.threshold
    if args.thresholds_json:
        return tuning.ThresholdConfig.from_json(
            _require_file(args.thresholds_json, "--thresholds-json")).threshold
    return None


def _run_scoring(args) -> pipeline.ChangeReport:
    occ1, occ2, embeddings, inventory, targets = _load_scoring_inputs(args)
    wsd_config = WsdConfig(k=args.k, score_mode=args.score_mode,
                           normalize_vectors=args.normalize_vectors)
    return pipeline.score_corpora(
        targets, occ1, occ2, inventory, embeddings,
        wsd_config=wsd_config, measure=args.measure,
        smoothing=SmoothingConfig(epsilon=args.epsilon),
        workers=args.workers, threshold=_resolve_threshold(args))


def cmd_score(args) -> int:
    report = _run_scoring(args)
    os.makedirs(args.out_dir, exist_ok=True)
    tsv_path = os.path.join(args.out_dir, "report.tsv")
    json_path = os.path.join(args.out_dir, "report.json")
    pipeline.write_report_tsv(report, tsv_path)
    pipeline.write_report_json(report, json_path,
                               include_distributions=args.dump_distributions)
    if args.figures:
        plots.plot_score_ranking(report, os.path.join(args.out_dir, "scores.png"))
    print(f"scored {len(report.ranking)} of {len(report.results)} targets "
          f"({report.measure}, k={report.k}) -> {tsv_path}")
    return 0


def cmd_rank(args) -> int:
    report = _run_scoring(args)
    os.makedirs(args.out_dir, exist_ok=True)
    out_path = os.path.join(args.out_dir, "ranking.tsv")
    scored = {r.lemma: r.score for r in report.results if r.status == pipeline.STATUS_SCORED}
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("lemma\trank\tscore\n")
        for i, lemma in enumerate(report.ranking, start=1):
            f.write(f"{lemma}\t{i}\t{scored[lemma]:.10f}\n")
    if args.figures:
        plots.plot_score_ranking(report, os.path.join(args.out_dir, "scores.png"))
    print(f"ranked {len(report.ranking)} targets -> {out_path}")
    return 0


def cmd_classify(args) -> int:
    if _resolve_threshold(args) is None:
        raise UsageError("classify needs --threshold or --thresholds-json")
    return cmd_score(args)


def cmd_tune(args) -> int:
    rows = pipeline.read_report_tsv(_require_file(args.report, "--report"))
    gold = evaluation.load_gold(_require_file(args.gold, "--gold"),
                                args.lemma_col, args.binary_col, None)
    validation = [
        tuning.ValidationItem(row["lemma"], row["score"], gold.binary[row["lemma"]])
        for row in rows
        if row["score"] is not None and row["lemma"] in gold.binary
    ]
    config = tuning.tune(validation, measure=args.measure,
                         repeats=args.repeats, trials_per_repeat=args.trials,
                         base_seed=args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    out_path = args.out or os.path.join(args.out_dir, "thresholds.json")
    config.to_json(out_path)
    print(f"threshold {config.threshold:.6f} "
          f"(validation accuracy {config.validation_accuracy:.3f}) -> {out_path}")
    return 0


def cmd_evaluate(args) -> int:
    rows = pipeline.read_report_tsv(_require_file(args.report, "--report"))
    gold = evaluation.load_gold(_require_file(args.gold, "--gold"),
                                args.lemma_col, args.binary_col, args.graded_col)
    labels = {row["lemma"]: row["label"] for row in rows if row.get("label")}
    scores = {row["lemma"]: row["score"] for row in rows if row["score"] is not None}
    report = evaluation.evaluate(labels, scores, gold)
    os.makedirs(args.out_dir, exist_ok=True)
    out_path = args.out or os.path.join(args.out_dir, "evaluation.json")
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        json.dump({
            "accuracy": report.accuracy,
            "spearman_rho": report.spearman_rho,
            "spearman_status": report.spearman_status,
            "n_classified": report.n_classified,
            "n_ranked": report.n_ranked,
        }, f, indent=2)
        f.write("\n")
    if report.accuracy is not None:
        print(f"accuracy {report.accuracy:.3f} over {report.n_classified} words")
    if report.spearman_rho is not None:
        print(f"spearman_rho {report.spearman_rho:.3f} over {report.n_ranked} words")
    elif report.spearman_status != "ok":
        print(f"spearman_rho undefined ({report.spearman_status})")
    return 0


def cmd_dump_distributions(args) -> int:
    occ1, occ2, embeddings, inventory, targets = _load_scoring_inputs(args)
    lemmas = args.lemmas or targets
    unknown = [w for w in lemmas if w not in inventory]
    if unknown:
        raise UsageError(f"unknown lemma(s) {unknown}; inventory has {len(inventory)} lemmas")
    wsd_config = WsdConfig(k=args.k, score_mode=args.score_mode,
                           normalize_vectors=args.normalize_vectors)
    os.makedirs(args.out_dir, exist_ok=True)
    jsonl_path = os.path.join(args.out_dir, "distributions.jsonl")
    tsv_path = os.path.join(args.out_dir, "distributions.tsv")
    written = 0
    with open(jsonl_path, "w", encoding="utf-8", newline="\n") as jf, \
         open(tsv_path, "w", encoding="utf-8", newline="\n") as tf:
        tf.write("lemma\tcorpus_id\tsense_id\tprobability\n")
        for lemma in lemmas:
            result = pipeline.score_target(
                lemma, occ1.for_lemma(lemma), occ2.for_lemma(lemma),
                inventory, embeddings, wsd_config, args.measure,
                SmoothingConfig(epsilon=args.epsilon))
            if result.distributions is None:
                print(f"skipping {lemma}: {result.status}", file=sys.stderr)
                continue
            inv_order = inventory.senses(lemma)
            for dist in result.distributions:
                record = {
                    "lemma": dist.lemma,
                    "corpus_id": dist.corpus_id,
                    "occurrence_count": dist.occurrence_count,
                    "probs": {sid: dist.probs.get(sid, 0.0) for sid in inv_order},
                }
                jf.write(json.dumps(record) + "\n")
                for sid in inv_order:
                    tf.write(f"{lemma}\t{dist.corpus_id}\t{sid}\t{dist.probs.get(sid, 0.0):.10f}\n")
            if args.figures:
                fig_path = os.path.join(args.out_dir, f"dist_{lemma}.png")
                plots.plot_sense_distributions(*result.distributions, inv_order, fig_path)
            written += 1
    print(f"dumped distributions for {written} lemmas -> {jsonl_path}")
    return 0


def cmd_validate(args) -> int:
    embeddings = load_sense_embeddings(_require_file(args.embeddings, "--embeddings"),
                                       args.embeddings_format)
    inventory = load_inventory(_require_file(args.inventory, "--inventory"))
    report = validate_pair(inventory, embeddings)
    print(f"{len(inventory)} lemmas, {len(embeddings)} sense vectors (dim {embeddings.dim})")
    for lemma, missing in report.missing.items():
        print(f"warning: {lemma}: missing embeddings for {', '.join(missing)}")
    for lemma in report.unusable:
        print(f"error: {lemma}: no resolvable senses")
    if report.clean:
        print("ok: every inventory sense has an embedding")
    return 0


_COMMANDS = {
    "score": cmd_score,
    "rank": cmd_rank,
    "classify": cmd_classify,
    "tune": cmd_tune,
    "evaluate": cmd_evaluate,
    "dump-distributions": cmd_dump_distributions,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        resolved = _resolve(args)
        return _COMMANDS[args.command](resolved)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SenseScdError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
