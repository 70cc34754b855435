"""Contextualized occurrence embeddings from a pretrained masked language model."""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
import torch
from transformers import AutoModel, AutoTokenizer

from .corpus import Occurrence
from .formats import SscdWriter

POOLINGS = ("mean-last", "sum-last-4")


@dataclass
class ExtractionConfig:
    model: str
    pooling: str = "mean-last"
    max_len: int = 256
    batch_size: int = 16
    device: str = "cpu"
    duplicate_concat: bool = False  # write [f; f] to match concatenated sense releases

    def __post_init__(self):
        if self.pooling not in POOLINGS:
            raise ValueError(f"pooling must be one of {POOLINGS}, got {self.pooling!r}")
        if self.max_len < 8:
            raise ValueError("max_len too small to hold any occurrence")


@dataclass
class ExtractionSummary:
    written: int = 0
    skipped: int = 0
    dim: int = 0
    skipped_occurrences: list[dict] = field(default_factory=list)


def _centered_window(words: list[str], target_index: int,
                     subtoken_counts: list[int], budget: int) -> tuple[int, int] | None:
    """Largest word window around the target whose subtokens fit the budget.

    Expands alternately left and right from the target; returns None when the
    target's own subtokens already exceed the budget.
    """
    used = subtoken_counts[target_index]
    if used > budget or used == 0:
        return None
    lo = hi = target_index
    while True:
        grew = False
        if lo > 0 and used + subtoken_counts[lo - 1] <= budget:
            lo -= 1
            used += subtoken_counts[lo]
            grew = True
        if hi + 1 < len(words) and used + subtoken_counts[hi + 1] <= budget:
            hi += 1
            used += subtoken_counts[hi]
            grew = True
        if not grew:
            return lo, hi


def _pool(hidden_states, row: int, positions: list[int], pooling: str) -> np.ndarray:
    if pooling == "mean-last":
        vectors = hidden_states[-1][row, positions]
    else:  # sum-last-4 (or fewer, for models with under four layers)
        depth = min(4, len(hidden_states) - 1)
        stacked = torch.stack([hidden_states[-i][row, positions] for i in range(1, depth + 1)])
        vectors = stacked.sum(dim=0)
    return vectors.mean(dim=0).numpy().astype(np.float32)


def embed_occurrences(config: ExtractionConfig, corpus_path, corpus_id: str,
                      occurrences: list[Occurrence], sentence_count: int,
                      out_path, sidecar_path=None) -> ExtractionSummary:
    """Embed every located occurrence and write them as one SSCD file.

    Occurrences are written in input order regardless of batch scheduling.
    Occurrences whose target subtokens alone exceed the sequence budget are
    skipped with a warning and tallied in the provenance sidecar.
    """
    tokenizer = AutoTokenizer.from_pretrained(config.model)
    model = AutoModel.from_pretrained(config.model)
    model.eval()
    model.to(config.device)
    hidden = model.config.hidden_size
    dim = hidden * 2 if config.duplicate_concat else hidden

    with open(corpus_path, "r", encoding="utf-8") as f:
        sentences = [line.split() for line in f]

    # word-window truncation per occurrence, then batched inference
    budget = config.max_len - 2  # leave room for [CLS]/[SEP]-style specials
    prepared = []  # (occurrence, window words, target word index inside window)
    summary = ExtractionSummary(dim=dim)
    subtoken_cache: dict[int, list[int]] = {}
    for occ in occurrences:
        words = sentences[occ.sentence_index]
        if occ.sentence_index not in subtoken_cache:
            subtoken_cache[occ.sentence_index] = [
                len(tokenizer.tokenize(w)) for w in words
            ]
        counts = subtoken_cache[occ.sentence_index]
        window = _centered_window(words, occ.token_index, counts, budget)
        if window is None:
            warnings.warn(
                f"skipping {occ.lemma!r} in sentence {occ.sentence_index}: "
                f"target exceeds max_len {config.max_len}"
            )
            summary.skipped += 1
            summary.skipped_occurrences.append(
                {"lemma": occ.lemma, "sentence_index": occ.sentence_index}
            )
            continue
        lo, hi = window
        prepared.append((occ, words[lo:hi + 1], occ.token_index - lo))

    writer = SscdWriter(out_path, corpus_id, dim, sentence_count)
    with torch.no_grad():
        for start in range(0, len(prepared), config.batch_size):
            batch = prepared[start:start + config.batch_size]
            encoded = tokenizer(
                [words for _, words, _ in batch],
                is_split_into_words=True,
                padding=True,
                truncation=True,
                max_length=config.max_len,
                return_tensors="pt",
            ).to(config.device)
            outputs = model(**encoded, output_hidden_states=True)
            hidden_states = [h.cpu() for h in outputs.hidden_states]
            for row, (occ, _, target_word) in enumerate(batch):
                word_ids = encoded.word_ids(batch_index=row)
                positions = [i for i, w in enumerate(word_ids) if w == target_word]
                vector = _pool(hidden_states, row, positions, config.pooling)
                if config.duplicate_concat:
                    vector = np.concatenate([vector, vector])
                writer.add(occ.lemma, occ.sentence_index, vector)
                summary.written += 1
    writer.close()

    if sidecar_path is not None:
        with open(sidecar_path, "w", encoding="utf-8") as f:
            json.dump({
                "model": config.model,
                "pooling": config.pooling,
                "layer_policy": "last" if config.pooling == "mean-last" else "sum-last-4",
                "max_len": config.max_len,
                "duplicate_concat": config.duplicate_concat,
                "corpus_id": corpus_id,
                "dim": dim,
                "written": summary.written,
                "skipped": summary.skipped,
                "skipped_occurrences": summary.skipped_occurrences,
            }, f, indent=2)
            f.write("\n")
    return summary
