"""Locating target-lemma occurrences in a pre-tokenized corpus."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Occurrence:
    sentence_index: int
    lemma: str
    token_index: int


def find_occurrences(corpus_path, targets: list[str]) -> tuple[list[Occurrence], int]:
    """Exact token matches of target lemmas, in sentence then token order.

    The corpus is one whitespace-tokenized sentence per line (the SemEval
    corpora are pre-tokenized and lemmatized, so no further normalization
    happens here). Returns the occurrence list and the sentence count.
    """
    if not targets:
        raise ValueError("targets must be non-empty")
    wanted = set(targets)
    occurrences = []
    sentence_count = 0
    with open(corpus_path, "r", encoding="utf-8") as f:
        for sentence_index, line in enumerate(f):
            sentence_count += 1
            for token_index, token in enumerate(line.split()):
                if token in wanted:
                    occurrences.append(Occurrence(sentence_index, token, token_index))
    return occurrences, sentence_count
