import sys
from pathlib import Path

import numpy as np
import pytest

from sensescd.occurrences import OccurrenceEmbedding
from sensescd.sense_store import SenseEmbeddings, SenseInventory

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def synthetic_setup():
    """10 lemmas, 4-d sense and occurrence vectors, <=8 occurrences per corpus.

    Vectors are float32 exactly as the binary formats store them, so the same
    arrays feed both the library and the scalar oracle.
    """
    rng = np.random.default_rng(7)
    dim = 4
    entries = {}
    vectors = {}
    occs1 = {}
    occs2 = {}
    for i in range(10):
        lemma = f"word{i}"
        n_senses = int(rng.integers(2, 6))
        senses = [f"{lemma}%s{j}" for j in range(n_senses)]
        entries[lemma] = senses
        for sid in senses:
            vectors[sid] = rng.normal(size=dim).astype(np.float32)
        occs1[lemma] = [
            OccurrenceEmbedding(lemma, "c1", s, rng.normal(size=dim).astype(np.float32))
            for s in range(int(rng.integers(1, 9)))
        ]
        occs2[lemma] = [
            OccurrenceEmbedding(lemma, "c2", s, rng.normal(size=dim).astype(np.float32))
            for s in range(int(rng.integers(1, 9)))
        ]
    inventory = SenseInventory(entries=entries)
    embeddings = SenseEmbeddings(dim=dim, vectors=vectors)
    return inventory, embeddings, occs1, occs2


def _one_hot(dim, index):
    v = np.zeros(dim, dtype=np.float32)
    v[index] = 1.0
    return v


@pytest.fixture
def planted_setup():
    """Lemma 'shift' flips its dominant sense between corpora; 'steady' barely moves.

    Sense vectors are orthogonal one-hots, so each occurrence disambiguates to
    exactly one sense and the corpus distributions are exact occurrence ratios:
      shift:  c1 [5/6, 1/6] -> c2 [1/6, 5/6]
      steady: c1 [5/6, 1/6] -> c2 [4/6, 2/6]
    """
    dim = 4
    inventory = SenseInventory(entries={
        "shift": ["shift%a", "shift%b"],
        "steady": ["steady%a", "steady%b"],
    })
    embeddings = SenseEmbeddings(dim=dim, vectors={
        "shift%a": _one_hot(dim, 0),
        "shift%b": _one_hot(dim, 1),
        "steady%a": _one_hot(dim, 2),
        "steady%b": _one_hot(dim, 3),
    })

    def occs(lemma, corpus_id, counts, axes):
        out = []
        idx = 0
        for count, axis in zip(counts, axes):
            for _ in range(count):
                out.append(OccurrenceEmbedding(lemma, corpus_id, idx, _one_hot(dim, axis)))
                idx += 1
        return out

    occs1 = {
        "shift": occs("shift", "c1", (5, 1), (0, 1)),
        "steady": occs("steady", "c1", (5, 1), (2, 3)),
    }
    occs2 = {
        "shift": occs("shift", "c2", (1, 5), (0, 1)),
        "steady": occs("steady", "c2", (4, 2), (2, 3)),
    }
    return inventory, embeddings, occs1, occs2
