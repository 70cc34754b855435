"""Shared test helpers, importable by name from every test module."""

import json

import numpy as np

from sensescd.distributions import AlignedPair
from sensescd.occurrences import write_occurrences
from sensescd.sense_store import write_sense_embeddings_binary


def aligned(p1, p2, support=None):
    p1 = np.asarray(p1, dtype=np.float64)
    p2 = np.asarray(p2, dtype=np.float64)
    if support is None:
        support = [f"s{i}" for i in range(len(p1))]
    return AlignedPair(support=list(support), p1=p1, p2=p2)


def random_distribution(rng, n, allow_zeros=True):
    p = rng.random(n)
    if allow_zeros and n > 1 and rng.random() < 0.4:
        kill = rng.random(n) < 0.3
        if kill.all():
            kill[int(rng.integers(n))] = False
        p[kill] = 0.0
    return p / p.sum()


def write_fixture_files(tmp_path, inventory, embeddings, occs1, occs2):
    """Materialize an in-memory setup as the on-disk formats the CLI consumes."""
    emb_path = tmp_path / "senses.sseb"
    write_sense_embeddings_binary(emb_path, embeddings)

    inv_path = tmp_path / "inventory.jsonl"
    with open(inv_path, "w", encoding="utf-8") as f:
        for lemma, senses in inventory.entries.items():
            f.write(json.dumps({"lemma": lemma, "senses": senses}) + "\n")

    paths = []
    for name, occs in (("c1", occs1), ("c2", occs2)):
        records = [rec for lemma in sorted(occs) for rec in occs[lemma]]
        path = tmp_path / f"{name}.sscd"
        write_occurrences(path, name, embeddings.dim, records, sentence_count=max(len(records), 1))
        paths.append(path)
    return paths[0], paths[1], emb_path, inv_path
