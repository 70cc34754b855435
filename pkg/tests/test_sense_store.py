import json

import numpy as np
import pytest

from sensescd.errors import FormatError, ValidationError
from sensescd.sense_store import (
    SenseEmbeddings,
    load_inventory,
    load_sense_embeddings,
    resolvable_senses,
    validate_pair,
    write_sense_embeddings_binary,
)


def write_text(path, content):
    path.write_text(content, encoding="utf-8")
    return path


def test_load_text_minimal(tmp_path):
    path = write_text(tmp_path / "e.txt", "2 3\na%1 1 0 0\nb%1 0 1 0\n")
    emb = load_sense_embeddings(path, "text")
    assert emb.dim == 3
    assert len(emb) == 2
    assert np.allclose(emb.vectors["a%1"], [1, 0, 0])


def test_text_inconsistent_dimension_names_record(tmp_path):
    path = write_text(tmp_path / "e.txt", "2 3\na%1 1 0 0\nb%1 0 1\n")
    with pytest.raises(FormatError, match="inconsistent dimension at record 2"):
        load_sense_embeddings(path, "text")


def test_text_duplicate_sense_id(tmp_path):
    path = write_text(tmp_path / "e.txt", "2 2\na%1 1 0\na%1 0 1\n")
    with pytest.raises(FormatError, match="duplicate sense id"):
        load_sense_embeddings(path, "text")


def test_text_malformed_header(tmp_path):
    path = write_text(tmp_path / "e.txt", "nonsense\na%1 1 0\n")
    with pytest.raises(FormatError, match="header"):
        load_sense_embeddings(path, "text")


def test_text_count_mismatch(tmp_path):
    path = write_text(tmp_path / "e.txt", "3 2\na%1 1 0\nb%1 0 1\n")
    with pytest.raises(FormatError, match="declares 3"):
        load_sense_embeddings(path, "text")


def test_text_non_finite_component(tmp_path):
    path = write_text(tmp_path / "e.txt", "1 2\na%1 nan 0\n")
    with pytest.raises(FormatError, match="non-finite"):
        load_sense_embeddings(path, "text")


def test_load_order_independence(tmp_path):
    a = write_text(tmp_path / "a.txt", "2 2\nx%1 1 2\ny%1 3 4\n")
    b = write_text(tmp_path / "b.txt", "2 2\ny%1 3 4\nx%1 1 2\n")
    ea = load_sense_embeddings(a, "text")
    eb = load_sense_embeddings(b, "text")
    assert set(ea.vectors) == set(eb.vectors)
    for sid in ea.vectors:
        assert np.array_equal(ea.vectors[sid], eb.vectors[sid])


def test_binary_roundtrip_and_autodetect(tmp_path):
    rng = np.random.default_rng(3)
    emb = SenseEmbeddings(dim=5, vectors={
        f"s{i}%x": rng.normal(size=5).astype(np.float32) for i in range(4)
    })
    path = tmp_path / "e.sseb"
    write_sense_embeddings_binary(path, emb)
    loaded = load_sense_embeddings(path)  # format autodetected
    assert loaded.dim == 5
    for sid, vec in emb.vectors.items():
        assert np.array_equal(loaded.vectors[sid], vec)


def test_binary_truncated(tmp_path):
    emb = SenseEmbeddings(dim=3, vectors={"a%1": np.ones(3, dtype=np.float32)})
    path = tmp_path / "e.sseb"
    write_sense_embeddings_binary(path, emb)
    path.write_bytes(path.read_bytes()[:-5])
    with pytest.raises(FormatError, match="truncated"):
        load_sense_embeddings(path, "binary")


def test_binary_bad_magic(tmp_path):
    path = tmp_path / "e.sseb"
    path.write_bytes(b"NOPE" + b"\x00" * 20)
    with pytest.raises(FormatError, match="bad magic"):
        load_sense_embeddings(path, "binary")


def test_load_inventory(tmp_path):
    path = tmp_path / "inv.jsonl"
    path.write_text(
        json.dumps({"lemma": "cell", "senses": ["cell%1:03:00", "cell%1:06:04", "cell%1:06:01"]})
        + "\n",
        encoding="utf-8",
    )
    inv = load_inventory(path)
    assert inv.senses("cell") == ["cell%1:03:00", "cell%1:06:04", "cell%1:06:01"]


def test_inventory_empty_senses(tmp_path):
    path = tmp_path / "inv.jsonl"
    path.write_text('{"lemma": "cell", "senses": []}\n', encoding="utf-8")
    with pytest.raises(ValidationError, match="empty sense list"):
        load_inventory(path)


def test_inventory_duplicate_lemma(tmp_path):
    path = tmp_path / "inv.jsonl"
    path.write_text(
        '{"lemma": "cell", "senses": ["a"]}\n{"lemma": "cell", "senses": ["b"]}\n',
        encoding="utf-8",
    )
    with pytest.raises(ValidationError, match="duplicate lemma"):
        load_inventory(path)


@pytest.fixture
def pair():
    emb = SenseEmbeddings(dim=2, vectors={
        "w%1": np.array([1, 0], dtype=np.float32),
        "w%2": np.array([0, 1], dtype=np.float32),
    })
    from sensescd.sense_store import SenseInventory
    inv = SenseInventory(entries={"w": ["w%1", "w%2", "w%3"], "v": ["v%1"]})
    return inv, emb


def test_validate_pair_reports_missing(pair):
    inv, emb = pair
    report = validate_pair(inv, emb)
    assert report.missing["w"] == ["w%3"]
    assert report.unusable == ["v"]
    assert not report.clean


def test_validate_pair_idempotent(pair):
    inv, emb = pair
    r1 = validate_pair(inv, emb)
    r2 = validate_pair(inv, emb)
    assert r1 == r2


def test_resolvable_senses_restricts_to_embedded(pair):
    inv, emb = pair
    assert resolvable_senses("w", inv, emb) == ["w%1", "w%2"]
    assert resolvable_senses("v", inv, emb) == []
    assert resolvable_senses("absent", inv, emb) == []
