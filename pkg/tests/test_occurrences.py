import numpy as np
import pytest

from sensescd.errors import FormatError
from sensescd.occurrences import OccurrenceEmbedding, read_occurrences, write_occurrences


def make_records(rng, dim, lemmas):
    return [
        OccurrenceEmbedding(lemma, "c1", i, rng.normal(size=dim).astype(np.float32))
        for i, lemma in enumerate(lemmas)
    ]


def test_roundtrip_bit_for_bit(tmp_path):
    rng = np.random.default_rng(11)
    records = make_records(rng, 6, ["plane", "pin", "plane", "graft"])
    path = tmp_path / "c.sscd"
    write_occurrences(path, "corpus1", 6, records, sentence_count=100)
    loaded = read_occurrences(path)
    assert loaded.dim == 6
    assert loaded.info.corpus_id == "corpus1"
    assert loaded.info.sentence_count == 100
    assert loaded.info.occurrence_counts == {"plane": 2, "pin": 1, "graft": 1}
    for orig, back in zip(records, loaded.records):
        assert back.lemma == orig.lemma
        assert back.sentence_index == orig.sentence_index
        assert back.vector.tobytes() == orig.vector.tobytes()

    # write-then-read-then-write reproduces the file byte-identically
    path2 = tmp_path / "c2.sscd"
    write_occurrences(path2, loaded.info.corpus_id, loaded.dim, loaded.records,
                      loaded.info.sentence_count)
    assert path.read_bytes() == path2.read_bytes()


def test_truncated_final_record_reports_offset(tmp_path):
    rng = np.random.default_rng(1)
    records = make_records(rng, 4, ["a", "b"])
    path = tmp_path / "c.sscd"
    write_occurrences(path, "c", 4, records, sentence_count=2)
    path.write_bytes(path.read_bytes()[:-12])  # clips trailer + part of last record
    with pytest.raises(FormatError, match="byte offset"):
        read_occurrences(path)


def test_bad_magic(tmp_path):
    path = tmp_path / "c.sscd"
    path.write_bytes(b"XXXX" + b"\x00" * 30)
    with pytest.raises(FormatError, match="bad magic"):
        read_occurrences(path)


def test_non_finite_component_rejected(tmp_path):
    bad = np.array([1.0, np.inf], dtype=np.float32)
    records = [OccurrenceEmbedding("a", "c", 0, bad)]
    path = tmp_path / "c.sscd"
    write_occurrences(path, "c", 2, records, sentence_count=1)
    with pytest.raises(FormatError, match="non-finite"):
        read_occurrences(path)


def test_dim_mismatch_on_write(tmp_path):
    records = [OccurrenceEmbedding("a", "c", 0, np.zeros(3, dtype=np.float32))]
    with pytest.raises(FormatError, match="dim"):
        write_occurrences(tmp_path / "c.sscd", "c", 4, records, sentence_count=1)
