"""Occurrence-embedding files (SSCD binary format).

Layout (little-endian):
  Magic "SSCD", u32 version=1, u32 dim,
  u16 corpus-id-byte-length -> UTF-8 corpus id, u64 record count.
  Per record: u16 lemma-byte-length -> UTF-8 lemma -> u64 sentence_index
              -> dim * f32.
  Trailer: u64 sentence_count (|C|).
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError

SSCD_MAGIC = b"SSCD"
SSCD_VERSION = 1


@dataclass
class OccurrenceEmbedding:
    """Contextualized vector for one occurrence of a lemma in one sentence."""

    lemma: str
    corpus_id: str
    sentence_index: int
    vector: np.ndarray


@dataclass
class CorpusInfo:
    corpus_id: str
    sentence_count: int
    occurrence_counts: dict[str, int] = field(default_factory=dict)


@dataclass
class OccurrenceFile:
    dim: int
    records: list[OccurrenceEmbedding]
    info: CorpusInfo

    def for_lemma(self, lemma: str) -> list[OccurrenceEmbedding]:
        return [r for r in self.records if r.lemma == lemma]


def read_occurrences(path) -> OccurrenceFile:
    """Read an SSCD file; records come back in file order with exact tallies."""
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != SSCD_MAGIC:
            raise FormatError(f"{path}: bad magic {magic!r}, expected {SSCD_MAGIC!r}")
        version, dim = struct.unpack("<II", f.read(8))
        if version != SSCD_VERSION:
            raise FormatError(f"{path}: unsupported SSCD version {version}")
        (cid_len,) = struct.unpack("<H", f.read(2))
        corpus_id = f.read(cid_len).decode("utf-8")
        (count,) = struct.unpack("<Q", f.read(8))

        records: list[OccurrenceEmbedding] = []
        counts: dict[str, int] = {}
        rec_bytes = 4 * dim
        for rec_no in range(count):
            head = f.read(2)
            if len(head) < 2:
                raise FormatError(f"{path}: truncated record {rec_no + 1} at byte offset {f.tell()}")
            (lemma_len,) = struct.unpack("<H", head)
            raw = f.read(lemma_len + 8 + rec_bytes)
            if len(raw) < lemma_len + 8 + rec_bytes:
                raise FormatError(f"{path}: truncated record {rec_no + 1} at byte offset {f.tell()}")
            lemma = raw[:lemma_len].decode("utf-8")
            (sentence_index,) = struct.unpack_from("<Q", raw, lemma_len)
            vector = np.frombuffer(raw[lemma_len + 8:], dtype="<f4").astype(np.float32)
            if not np.all(np.isfinite(vector)):
                raise FormatError(f"{path}: non-finite component in record {rec_no + 1}")
            records.append(OccurrenceEmbedding(lemma, corpus_id, sentence_index, vector))
            counts[lemma] = counts.get(lemma, 0) + 1

        trailer = f.read(8)
        if len(trailer) < 8:
            raise FormatError(f"{path}: missing sentence-count trailer at byte offset {f.tell()}")
        (sentence_count,) = struct.unpack("<Q", trailer)

    info = CorpusInfo(corpus_id=corpus_id, sentence_count=sentence_count, occurrence_counts=counts)
    return OccurrenceFile(dim=dim, records=records, info=info)


def write_occurrences(path, corpus_id: str, dim: int,
                      records: list[OccurrenceEmbedding], sentence_count: int) -> None:
    """Write an SSCD file in record order."""
    with open(path, "wb") as f:
        f.write(SSCD_MAGIC)
        f.write(struct.pack("<II", SSCD_VERSION, dim))
        cid = corpus_id.encode("utf-8")
        f.write(struct.pack("<H", len(cid)))
        f.write(cid)
        f.write(struct.pack("<Q", len(records)))
        for rec in records:
            vec = np.asarray(rec.vector, dtype="<f4")
            if vec.shape != (dim,):
                raise FormatError(
                    f"record for {rec.lemma!r} has dim {vec.shape}, expected ({dim},)"
                )
            raw = rec.lemma.encode("utf-8")
            f.write(struct.pack("<H", len(raw)))
            f.write(raw)
            f.write(struct.pack("<Q", rec.sentence_index))
            f.write(vec.tobytes())
        f.write(struct.pack("<Q", sentence_count))
