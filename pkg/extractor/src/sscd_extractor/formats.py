"""Writers for the SSCD occurrence file and SSEB sense-embedding formats.

Both formats are little-endian:

SSCD: magic "SSCD", u32 version=1, u32 dim, u16 corpus-id length + UTF-8
corpus id, u64 record count; per record u16 lemma length + UTF-8 lemma,
u64 sentence_index, dim * f32; trailing u64 sentence_count.

SSEB: magic "SSEB", u32 version=1, u32 dim, u64 count; per record u16 id
length + UTF-8 id, dim * f32.
"""
import struct

import numpy as np

SSCD_MAGIC = b"SSCD"
SSEB_MAGIC = b"SSEB"
FORMAT_VERSION = 1


class SscdWriter:
    """Streams occurrence records to disk in the order they are added."""

    def __init__(self, path, corpus_id: str, dim: int, sentence_count: int):
        self.path = path
        self.corpus_id = corpus_id
        self.dim = dim
        self.sentence_count = sentence_count
        self._records = []

    def add(self, lemma: str, sentence_index: int, vector: np.ndarray) -> None:
        vector = np.asarray(vector, dtype="<f4")
        if vector.shape != (self.dim,):
            raise ValueError(f"vector for {lemma!r} has shape {vector.shape}, expected ({self.dim},)")
        self._records.append((lemma, sentence_index, vector))

    def __len__(self) -> int:
        return len(self._records)

    def close(self) -> None:
        with open(self.path, "wb") as f:
            f.write(SSCD_MAGIC)
            f.write(struct.pack("<II", FORMAT_VERSION, self.dim))
            cid = self.corpus_id.encode("utf-8")
            f.write(struct.pack("<H", len(cid)))
            f.write(cid)
            f.write(struct.pack("<Q", len(self._records)))
            for lemma, sentence_index, vector in self._records:
                raw = lemma.encode("utf-8")
                f.write(struct.pack("<H", len(raw)))
                f.write(raw)
                f.write(struct.pack("<Q", sentence_index))
                f.write(vector.tobytes())
            f.write(struct.pack("<Q", self.sentence_count))


def write_sseb(path, dim: int, records: list[tuple[str, np.ndarray]]) -> None:
    """Write sense embeddings as an SSEB binary file, in the given order."""
    with open(path, "wb") as f:
        f.write(SSEB_MAGIC)
        f.write(struct.pack("<II", FORMAT_VERSION, dim))
        f.write(struct.pack("<Q", len(records)))
        for sense_id, vector in records:
            vector = np.asarray(vector, dtype="<f4")
            if vector.shape != (dim,):
                raise ValueError(f"vector for {sense_id!r} has shape {vector.shape}, expected ({dim},)")
            raw = sense_id.encode("utf-8")
            f.write(struct.pack("<H", len(raw)))
            f.write(raw)
            f.write(vector.tobytes())
