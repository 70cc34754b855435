"""Sense inventories and pre-trained sense embeddings.

File formats (all little-endian):

Text sense embeddings:
  Header line: "<count> <dim>"
  Body, one record per line: "<sense_id> <v1> ... <v_dim>"

Binary sense embeddings (SSEB):
  Magic "SSEB", u32 version=1, u32 dim, u64 count.
  Body per record: u16 id-byte-length -> UTF-8 id bytes -> dim * f32.

Inventory:
  JSONL, one object per line: {"lemma": ..., "senses": [...]}
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError, ValidationError

SSEB_MAGIC = b"SSEB"
SSEB_VERSION = 1


@dataclass
class SenseEmbeddings:
    """Static sense vectors keyed by sense id, all of one dimensionality."""

    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, sense_id: str) -> bool:
        return sense_id in self.vectors


@dataclass
class SenseInventory:
    """Ordered sense-id lists per lemma."""

    entries: dict[str, list[str]]

    def senses(self, lemma: str) -> list[str]:
        return self.entries[lemma]

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class ValidationReport:
    """Outcome of cross-checking an inventory against an embedding set.

    ``missing`` maps each affected lemma to the sense ids that have no
    embedding; ``unusable`` lists lemmas with zero resolvable senses.
    """

    missing: dict[str, list[str]] = field(default_factory=dict)
    unusable: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.missing and not self.unusable


def _check_vector(values: np.ndarray, where: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise FormatError(f"non-finite component at {where}")
    return values


def load_sense_embeddings(path, fmt: str | None = None) -> SenseEmbeddings:
    """Load sense embeddings from a text or SSEB binary file.

    When ``fmt`` is None the format is detected from the leading bytes.
    """
    if fmt is None:
        with open(path, "rb") as f:
            fmt = "binary" if f.read(4) == SSEB_MAGIC else "text"
    if fmt == "text":
        return _load_text_embeddings(path)
    if fmt == "binary":
        return _load_binary_embeddings(path)
    raise ValueError(f"unknown embeddings format: {fmt!r}")


def _load_text_embeddings(path) -> SenseEmbeddings:
    vectors: dict[str, np.ndarray] = {}
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise FormatError(f"{path}: malformed header, expected '<count> <dim>'")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise FormatError(f"{path}: malformed header, expected '<count> <dim>'")
        if count < 0 or dim <= 0:
            raise FormatError(f"{path}: malformed header values {header}")
        for rec_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            sense_id, values = parts[0], parts[1:]
            if not sense_id:
                raise FormatError(f"{path}: empty sense id at record {rec_no}")
            if len(values) != dim:
                raise FormatError(
                    f"{path}: inconsistent dimension at record {rec_no} "
                    f"(got {len(values)}, expected {dim})"
                )
            if sense_id in vectors:
                raise FormatError(f"{path}: duplicate sense id {sense_id!r} at record {rec_no}")
            vec = np.asarray([float(v) for v in values], dtype=np.float32)
            vectors[sense_id] = _check_vector(vec, f"record {rec_no}")
    if len(vectors) != count:
        raise FormatError(f"{path}: header declares {count} records, found {len(vectors)}")
    return SenseEmbeddings(dim=dim, vectors=vectors)


def _load_binary_embeddings(path) -> SenseEmbeddings:
    vectors: dict[str, np.ndarray] = {}
    with open(path, "rb") as f:
        magic = f.read(4)
        if magic != SSEB_MAGIC:
            raise FormatError(f"{path}: bad magic {magic!r}, expected {SSEB_MAGIC!r}")
        version, dim = struct.unpack("<II", f.read(8))
        if version != SSEB_VERSION:
            raise FormatError(f"{path}: unsupported SSEB version {version}")
        (count,) = struct.unpack("<Q", f.read(8))
        for rec_no in range(count):
            head = f.read(2)
            if len(head) < 2:
                raise FormatError(f"{path}: truncated at record {rec_no + 1}, offset {f.tell()}")
            (id_len,) = struct.unpack("<H", head)
            raw = f.read(id_len + 4 * dim)
            if len(raw) < id_len + 4 * dim:
                raise FormatError(f"{path}: truncated at record {rec_no + 1}, offset {f.tell()}")
            sense_id = raw[:id_len].decode("utf-8")
            if sense_id in vectors:
                raise FormatError(f"{path}: duplicate sense id {sense_id!r} at record {rec_no + 1}")
            vec = np.frombuffer(raw[id_len:], dtype="<f4").astype(np.float32)
            vectors[sense_id] = _check_vector(vec, f"record {rec_no + 1}")
    return SenseEmbeddings(dim=dim, vectors=vectors)


def write_sense_embeddings_binary(path, embeddings: SenseEmbeddings) -> None:
    """Write an SSEB binary file; record order follows the vector map."""
    with open(path, "wb") as f:
        f.write(SSEB_MAGIC)
        f.write(struct.pack("<II", SSEB_VERSION, embeddings.dim))
        f.write(struct.pack("<Q", len(embeddings.vectors)))
        for sense_id, vec in embeddings.vectors.items():
            raw = sense_id.encode("utf-8")
            f.write(struct.pack("<H", len(raw)))
            f.write(raw)
            f.write(np.asarray(vec, dtype="<f4").tobytes())


def load_inventory(path) -> SenseInventory:
    """Load a JSONL sense inventory, preserving file order."""
    entries: dict[str, list[str]] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}: invalid JSON at line {line_no}: {exc}")
            lemma, senses = record.get("lemma"), record.get("senses")
            if not lemma or not isinstance(senses, list):
                raise FormatError(f"{path}: line {line_no} needs 'lemma' and 'senses'")
            if not senses:
                raise ValidationError(f"{path}: empty sense list for lemma {lemma!r} at line {line_no}")
            if lemma in entries:
                raise ValidationError(f"{path}: duplicate lemma {lemma!r} at line {line_no}")
            if len(set(senses)) != len(senses):
                raise ValidationError(f"{path}: duplicate sense id for lemma {lemma!r} at line {line_no}")
            entries[lemma] = [str(s) for s in senses]
    return SenseInventory(entries=entries)


def validate_pair(inventory: SenseInventory, embeddings: SenseEmbeddings) -> ValidationReport:
    """Report inventory sense ids that lack embeddings. Side-effect free."""
    report = ValidationReport()
    for lemma, senses in inventory.entries.items():
        absent = [s for s in senses if s not in embeddings]
        if absent:
            report.missing[lemma] = absent
            if len(absent) == len(senses):
                report.unusable.append(lemma)
    return report


def resolvable_senses(lemma: str, inventory: SenseInventory, embeddings: SenseEmbeddings) -> list[str]:
    """The lemma's sense ids restricted to those with an embedding, in inventory order."""
    if lemma not in inventory:
        return []
    return [s for s in inventory.senses(lemma) if s in embeddings]
