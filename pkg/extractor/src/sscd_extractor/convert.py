"""Converting published text sense-embedding releases to SSEB binary."""
from __future__ import annotations

import json

import numpy as np

from .formats import write_sseb

LAYOUTS = ("plain", "concat-duplicate")

# pooling instruction the extractor must follow so inner products are taken
# in aligned spaces
_INSTRUCTIONS = {
    "plain": "none",
    "concat-duplicate": "concatenate contextual vector with itself",
}


def convert_sense_release(path, out_path, layout: str = "plain",
                          sidecar_path=None) -> dict:
    """Convert a '<count> <dim>' header text release to an SSEB binary file.

    ``layout`` records whether the release vectors are plain hidden-size or a
    concatenation of two hidden-size halves; the sidecar carries the matching
    extractor instruction for the contextual side.
    """
    if layout not in LAYOUTS:
        raise ValueError(f"layout must be one of {LAYOUTS}, got {layout!r}")
    records = []
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: malformed header, expected '<count> <dim>'")
        count, dim = int(header[0]), int(header[1])
        for line_no, line in enumerate(f, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            if len(parts) != dim + 1:
                raise ValueError(f"{path}: malformed release line {line_no}")
            records.append((parts[0], np.asarray([float(v) for v in parts[1:]],
                                                 dtype=np.float32)))
    if len(records) != count:
        raise ValueError(f"{path}: header declares {count} records, found {len(records)}")
    write_sseb(out_path, dim, records)
    info = {
        "layout": layout,
        "dim": dim,
        "count": len(records),
        "extractor_instruction": _INSTRUCTIONS[layout],
        "extractor_flag": "--duplicate-concat" if layout == "concat-duplicate" else "",
    }
    if sidecar_path is not None:
        with open(sidecar_path, "w", encoding="utf-8") as f:
            json.dump(info, f, indent=2)
            f.write("\n")
    return info
