"""CSV tables shared by the CLI stages: feature matrices and split files.

Floats are written as repr() so values survive the round trip exactly;
byte-identical reruns depend on that.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from modhate.errors import DataError, UnreadableFileError
from modhate.ingest import SplitAssignment


def write_feature_csv(path: str | Path, names, ids, matrix: np.ndarray) -> None:
    lines = ["id," + ",".join(names)]
    for sid, row in zip(ids, matrix):
        lines.append(sid + "," + ",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_feature_csv(path: str | Path):
    """Returns (ids, names, matrix)."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UnreadableFileError(f"cannot read feature table {path}: {e}") from e
    if not lines or not lines[0].startswith("id,"):
        raise DataError(f"{path}: not a feature CSV")
    names = lines[0].split(",")[1:]
    ids, rows = [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        parts = line.split(",")
        ids.append(parts[0])
        rows.append([float(v) for v in parts[1:]])
    matrix = np.array(rows, dtype=np.float64) if rows else np.empty((0, len(names)))
    if matrix.size and matrix.shape[1] != len(names):
        raise DataError(f"{path}: ragged rows")
    return ids, names, matrix


def write_split_csv(path: str | Path, split: SplitAssignment) -> None:
    lines = ["id,split"]
    lines += [f"{sid},train" for sid in split.train_ids]
    lines += [f"{sid},test" for sid in split.test_ids]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_split_csv(path: str | Path) -> dict[str, str]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UnreadableFileError(f"cannot read split table {path}: {e}") from e
    if not lines or lines[0] != "id,split":
        raise DataError(f"{path}: not a split CSV")
    out: dict[str, str] = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        sid, split = line.split(",")
        out[sid] = split
    return out
