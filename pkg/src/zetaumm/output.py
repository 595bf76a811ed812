"""File emission: CSV and JSON with a reproducibility metadata block.

Every artifact embeds the full run configuration (and nothing volatile such
as timestamps), so rerunning with the metadata reproduces the file
bit-for-bit.  CSV is UTF-8 with a header row, '.' decimals and 17
significant digits; JSON carries the same numbers as native floats.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

import numpy as np

FLOAT_FMT = "%.17g"


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % float(value)
    if isinstance(value, (complex, np.complexfloating)):
        c = complex(value)
        return (FLOAT_FMT + "%+" + FLOAT_FMT[1:] + "j") % (c.real, c.imag)
    return str(value)


def write_csv(path: str, columns: Mapping[str, Sequence], metadata: Mapping[str, object]) -> None:
    """Columnar CSV with '#'-prefixed metadata lines before the header."""
    names = list(columns.keys())
    arrays = [np.asarray(columns[k]) for k in names]
    length = arrays[0].shape[0] if arrays else 0
    for name, arr in zip(names, arrays):
        if arr.shape[0] != length:
            raise ValueError(f"column {name!r} has mismatched length")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(metadata):
            fh.write(f"# {key}={_fmt(metadata[key])}\n")
        fh.write(",".join(names) + "\n")
        for i in range(length):
            fh.write(",".join(_fmt(arr[i]) for arr in arrays) + "\n")


def write_json(path: str, payload: Mapping[str, object], metadata: Mapping[str, object]) -> None:
    doc = {"metadata": {k: _json_ready(v) for k, v in sorted(metadata.items())}}
    doc.update({k: _json_ready(v) for k, v in payload.items()})
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1, sort_keys=False)
        fh.write("\n")


def _json_ready(value):
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return {"real": value.real.tolist(), "imag": value.imag.tolist()}
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (complex, np.complexfloating)):
        c = complex(value)
        return {"real": c.real, "imag": c.imag}
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def read_csv(path: str):
    """Round-trip reader for files produced by write_csv: returns
    (columns dict of float arrays where possible, metadata dict)."""
    metadata: dict[str, str] = {}
    rows: list[list[str]] = []
    header: list[str] | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, val = line[2:].partition("=")
                metadata[key] = val
                continue
            if header is None:
                header = line.split(",")
                continue
            if line:
                rows.append(line.split(","))
    columns: dict[str, object] = {}
    for j, name in enumerate(header or []):
        vals = [r[j] for r in rows]
        try:
            columns[name] = np.array([float(v) for v in vals])
        except ValueError:
            columns[name] = vals
    return columns, metadata
