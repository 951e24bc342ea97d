"""Writing and reading spectrum tables.

CSV is long form, one row per ``(axis, omega, observable)`` cell with
header ``axis,omega,observable,re,im``.  Numbers are printed with 17
significant digits, so a read-back reproduces them exactly.  Failed axis
points give rows with empty ``re`` and ``im``.  Poles are rows with
observable ``pole``, ``omega`` and ``re`` equal to the pole frequency and
``im`` zero.

The structured format is JSON holding the same grid plus the full
metadata block.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .sweep import SpectrumTable

__all__ = ["CSV_HEADER", "to_csv", "from_csv", "to_structured", "from_structured", "export", "read_table"]

CSV_HEADER = ("axis", "omega", "observable", "re", "im")
POLE = "pole"


def _fmt(x: float) -> str:
    return "%.17g" % x


def to_csv(table: SpectrumTable) -> str:
    """Long-form CSV text, newline-terminated."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for i, a in enumerate(table.axis):
        for j, om in enumerate(table.omega):
            for name, arr in table.values.items():
                v = arr[i, j]
                if np.isnan(v.real) and np.isnan(v.imag):
                    w.writerow((_fmt(a), _fmt(om), name, "", ""))
                else:
                    w.writerow((_fmt(a), _fmt(om), name, _fmt(v.real), _fmt(v.imag)))
        for p in table.poles.get(i, ()):
            w.writerow((_fmt(a), _fmt(p), POLE, _fmt(p), _fmt(0.0)))
    return buf.getvalue()


def _unique(seq) -> list[float]:
    return list(dict.fromkeys(seq))


def from_csv(text: str) -> SpectrumTable:
    """Rebuild a table from :func:`to_csv` output (metadata is not stored in CSV)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing or wrong CSV header")
    grid = [r for r in rows[1:] if r[2] != POLE]
    axis = _unique(float(r[0]) for r in rows[1:])
    omega = _unique(float(r[1]) for r in grid)
    names = _unique(r[2] for r in grid)
    ai = {a: k for k, a in enumerate(axis)}
    oi = {o: k for k, o in enumerate(omega)}
    values = {n: np.full((len(axis), len(omega)), np.nan + 0j) for n in names}
    poles: dict = {}
    for a, om, name, re, im in rows[1:]:
        i = ai[float(a)]
        if name == POLE:
            poles.setdefault(i, []).append(float(re))
            continue
        if re == "" and im == "":
            continue
        values[name][i, oi[float(om)]] = complex(float(re), float(im))
    # an axis point with only sentinel rows still appears in the grid
    return SpectrumTable(np.array(axis), np.array(omega), values, poles, {})


def _json_array(arr: np.ndarray) -> list:
    return [[None if math.isnan(x) else x for x in row] for row in np.asarray(arr, dtype=float).tolist()]


def to_structured(table: SpectrumTable) -> str:
    """JSON text with grid, values (real and imaginary parts), poles and metadata."""
    doc = {
        "metadata": table.metadata,
        "axis": [float(a) for a in table.axis],
        "omega": [float(o) for o in table.omega],
        "observables": {
            name: {"re": _json_array(arr.real), "im": _json_array(arr.imag)} for name, arr in table.values.items()
        },
        "poles": {str(i): p for i, p in sorted(table.poles.items())},
    }
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False) + "\n"


def _from_json_array(rows) -> np.ndarray:
    return np.array([[np.nan if x is None else x for x in row] for row in rows], dtype=float)


def from_structured(text: str) -> SpectrumTable:
    """Rebuild a table from :func:`to_structured` output."""
    doc = json.loads(text)
    values = {
        name: _from_json_array(v["re"]) + 1j * _from_json_array(v["im"]) for name, v in doc["observables"].items()
    }
    poles = {int(i): list(p) for i, p in doc["poles"].items()}
    return SpectrumTable(np.array(doc["axis"], dtype=float), np.array(doc["omega"], dtype=float), values, poles, doc["metadata"])


def export(table: SpectrumTable, fmt: str = "csv", path: str | Path | None = None) -> bytes:
    """Serialize ``table`` and optionally write it to ``path``.

    Raises
    ------
    OSError
        If ``path`` cannot be written.
    """
    if fmt == "csv":
        text = to_csv(table)
    elif fmt == "structured":
        text = to_structured(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    data = text.encode("utf-8")
    if path is not None:
        Path(path).write_bytes(data)
    return data


def read_table(path: str | Path, fmt: str | None = None) -> SpectrumTable:
    """Read a table written by :func:`export`; format inferred from the content if not given."""
    text = Path(path).read_text(encoding="utf-8")
    if fmt is None:
        fmt = "structured" if text.lstrip().startswith("{") else "csv"
    return from_structured(text) if fmt == "structured" else from_csv(text)
