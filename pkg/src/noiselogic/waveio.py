"""Shared CSV waveform format.

One header row ``step,<name1>,<name2>,...`` followed by one row per clock
step; every value is a decimal integer.  All modules and the CLI emit and
consume this one format.
"""

import io

import numpy as np

from .signals import IntWave, Waveform


def format_waveform_csv(columns: dict[str, Waveform]) -> str:
    """Render named waveforms as CSV text (column order = dict order)."""
    if not columns:
        raise ValueError("at least one waveform column required")
    lengths = {len(w) for w in columns.values()}
    if len(lengths) != 1:
        raise ValueError(f"columns differ in length: {sorted(lengths)}")
    (steps,) = lengths
    out = io.StringIO()
    out.write("step," + ",".join(columns) + "\n")
    arrays = [w.values for w in columns.values()]
    for t in range(steps):
        out.write(str(t) + "," + ",".join(str(int(a[t])) for a in arrays) + "\n")
    return out.getvalue()


def write_waveform_csv(path, columns: dict[str, Waveform]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_waveform_csv(columns))


def parse_waveform_csv(text: str) -> dict[str, IntWave]:
    """Inverse of :func:`format_waveform_csv`; step indices are checked."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty waveform CSV")
    header = lines[0].split(",")
    if header[0] != "step" or len(header) < 2:
        raise ValueError("waveform CSV must start with a 'step,<name>,...' header")
    names = header[1:]
    rows = []
    for t, line in enumerate(lines[1:]):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"row {t} has {len(cells)} cells, expected {len(header)}")
        if int(cells[0]) != t:
            raise ValueError(f"row {t} carries step index {cells[0]}")
        rows.append([int(c) for c in cells[1:]])
    data = np.asarray(rows, dtype=np.int64)
    return {name: IntWave(data[:, j]) for j, name in enumerate(names)}
