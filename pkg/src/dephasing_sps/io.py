"""CSV/JSON serialisation of spectra, trajectories, sweeps and summary tables."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import Trajectory
from .errors import ValidationError
from .spectra import Spectrum
from .sweep import SweepConfig, SweepRow

SPECTRUM_HEADER = ("omega_ueV", "density_per_ueV")
TRAJECTORY_HEADER = ("t_hbar_per_ueV", "n", "p", "re_c", "im_c")


@dataclass
class Table:
    """Column names plus rows of floats, strings, bools or None (absent)."""

    columns: list[str]
    rows: list[list]
    digits: int = 17  # significant digits for floats in CSV

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _cell(value, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{digits}g")
    return str(value)


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v, table.digits) for v in row])
    return buf.getvalue()


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def to_json(table: Table) -> str:
    rows = [{k: _json_value(v) for k, v in zip(table.columns, row)} for row in table.rows]
    return json.dumps(rows, indent=1) + "\n"


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    raise ValidationError(f"unknown format {fmt!r}")


def write_text(text: str, path: str | Path | None = None, stream=None) -> None:
    """Write to ``path`` atomically (temp file + rename), or to ``stream``/stdout."""
    if path is None or str(path) == "-":
        (stream or sys.stdout).write(text)
        return
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def spectrum_table(spectrum: Spectrum, oracle: Spectrum | None = None) -> Table:
    columns = list(SPECTRUM_HEADER)
    cols = [spectrum.grid, spectrum.values]
    if oracle is not None:
        if not np.array_equal(oracle.grid, spectrum.grid):
            raise ValidationError("oracle spectrum must share the grid")
        columns.append("qrt_density_per_ueV")
        cols.append(oracle.values)
    return Table(columns, [list(map(float, r)) for r in zip(*cols)])


def curves_table(grid: np.ndarray, curves: dict[str, Spectrum], x_name: str = "omega_ueV") -> Table:
    cols = [grid] + [s.values for s in curves.values()]
    return Table([x_name, *curves], [list(map(float, r)) for r in zip(*cols)])


def read_spectrum_csv(text: str, kind: str = "cavity_closed_form") -> Spectrum:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header[:2]) != SPECTRUM_HEADER:
        raise ValidationError(f"unexpected spectrum header {header!r}")
    data = np.array([[float(x) for x in row[:2]] for row in reader if row])
    return Spectrum(data[:, 0], data[:, 1], kind)


def trajectory_table(traj: Trajectory) -> Table:
    rows = [[float(t), float(n), float(p), float(c.real), float(c.imag)] for t, n, p, c in zip(traj.t, traj.n, traj.p, traj.c)]
    return Table(list(TRAJECTORY_HEADER), rows)


def sweep_table(cfg: SweepConfig, rows: list[SweepRow]) -> Table:
    columns = [cfg.axis, *cfg.outputs, "note"]
    return Table(columns, [[r.value, *(r.outputs[o] for o in cfg.outputs), r.note] for r in rows])


def write_plot_data(table: Table, directory: str | Path, prefix: str = "") -> list[Path]:
    """One two-column CSV per non-axis numeric column; absent points are skipped."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    x_name, written = table.columns[0], []
    for j, name in enumerate(table.columns[1:], 1):
        points = [(r[0], r[j]) for r in table.rows if isinstance(r[j], (float, np.floating)) and not isinstance(r[j], bool)]
        if not points:
            continue
        sub = Table([x_name, name], [list(p) for p in points], table.digits)
        path = directory / f"{prefix}{name}.csv"
        write_text(to_csv(sub), path)
        written.append(path)
    return written
