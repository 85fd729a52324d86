"""Deterministic CSV output for scenario traces and sweep grids.

Numbers are written with ``repr``, i.e. the shortest decimal string that
round-trips to the same float, so reloading a file reproduces the computed
values exactly.  Files use LF line endings and ``.`` as the decimal
separator regardless of platform or locale.
"""
from __future__ import annotations

import csv
from typing import Iterable

from .experiments import ScenarioResult, SweepRow

TRACE_HEADER = (
    "z",
    "re_u1",
    "im_u1",
    "re_u2",
    "im_u2",
    "energy",
    "re_dE",
    "im_E1",
    "im_E2",
    "cos_phase",
)
GRID_HEADER = ("delta_z", "period_ratio", "ratio", "log10_ratio", "cos_phase_f")


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trace_csv(result: ScenarioResult, path) -> None:
    """One row per trajectory sample; cos_phase is nan where undefined."""
    traj = result.trajectory
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for i, z in enumerate(traj.z_grid):
            u1, u2 = traj.states[i]
            writer.writerow(
                [
                    _fmt(z),
                    _fmt(u1.real),
                    _fmt(u1.imag),
                    _fmt(u2.real),
                    _fmt(u2.imag),
                    _fmt(traj.energies[i]),
                    _fmt(result.re_de[i]),
                    _fmt(result.im_e1[i]),
                    _fmt(result.im_e2[i]),
                    _fmt(result.cos_phase[i]),
                ]
            )


def write_grid_csv(rows: Iterable[SweepRow], path) -> None:
    """Rows ordered by (period_ratio, delta_z) lexicographically."""
    ordered = sorted(rows, key=lambda r: (r.period_ratio, r.delta_z))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(GRID_HEADER)
        for row in ordered:
            writer.writerow(
                [
                    _fmt(row.delta_z),
                    _fmt(row.period_ratio),
                    _fmt(row.ratio),
                    _fmt(row.log10_ratio),
                    _fmt(row.cos_phase_f),
                ]
            )


def read_csv(path) -> dict[str, list[float]]:
    """Reload a trace or grid CSV into per-column float lists."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        columns: dict[str, list[float]] = {name: [] for name in header}
        for record in reader:
            for name, cell in zip(header, record):
                columns[name].append(float(cell))
    return columns
