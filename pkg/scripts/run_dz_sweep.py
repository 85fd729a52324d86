#!/usr/bin/env python3
"""Sweep the perturbation-window length and write the ratio/phase table.

Prints the loss interval (cells with endpoint ratio < 1) and the fraction of
amplifying cells.
"""
import argparse
import pathlib

import numpy as np

from epsim import parse_config, sweep_perturbation_length
from epsim.csvio import write_grid_csv

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=ROOT / "configs" / "dz_sweep.cfg")
    ap.add_argument("--out", default="dz_sweep.csv")
    args = ap.parse_args()

    cfg = parse_config(pathlib.Path(args.config).read_text())
    rows = sweep_perturbation_length(cfg.scenario(), cfg.dz_grid())
    write_grid_csv(rows, args.out)

    dz = np.array([r.delta_z for r in rows])
    ratio = np.array([r.ratio for r in rows])
    sub = dz[ratio < 1.0]
    print(f"wrote {args.out} ({len(rows)} rows)")
    print(f"amplifying cells: {np.mean(ratio > 1.0):.1%}")
    if sub.size:
        print(f"loss cells at delta_z in [{sub.min():g}, {sub.max():g}]")


if __name__ == "__main__":
    main()
