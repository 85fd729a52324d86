#!/usr/bin/env python3
"""Map the endpoint energy ratio over (window period, window length).

Prints the amplifying fraction of the grid.
"""
import argparse
import pathlib

import numpy as np

from epsim import parse_config, sweep_period_length
from epsim.csvio import write_grid_csv

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=ROOT / "configs" / "period_grid.cfg")
    ap.add_argument("--out", default="period_grid.csv")
    args = ap.parse_args()

    cfg = parse_config(pathlib.Path(args.config).read_text())
    scenario = cfg.scenario(z_total=cfg.z_total_grid)
    rows = sweep_period_length(scenario, cfg.period_ratios(), cfg.dz_grid())
    write_grid_csv(rows, args.out)

    ratio = np.array([r.ratio for r in rows])
    print(f"wrote {args.out} ({len(rows)} rows)")
    print(f"amplifying cells: {np.mean(ratio > 1.0):.1%}")


if __name__ == "__main__":
    main()
