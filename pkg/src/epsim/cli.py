"""Command-line interface.

Subcommands:
  spectrum    eigenvalues/eigenvectors, overlap, |c| and EP flag of the base
              coupling (text report)
  simulate    run one scenario and write the trace CSV (--nonlinear switches
              to the saturable-gain integrator)
  sweep-dz    perturbation-length sweep CSV
  sweep-grid  (period, perturbation-length) grid CSV
  ep          Jordan-chain report at the exceptional point

Every run is a pure function of its config file: identical configs produce
byte-identical outputs.  Exit codes: 0 success, 1 config or I/O error,
2 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

import numpy as np

from .config import RunConfig, parse_config
from .csvio import write_grid_csv, write_trace_csv
from .exceptions import ConfigError, EpsimError, InvalidParameterError
from .experiments import run_scenario, sweep_period_length, sweep_perturbation_length
from .spectral import build_generator, jordan_chain, spectral_decompose


def _load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return parse_config(text)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _fmt_vec(v: np.ndarray) -> str:
    return f"({complex(v[0])!r}, {complex(v[1])!r})"


def _cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    sd = spectral_decompose(build_generator(cfg.system_params()), cfg.ep_tol)
    lines = [
        f"E1 = {sd.e1!r}",
        f"E2 = {sd.e2!r}",
        f"r1 = {_fmt_vec(sd.r1)}",
        f"r2 = {_fmt_vec(sd.r2)}",
        f"overlap = {sd.overlap!r}",
        f"abs_overlap = {abs(sd.overlap)!r}",
        f"abs_c = {abs(sd.c_param)!r}",
        f"defective = {sd.is_defective}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_ep(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    params = cfg.system_params()
    forced = False
    if not params.is_defective(cfg.ep_tol):
        # report the exceptional point of the configured gain contrast:
        # move |kappa| onto g, keeping the coupling phase
        phase = np.angle(complex(params.kappa)) if params.kappa != 0 else 0.0
        params = replace(params, kappa=params.g * complex(math.cos(phase), math.sin(phase)))
        forced = True
    gen = build_generator(params)
    sd = spectral_decompose(gen, cfg.ep_tol)
    adj = jordan_chain(gen, sd.e1, tol=cfg.ep_tol, phi=sd.r1)
    resid = np.linalg.norm((gen.m - sd.e1 * np.eye(2)) @ adj - sd.r1)
    lines = [
        f"coupling_forced_to_ep = {forced}",
        f"kappa = {complex(params.kappa)!r}",
        f"E = {sd.e1!r}",
        f"phi = {_fmt_vec(sd.r1)}",
        f"phi_adjoint = {_fmt_vec(adj)}",
        f"chain_residual = {float(resid)!r}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    result = run_scenario(cfg.scenario(nonlinear=args.nonlinear))
    write_trace_csv(result, args.out)
    return 0


def _cmd_sweep_dz(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    rows = sweep_perturbation_length(cfg.scenario(), cfg.dz_grid())
    write_grid_csv(rows, args.out)
    return 0


def _cmd_sweep_grid(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    rows = sweep_period_length(
        cfg.scenario(z_total=cfg.z_total_grid),
        cfg.period_ratios(),
        cfg.dz_grid(),
    )
    write_grid_csv(rows, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epsim",
        description="Parametric instability near the exceptional point: "
        "spectra, trajectories and transmission sweeps of a two-level "
        "non-Hermitian system.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, out_required: bool, nonlinear: bool = False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="path to key = value config file")
        p.add_argument(
            "--out",
            required=out_required,
            default=None,
            help="output path" + ("" if out_required else " (default: stdout)"),
        )
        if nonlinear:
            p.add_argument(
                "--nonlinear",
                action="store_true",
                help="use the saturable-gain integrator instead of the linear propagator",
            )
        p.set_defaults(func=func)

    add("spectrum", _cmd_spectrum, "print spectral data of the base coupling", False)
    add("simulate", _cmd_simulate, "propagate one scenario to a trace CSV", True,
        nonlinear=True)
    add("sweep-dz", _cmd_sweep_dz, "perturbation-length sweep CSV", True)
    add("sweep-grid", _cmd_sweep_grid, "(period, perturbation-length) grid CSV", True)
    add("ep", _cmd_ep, "Jordan-chain report at the exceptional point", False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except EpsimError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
