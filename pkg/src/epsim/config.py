"""Flat ``key = value`` run configuration.

The format is plain UTF-8 text: one ``key = value`` assignment per line,
``#`` starts a comment, blank lines are ignored.  Physics keys follow the
conventions of the coupled-waveguide captions: ``g2`` is the squared gain
contrast g^2 (absolute units), while ``kappa2_out`` and ``kappa2_in`` are the
squared couplings of the base and the perturbation window *as multiples of
g^2* (so ``kappa2_out = 1.01`` means |kappa|^2 = 1.01 g^2).

Every omitted optional key is resolved to a concrete numeric default at parse
time; the names of the defaulted keys are echoed on the returned RunConfig so
callers can report what was filled in.  ``serialize_config`` writes all keys
back out, and re-parsing that text yields an equal RunConfig.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .energy import decompose_state
from .exceptions import ConfigError, UndefinedPhaseError
from .experiments import ScenarioConfig, phase_aligned_z_first
from .propagation import NonlinearParams
from .schedule import CouplingSchedule, optimal_period
from .spectral import (
    DEFAULT_EP_TOL,
    SystemParams,
    build_generator,
    spectral_decompose,
)


class EpCrossingWarning(UserWarning):
    """The perturbation window sits at or below the exceptional point."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters (every optional key made concrete)."""

    g2: float
    gamma: float
    kappa2_out: float
    kappa2_in: float
    beta: float
    period: float
    delta_z: float
    z_first: float
    z_total: float
    z_total_grid: float
    sample_dz: float
    initial: str            # "eigen" (coefficients a1, a2) or "waveguide" (u1, u2)
    u1: complex
    u2: complex
    a1: complex
    a2: complex
    g_c: float
    alpha: float
    h: float
    ep_tol: float
    dz_points: int
    dz_max: float
    ratio_min: float
    ratio_max: float
    ratio_points: int
    # names of the keys that were filled from defaults, for reporting only
    defaulted: tuple[str, ...] = field(default=(), compare=False)

    @property
    def g(self) -> float:
        return math.sqrt(self.g2)

    @property
    def kappa_base(self) -> complex:
        return math.sqrt(self.kappa2_out * self.g2)

    @property
    def kappa_pert(self) -> complex:
        return math.sqrt(self.kappa2_in * self.g2)

    def system_params(self) -> SystemParams:
        return SystemParams(
            beta=self.beta, gamma=self.gamma, g=self.g, kappa=self.kappa_base
        )

    def schedule(self, z_total: float | None = None) -> CouplingSchedule:
        return CouplingSchedule(
            kappa_base=self.kappa_base,
            kappa_pert=self.kappa_pert,
            delta_z=self.delta_z,
            period=self.period,
            z_total=self.z_total if z_total is None else z_total,
            z_first=self.z_first,
        )

    def scenario(
        self, nonlinear: bool = False, z_total: float | None = None
    ) -> ScenarioConfig:
        kwargs = dict(
            params=self.system_params(),
            schedule=self.schedule(z_total),
            sample_dz=self.sample_dz,
            nonlinear=NonlinearParams(self.g_c, self.alpha) if nonlinear else None,
            ep_tol=self.ep_tol,
            h=self.h,
        )
        if self.initial == "waveguide":
            kwargs["initial_u"] = (self.u1, self.u2)
        else:
            kwargs["initial_coeffs"] = (self.a1, self.a2)
        return ScenarioConfig(**kwargs)

    def dz_grid(self) -> np.ndarray:
        return np.linspace(
            self.dz_max / self.dz_points, self.dz_max, self.dz_points
        )

    def period_ratios(self) -> np.ndarray:
        return np.linspace(self.ratio_min, self.ratio_max, self.ratio_points)


_REQUIRED = ("g2", "gamma", "kappa2_out", "kappa2_in")

# key -> converter; order here is the canonical serialization order
_CONVERTERS = {
    "g2": float,
    "gamma": float,
    "kappa2_out": float,
    "kappa2_in": float,
    "beta": float,
    "period": float,
    "delta_z": float,
    "z_first": float,
    "z_total": float,
    "z_total_grid": float,
    "sample_dz": float,
    "initial": str,
    "u1": complex,
    "u2": complex,
    "a1": complex,
    "a2": complex,
    "g_c": float,
    "alpha": float,
    "h": float,
    "ep_tol": float,
    "dz_points": int,
    "dz_max": float,
    "ratio_min": float,
    "ratio_max": float,
    "ratio_points": int,
}


def _positive(raw: dict, key: str) -> None:
    if key in raw and not raw[key] > 0:
        raise ConfigError(f"{key} must be > 0, got {raw[key]!r}", key=key)


def parse_config(text: str) -> RunConfig:
    """Parse and validate config text, resolving all defaults to numbers.

    Raises ConfigError naming the offending key and line for unknown keys,
    duplicate keys, malformed values, and constraint violations.
    """
    raw: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", line=lineno)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONVERTERS:
            raise ConfigError(f"unknown key {key!r}", key=key, line=lineno)
        if key in raw:
            raise ConfigError(
                f"duplicate key {key!r} (first set on line {lines[key]})",
                key=key,
                line=lineno,
            )
        try:
            raw[key] = _CONVERTERS[key](value)
        except ValueError as exc:
            raise ConfigError(
                f"bad value for {key!r}: {value!r} ({exc})", key=key, line=lineno
            ) from exc
        lines[key] = lineno

    for key in _REQUIRED:
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}", key=key)

    for key in ("g2", "kappa2_out", "kappa2_in", "period", "delta_z", "z_total",
                "z_total_grid", "sample_dz", "h", "ep_tol", "dz_points", "dz_max",
                "ratio_points"):
        _positive(raw, key)
    if "initial" in raw and raw["initial"] not in ("eigen", "waveguide"):
        raise ConfigError(
            f"initial must be 'eigen' or 'waveguide', got {raw['initial']!r}",
            key="initial",
            line=lines["initial"],
        )
    if "z_first" in raw and raw["z_first"] < 0:
        raise ConfigError("z_first must be >= 0", key="z_first", line=lines["z_first"])
    if raw["kappa2_in"] <= 1.0:
        warnings.warn(
            "kappa2_in <= g2: the perturbation window sits at or below the "
            "exceptional point (degenerate / purely growing-decaying spectrum)",
            EpCrossingWarning,
            stacklevel=2,
        )

    defaulted = [k for k in _CONVERTERS if k not in raw]
    out = dict(raw)
    out.setdefault("beta", 0.0)
    out.setdefault("initial", "eigen")
    out.setdefault("u1", 1.0 + 0.0j)
    out.setdefault("u2", 1.0 + 0.0j)
    out.setdefault("g_c", 0.05)
    out.setdefault("alpha", 1e-4)
    out.setdefault("ep_tol", DEFAULT_EP_TOL)
    out.setdefault("dz_points", 200)
    out.setdefault("ratio_min", 0.5)
    out.setdefault("ratio_max", 1.5)
    out.setdefault("ratio_points", 101)

    g = math.sqrt(out["g2"])
    params = SystemParams(
        beta=out["beta"],
        gamma=out["gamma"],
        g=g,
        kappa=math.sqrt(out["kappa2_out"] * out["g2"]),
    )
    sd = spectral_decompose(build_generator(params), out["ep_tol"])
    oscillatory = (not sd.is_defective) and sd.e1.real - sd.e2.real > 0

    if "period" not in out:
        if not oscillatory:
            raise ConfigError(
                "no optimal period exists for kappa2_out <= 1 (spectrum does "
                "not oscillate); set 'period' explicitly",
                key="period",
            )
        out["period"] = optimal_period(params)
    period = out["period"]
    out.setdefault("delta_z", period / 50.0)
    out.setdefault("z_total", 10.0 * period)
    out.setdefault("z_total_grid", 20.0 * period)
    out.setdefault("sample_dz", period / 200.0)
    out.setdefault("h", period / 4096.0)
    out.setdefault("dz_max", period / 10.0)

    if "a1" not in out or "a2" not in out:
        # equal eigenmode amplitudes scaled for unit initial energy
        a = 1.0 / np.linalg.norm(sd.r1 + sd.r2) if oscillatory else 1.0
        out.setdefault("a1", complex(a))
        out.setdefault("a2", complex(a))

    if "z_first" not in out:
        out["z_first"] = 0.0
        if oscillatory:
            if out["initial"] == "waveguide":
                state = np.array([out["u1"], out["u2"]], dtype=complex)
            else:
                state = out["a1"] * sd.r1 + out["a2"] * sd.r2
            try:
                a1, a2 = decompose_state(state, sd)
                out["z_first"] = phase_aligned_z_first(a1, a2, sd)
            except UndefinedPhaseError:
                pass  # single-mode state: no interference phase to align

    if not out["delta_z"] < out["period"]:
        raise ConfigError(
            f"delta_z must be smaller than period, got delta_z={out['delta_z']!r} "
            f"period={out['period']!r}",
            key="delta_z",
        )
    if not out["dz_max"] < out["period"] * out["ratio_min"]:
        raise ConfigError(
            "dz_max must stay below the shortest swept period "
            "(period * ratio_min)",
            key="dz_max",
        )
    if out["ratio_min"] > out["ratio_max"]:
        raise ConfigError("ratio_min must not exceed ratio_max", key="ratio_min")

    return RunConfig(defaulted=tuple(defaulted), **out)


def serialize_config(cfg: RunConfig) -> str:
    """Write all keys back out; parse_config of the result equals cfg."""
    parts = []
    for key, conv in _CONVERTERS.items():
        value = getattr(cfg, key)
        parts.append(f"{key} = {value}" if conv is str else f"{key} = {value!r}")
    return "\n".join(parts) + "\n"
