"""Scenario runs and parameter sweeps.

A scenario propagates one initial state through a coupling schedule and
attaches per-sample spectral traces (Re(E1-E2), Im E1,2 of the instantaneous
generator) and the interference phase diagnostic cos(Phi).  The sweeps
measure the perturbed-to-unperturbed transmission ratio against the
perturbation length delta_z and the window repetition period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .energy import decompose_state, oscillation_phase, waveguide_energy
from .exceptions import (
    DegenerateInputError,
    ExceptionalPointError,
    InvalidParameterError,
    UndefinedPhaseError,
)
from .propagation import (
    NonlinearParams,
    SpectralDataPair,
    Trajectory,
    _saturable_matrix,
    _segment_basis,
    propagate_linear,
    propagate_nonlinear,
)
from .schedule import CouplingSchedule, kappa_at, optimal_period, segments
from .spectral import DEFAULT_EP_TOL, SpectralData, SystemParams, build_generator, spectral_decompose

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ScenarioConfig:
    """One propagation run.  Exactly one of initial_u / initial_coeffs is set;
    initial_coeffs are eigenbasis coefficients in the base-coupling basis."""

    params: SystemParams
    schedule: CouplingSchedule
    sample_dz: float
    initial_u: tuple[complex, complex] | None = None
    initial_coeffs: tuple[complex, complex] | None = None
    nonlinear: NonlinearParams | None = None
    ep_tol: float = DEFAULT_EP_TOL
    h: float | None = None

    def __post_init__(self):
        if (self.initial_u is None) == (self.initial_coeffs is None):
            raise InvalidParameterError(
                "exactly one of initial_u / initial_coeffs must be given"
            )
        if self.sample_dz <= 0:
            raise InvalidParameterError("sample_dz must be > 0")


@dataclass(frozen=True)
class SweepRow:
    delta_z: float
    period_ratio: float
    ratio: float
    log10_ratio: float
    cos_phase_f: float


@dataclass(frozen=True, eq=False)
class ScenarioResult:
    trajectory: Trajectory
    re_de: np.ndarray      # Re(E1 - E2) of the instantaneous generator
    im_e1: np.ndarray
    im_e2: np.ndarray
    cos_phase: np.ndarray  # nan where undefined (defective or single-mode)


def base_spectral(cfg: ScenarioConfig) -> SpectralData:
    """Spectral data of the generator at the base coupling."""
    params = replace(cfg.params, kappa=cfg.schedule.kappa_base)
    return spectral_decompose(build_generator(params), cfg.ep_tol)


def initial_state(cfg: ScenarioConfig, sd_base: SpectralData | None = None) -> np.ndarray:
    if cfg.initial_u is not None:
        return np.asarray(cfg.initial_u, dtype=complex)
    if sd_base is None:
        sd_base = base_spectral(cfg)
    if sd_base.is_defective:
        raise ExceptionalPointError("eigenbasis initial state undefined at the EP")
    a1, a2 = cfg.initial_coeffs
    return a1 * sd_base.r1 + a2 * sd_base.r2


def phase_aligned_z_first(a1: complex, a2: complex, sd: SpectralData) -> float:
    """Smallest z >= 0 where the interference phase of the freely evolving
    state a1*r1 + a2*r2 reaches a cosine maximum (Phi = 0 mod 2 pi).

    The instantaneous phase decreases as Phi(z) = Phi(0) - omega*z in the
    exp(+i E z) convention."""
    omega = sd.e1.real - sd.e2.real
    if omega <= 0:
        raise ExceptionalPointError("no phase rotation: Re(E1 - E2) = 0")
    phi0, _ = oscillation_phase(a1, a2, sd)
    r = phi0 % TWO_PI
    if TWO_PI - r < 1e-12:
        r = 0.0
    return r / omega


def transmission(traj: Trajectory) -> float:
    """Output-to-input energy ratio E(z_total) / E(0)."""
    if len(traj.energies) == 0:
        raise DegenerateInputError("empty trajectory")
    e0 = traj.energies[0]
    if e0 == 0:
        raise DegenerateInputError("zero input energy")
    return float(traj.energies[-1] / e0)


def _ordered_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues/vectors of a 2x2 matrix, + branch first (Re desc, Im desc)."""
    w, v = np.linalg.eig(m)
    if (w[0].real, w[0].imag) < (w[1].real, w[1].imag):
        w = w[::-1]
        v = v[:, ::-1]
    return w, v


def _instantaneous_traces(cfg: ScenarioConfig, traj: Trajectory) -> ScenarioResult:
    n = len(traj.z_grid)
    re_de = np.empty(n)
    im_e1 = np.empty(n)
    im_e2 = np.empty(n)
    cosp = np.full(n, np.nan)
    sd_cache: dict[complex, SpectralData] = {}
    for i, z in enumerate(traj.z_grid):
        kap = kappa_at(cfg.schedule, float(z))
        u = traj.states[i]
        if cfg.nonlinear is None:
            sd = sd_cache.get(kap)
            if sd is None:
                sd = spectral_decompose(
                    build_generator(replace(cfg.params, kappa=kap)), cfg.ep_tol
                )
                sd_cache[kap] = sd
            re_de[i] = sd.e1.real - sd.e2.real
            im_e1[i] = sd.e1.imag
            im_e2[i] = sd.e2.imag
            if not sd.is_defective:
                try:
                    a1, a2 = decompose_state(u, sd)
                    cosp[i] = oscillation_phase(a1, a2, sd)[1]
                except UndefinedPhaseError:
                    pass
        else:
            m = _saturable_matrix(cfg.params, cfg.nonlinear, kap, u)
            w, v = _ordered_eig(m)
            re_de[i] = w[0].real - w[1].real
            im_e1[i] = w[0].imag
            im_e2[i] = w[1].imag
            if abs(w[0] - w[1]) > 1e-12 * max(1.0, abs(w[0])):
                a = np.linalg.solve(v, u)
                if a[0] != 0 and a[1] != 0:
                    ov = complex(np.vdot(v[:, 0], v[:, 1]))
                    nrm = np.linalg.norm(v[:, 0]) * np.linalg.norm(v[:, 1])
                    ph = np.conj(a[0]) * a[1] * ov / nrm
                    if ph != 0:
                        cosp[i] = math.cos(np.angle(ph))
    return ScenarioResult(trajectory=traj, re_de=re_de, im_e1=im_e1, im_e2=im_e2, cos_phase=cosp)


def _subsample(traj: Trajectory, sample_dz: float) -> Trajectory:
    """Keep samples nearest to multiples of sample_dz plus the endpoints."""
    z_total = traj.z_grid[-1]
    targets = np.arange(0.0, z_total + sample_dz / 2, sample_dz)
    idx = np.unique(np.searchsorted(traj.z_grid, targets))
    idx = np.clip(idx, 0, len(traj.z_grid) - 1)
    if idx[-1] != len(traj.z_grid) - 1:
        idx = np.append(idx, len(traj.z_grid) - 1)
    return Trajectory(
        z_grid=traj.z_grid[idx], states=traj.states[idx], energies=traj.energies[idx]
    )


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    """Propagate per cfg and attach eigen/phase traces at every sample."""
    sd_base = base_spectral(cfg)
    u0 = initial_state(cfg, sd_base)
    if cfg.nonlinear is None:
        traj = propagate_linear(u0, cfg.schedule, cfg.params, cfg.sample_dz, cfg.ep_tol)
    else:
        h = cfg.h if cfg.h is not None else cfg.schedule.period / 4096.0
        traj = propagate_nonlinear(u0, cfg.schedule, cfg.params, cfg.nonlinear, h)
        traj = _subsample(traj, cfg.sample_dz)
    return _instantaneous_traces(cfg, traj)


class _SegmentWalker:
    """Exact linear walk over a schedule, reusing per-coupling eigenbases."""

    def __init__(self, params: SystemParams, ep_tol: float):
        self.params = params
        self.ep_tol = ep_tol
        self._cache: dict[complex, SpectralDataPair] = {}

    def basis(self, kap: complex) -> SpectralDataPair:
        pair = self._cache.get(kap)
        if pair is None:
            pair = _segment_basis(self.params, kap, self.ep_tol)
            self._cache[kap] = pair
        return pair

    def run(self, state0: np.ndarray, schedule: CouplingSchedule, z_mark: float | None = None):
        """Final state, plus the state at z_mark if it lies inside [0, z_total]."""
        u = np.asarray(state0, dtype=complex)
        marked = None
        for z0, z1, kap in segments(schedule):
            pair = self.basis(kap)
            if z_mark is not None and z0 <= z_mark <= z1 and marked is None:
                marked = pair.advance(u, z_mark - z0)
            u = pair.advance(u, z1 - z0)
        return u, marked


def _sweep_cell(
    walker: _SegmentWalker,
    state0: np.ndarray,
    schedule: CouplingSchedule,
    sd_base: SpectralData,
    e_unpert: float,
    period_ratio: float,
) -> SweepRow:
    z_mark = schedule.z_first + schedule.delta_z
    u_final, u_after = walker.run(state0, schedule, z_mark=z_mark)
    ratio = waveguide_energy(u_final) / e_unpert
    cos_f = math.nan
    if u_after is not None:
        try:
            a1, a2 = decompose_state(u_after, sd_base)
            cos_f = oscillation_phase(a1, a2, sd_base)[1]
        except (ExceptionalPointError, UndefinedPhaseError):
            pass
    return SweepRow(
        delta_z=float(schedule.delta_z),
        period_ratio=float(period_ratio),
        ratio=float(ratio),
        log10_ratio=float(math.log10(ratio)),
        cos_phase_f=float(cos_f),
    )


def _sweep_setup(cfg: ScenarioConfig):
    sd_base = base_spectral(cfg)
    if sd_base.is_defective:
        raise ExceptionalPointError("sweeps require non-defective base parameters")
    state0 = initial_state(cfg, sd_base)
    walker = _SegmentWalker(cfg.params, cfg.ep_tol)
    # unperturbed reference: constant base coupling over the same length
    u_un = walker.basis(cfg.schedule.kappa_base).advance(
        np.asarray(state0, dtype=complex), cfg.schedule.z_total
    )
    e_un = waveguide_energy(u_un)
    if e_un == 0.0:
        raise DegenerateInputError(
            "unperturbed endpoint energy underflowed to zero; reduce z_total"
        )
    return sd_base, state0, walker, e_un


def sweep_perturbation_length(cfg: ScenarioConfig, dz_grid) -> list[SweepRow]:
    """Transmission ratio and post-window phase against perturbation length."""
    sd_base, state0, walker, e_un = _sweep_setup(cfg)
    pr = cfg.schedule.period / optimal_period(
        replace(cfg.params, kappa=cfg.schedule.kappa_base)
    )
    rows = []
    for dz in dz_grid:
        sched = replace(cfg.schedule, delta_z=float(dz))
        rows.append(_sweep_cell(walker, state0, sched, sd_base, e_un, pr))
    return rows


def sweep_period_length(cfg: ScenarioConfig, period_ratios, dz_grid) -> list[SweepRow]:
    """Transmission-ratio grid over (period, perturbation length).

    period_ratios are multiples of the optimal period of the base coupling;
    rows are ordered by (period_ratio, delta_z)."""
    sd_base, state0, walker, e_un = _sweep_setup(cfg)
    d_opt = optimal_period(replace(cfg.params, kappa=cfg.schedule.kappa_base))
    rows = []
    for rho in period_ratios:
        period = float(rho) * d_opt
        for dz in dz_grid:
            sched = replace(cfg.schedule, period=period, delta_z=float(dz))
            rows.append(_sweep_cell(walker, state0, sched, sd_base, e_un, float(rho)))
    rows.sort(key=lambda r: (r.period_ratio, r.delta_z))
    return rows


def default_dz_grid(period: float, n: int = 200) -> np.ndarray:
    """n perturbation lengths in (0, period/10]: below one internal rotation
    period of the strong-coupling window, so the phase diagnostic crosses +1
    only once."""
    return np.linspace(period / 10.0 / n, period / 10.0, n)


def default_period_ratios(n: int = 101) -> np.ndarray:
    return np.linspace(0.5, 1.5, n)
