"""State evolution along z.

Linear propagation is exact: each constant-kappa segment is advanced with the
closed-form matrix exponential exp(i M dz), including the nilpotent
(defective) branch at the exceptional point.  The saturable-gain system is
integrated with a fixed-step RK4 whose steps never straddle a kappa
discontinuity.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .exceptions import DivergenceError, InvalidParameterError
from .schedule import CouplingSchedule, segments
from .spectral import (
    DEFAULT_EP_TOL,
    Generator,
    SystemParams,
    build_generator,
    spectral_decompose,
)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled evolution: z grid, states (N,2) and norm energies |u1|^2+|u2|^2."""

    z_grid: np.ndarray
    states: np.ndarray
    energies: np.ndarray


@dataclass(frozen=True)
class NonlinearParams:
    """Saturable gain/loss scale g_c and nonlinearity coefficient alpha."""

    g_c: float
    alpha: float

    def __post_init__(self):
        if not (np.isfinite(self.g_c) and np.isfinite(self.alpha)):
            raise InvalidParameterError("nonlinear parameters must be finite")
        if self.g_c < 0 or self.alpha < 0:
            raise InvalidParameterError("nonlinear parameters must be >= 0")


def propagator_matrix(gen: Generator, dz: float, ep_tol: float = DEFAULT_EP_TOL) -> np.ndarray:
    """exp(i M dz).

    Diagonalizable branch: R diag(e^{i E dz}) R^-1.  Defective branch:
    e^{i E dz} (I + i dz N) with the nilpotent N = M - E I (N^2 = 0), which is
    the matrix form of the linear-in-z Jordan evolution.
    """
    if dz < 0:
        raise InvalidParameterError("dz must be >= 0")
    sd = spectral_decompose(gen, ep_tol)
    if sd.is_defective:
        e = sd.e1
        n = gen.m - e * np.eye(2)
        return np.exp(1j * e * dz) * (np.eye(2, dtype=complex) + 1j * dz * n)
    rmat = np.column_stack([sd.r1, sd.r2])
    return rmat @ np.diag(np.exp(1j * np.array([sd.e1, sd.e2]) * dz)) @ np.linalg.inv(rmat)


def _sample_grid(bounds: list[float], z_total: float, sample_dz: float) -> np.ndarray:
    if sample_dz <= 0:
        raise InvalidParameterError("sample_dz must be > 0")
    n = int(np.floor(z_total / sample_dz + 1e-12))
    zs = np.concatenate([np.arange(n + 1) * sample_dz, np.asarray(bounds), [z_total]])
    zs = np.unique(zs)
    return zs[(zs >= 0.0) & (zs <= z_total)]


def propagate_linear(
    state0,
    schedule: CouplingSchedule,
    params: SystemParams,
    sample_dz: float,
    ep_tol: float = DEFAULT_EP_TOL,
) -> Trajectory:
    """Exact segment-wise evolution of d/dz u = i M(z) u.

    Samples at multiples of sample_dz plus every segment boundary; the states
    are independent of sample_dz up to roundoff.
    """
    segs = segments(schedule)
    bounds = [s[0] for s in segs] + [segs[-1][1]]
    zs = _sample_grid(bounds, schedule.z_total, sample_dz)

    # one spectral decomposition per distinct coupling value
    cache: dict[complex, SpectralDataPair] = {}
    states = np.empty((len(zs), 2), dtype=complex)
    u = np.asarray(state0, dtype=complex)
    idx = 0
    for z0, z1, kap in segs:
        pair = cache.get(kap)
        if pair is None:
            pair = _segment_basis(params, kap, ep_tol)
            cache[kap] = pair
        while idx < len(zs) and zs[idx] <= z1:
            states[idx] = pair.advance(u, zs[idx] - z0)
            idx += 1
        u = pair.advance(u, z1 - z0)
    while idx < len(zs):  # roundoff guard: trailing samples equal z_total
        states[idx] = u
        idx += 1
    energies = np.sum(np.abs(states) ** 2, axis=1)
    return Trajectory(z_grid=zs, states=states, energies=energies)


class SpectralDataPair:
    """Per-segment exact propagation in the eigen (or Jordan) basis."""

    def __init__(self, gen: Generator, ep_tol: float):
        self.sd = spectral_decompose(gen, ep_tol)
        self.gen = gen
        if self.sd.is_defective:
            self._n = gen.m - self.sd.e1 * np.eye(2)
        else:
            self._rmat = np.column_stack([self.sd.r1, self.sd.r2])
            self._lmat = np.linalg.inv(self._rmat)
            self._es = np.array([self.sd.e1, self.sd.e2])

    def advance(self, u: np.ndarray, dz: float) -> np.ndarray:
        if self.sd.is_defective:
            return np.exp(1j * self.sd.e1 * dz) * (u + 1j * dz * (self._n @ u))
        return self._rmat @ (np.exp(1j * self._es * dz) * (self._lmat @ u))


def _segment_basis(params: SystemParams, kap: complex, ep_tol: float) -> SpectralDataPair:
    gen = build_generator(replace(params, kappa=kap))
    return SpectralDataPair(gen, ep_tol)


def _saturable_matrix(params: SystemParams, nl: NonlinearParams, kap: complex, u: np.ndarray) -> np.ndarray:
    """Coupled-mode matrix with the fixed +/-g replaced by saturable terms:
    g1 = +g_c/(1 + alpha |u1|^2) (loss side, matching +g in the linear
    generator), g2 = -g_c/(1 + alpha |u2|^2) (saturable gain side), so the
    alpha -> 0 limit is exactly the linear system with g replaced by g_c."""
    g1 = +nl.g_c / (1.0 + nl.alpha * abs(u[0]) ** 2)
    g2 = -nl.g_c / (1.0 + nl.alpha * abs(u[1]) ** 2)
    d = params.beta + 1j * params.gamma
    return np.array([[d + 1j * g1, np.conj(kap)], [kap, d + 1j * g2]], dtype=complex)


def propagate_nonlinear(
    state0,
    schedule: CouplingSchedule,
    params: SystemParams,
    nl: NonlinearParams,
    h: float,
) -> Trajectory:
    """Fixed-step RK4 for d/dz u = i M(z, u) u with saturable diagonal gain.

    Each segment is covered by ceil(length/h) equal steps of length <= h, so
    no step straddles a kappa discontinuity.  Every step is recorded.
    """
    if h <= 0:
        raise InvalidParameterError("step h must be > 0")
    u = np.asarray(state0, dtype=complex)
    zs = [0.0]
    states = [u.copy()]
    for z0, z1, kap in segments(schedule):
        def f(uu):
            return 1j * (_saturable_matrix(params, nl, kap, uu) @ uu)

        z = z0
        length = z1 - z0
        nsteps = max(1, int(np.ceil(length / h - 1e-12)))
        step = length / nsteps
        for _ in range(nsteps):
            k1 = f(u)
            k2 = f(u + 0.5 * step * k1)
            k3 = f(u + 0.5 * step * k2)
            k4 = f(u + step * k3)
            u = u + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            z += step
            if not np.all(np.isfinite(u)):
                raise DivergenceError(z)
            zs.append(z)
            states.append(u.copy())
        zs[-1] = z1  # absorb roundoff at the segment boundary
    z_grid = np.asarray(zs)
    st = np.asarray(states)
    return Trajectory(z_grid=z_grid, states=st, energies=np.sum(np.abs(st) ** 2, axis=1))
