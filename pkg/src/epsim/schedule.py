"""Piecewise-constant coupling profile kappa(z).

The coupling takes a perturbed value in half-open windows
[z_first + k*period, z_first + k*period + delta_z) and the base value
elsewhere; `period` is measured start-to-start of the windows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ExceptionalPointError, InvalidParameterError
from .spectral import SystemParams


@dataclass(frozen=True)
class CouplingSchedule:
    kappa_base: complex
    kappa_pert: complex
    delta_z: float
    period: float
    z_total: float
    z_first: float = 0.0

    def __post_init__(self):
        vals = (
            self.kappa_base.real, self.kappa_base.imag,
            self.kappa_pert.real, self.kappa_pert.imag,
            self.delta_z, self.period, self.z_first, self.z_total,
        )
        if not all(np.isfinite(v) for v in vals):
            raise InvalidParameterError("schedule fields must be finite")
        if not (0.0 < self.delta_z < self.period):
            raise InvalidParameterError(
                f"need 0 < delta_z < period, got delta_z={self.delta_z}, period={self.period}"
            )
        if self.z_first < 0:
            raise InvalidParameterError("z_first must be >= 0")
        if self.z_total < self.period:
            raise InvalidParameterError("z_total must be >= period")


def kappa_at(s: CouplingSchedule, z: float) -> complex:
    """Coupling value at coordinate z (half-open perturbation windows)."""
    if not (0.0 <= z <= s.z_total):
        raise DomainError(f"z={z} outside [0, {s.z_total}]")
    if z < s.z_first:
        return s.kappa_base
    if math.fmod(z - s.z_first, s.period) < s.delta_z:
        return s.kappa_pert
    return s.kappa_base


def segments(s: CouplingSchedule) -> list[tuple[float, float, complex]]:
    """Contiguous constant-kappa segments covering [0, z_total].

    Consistent with kappa_at at every interior point; adjacent segments carry
    distinct kappa (equal neighbours are merged).
    """
    raw: list[tuple[float, float, complex]] = []
    cursor = 0.0
    k = 0
    while True:
        start = s.z_first + k * s.period
        if start >= s.z_total:
            break
        end = min(start + s.delta_z, s.z_total)
        if start > cursor:
            raw.append((cursor, start, s.kappa_base))
        raw.append((start, end, s.kappa_pert))
        cursor = end
        k += 1
    if cursor < s.z_total:
        raw.append((cursor, s.z_total, s.kappa_base))

    merged: list[tuple[float, float, complex]] = []
    for seg in raw:
        if merged and merged[-1][2] == seg[2]:
            merged[-1] = (merged[-1][0], seg[1], seg[2])
        else:
            merged.append(seg)
    return merged


def optimal_period(params: SystemParams) -> float:
    """Half the energy-oscillation period: pi / (2 sqrt(|kappa|^2 - g^2))."""
    d = params.discriminant()
    if d <= 0:
        raise ExceptionalPointError(
            "no real eigenvalue splitting: |kappa|^2 <= g^2, oscillation period undefined"
        )
    return math.pi / (2.0 * math.sqrt(d))
