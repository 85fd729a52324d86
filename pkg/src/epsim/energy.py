"""Energy functionals of the two-mode system.

Two distinct energies appear:

* the quadratic form <psi|M|psi> (complex; its real part is the modal energy
  and its imaginary part the dissipation), with a closed-form decomposition
  into a diagonal part and an interference term oscillating at
  omega = |Re(E1 - E2)|;
* the plain waveguide norm |u1|^2 + |u2|^2 tracked along propagation runs.

The closed forms are written against the eigenvalues supplied in the
SpectralData with states evolving as a_i * exp(-i E_i t); callers in the
waveguide convention (exp(+i E z)) pass instantaneous coefficients instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ExceptionalPointError, UndefinedPhaseError
from .spectral import Generator, SpectralData


@dataclass(frozen=True)
class EnergyBreakdown:
    """Diagonal/oscillatory split of the complex energy at one instant.

    total = e_av + e_osc * cos_phase holds whenever Im E1 = Im E2 (the
    interference term then carries a pure cosine); omega == 0 flags the
    degenerate case where the phase does not rotate.
    """

    total: float
    complex_energy: complex
    e_av: float
    e_osc: float
    omega: float
    theta: float
    t_theta: float
    cos_phase: float


def waveguide_energy(state) -> float:
    """|u1|^2 + |u2|^2."""
    u = np.asarray(state, dtype=complex)
    return float(np.sum(np.abs(u) ** 2))


def energy_expectation(state, gen: Generator) -> complex:
    """Quadratic form <psi|M|psi> of the generator matrix."""
    u = np.asarray(state, dtype=complex)
    return complex(np.vdot(u, gen.m @ u))


def decompose_state(state, sd: SpectralData) -> tuple[complex, complex]:
    """Eigenbasis coefficients via the left eigenvectors: a_i = <l_i|psi>."""
    if sd.is_defective:
        raise ExceptionalPointError(
            "eigenbasis is incomplete at the exceptional point; use the Jordan expansion"
        )
    u = np.asarray(state, dtype=complex)
    return complex(np.vdot(sd.l1, u)), complex(np.vdot(sd.l2, u))


def energy_closed_form(a1: complex, a2: complex, sd: SpectralData, t: float) -> EnergyBreakdown:
    """Evaluate the closed-form energy of the state a1*r1 + a2*r2 after time t.

    complex_energy is exactly the quadratic form along the evolved state; the
    remaining fields express its diagonal/oscillatory structure, with
    envelope exp(Im(E1+E2) t) on the interference term and amplitude
    |Re(E1+E2) * A|, A = conj(a1) * a2 * <r1|r2>.
    """
    if sd.is_defective:
        raise ExceptionalPointError("closed-form split requires a non-defective spectrum")
    e1, e2 = sd.e1, sd.e2
    p1 = abs(a1) ** 2 * math.exp(2.0 * e1.imag * t)
    p2 = abs(a2) ** 2 * math.exp(2.0 * e2.imag * t)
    a_cross = np.conj(a1) * a2 * sd.overlap
    delta = e1.real - e2.real  # >= 0 by eigenvalue ordering
    env = math.exp((e1.imag + e2.imag) * t)
    cross = (e2 * a_cross * cmath.exp(1j * delta * t)
             + e1 * np.conj(a_cross) * cmath.exp(-1j * delta * t)) * env
    complex_energy = e1 * p1 + e2 * p2 + cross
    e_av = e1.real * p1 + e2.real * p2

    omega = abs(delta)
    theta = cmath.phase(np.conj(a1) * a2) if (a1 != 0 and a2 != 0) else 0.0
    re_sum = e1.real + e2.real
    e_osc = abs(re_sum) * abs(a_cross) * env
    if a_cross == 0:
        cos_phase = 1.0
    else:
        phase = omega * t + cmath.phase(a_cross)
        if re_sum < 0:
            phase += math.pi
        cos_phase = math.cos(phase)
    t_theta = cmath.phase(sd.overlap) / omega if omega > 0 else 0.0
    return EnergyBreakdown(
        total=float(complex_energy.real),
        complex_energy=complex(complex_energy),
        e_av=float(e_av),
        e_osc=float(e_osc),
        omega=float(omega),
        theta=float(theta),
        t_theta=float(t_theta),
        cos_phase=float(cos_phase),
    )


def oscillation_phase(a1: complex, a2: complex, sd: SpectralData) -> tuple[float, float]:
    """Interference phase Phi = arg(conj(a1) * a2 * <r1|r2>) and cos(Phi).

    Invariant under independent phase re-gauging of r1 and r2: the coefficient
    transformation cancels the overlap transformation.
    """
    if a1 == 0 or a2 == 0:
        raise UndefinedPhaseError("no interference term: one eigenmode amplitude is zero")
    phi = cmath.phase(np.conj(a1) * a2 * sd.overlap)
    return phi, math.cos(phi)
