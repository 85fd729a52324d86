"""Closed-form spectral structure of the two-mode non-Hermitian generator.

The generator is the 2x2 matrix

    M = [[beta + i(gamma + g),  conj(kappa)],
         [kappa,                beta + i(gamma - g)]]

with eigenvalues  E = beta + i*gamma +/- sqrt(|kappa|^2 - g^2).  When
|kappa|^2 = g^2 the two eigenpairs coalesce and M is defective (exceptional
point); the Jordan adjoint vector then completes the basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ExceptionalPointError,
    InvalidParameterError,
    NotDefectiveError,
    NumericalDegeneracyError,
)

DEFAULT_EP_TOL = 1e-10


@dataclass(frozen=True)
class SystemParams:
    """Coupled-mode parameters of the two-waveguide system.

    beta   real part of the wavenumbers (common phase only)
    gamma  half-sum of the imaginary wavenumber parts (background damping)
    g      half-difference of the imaginary parts, g >= 0
    kappa  complex coupling constant
    """

    beta: float
    gamma: float
    g: float
    kappa: complex

    def __post_init__(self):
        vals = (self.beta, self.gamma, self.g, self.kappa.real, self.kappa.imag)
        if not all(np.isfinite(v) for v in vals):
            raise InvalidParameterError("all system parameters must be finite")
        if self.g < 0:
            raise InvalidParameterError(f"g must be >= 0, got {self.g}")

    @property
    def kappa2(self) -> float:
        return abs(self.kappa) ** 2

    def discriminant(self) -> float:
        """|kappa|^2 - g^2; the eigenvalue splitting is 2*sqrt of this."""
        return self.kappa2 - self.g**2

    def is_defective(self, ep_tol: float = DEFAULT_EP_TOL) -> bool:
        """True when the generator is within ep_tol (relative to g^2) of the
        exceptional point.  g = 0 never counts: the kappa = g = 0 matrix is
        scalar, hence diagonalizable."""
        if self.g == 0.0:
            return False
        return abs(self.discriminant()) <= ep_tol * self.g**2


@dataclass(frozen=True, eq=False)
class Generator:
    """The 2x2 generator matrix together with its source parameters."""

    m: np.ndarray
    params: SystemParams


def build_generator(params: SystemParams) -> Generator:
    """Assemble the coupled-mode matrix from the four parameters."""
    b, ga, g, k = params.beta, params.gamma, params.g, complex(params.kappa)
    m = np.array(
        [[b + 1j * (ga + g), np.conj(k)], [k, b + 1j * (ga - g)]],
        dtype=complex,
    )
    m.setflags(write=False)
    return Generator(m=m, params=params)


def _gauge_fix(v: np.ndarray) -> np.ndarray:
    """Unit norm, first nonzero component rotated to the positive real axis."""
    v = v / np.linalg.norm(v)
    pivot = v[0] if abs(v[0]) > 0 else v[1]
    v = v * (abs(pivot) / pivot)
    return v


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigenvalues, biorthogonal eigenvectors and overlap structure.

    e1 carries the + branch (Re e1 >= Re e2, ties broken by Im e1 >= Im e2).
    l1, l2 satisfy <l_i|r_j> = delta_ij and are None in the defective case,
    where `adjoint` holds the Jordan chain vector instead.
    """

    e1: complex
    e2: complex
    r1: np.ndarray
    r2: np.ndarray
    l1: np.ndarray | None
    l2: np.ndarray | None
    overlap: complex
    c_param: complex
    is_defective: bool
    adjoint: np.ndarray | None
    perp: np.ndarray  # unit vector orthogonal to r1 (gauge for c_param)


def _perp(r1: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(r1[1]), np.conj(r1[0])])


def spectral_decompose(gen: Generator, ep_tol: float = DEFAULT_EP_TOL) -> SpectralData:
    """Full closed-form eigenstructure of the generator.

    Away from the exceptional point the right eigenvectors are
    (1, (-ig +/- sqrt(|kappa|^2 - g^2)) / conj(kappa)) up to gauge; left
    eigenvectors come from inverting the right-eigenvector matrix.  Within
    ep_tol of the EP the matrix is treated as defective and the Jordan
    adjoint vector is returned in place of the left eigenvectors.
    """
    if ep_tol <= 0:
        raise InvalidParameterError("ep_tol must be > 0")
    p = gen.params
    b, ga, g, k = p.beta, p.gamma, p.g, complex(p.kappa)
    s = np.sqrt(complex(p.discriminant()))  # real >= 0 or positive imaginary

    if p.is_defective(ep_tol):
        e = b + 1j * ga
        r = _gauge_fix(np.array([1.0, -1j * g / np.conj(k)]))
        adj = jordan_chain(gen, e, tol=ep_tol)
        perp = _perp(r)
        return SpectralData(
            e1=e, e2=e, r1=r, r2=r, l1=None, l2=None,
            overlap=complex(np.vdot(r, r)), c_param=0j,
            is_defective=True, adjoint=adj, perp=perp,
        )

    e1 = b + 1j * ga + s
    e2 = b + 1j * ga - s
    if k == 0:
        # decoupled waveguides: eigenvectors are the basis vectors;
        # e1 = b + i(gamma+g) belongs to the first waveguide
        r1 = np.array([1.0 + 0j, 0j])
        r2 = np.array([0j, 1.0 + 0j])
    else:
        r1 = _gauge_fix(np.array([1.0, (-1j * g + s) / np.conj(k)]))
        r2 = _gauge_fix(np.array([1.0, (-1j * g - s) / np.conj(k)]))
    rmat = np.column_stack([r1, r2])
    lmat = np.linalg.inv(rmat)
    l1 = np.conj(lmat[0])
    l2 = np.conj(lmat[1])
    overlap = complex(np.vdot(r1, r2))
    perp = _perp(r1)
    c = complex(np.vdot(perp, r2))
    return SpectralData(
        e1=complex(e1), e2=complex(e2), r1=r1, r2=r2, l1=l1, l2=l2,
        overlap=overlap, c_param=c, is_defective=False, adjoint=None, perp=perp,
    )


def eigen_overlap(sd: SpectralData) -> tuple[complex, complex]:
    """Overlap <r1|r2> and the orthogonal-admixture parameter c = <perp|r2>.

    |overlap|^2 + |c|^2 = 1.  At the exceptional point the degenerate values
    (1, 0) are reported; sd.is_defective is the caller's flag.
    """
    return sd.overlap, sd.c_param


def jordan_chain(
    gen: Generator,
    e: complex,
    tol: float = DEFAULT_EP_TOL,
    phi: np.ndarray | None = None,
) -> np.ndarray:
    """Minimal-norm solution of (M - e*I) phi_adj = phi at the EP.

    phi defaults to the gauge-fixed eigenvector.  Raises NotDefectiveError
    away from the EP and NumericalDegeneracyError when the least-squares
    residual exceeds tol * ||phi||.
    """
    p = gen.params
    if not p.is_defective(tol if tol > DEFAULT_EP_TOL else DEFAULT_EP_TOL):
        raise NotDefectiveError(
            f"generator is diagonalizable: |kappa|^2 - g^2 = {p.discriminant():g}"
        )
    if phi is None:
        phi = _gauge_fix(np.array([1.0, -1j * p.g / np.conj(complex(p.kappa))]))
    n = gen.m - e * np.eye(2)
    adj, *_ = np.linalg.lstsq(n, phi, rcond=None)
    resid = np.linalg.norm(n @ adj - phi)
    if resid > tol * max(1.0, float(np.linalg.norm(phi))):
        raise NumericalDegeneracyError(
            f"Jordan chain residual {resid:g} exceeds tolerance {tol:g}"
        )
    return adj


def expand_orthogonal_mix(b1: complex, b2: complex, sd: SpectralData) -> tuple[complex, complex]:
    """Eigenbasis coefficients (A1, A2) of the state b1*r1 + b2*perp.

    A2 = b2 / c and A1 = b1 - A2 * <r1|r2>, so A1*r1 + A2*r2 reconstructs the
    input exactly.  Undefined at the exceptional point where c = 0.
    """
    if sd.is_defective or sd.c_param == 0:
        raise ExceptionalPointError(
            "orthogonal admixture c = 0: expansion undefined at the exceptional point"
        )
    a2 = b2 / sd.c_param
    a1 = b1 - a2 * sd.overlap
    return complex(a1), complex(a2)
