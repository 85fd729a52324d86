"""Closed-form eigenstructure against dense-solver oracles."""
import math

import numpy as np
import pytest
from hypothesis import given, settings

from epsim import (
    ExceptionalPointError,
    InvalidParameterError,
    NotDefectiveError,
    SystemParams,
    build_generator,
    eigen_overlap,
    expand_orthogonal_mix,
    jordan_chain,
    spectral_decompose,
)

from conftest import (
    G,
    G2,
    GAMMA,
    KAPPA_NEAR,
    complex_amplitudes,
    generic_params,
    oscillatory_params,
)


def oracle_eig(m, e1):
    """Reference eigenpairs from the dense solver, with the pair closest to
    e1 first.  (Sorting the oracle output by (Re, Im) would re-implement the
    ordering rule on values that carry rounding noise in their tie-breaking
    components, so match by proximity instead.)"""
    w, v = np.linalg.eig(m)
    order = [0, 1] if abs(w[0] - e1) <= abs(w[1] - e1) else [1, 0]
    return w[order], v[:, order]


def test_generator_matrix_layout():
    p = SystemParams(beta=0.25, gamma=GAMMA, g=G, kappa=0.1 + 0.02j)
    m = build_generator(p).m
    assert m[0, 0] == 0.25 + 1j * (GAMMA + G)
    assert m[1, 1] == 0.25 + 1j * (GAMMA - G)
    assert m[0, 1] == np.conj(0.1 + 0.02j)
    assert m[1, 0] == 0.1 + 0.02j


def test_eigenvalues_match_closed_form(params_near):
    sd = spectral_decompose(build_generator(params_near))
    s = math.sqrt(abs(params_near.kappa) ** 2 - G2)
    assert sd.e1 == pytest.approx(s + 1j * GAMMA, abs=1e-15)
    assert sd.e2 == pytest.approx(-s + 1j * GAMMA, abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(params=generic_params())
def test_closed_form_matches_dense_solver(params):
    gen = build_generator(params)
    sd = spectral_decompose(gen)
    w, v = oracle_eig(gen.m, sd.e1)
    scale = max(1.0, abs(w[0]), abs(w[1]))
    assert abs(sd.e1 - w[0]) <= 1e-12 * scale
    assert abs(sd.e2 - w[1]) <= 1e-12 * scale
    # eigenvectors agree up to gauge
    assert abs(np.vdot(sd.r1, v[:, 0] / np.linalg.norm(v[:, 0]))) == pytest.approx(1.0, abs=1e-10)
    assert abs(np.vdot(sd.r2, v[:, 1] / np.linalg.norm(v[:, 1]))) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=300, deadline=None)
@given(params=generic_params())
def test_eigenvector_residual_and_gauge(params):
    gen = build_generator(params)
    sd = spectral_decompose(gen)
    for e, r in ((sd.e1, sd.r1), (sd.e2, sd.r2)):
        assert np.linalg.norm(gen.m @ r - e * r) <= 1e-12 * max(1.0, abs(e))
        assert np.linalg.norm(r) == pytest.approx(1.0, abs=1e-12)
    # gauge: first nonzero component real positive
    lead = sd.r1[0] if abs(sd.r1[0]) > 0 else sd.r1[1]
    assert lead.imag == pytest.approx(0.0, abs=1e-15) and lead.real > 0


@settings(max_examples=300, deadline=None)
@given(params=generic_params())
def test_biorthogonality(params):
    sd = spectral_decompose(build_generator(params))
    assert np.vdot(sd.l1, sd.r1) == pytest.approx(1.0, abs=1e-10)
    assert np.vdot(sd.l2, sd.r2) == pytest.approx(1.0, abs=1e-10)
    assert abs(np.vdot(sd.l1, sd.r2)) <= 1e-10
    assert abs(np.vdot(sd.l2, sd.r1)) <= 1e-10
    # spectral resolution reassembles the generator
    m = sd.e1 * np.outer(sd.r1, np.conj(sd.l1)) + sd.e2 * np.outer(sd.r2, np.conj(sd.l2))
    assert np.allclose(m, build_generator(params).m, atol=1e-10)


@settings(max_examples=300, deadline=None)
@given(params=oscillatory_params())
def test_overlap_law_and_c_parameter(params):
    sd = spectral_decompose(build_generator(params))
    overlap, c = eigen_overlap(sd)
    assert abs(overlap) == pytest.approx(params.g / abs(params.kappa), abs=1e-12)
    assert abs(overlap) ** 2 + abs(c) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_overlap_pinned_values():
    for mult, expect in ((1.01, 1.0 / math.sqrt(1.01)), (4.0, 0.5)):
        p = SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=math.sqrt(mult * G2))
        sd = spectral_decompose(build_generator(p))
        assert abs(sd.overlap) == pytest.approx(expect, abs=1e-12)
    assert abs(1.0 / math.sqrt(1.01) - 0.995037) < 1e-6


@settings(max_examples=200, deadline=None)
@given(params=oscillatory_params(), b1=complex_amplitudes(), b2=complex_amplitudes())
def test_expand_orthogonal_mix_reconstructs(params, b1, b2):
    sd = spectral_decompose(build_generator(params))
    a1, a2 = expand_orthogonal_mix(b1, b2, sd)
    state = a1 * sd.r1 + a2 * sd.r2
    target = b1 * sd.r1 + b2 * sd.perp
    assert np.allclose(state, target, atol=1e-10)


def test_defective_detection_and_jordan_chain():
    p = SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=G)
    gen = build_generator(p)
    sd = spectral_decompose(gen)
    assert sd.is_defective
    assert sd.e1 == sd.e2 == 1j * GAMMA
    assert sd.l1 is None and sd.adjoint is not None
    resid = np.linalg.norm((gen.m - sd.e1 * np.eye(2)) @ sd.adjoint - sd.r1)
    assert resid <= 1e-12


def test_jordan_chain_rejects_diagonalizable(params_near):
    gen = build_generator(params_near)
    with pytest.raises(NotDefectiveError):
        jordan_chain(gen, 1j * GAMMA)


def test_ep_tolerance_boundary():
    # discriminant 1e-12 * g^2: inside the default detection window
    p = SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=math.sqrt(G2 * (1 + 1e-12)))
    assert spectral_decompose(build_generator(p)).is_defective
    p2 = SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=math.sqrt(G2 * (1 + 1e-6)))
    assert not spectral_decompose(build_generator(p2)).is_defective


def test_decoupled_limit():
    p = SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=0.0)
    sd = spectral_decompose(build_generator(p))
    assert sd.e1 == 1j * (GAMMA + G)
    assert sd.e2 == 1j * (GAMMA - G)
    assert np.allclose(sd.r1, [1.0, 0.0]) and np.allclose(sd.r2, [0.0, 1.0])


def test_parameter_validation():
    with pytest.raises(InvalidParameterError):
        SystemParams(beta=0.0, gamma=GAMMA, g=-1.0, kappa=KAPPA_NEAR)
    with pytest.raises(InvalidParameterError):
        SystemParams(beta=math.nan, gamma=GAMMA, g=G, kappa=KAPPA_NEAR)
    with pytest.raises(InvalidParameterError):
        spectral_decompose(build_generator(SystemParams(0.0, GAMMA, G, KAPPA_NEAR)), ep_tol=0.0)
