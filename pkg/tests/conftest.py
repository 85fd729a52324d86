"""Shared fixtures and hypothesis strategies."""
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from epsim import SystemParams, build_generator, spectral_decompose

G2 = 2.5e-3
G = math.sqrt(G2)
GAMMA = 5e-3
KAPPA_NEAR = math.sqrt(1.01 * G2)   # just above the exceptional point
KAPPA_NEAREST = math.sqrt(1.001 * G2)
KAPPA_STRONG = math.sqrt(4.0 * G2)  # strong coupling used in windows


@pytest.fixture
def params_near():
    return SystemParams(beta=0.0, gamma=GAMMA, g=G, kappa=KAPPA_NEAR)


@pytest.fixture
def sd_near(params_near):
    return spectral_decompose(build_generator(params_near))


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def finite_floats(lo, hi):
    return st.floats(
        min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False
    )


# parameter sets safely away from the exceptional point
@st.composite
def oscillatory_params(draw):
    g = draw(finite_floats(1e-3, 1.0))
    ratio = draw(finite_floats(1.1, 25.0))       # |kappa|^2 / g^2
    phase = draw(finite_floats(0.0, 2.0 * math.pi))
    gamma = draw(finite_floats(-0.1, 0.1))
    beta = draw(finite_floats(-1.0, 1.0))
    kappa = g * math.sqrt(ratio) * complex(math.cos(phase), math.sin(phase))
    return SystemParams(beta=beta, gamma=gamma, g=g, kappa=kappa)


@st.composite
def generic_params(draw):
    """Either side of the exceptional point, but not within 1e-3 of it."""
    g = draw(finite_floats(1e-3, 1.0))
    ratio = draw(
        st.one_of(finite_floats(0.05, 0.999), finite_floats(1.001, 25.0))
    )
    phase = draw(finite_floats(0.0, 2.0 * math.pi))
    gamma = draw(finite_floats(-0.1, 0.1))
    beta = draw(finite_floats(-1.0, 1.0))
    kappa = g * math.sqrt(ratio) * complex(math.cos(phase), math.sin(phase))
    return SystemParams(beta=beta, gamma=gamma, g=g, kappa=kappa)


@st.composite
def complex_amplitudes(draw, max_mag=3.0):
    re = draw(finite_floats(-max_mag, max_mag))
    im = draw(finite_floats(-max_mag, max_mag))
    return complex(re, im)
