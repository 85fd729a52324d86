"""Parametric instability near the exceptional point in two-level
non-Hermitian systems: spectra, energy decomposition, exact piecewise
propagation, saturable-gain integration, and transmission sweeps."""

from .config import EpCrossingWarning, RunConfig, parse_config, serialize_config
from .csvio import read_csv, write_grid_csv, write_trace_csv
from .energy import (
    EnergyBreakdown,
    decompose_state,
    energy_closed_form,
    energy_expectation,
    oscillation_phase,
    waveguide_energy,
)
from .exceptions import (
    ConfigError,
    DegenerateInputError,
    DivergenceError,
    DomainError,
    EpsimError,
    ExceptionalPointError,
    InvalidParameterError,
    NotDefectiveError,
    NumericalDegeneracyError,
    UndefinedPhaseError,
)
from .experiments import (
    ScenarioConfig,
    ScenarioResult,
    SweepRow,
    default_dz_grid,
    default_period_ratios,
    initial_state,
    phase_aligned_z_first,
    run_scenario,
    sweep_period_length,
    sweep_perturbation_length,
    transmission,
)
from .propagation import (
    NonlinearParams,
    Trajectory,
    propagate_linear,
    propagate_nonlinear,
    propagator_matrix,
)
from .schedule import CouplingSchedule, kappa_at, optimal_period, segments
from .spectral import (
    DEFAULT_EP_TOL,
    Generator,
    SpectralData,
    SystemParams,
    build_generator,
    eigen_overlap,
    expand_orthogonal_mix,
    jordan_chain,
    spectral_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CouplingSchedule",
    "DEFAULT_EP_TOL",
    "DegenerateInputError",
    "DivergenceError",
    "DomainError",
    "EnergyBreakdown",
    "EpCrossingWarning",
    "EpsimError",
    "ExceptionalPointError",
    "Generator",
    "InvalidParameterError",
    "NonlinearParams",
    "NotDefectiveError",
    "NumericalDegeneracyError",
    "RunConfig",
    "ScenarioConfig",
    "ScenarioResult",
    "SpectralData",
    "SweepRow",
    "SystemParams",
    "Trajectory",
    "UndefinedPhaseError",
    "build_generator",
    "decompose_state",
    "default_dz_grid",
    "default_period_ratios",
    "eigen_overlap",
    "energy_closed_form",
    "energy_expectation",
    "expand_orthogonal_mix",
    "initial_state",
    "jordan_chain",
    "kappa_at",
    "optimal_period",
    "oscillation_phase",
    "parse_config",
    "phase_aligned_z_first",
    "propagate_linear",
    "propagate_nonlinear",
    "propagator_matrix",
    "read_csv",
    "run_scenario",
    "segments",
    "serialize_config",
    "spectral_decompose",
    "sweep_period_length",
    "sweep_perturbation_length",
    "transmission",
    "waveguide_energy",
    "write_grid_csv",
    "write_trace_csv",
]
