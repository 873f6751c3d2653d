"""Classical, quantum and sawtooth models of the harmonic oscillator in phase space."""

from .catalog import build
from .core import (
    DomainError,
    GridDensity,
    NonIntegrable,
    OscillatorParams,
    ParamMismatch,
    PhasePoint,
    PhaseState,
    PointMass,
    PsoscError,
    QuadratureFailure,
    RadialPolynomial,
    UniformDisk,
    classical_energy,
    mix,
    total_mass,
)
from .dynamics import FlowMap, evolve_point, evolve_state
from .io import load_state, save_state
from .measures import (
    Axis,
    EnergyLevelMeasure,
    Model,
    ProjectionMeasure,
    T,
    TruncationWarning,
    energy_distribution,
    marginal,
    pair,
)
from .oracle import ValidationConfig, potential_exceedance_closed_form, tunneling_test, validate
from .wigner import laguerre, wigner_eigenstate

__version__ = "0.1.0"

__all__ = [
    "build",
    "DomainError",
    "GridDensity",
    "NonIntegrable",
    "OscillatorParams",
    "ParamMismatch",
    "PhasePoint",
    "PhaseState",
    "PointMass",
    "PsoscError",
    "QuadratureFailure",
    "RadialPolynomial",
    "UniformDisk",
    "classical_energy",
    "mix",
    "total_mass",
    "FlowMap",
    "evolve_point",
    "evolve_state",
    "load_state",
    "save_state",
    "Axis",
    "EnergyLevelMeasure",
    "Model",
    "ProjectionMeasure",
    "T",
    "TruncationWarning",
    "energy_distribution",
    "marginal",
    "pair",
    "ValidationConfig",
    "potential_exceedance_closed_form",
    "tunneling_test",
    "validate",
    "laguerre",
    "wigner_eigenstate",
]
