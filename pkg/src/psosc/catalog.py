"""Named states of the sawtooth and quantum oscillators."""

from __future__ import annotations

import math

import numpy as np

from .core import GridDensity, OscillatorParams, PhaseState, PointMass, RadialPolynomial, UniformDisk

NAMES = ("rho0", "rho_nn", "rho_tn", "rho_bn", "quantum_ground_grid")

GROUND_GRID_HALF_WIDTH = 6.0
GROUND_GRID_NODES = 481


def _sqrt2_minus(a: int, b: int) -> float:
    """``a * sqrt(2) - b`` without the cancellation of the naive expression."""
    return (2 * a * a - b * b) / (a * math.sqrt(2.0) + b)


def rho_nn_coefficients(params: OscillatorParams) -> tuple:
    """Ascending coefficients in ``r`` of the nonpositive energy eigenstate.

    The density is ``30 (1 - r) (A + B r + C r**2) / (D pi hbar)`` on
    ``1 <= r <= sqrt(2)`` with
    ``A = 8 (147 sqrt2 - 208)``, ``B = 2 (738 sqrt2 - 1043)``,
    ``C = 7 (65 sqrt2 - 92)`` and ``D = 2827 sqrt2 - 3998``.
    """
    A = 8 * _sqrt2_minus(147, 208)
    B = 2 * _sqrt2_minus(738, 1043)
    C = 7 * _sqrt2_minus(65, 92)
    D = _sqrt2_minus(2827, 3998)
    k = 30.0 / (D * math.pi * params.hbar)
    return (k * A, k * (B - A), k * (C - B), -k * C)


def rho0(params: OscillatorParams) -> PhaseState:
    """Point mass at the origin: sharp position and momentum, zero energy."""
    return PhaseState((PointMass(0.0, 0.0, 1.0),), params)


def rho_nn(params: OscillatorParams) -> PhaseState:
    comp = RadialPolynomial(rho_nn_coefficients(params), 1.0, math.sqrt(2.0))
    return PhaseState((comp,), params)


def rho_tn(params: OscillatorParams) -> PhaseState:
    """Uniform density ``1/(pi hbar)`` on the unit disk ``r <= 1``."""
    return PhaseState((UniformDisk(1.0, 1.0 / (math.pi * params.hbar)),), params)


def rho_bn(params: OscillatorParams) -> PhaseState:
    """Three signed atoms whose marginals are positive only at isolated times."""
    qs, ps = params.q_scale, params.p_scale
    atoms = (PointMass(-qs, 0.0, 1.0), PointMass(qs, 0.0, -1.0), PointMass(qs, ps, 1.0))
    return PhaseState(atoms, params)


def gaussian_grid(params: OscillatorParams, width: float = 1.0,
                  half_width: float = GROUND_GRID_HALF_WIDTH, nodes: int = GROUND_GRID_NODES,
                  center: tuple[float, float] = (0.0, 0.0)) -> PhaseState:
    """Normalized Gaussian ``exp(-r**2 / width**2) / (pi hbar width**2)`` on a grid.

    ``half_width`` and ``center`` are dimensionless. ``width = 1`` is the
    Wigner function of the quantum ground state, ``2 exp(-r**2) / h``.
    """
    x = np.linspace(-half_width, half_width, nodes) + center[0]
    y = np.linspace(-half_width, half_width, nodes) + center[1]
    u = np.add.outer((x - center[0]) ** 2, (y - center[1]) ** 2)
    values = np.exp(-u / width**2) / (math.pi * params.hbar * width**2)
    comp = GridDensity(x * params.q_scale, y * params.p_scale, values)
    return PhaseState((comp,), params)


def quantum_ground_grid(params: OscillatorParams) -> PhaseState:
    return gaussian_grid(params)


_BUILDERS = {
    "rho0": rho0,
    "rho_nn": rho_nn,
    "rho_tn": rho_tn,
    "rho_bn": rho_bn,
    "quantum_ground_grid": quantum_ground_grid,
}


def build(name: str, params: OscillatorParams | None = None) -> PhaseState:
    """Construct the named state for the given oscillator constants."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown state {name!r}; choose from {', '.join(NAMES)}") from None
    return builder(params or OscillatorParams())
