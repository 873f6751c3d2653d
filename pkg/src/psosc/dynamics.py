"""Exact Hamiltonian flow of the harmonic oscillator.

In dimensionless coordinates the flow is a rigid clockwise rotation by the
angle ``omega t``::

    x(t) = x0 cos(wt) + y0 sin(wt)
    y(t) = y0 cos(wt) - x0 sin(wt)

Densities are transported, ``rho_t(Phi_t(z)) = rho_0(z)``, so a point mass
moves to the forward-evolved location of its support point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .core import (
    RADIAL_TYPES,
    GridDensity,
    OscillatorParams,
    PhasePoint,
    PhaseState,
    PointMass,
    component_mass,
    to_dimensionless,
)


@dataclass(frozen=True)
class FlowMap:
    t: float
    params: OscillatorParams

    @property
    def theta(self) -> float:
        return self.params.omega * self.t

    def __call__(self, point: PhasePoint) -> PhasePoint:
        return evolve_point(point, self.t, self.params)

    def then(self, other: "FlowMap") -> "FlowMap":
        if other.params != self.params:
            raise ValueError("flows of different oscillators do not compose")
        return FlowMap(self.t + other.t, self.params)


def rotate(x, y, theta: float):
    c, s = math.cos(theta), math.sin(theta)
    return x * c + y * s, y * c - x * s


def evolve_point(point: PhasePoint, t: float, params: OscillatorParams) -> PhasePoint:
    """Solution of Hamilton's equations after time ``t``."""
    x, y = rotate(point.q / params.q_scale, point.p / params.p_scale, params.omega * t)
    return PhasePoint(x * params.q_scale, y * params.p_scale)


def evolve_state(state: PhaseState, t: float) -> PhaseState:
    """Transport ``state`` along the flow for time ``t``.

    Rotation-invariant components are returned unchanged, point masses move
    with the flow, and grid densities record the accumulated flow angle.
    Use :func:`resample_grid` to materialize a transported grid on an
    axis-aligned lattice.
    """
    params = state.params
    theta = params.omega * t
    comps = []
    for comp in state.components:
        if isinstance(comp, PointMass):
            moved = evolve_point(PhasePoint(comp.q, comp.p), t, params)
            comps.append(PointMass(moved.q, moved.p, comp.weight))
        elif isinstance(comp, RADIAL_TYPES):
            comps.append(comp)
        else:
            comps.append(replace(comp, angle=comp.angle + theta))
    return PhaseState(tuple(comps), params)


def evolve_angle(state: PhaseState, theta: float) -> PhaseState:
    """Evolve by the dimensionless flow angle ``omega t``."""
    return evolve_state(state, theta / state.params.omega)


def resample_grid(comp: GridDensity, params: OscillatorParams) -> tuple[GridDensity, float]:
    """Pull a transported grid back onto an axis-aligned lattice.

    The new lattice keeps the original spacing and covers the bounding box of
    the rotated support, so no mass leaves the represented region. Values are
    bilinear interpolants of the original nodes. Returns the new component
    and the mass drift (new minus old) caused by interpolation.
    """
    x, y = to_dimensionless(comp.q_grid, comp.p_grid, params)
    hx, hy = np.min(np.diff(x)), np.min(np.diff(y))
    corners_x, corners_y = rotate(np.array([x[0], x[0], x[-1], x[-1]]),
                                  np.array([y[0], y[-1], y[0], y[-1]]), comp.angle)
    nx = np.arange(math.floor(corners_x.min() / hx), math.ceil(corners_x.max() / hx) + 1) * hx
    ny = np.arange(math.floor(corners_y.min() / hy), math.ceil(corners_y.max() / hy) + 1) * hy
    X, Y = np.meshgrid(nx, ny, indexing="ij")
    # density at z is the original density at Phi_{-theta}(z)
    bx, by = rotate(X, Y, -comp.angle)
    interp = RegularGridInterpolator((x, y), comp.values, bounds_error=False, fill_value=0.0)
    values = interp(np.stack([bx, by], axis=-1))
    new = GridDensity(nx * params.q_scale, ny * params.p_scale, values)
    return new, component_mass(new, params) - component_mass(comp, params)
