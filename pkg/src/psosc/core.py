"""Phase-space states of a one-dimensional harmonic oscillator.

States are signed measures on the (q, p) plane built from a handful of
component types. Components are stored in physical units; every numerical
routine works in the dimensionless coordinates ``x = q / q_scale`` and
``y = p / p_scale`` so that ``r**2 = x**2 + y**2`` and ``dGamma = hbar dx dy``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Union

import numpy as np


class PsoscError(Exception):
    """Base class for errors raised by this package."""


class ParamMismatch(PsoscError, ValueError):
    """States built with different oscillator constants were combined."""


class NonIntegrable(PsoscError, ValueError):
    """A density contains NaN or infinite values."""


class QuadratureFailure(PsoscError, RuntimeError):
    """An adaptive quadrature did not reach the requested accuracy."""


class DomainError(PsoscError, ValueError):
    """An argument lies outside the domain of a closed-form expression."""


@dataclass(frozen=True)
class OscillatorParams:
    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "omega"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")

    @property
    def q_scale(self) -> float:
        return math.sqrt(self.hbar / (self.mass * self.omega))

    @property
    def p_scale(self) -> float:
        return math.sqrt(self.hbar * self.mass * self.omega)

    @property
    def quantum(self) -> float:
        """Energy quantum ``hbar * omega``."""
        return self.hbar * self.omega

    @property
    def planck(self) -> float:
        """Planck's constant ``h = 2 pi hbar``."""
        return 2.0 * math.pi * self.hbar


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float


@dataclass(frozen=True)
class PointMass:
    """Signed Dirac mass at ``(q, p)``."""

    q: float
    p: float
    weight: float = 1.0


@dataclass(frozen=True)
class RadialPolynomial:
    """Density ``sum_k coeffs[k] * r**k`` on the annulus ``r_min <= r <= r_max``.

    ``r`` is the dimensionless radius; the coefficients carry the physical
    density units (1/hbar).
    """

    coeffs: tuple
    r_min: float
    r_max: float

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not (0 <= self.r_min < self.r_max and math.isfinite(self.r_max)):
            raise ValueError("need 0 <= r_min < r_max < inf")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        inside = (r >= self.r_min) & (r <= self.r_max)
        return np.where(inside, np.polynomial.polynomial.polyval(r, self.coeffs), 0.0)


@dataclass(frozen=True)
class UniformDisk:
    """Constant density ``height`` inside the dimensionless radius ``r_max``."""

    r_max: float
    height: float

    def __post_init__(self):
        if not (self.r_max > 0 and math.isfinite(self.r_max)):
            raise ValueError("r_max must be positive and finite")

    r_min = 0.0

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.r_max, self.height, 0.0)


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Piecewise-bilinear density sampled on a rectilinear (q, p) grid.

    ``values[i, j]`` is the density at ``(q_grid[i], p_grid[j])``. ``angle``
    is the dimensionless flow angle ``omega * t`` the sampled density has been
    transported by; it is zero for freshly sampled grids.
    """

    q_grid: np.ndarray
    p_grid: np.ndarray
    values: np.ndarray
    angle: float = 0.0

    def __post_init__(self):
        q = np.asarray(self.q_grid, dtype=float)
        p = np.asarray(self.p_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if q.ndim != 1 or p.ndim != 1 or len(q) < 2 or len(p) < 2:
            raise ValueError("grids must be one-dimensional with at least two nodes")
        if np.any(np.diff(q) <= 0) or np.any(np.diff(p) <= 0):
            raise ValueError("grids must be strictly increasing")
        if v.shape != (len(q), len(p)):
            raise ValueError(f"values shape {v.shape} does not match grids {(len(q), len(p))}")
        for name, arr in (("q_grid", q), ("p_grid", p), ("values", v)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "angle", float(self.angle) % (2.0 * math.pi))


Component = Union[PointMass, RadialPolynomial, UniformDisk, GridDensity]
RADIAL_TYPES = (RadialPolynomial, UniformDisk)


@dataclass(frozen=True)
class PhaseState:
    components: tuple
    params: OscillatorParams = field(default_factory=OscillatorParams)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a state needs at least one component")
        object.__setattr__(self, "components", comps)

    def of_type(self, *types) -> list:
        return [c for c in self.components if isinstance(c, types)]

    @property
    def total_mass(self) -> float:
        return total_mass(self)


def r2(point: PhasePoint, params: OscillatorParams) -> float:
    """Dimensionless squared radius ``p**2/(hbar m omega) + m omega q**2/hbar``."""
    return point.p**2 / (params.hbar * params.mass * params.omega) + (
        params.mass * params.omega * point.q**2 / params.hbar
    )


def classical_energy(point: PhasePoint, params: OscillatorParams) -> float:
    """Hamilton function ``p**2/2m + m omega**2 q**2 / 2``."""
    return 0.5 * params.quantum * r2(point, params)


def to_dimensionless(q, p, params: OscillatorParams):
    return np.asarray(q) / params.q_scale, np.asarray(p) / params.p_scale


def component_mass(comp: Component, params: OscillatorParams) -> float:
    if isinstance(comp, PointMass):
        return float(comp.weight)
    if isinstance(comp, UniformDisk):
        return math.pi * comp.r_max**2 * comp.height * params.hbar
    if isinstance(comp, RadialPolynomial):
        # 2 pi hbar * int c_k r^(k+1) dr, exact
        total = 0.0
        for k, c in enumerate(comp.coeffs):
            total += c * (comp.r_max ** (k + 2) - comp.r_min ** (k + 2)) / (k + 2)
        return 2.0 * math.pi * params.hbar * total
    if isinstance(comp, GridDensity):
        if not np.all(np.isfinite(comp.values)):
            raise NonIntegrable("grid density contains non-finite values")
        inner = np.trapezoid(comp.values, comp.p_grid, axis=1)
        return float(np.trapezoid(inner, comp.q_grid))
    raise TypeError(f"unknown component {comp!r}")


def total_mass(state: PhaseState) -> float:
    """Integral of the state over phase space."""
    return math.fsum(component_mass(c, state.params) for c in state.components)


def scale_component(comp: Component, factor: float) -> Component:
    if isinstance(comp, PointMass):
        return replace(comp, weight=comp.weight * factor)
    if isinstance(comp, UniformDisk):
        return replace(comp, height=comp.height * factor)
    if isinstance(comp, RadialPolynomial):
        return replace(comp, coeffs=tuple(c * factor for c in comp.coeffs))
    if isinstance(comp, GridDensity):
        return replace(comp, values=comp.values * factor)
    raise TypeError(f"unknown component {comp!r}")


def mix(weighted: Iterable[tuple[float, PhaseState]], atol: float = 1e-12) -> PhaseState:
    """Convex combination of states sharing the same oscillator constants."""
    weighted = list(weighted)
    if not weighted:
        raise ValueError("nothing to mix")
    weights = [float(w) for w, _ in weighted]
    if any(w < 0 for w in weights):
        raise ValueError("mixture weights must be nonnegative")
    if abs(math.fsum(weights) - 1.0) > atol:
        raise ValueError(f"mixture weights sum to {math.fsum(weights)!r}, not 1")
    params = weighted[0][1].params
    comps = []
    for w, state in weighted:
        if state.params != params:
            raise ParamMismatch(f"{state.params} differs from {params}")
        if w == 0:
            continue
        comps.extend(scale_component(c, w) for c in state.components)
    return PhaseState(tuple(comps), params)


def support_radius(state: PhaseState) -> float:
    """Largest dimensionless radius carrying mass."""
    radius = 0.0
    for comp in state.components:
        if isinstance(comp, PointMass):
            radius = max(radius, math.sqrt(r2(PhasePoint(comp.q, comp.p), state.params)))
        elif isinstance(comp, RADIAL_TYPES):
            radius = max(radius, comp.r_max)
        else:
            x, y = to_dimensionless(comp.q_grid, comp.p_grid, state.params)
            corner = max(abs(x[0]), abs(x[-1])) ** 2 + max(abs(y[0]), abs(y[-1])) ** 2
            radius = max(radius, math.sqrt(corner))
    return radius
