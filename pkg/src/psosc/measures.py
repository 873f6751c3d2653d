"""Phase-space spectral measures and their pairing with states.

An observable is represented by a family of phase-space weight functions
indexed by outcome sets; the probability of an outcome set is the integral
of its weight function against the state. Position and momentum use the same
measure in every model. The energy measure is where the models differ:

* ``SAWTOOTH``: level ``n`` at energy ``n hbar omega / 2`` with the hat
  function ``T_n(r**2)``.
* ``QUANTUM``: level ``n`` at ``hbar omega (n + 1/2)`` with ``h rho_n^W``.
* ``CLASSICAL``: the continuous measure ``delta(H_c - E)``. It is reported
  binned on ``[n, n + 1) * hbar omega / 2``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np
from scipy.interpolate import Akima1DInterpolator, RectBivariateSpline

from .core import (
    RADIAL_TYPES,
    GridDensity,
    OscillatorParams,
    PhasePoint,
    PhaseState,
    PointMass,
    RadialPolynomial,
    UniformDisk,
    r2,
    support_radius,
    to_dimensionless,
    total_mass,
)
from .quadrature import adaptive
from .wigner import iter_quantum_weights, quantum_weight


class TruncationWarning(UserWarning):
    """The truncated quantum energy series leaves a noticeable residual."""


class Model(str, enum.Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"
    SAWTOOTH = "sawtooth"


class Axis(str, enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"
    CLASSICAL_FUNCTION = "classical_function"


QUANTUM_LEVELS = 64
TRUNCATION_TOL = 1e-8


def T(n: int, x):
    """Hat function of the sawtooth energy measure.

    ``T_n`` rises linearly on ``[n-1, n]``, falls on ``[n, n+1]`` and vanishes
    elsewhere, so that ``sum_n T_n(x) = 1`` and ``sum_n n T_n(x) = x`` for
    ``x >= 0``.
    """
    if n < 0:
        raise ValueError("level index must be nonnegative")
    x = np.asarray(x, dtype=float)
    out = np.where((x >= n - 1) & (x <= n), x - (n - 1), 0.0)
    out = np.where((x > n) & (x <= n + 1), n + 1 - x, out)
    return float(out) if out.ndim == 0 else out


EDGE_TOL = 1e-12


def _snap_to_edges(u: np.ndarray) -> np.ndarray:
    """Round ``r**2`` values lying within rounding error of a bin edge onto it."""
    nearest = np.round(u)
    return np.where(np.abs(u - nearest) <= EDGE_TOL * np.maximum(1.0, np.abs(u)), nearest, u)


@dataclass(frozen=True)
class EnergyLevelMeasure:
    """Energy spectral measure of one model, truncated at ``n_max`` levels."""

    model: Model
    n_max: int | None = None

    def energy(self, n: int, params: OscillatorParams) -> float:
        if self.model is Model.QUANTUM:
            return params.quantum * (n + 0.5)
        return params.quantum * n / 2.0

    def weight(self, n: int, u):
        """Weight function of level (or bin) ``n`` at ``r**2 = u``."""
        if self.model is Model.SAWTOOTH:
            return T(n, u)
        if self.model is Model.QUANTUM:
            return quantum_weight(n, u)
        u = _snap_to_edges(np.asarray(u, dtype=float))
        out = ((u >= n) & (u < n + 1)).astype(float)
        return float(out) if out.ndim == 0 else out

    def support(self, n: int) -> tuple[float, float]:
        """Range of ``r**2`` outside of which the weight vanishes."""
        if self.model is Model.SAWTOOTH:
            return max(n - 1.0, 0.0), n + 1.0
        if self.model is Model.QUANTUM:
            return 0.0, math.inf
        return float(n), n + 1.0

    def kinks(self, n: int) -> tuple:
        if self.model is Model.QUANTUM:
            return ()
        return (n - 1.0, float(n), n + 1.0)

    def levels_for(self, state: PhaseState) -> int:
        if self.n_max is not None:
            return self.n_max
        if self.model is Model.QUANTUM:
            return QUANTUM_LEVELS
        return int(math.ceil(support_radius(state) ** 2)) + 1


@dataclass(frozen=True)
class ProjectionMeasure:
    """Measure of position, momentum or a classical phase-space function.

    For ``Axis.CLASSICAL_FUNCTION`` ``func(q, p)`` must accept arrays.
    """

    axis: Axis
    func: Callable | None = None


@dataclass(frozen=True)
class EnergyDistribution:
    model: Model
    entries: tuple
    residual: float

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.entries])

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for e, _ in self.entries])

    def probability(self, n: int) -> float:
        return self.entries[n][1] if n < len(self.entries) else 0.0

    def mean(self) -> float:
        return math.fsum(e * p for e, p in self.entries)


# -- pairing of energy weight functions ------------------------------------

def _radial_energy_pair(measure: EnergyLevelMeasure, n: int, comp, params) -> float:
    lo, hi = measure.support(n)
    r_lo = max(comp.r_min, math.sqrt(lo))
    r_hi = min(comp.r_max, math.sqrt(hi)) if math.isfinite(hi) else comp.r_max
    if r_lo >= r_hi:
        return 0.0
    knots = [math.sqrt(k) for k in measure.kinks(n) if k > 0]

    def integrand(r):
        return measure.weight(n, r * r) * float(comp(r)) * r

    return 2.0 * math.pi * params.hbar * adaptive(integrand, r_lo, r_hi, points=knots)


def _grid_axes(comp: GridDensity, params: OscillatorParams):
    x, y = to_dimensionless(comp.q_grid, comp.p_grid, params)
    return np.add.outer(x * x, y * y)


def _grid_integral(comp: GridDensity, weights) -> float:
    inner = np.trapezoid(weights * comp.values, comp.p_grid, axis=1)
    return float(np.trapezoid(inner, comp.q_grid))


def _point_u(comp: PointMass, params) -> float:
    return r2(PhasePoint(comp.q, comp.p), params)


def pair_energy(measure: EnergyLevelMeasure, n: int, state: PhaseState) -> float:
    """Probability of energy level (bin) ``n``: ``<g_H({E_n}), rho>``."""
    params = state.params
    total = []
    for comp in state.components:
        if isinstance(comp, PointMass):
            total.append(comp.weight * measure.weight(n, _point_u(comp, params)))
        elif isinstance(comp, RADIAL_TYPES):
            total.append(_radial_energy_pair(measure, n, comp, params))
        else:
            total.append(_grid_integral(comp, measure.weight(n, _grid_axes(comp, params))))
    return math.fsum(total)


def _grid_quantum_levels(comp: GridDensity, params, n_max: int) -> list[float]:
    return [_grid_integral(comp, w) for w in iter_quantum_weights(n_max, _grid_axes(comp, params))]


def energy_distribution(model: Model | str, state: PhaseState, n_max: int | None = None
                        ) -> EnergyDistribution:
    """Probabilities of levels ``0 .. n_max`` and the mass left beyond them."""
    measure = EnergyLevelMeasure(Model(model), n_max)
    levels = measure.levels_for(state)
    if levels < 1:
        raise ValueError("need at least one level beyond the ground level")
    params = state.params
    probs = np.zeros(levels + 1)
    for comp in state.components:
        sub = PhaseState((comp,), params)
        if isinstance(comp, GridDensity) and measure.model is Model.QUANTUM:
            probs += _grid_quantum_levels(comp, params, levels)
        else:
            probs += [pair_energy(measure, n, sub) for n in range(levels + 1)]
    residual = total_mass(state) - math.fsum(probs)
    if measure.model is Model.QUANTUM and abs(residual) > TRUNCATION_TOL:
        warnings.warn(f"quantum energy series truncated at n={levels} leaves residual {residual:.3g}",
                      TruncationWarning, stacklevel=2)
    entries = tuple((measure.energy(n, params), float(p)) for n, p in enumerate(probs))
    return EnergyDistribution(measure.model, entries, float(residual))


def expected_hamiltonian(state: PhaseState) -> float:
    """``int H_c rho dGamma`` computed directly from the Hamilton function."""
    params = state.params
    half = 0.5 * params.quantum
    total = []
    for comp in state.components:
        if isinstance(comp, PointMass):
            total.append(comp.weight * half * _point_u(comp, params))
        elif isinstance(comp, UniformDisk):
            total.append(half * comp.height * 2.0 * math.pi * params.hbar * comp.r_max**4 / 4.0)
        elif isinstance(comp, RadialPolynomial):
            s = sum(c * (comp.r_max ** (k + 4) - comp.r_min ** (k + 4)) / (k + 4)
                    for k, c in enumerate(comp.coeffs))
            total.append(half * 2.0 * math.pi * params.hbar * s)
        else:
            total.append(_grid_integral(comp, half * _grid_axes(comp, params)))
    return math.fsum(total)


def mean_energy(model: Model | str, state: PhaseState, n_max: int | None = None) -> float:
    """Mean energy from the spectral sum ``sum_n E_n P(E_n)``.

    The classical measure is continuous, so its mean is ``int H_c rho``.
    """
    model = Model(model)
    if model is Model.CLASSICAL:
        return expected_hamiltonian(state)
    return energy_distribution(model, state, n_max).mean()


def energy_exceedance(model: Model | str, state: PhaseState, alpha: float,
                      n_max: int | None = None) -> float:
    """``P(H > alpha)`` under the energy measure of ``model``."""
    model = Model(model)
    params = state.params
    level = alpha / (0.5 * params.quantum)  # alpha in units of hbar omega / 2
    if model is Model.CLASSICAL:
        return classical_energy_exceedance(state, level)
    dist = energy_distribution(model, state, n_max)
    if model is Model.QUANTUM:
        above = [p for n, (_, p) in enumerate(dist.entries) if 2 * n + 1 > level]
    else:
        above = [p for n, (_, p) in enumerate(dist.entries) if n > level]
    # truncated levels all lie above any threshold inside the table
    return math.fsum(above) + dist.residual


def classical_energy_exceedance(state: PhaseState, u_threshold: float) -> float:
    """Mass of the region ``r**2 > u_threshold``."""
    params = state.params
    total = []
    for comp in state.components:
        if isinstance(comp, PointMass):
            total.append(comp.weight if _point_u(comp, params) > u_threshold else 0.0)
        elif isinstance(comp, RADIAL_TYPES):
            r_lo = max(comp.r_min, math.sqrt(max(u_threshold, 0.0)))
            if r_lo < comp.r_max:
                val = adaptive(lambda r: float(comp(r)) * r, r_lo, comp.r_max)
                total.append(2.0 * math.pi * params.hbar * val)
        else:
            total.append(_grid_integral(comp, (_grid_axes(comp, params) > u_threshold).astype(float)))
    return math.fsum(total)


# -- marginals --------------------------------------------------------------

def _circle_fraction_below(u: float, r: float) -> float:
    """Fraction of the circle of radius ``r`` whose coordinate is ``<= u``."""
    if u >= r:
        return 1.0
    if u <= -r:
        return 0.0
    return 1.0 - math.acos(u / r) / math.pi


@lru_cache(maxsize=65536)
def _radial_cdf(comp, u: float, hbar: float) -> float:
    """Mass of a radial component with dimensionless coordinate ``<= u``."""
    if u >= comp.r_max:
        return _radial_mass(comp, hbar)
    if u <= -comp.r_max:
        return 0.0

    def integrand(r):
        return float(comp(r)) * r * _circle_fraction_below(u, r)

    knots = [abs(u)] if comp.r_min < abs(u) < comp.r_max else None
    return 2.0 * math.pi * hbar * adaptive(integrand, comp.r_min, comp.r_max, points=knots)


@lru_cache(maxsize=65536)
def _disk_cdf(comp: UniformDisk, u: float, hbar: float) -> float:
    """Quadrature of the semicircle marginal of a uniform disk up to ``u``."""
    radius = comp.r_max
    if u <= -radius:
        return 0.0
    val = adaptive(lambda v: math.sqrt(max(radius * radius - v * v, 0.0)), -radius, min(u, radius))
    return 2.0 * comp.height * hbar * val


@lru_cache(maxsize=1024)
def _radial_mass(comp, hbar: float) -> float:
    return 2.0 * math.pi * hbar * adaptive(lambda r: float(comp(r)) * r, comp.r_min, comp.r_max)


@dataclass(frozen=True)
class _RadialPart:
    """Marginal of a rotation-invariant component along either axis."""

    comp: object
    scale: float
    other_scale: float
    hbar: float

    @property
    def bound(self) -> float:
        return self.comp.r_max * self.scale

    def density(self, x) -> np.ndarray:
        u = np.atleast_1d(np.asarray(x, dtype=float)) / self.scale
        if isinstance(self.comp, UniformDisk):
            half = np.sqrt(np.clip(self.comp.r_max**2 - u * u, 0.0, None))
            return self.other_scale * 2.0 * self.comp.height * half
        out = np.empty_like(u)
        for i, ui in enumerate(u):
            v_hi = math.sqrt(max(self.comp.r_max**2 - ui * ui, 0.0))
            v_lo = math.sqrt(max(self.comp.r_min**2 - ui * ui, 0.0))
            out[i] = 2.0 * adaptive(lambda v: float(self.comp(math.hypot(ui, v))), v_lo, v_hi)
        return self.other_scale * out

    def cdf(self, x: float) -> float:
        u = float(x / self.scale)
        if isinstance(self.comp, UniformDisk):
            return _disk_cdf(self.comp, u, self.hbar)
        return _radial_cdf(self.comp, float(u), self.hbar)


@dataclass(frozen=True, eq=False)
class _SampledPart:
    """Marginal density sampled at increasing nodes, Akima-interpolated.

    Akima interpolation is fourth-order on smooth data and, unlike a global
    cubic spline, does not ring next to jumps of a sampled density.
    """

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        interp = Akima1DInterpolator(self.nodes, self.values)
        object.__setattr__(self, "_interp", interp)
        object.__setattr__(self, "_anti", interp.antiderivative())

    @property
    def bound(self) -> float:
        return float(max(abs(self.nodes[0]), abs(self.nodes[-1])))

    def density(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        inside = (x >= self.nodes[0]) & (x <= self.nodes[-1])
        out = np.zeros_like(x)
        out[inside] = self._interp(x[inside])
        return out

    def cdf(self, x: float) -> float:
        x = min(max(x, self.nodes[0]), self.nodes[-1])
        return float(self._anti(x) - self._anti(self.nodes[0]))


def _grid_projection(comp: GridDensity, params: OscillatorParams, axis: Axis) -> _SampledPart:
    """Project a (possibly transported) grid density onto ``axis``."""
    position = axis is Axis.POSITION
    scale, other = (params.q_scale, params.p_scale) if position else (params.p_scale, params.q_scale)
    if comp.angle == 0.0:
        if position:
            return _SampledPart(comp.q_grid, np.trapezoid(comp.values, comp.p_grid, axis=1))
        return _SampledPart(comp.p_grid, np.trapezoid(comp.values, comp.q_grid, axis=0))
    x, y = to_dimensionless(comp.q_grid, comp.p_grid, params)
    spline = RectBivariateSpline(x, y, comp.values, kx=3, ky=3)
    c, s = math.cos(comp.angle), math.sin(comp.angle)
    # transported coordinates of a grid-frame point w: (w.(c, s), w.(-s, c))
    d = np.array([c, s]) if position else np.array([-s, c])
    e = np.array([-d[1], d[0]])
    h = min(np.min(np.diff(x)), np.min(np.diff(y)))
    reach = math.hypot(max(abs(x[0]), abs(x[-1])), max(abs(y[0]), abs(y[-1])))
    m = int(math.ceil(reach / h))
    sig = h * np.arange(-m, m + 1)
    values = np.empty_like(sig)
    for i, sv in enumerate(sig):
        px = sv * d[0] + sig * e[0]
        py = sv * d[1] + sig * e[1]
        inside = (px >= x[0]) & (px <= x[-1]) & (py >= y[0]) & (py <= y[-1])
        line = np.zeros_like(sig)
        if np.any(inside):
            line[inside] = spline.ev(px[inside], py[inside])
        values[i] = np.trapezoid(line, sig)
    return _SampledPart(sig * scale, other * values)


@dataclass(frozen=True)
class Marginal:
    """Signed one-dimensional distribution of position or momentum.

    Atoms at coinciding locations are merged before they are stored, so a
    positive and a negative atom at the same place cancel.
    """

    axis: Axis
    scale: float
    atoms: tuple
    parts: tuple

    def cdf(self, x: float) -> float:
        """Signed mass at coordinates ``<= x``."""
        cont = math.fsum(part.cdf(x) for part in self.parts)
        return cont + math.fsum(w for loc, w in self.atoms if loc <= x)

    def integrate(self, a: float, b: float) -> float:
        """Signed mass of the closed interval ``[a, b]``."""
        if b < a:
            return 0.0
        cont = math.fsum(part.cdf(b) - part.cdf(a) for part in self.parts)
        return cont + math.fsum(w for loc, w in self.atoms if a <= loc <= b)

    def density(self, x) -> np.ndarray:
        """Density of the continuous part."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(x)
        for part in self.parts:
            out = out + part.density(x)
        return out

    def total(self) -> float:
        cont = math.fsum(part.cdf(math.inf) for part in self.parts)
        return cont + math.fsum(w for _, w in self.atoms)

    def exceedance(self, c: float) -> float:
        """Signed mass of ``|x| > c``."""
        return self.total() - self.integrate(-c, c)

    @property
    def bound(self) -> float:
        """Half-width of an interval containing all mass."""
        extent = [abs(loc) for loc, _ in self.atoms] + [part.bound for part in self.parts]
        return max(extent, default=0.0)

    def atom_at(self, x: float, tol: float = 1e-10) -> float:
        """Net atom weight within ``tol`` (in units of the axis scale) of ``x``."""
        return math.fsum(w for loc, w in self.atoms if abs(loc - x) <= tol * self.scale)


def merge_atoms(locations: Iterable[float], weights: Iterable[float], tol: float) -> tuple:
    """Sum weights of atoms closer than ``tol``; drop atoms that cancel."""
    pairs = sorted(zip(locations, weights))
    merged: list[list[float]] = []
    for loc, w in pairs:
        if merged and loc - merged[-1][2] <= tol:
            merged[-1][1] += w
            merged[-1][2] = loc
        else:
            merged.append([loc, w, loc])
    return tuple((loc, w) for loc, w, _ in merged if abs(w) > 1e-15)


ATOM_MERGE_TOL = 1e-12


def marginal(state: PhaseState, axis: Axis | str) -> Marginal:
    """Position or momentum marginal of ``state``."""
    axis = Axis(axis)
    if axis is Axis.CLASSICAL_FUNCTION:
        raise ValueError("marginals exist for position and momentum only")
    params = state.params
    position = axis is Axis.POSITION
    scale, other = (params.q_scale, params.p_scale) if position else (params.p_scale, params.q_scale)
    points = state.of_type(PointMass)
    atoms = merge_atoms([pm.q if position else pm.p for pm in points],
                        [pm.weight for pm in points], ATOM_MERGE_TOL * scale)
    parts = []
    for comp in state.components:
        if isinstance(comp, RADIAL_TYPES):
            parts.append(_RadialPart(comp, scale, other, params.hbar))
        elif isinstance(comp, GridDensity):
            parts.append(_grid_projection(comp, params, axis))
    return Marginal(axis, scale, atoms, tuple(parts))


# -- classical phase-space functions -----------------------------------------

def _polar_nodes(r_lo: float, r_hi: float, n_r: int, n_phi: int):
    xg, wg = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * (r_hi - r_lo) * xg + 0.5 * (r_hi + r_lo)
    wr = 0.5 * (r_hi - r_lo) * wg
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    return r, wr, phi


def classical_probability(state: PhaseState, func: Callable, interval: tuple[float, float],
                          n_r: int = 400, n_phi: int = 720) -> float:
    """``P(A_c in [a, b]) = int_{A_c(q,p) in [a,b]} rho dGamma``.

    ``func(q, p)`` is evaluated on arrays in physical units. Continuous
    components use a tensor quadrature (Gauss-Legendre in ``r``, periodic
    trapezoid in the polar angle) of the sharp indicator, so the accuracy is
    limited by the resolution of the indicator's boundary.
    """
    a, b = interval
    params = state.params
    total = []
    for comp in state.components:
        if isinstance(comp, PointMass):
            val = float(func(np.float64(comp.q), np.float64(comp.p)))
            total.append(comp.weight if a <= val <= b else 0.0)
        elif isinstance(comp, RADIAL_TYPES):
            r, wr, phi = _polar_nodes(comp.r_min, comp.r_max, n_r, n_phi)
            R, PHI = np.meshgrid(r, phi, indexing="ij")
            q = R * np.cos(PHI) * params.q_scale
            p = R * np.sin(PHI) * params.p_scale
            vals = func(q, p)
            ind = ((vals >= a) & (vals <= b)).astype(float)
            radial = comp(r) * r * wr
            total.append(params.hbar * (2.0 * math.pi / n_phi) * float(radial @ ind.sum(axis=1)))
        else:
            x, y = to_dimensionless(comp.q_grid, comp.p_grid, params)
            X, Y = np.meshgrid(x, y, indexing="ij")
            c, s = math.cos(comp.angle), math.sin(comp.angle)
            q = (X * c + Y * s) * params.q_scale
            p = (-X * s + Y * c) * params.p_scale
            vals = func(q, p)
            total.append(_grid_integral(comp, ((vals >= a) & (vals <= b)).astype(float)))
    return math.fsum(total)


# -- generic pairing --------------------------------------------------------

def pair(measure, outcome, state: PhaseState) -> float:
    """``<g(I), rho>`` for an energy or projection measure.

    ``outcome`` is a level index (or an iterable of indices) for an
    :class:`EnergyLevelMeasure` and a closed interval ``(a, b)`` for a
    :class:`ProjectionMeasure`.
    """
    if isinstance(measure, EnergyLevelMeasure):
        indices = [outcome] if isinstance(outcome, (int, np.integer)) else list(outcome)
        return math.fsum(pair_energy(measure, int(n), state) for n in indices)
    if isinstance(measure, ProjectionMeasure):
        a, b = outcome
        if measure.axis is Axis.CLASSICAL_FUNCTION:
            if measure.func is None:
                raise ValueError("classical function measure needs func")
            return classical_probability(state, measure.func, (a, b))
        return marginal(state, measure.axis).integrate(a, b)
    raise TypeError(f"unsupported measure {measure!r}")
