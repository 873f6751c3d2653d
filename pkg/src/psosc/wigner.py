"""Wigner functions of the quantum harmonic oscillator eigenstates."""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .core import OscillatorParams, PhasePoint, QuadratureFailure, r2

#: Highest Laguerre degree evaluated in double precision.
MAX_DEGREE = 200


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"Laguerre degree {n} exceeds the supported maximum {MAX_DEGREE}")


def iter_laguerre(n_max: int, x):
    """Yield ``L_0(x), L_1(x), ..., L_n_max(x)``.

    Uses ``(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}``.
    """
    _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    yield cur
    for k in range(n_max):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        yield cur


def laguerre_table(n_max: int, x) -> np.ndarray:
    """Array of shape ``(n_max + 1,) + np.shape(x)`` holding ``L_0 .. L_n_max``."""
    return np.stack(list(iter_laguerre(n_max, x)))


def laguerre(n: int, x):
    """Laguerre polynomial ``L_n(x)`` by three-term recurrence."""
    _check_degree(n)
    result = laguerre_table(n, x)[n]
    return float(result) if np.ndim(result) == 0 else result


def quantum_weights(n_max: int, r2_values) -> np.ndarray:
    """``h * rho_n^W`` for ``n = 0 .. n_max`` as functions of ``r**2``.

    Each row is ``2 (-1)**n exp(-r**2) L_n(2 r**2)``; rows sum (in the Abel or
    Cesaro sense) to one.
    """
    u = np.asarray(r2_values, dtype=float)
    table = laguerre_table(n_max, 2.0 * u)
    signs = np.where(np.arange(n_max + 1) % 2 == 0, 2.0, -2.0)
    signs = signs.reshape((-1,) + (1,) * u.ndim)
    return signs * np.exp(-u) * table


def iter_quantum_weights(n_max: int, r2_values):
    """Yield the rows of :func:`quantum_weights` one level at a time."""
    u = np.asarray(r2_values, dtype=float)
    envelope = 2.0 * np.exp(-u)
    for n, lag in enumerate(iter_laguerre(n_max, 2.0 * u)):
        yield (envelope if n % 2 == 0 else -envelope) * lag


def quantum_weight(n: int, r2_value):
    """Weight function of the energy level ``hbar omega (n + 1/2)``."""
    result = quantum_weights(n, r2_value)[n]
    return float(result) if np.ndim(result) == 0 else result


def wigner_eigenstate(n: int, point: PhasePoint, params: OscillatorParams) -> float:
    """Wigner function of the ``n``-th oscillator eigenstate at ``point``."""
    return quantum_weight(n, r2(point, params)) / params.planck


def cesaro_partial_sums(terms) -> np.ndarray:
    """Running Cesaro (C,1) means of the partial sums of ``terms``."""
    partial = np.cumsum(np.asarray(terms, dtype=float), axis=0)
    counts = np.arange(1, partial.shape[0] + 1).reshape((-1,) + (1,) * (partial.ndim - 1))
    return np.cumsum(partial, axis=0) / counts


def _radial_integral(func, upper: float) -> float:
    value, err, *rest = quad(func, 0.0, upper, epsabs=1e-13, epsrel=1e-12, limit=400, full_output=1)
    if len(rest) > 1 and err > 1e-9:
        raise QuadratureFailure(rest[1])
    return value


def _decay_radius(n: int, exponent: float) -> float:
    # e^{-exponent r^2} |L_n(2 r^2)| is negligible (<1e-17) beyond this radius
    return math.sqrt((4 * n + 2 + 45.0) / exponent)


def eigenstate_norm(n: int, params: OscillatorParams | None = None) -> float:
    """``int rho_n^W dGamma`` by radial quadrature (``dGamma = hbar r dr dphi``)."""
    params = params or OscillatorParams()
    # 2 pi hbar / h = 1
    factor = 2.0 * math.pi * params.hbar / params.planck
    return factor * _radial_integral(lambda r: quantum_weight(n, r * r) * r, _decay_radius(n, 1.0))


def quantum_purity_overlap(m: int, n: int, params: OscillatorParams | None = None) -> float:
    """``h * int rho_m^W rho_n^W dGamma``; equals the Kronecker delta."""
    params = params or OscillatorParams()
    factor = params.planck * 2.0 * math.pi * params.hbar / params.planck**2

    def integrand(r):
        w = quantum_weights(max(m, n), r * r)
        return w[m] * w[n] * r

    return factor * _radial_integral(integrand, _decay_radius(max(m, n), 2.0))
