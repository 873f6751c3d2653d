"""Thin wrapper around QUADPACK's adaptive Gauss-Kronrod integrator."""

from __future__ import annotations

import warnings

from scipy.integrate import IntegrationWarning, quad

from .core import QuadratureFailure

EPSABS = 1e-12
EPSREL = 1e-12


def adaptive(func, a: float, b: float, points=None, epsabs: float = EPSABS,
             epsrel: float = EPSREL, limit: int = 400, fail_above: float = 1e-9) -> float:
    """Integrate ``func`` over ``[a, b]``, splitting panels at ``points``.

    Raises :class:`QuadratureFailure` when QUADPACK reports a problem and its
    error estimate exceeds ``fail_above``.
    """
    if b <= a:
        return 0.0
    inner = None
    if points is not None:
        inner = sorted({float(x) for x in points if a < x < b})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        result = quad(func, a, b, points=inner or None, epsabs=epsabs, epsrel=epsrel,
                      limit=limit, full_output=1)
    value, err = result[0], result[1]
    if len(result) > 3 and err > fail_above:
        raise QuadratureFailure(f"{result[3]} (error estimate {err:.3g} on [{a}, {b}])")
    return value
