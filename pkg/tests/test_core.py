import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from psosc import (GridDensity, OscillatorParams, ParamMismatch, PhasePoint, PhaseState, PointMass,
                   RadialPolynomial, UniformDisk, classical_energy, mix, total_mass)
from psosc.core import NonIntegrable, component_mass, r2, support_radius, to_dimensionless

positive = st.floats(0.05, 20.0)


@pytest.mark.parametrize("bad", [dict(hbar=0.0), dict(mass=-1.0), dict(omega=float("nan"))])
def test_params_must_be_positive(bad):
    with pytest.raises(ValueError):
        OscillatorParams(**bad)


def test_scales(odd):
    assert odd.q_scale * odd.p_scale == pytest.approx(odd.hbar)
    assert odd.p_scale / odd.q_scale == pytest.approx(odd.mass * odd.omega)
    assert odd.planck == pytest.approx(2 * math.pi * odd.hbar)


@given(positive, positive, positive, st.floats(-5, 5), st.floats(-5, 5))
def test_r2_is_twice_energy_in_quanta(hbar, mass, omega, q, p):
    params = OscillatorParams(hbar, mass, omega)
    pt = PhasePoint(q, p)
    h = p * p / (2 * mass) + 0.5 * mass * omega**2 * q * q
    assert classical_energy(pt, params) == pytest.approx(h, rel=1e-12, abs=1e-300)
    assert r2(pt, params) == pytest.approx(2 * h / (hbar * omega), rel=1e-12, abs=1e-300)


def test_to_dimensionless(odd):
    x, y = to_dimensionless(odd.q_scale * 3, odd.p_scale * -2, odd)
    assert (float(x), float(y)) == pytest.approx((3.0, -2.0))


def test_radial_polynomial_mass_matches_quadrature(odd):
    comp = RadialPolynomial((1.0, -2.0, 0.5), 0.3, 1.7)
    poly = np.polynomial.Polynomial([0.0, 1.0, -2.0, 0.5]).integ()
    want = 2 * math.pi * odd.hbar * (poly(1.7) - poly(0.3))
    assert component_mass(comp, odd) == pytest.approx(want, rel=1e-13)
    assert comp(np.array([0.1, 2.0])).tolist() == [0.0, 0.0]


def test_disk_mass(odd):
    assert component_mass(UniformDisk(2.0, 0.1), odd) == pytest.approx(math.pi * 4 * 0.1 * odd.hbar)


def test_grid_mass_is_trapezoid(odd):
    q = np.linspace(-1, 1, 5)
    p = np.linspace(0, 2, 3)
    grid = GridDensity(q, p, np.ones((5, 3)))
    assert component_mass(grid, odd) == pytest.approx(4.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridDensity(np.array([0.0, 1.0]), np.array([0.0, 1.0]), np.ones((3, 2)))
    with pytest.raises(ValueError):
        GridDensity(np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.ones((2, 2)))
    grid = GridDensity(np.array([0.0, 1.0]), np.array([0.0, 1.0]), np.ones((2, 2)), angle=7.0)
    assert grid.angle == pytest.approx(7.0 - 2 * math.pi)
    with pytest.raises(ValueError):
        grid.values[0, 0] = 3.0


def test_nan_grid_is_not_integrable(unit):
    vals = np.ones((2, 2))
    vals[0, 0] = np.nan
    with pytest.raises(NonIntegrable):
        component_mass(GridDensity(np.array([0.0, 1.0]), np.array([0.0, 1.0]), vals), unit)


def test_empty_state_rejected():
    with pytest.raises(ValueError):
        PhaseState(())


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=4))
def test_mix_is_affine_in_mass(raw):
    total = sum(raw)
    if total == 0:
        return
    weights = [w / total for w in raw]
    weights[-1] = 1.0 - math.fsum(weights[:-1])
    if weights[-1] < 0:
        return
    states = [PhaseState((PointMass(0.0, 0.0, 1.0 + i),)) for i in range(len(weights))]
    mixed = mix(zip(weights, states))
    want = math.fsum(w * (1.0 + i) for i, w in enumerate(weights))
    assert total_mass(mixed) == pytest.approx(want, rel=1e-12)


def test_mix_rejects_bad_input(unit, odd):
    a = PhaseState((PointMass(0.0, 0.0),), unit)
    b = PhaseState((PointMass(0.0, 0.0),), odd)
    with pytest.raises(ParamMismatch):
        mix([(0.5, a), (0.5, b)])
    with pytest.raises(ValueError):
        mix([(0.7, a), (0.7, a)])
    with pytest.raises(ValueError):
        mix([(-0.5, a), (1.5, a)])


def test_support_radius(odd):
    state = PhaseState((PointMass(3 * odd.q_scale, 4 * odd.p_scale), UniformDisk(2.0, 1.0)), odd)
    assert support_radius(state) == pytest.approx(5.0)
