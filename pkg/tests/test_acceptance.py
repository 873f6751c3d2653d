"""Acceptance criteria 1-10, each at its stated tolerance.

Tests carry ``@pytest.mark.criterion(n)``; the terminal summary prints one
PASS/FAIL line per criterion. Oracles here are computed independently of
``psosc.claims``.
"""

import itertools
import math
import warnings

import numpy as np
import pytest
from scipy import integrate

from psosc import (Axis, Model, OscillatorParams, PhasePoint, T, TruncationWarning, ValidationConfig,
                   build, energy_distribution, evolve_point, evolve_state, marginal, mix,
                   tunneling_test, validate, wigner_eigenstate)
from psosc.catalog import NAMES, gaussian_grid
from psosc.core import GridDensity, PointMass, r2, total_mass
from psosc.measures import expected_hamiltonian

P = OscillatorParams()
HW = P.quantum


def _report(cid, name, expected, actual, ok):
    print(f"criterion {cid} [{name}] expected {expected}, got {actual}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"{name}: expected {expected}, got {actual}"


# 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_hat_identities_on_grid():
    x = np.linspace(0.0, 20.0, 400)
    levels = np.arange(0, 23)
    table = np.array([T(int(n), x) for n in levels])
    e0 = float(np.max(np.abs(table.sum(axis=0) - 1.0)))
    e1 = float(np.max(np.abs(levels @ table - x)))
    _report(1, "sum T_n = 1", "<= 1e-12", e0, e0 <= 1e-12)
    _report(1, "sum n T_n = x", "<= 1e-12", e1, e1 <= 1e-12)


# 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_tunneling_state_energy_split():
    p = energy_distribution(Model.SAWTOOTH, build("rho_tn", P), 10).probabilities
    ok = abs(p[0] - 0.5) <= 1e-10 and abs(p[1] - 0.5) <= 1e-10
    rest = float(np.max(np.abs(p[2:11])))
    _report(2, "P(0), P(hw/2)", "0.5, 0.5 +- 1e-10", (p[0], p[1]), ok)
    _report(2, "P(n hw/2), 2<=n<=10", "0 +- 1e-12", rest, rest <= 1e-12)


# 3 ---------------------------------------------------------------------------

def _mc_mass(comp, samples=10_000_000, seed=12345):
    """Mean of the density over the bounding square, in chunks."""
    rng = np.random.default_rng(seed)
    half = comp.r_max
    s1 = s2 = 0.0
    for _ in range(samples // 1_000_000):
        xy = rng.uniform(-half, half, size=(1_000_000, 2))
        v = comp(np.sqrt(xy[:, 0] ** 2 + xy[:, 1] ** 2))
        s1 += float(v.sum())
        s2 += float((v * v).sum())
    mean = s1 / samples
    sem = math.sqrt((s2 / samples - mean * mean) / samples)
    area = (2 * half) ** 2 * P.hbar
    return mean * area, sem * area


@pytest.mark.criterion(3)
def test_rho_nn_mass_monte_carlo_first():
    comp = build("rho_nn", P).components[0]
    mc, sem = _mc_mass(comp)
    _report(3, "Monte Carlo mass, 1e7 samples", f"1 within 5 sem = {5 * sem:.2g}", mc, abs(mc - 1) <= 5 * sem)
    quad, _ = integrate.quad(lambda r: 2 * math.pi * P.hbar * r * comp(r), 1.0, math.sqrt(2.0),
                             epsabs=1e-13, epsrel=1e-13)
    _report(3, "independent quadrature agrees with Monte Carlo", "within 5 sem", quad,
            abs(quad - mc) <= 5 * sem)
    mass = total_mass(build("rho_nn", P))
    _report(3, "total_mass", "1 +- 1e-7", mass, abs(mass - 1) <= 1e-7)


@pytest.mark.criterion(3)
def test_rho_nn_is_energy_eigenstate():
    dist = energy_distribution(Model.SAWTOOTH, build("rho_nn", P))
    _report(3, "P(H=hw)", "1 +- 1e-7", dist.probability(2), abs(dist.probability(2) - 1) <= 1e-7)
    _report(3, "P(H=hw/2)", "0 +- 1e-7", dist.probability(1), abs(dist.probability(1)) <= 1e-7)


# 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_rho_nn_goes_negative():
    comp = build("rho_nn", P).components[0]
    r = np.linspace(1.0, math.sqrt(2.0), 20001)
    low = float(comp(r).min())
    bound = -1e-3 / (math.pi * P.hbar)
    _report(4, "min density on [1, sqrt2]", f"< {bound:.4g}", low, low < bound)


# 5 ---------------------------------------------------------------------------

RHO_BN = build("rho_bn", P)
QUARTER = math.pi / (4 * P.omega)


@pytest.mark.criterion(5)
def test_broken_state_passes_instantaneous_checks():
    rep = validate(RHO_BN, cfg=ValidationConfig(time_samples=1))
    _report(5, "t=0 checks", True, rep.verdict, rep.verdict)


@pytest.mark.criterion(5)
def test_broken_state_negative_atom_location():
    marg = marginal(evolve_state(RHO_BN, QUARTER), Axis.POSITION)
    target = math.sqrt(2 * P.hbar / (P.mass * P.omega))
    weight = sum(w for loc, w in marg.atoms if abs(loc - target) <= 1e-10)
    _report(5, "net atom at q=sqrt(2 hbar/m w)", -1, f"{weight} (atoms {marg.atoms})",
            abs(weight + 1) <= 1e-10)


@pytest.mark.criterion(5)
def test_broken_state_has_negative_atom_at_eighth_period():
    # the weaker statement that holds: a net -1 atom exists at wt = pi/4
    marg = marginal(evolve_state(RHO_BN, QUARTER), Axis.POSITION)
    negative = [(loc, w) for loc, w in marg.atoms if w < 0]
    ok = len(negative) == 1 and abs(negative[0][1] + 1) <= 1e-10
    _report(5, "some net -1 atom at wt=pi/4", -1, negative, ok)


@pytest.mark.criterion(5)
def test_broken_state_verdict():
    rep = validate(RHO_BN)
    _report(5, "verdict", False, rep.verdict, not rep.verdict)


# 6 ---------------------------------------------------------------------------

def _closed_form(frac):
    s = 2 * frac
    return 1 - (2 / math.pi) * (math.asin(math.sqrt(s)) + math.sqrt(s) * math.sqrt(1 - s))


@pytest.mark.criterion(6)
@pytest.mark.parametrize("frac", [0.05, 0.1, 0.2, 0.24])
def test_potential_exceedance_closed_form(frac):
    got = tunneling_test(build("rho_tn", P), Model.SAWTOOTH, frac * HW).p_potential
    want = _closed_form(frac)
    _report(6, f"P(V > {frac} hw)", f"{want:.10f} +- 1e-6", got, abs(got - want) <= 1e-6)


@pytest.mark.criterion(6)
def test_potential_exceedance_near_one():
    alpha = 0.5 * HW * math.pi**2 / 16 * 0.1**2
    got = tunneling_test(build("rho_tn", P), Model.SAWTOOTH, alpha).p_potential
    _report(6, "P(V > alpha_eps), eps = 0.1", "[0.88, 0.92]", got, 0.88 <= got <= 0.92)


# 7 ---------------------------------------------------------------------------

@pytest.mark.criterion(7)
@pytest.mark.parametrize("name,frac,want", [
    ("rho0", 0.1, False), ("rho0", 0.4, False), ("rho_nn", 0.6, False), ("rho_nn", 0.9, False),
    ("rho_tn", 0.05, True)])
def test_sawtooth_tunneling_verdicts(name, frac, want):
    rep = tunneling_test(build(name, P), Model.SAWTOOTH, frac * HW)
    _report(7, f"{name} tunnels at {frac} hw", want, rep.to_dict(), rep.tunneling == want)


@pytest.mark.criterion(7)
def test_quantum_ground_state_tunnels_at_045():
    rep = tunneling_test(build("quantum_ground_grid", P), Model.QUANTUM, 0.45 * HW)
    _report(7, "quantum ground state tunnels at 0.45 hw", True, rep.to_dict(), rep.tunneling)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("frac", [0.5, 0.55])
def test_quantum_ground_state_tunnels_at_or_above_its_energy(frac):
    rep = tunneling_test(build("quantum_ground_grid", P), Model.QUANTUM, frac * HW)
    _report(7, f"quantum ground state tunnels at {frac} hw", True, rep.to_dict(), rep.tunneling)


# 8 ---------------------------------------------------------------------------

def _plane_integral(f, upper):
    # int f dGamma for radial f(u), dGamma = pi hbar du
    val, _ = integrate.quad(f, 0.0, upper, limit=400, epsabs=1e-14, epsrel=1e-13)
    return math.pi * P.hbar * val


def _rho(n, u):
    return wigner_eigenstate(n, PhasePoint(math.sqrt(u) * P.q_scale, 0.0), P)


@pytest.mark.criterion(8)
def test_wigner_norms():
    err = max(abs(_plane_integral(lambda u, n=n: _rho(n, u), 80.0 + 4 * n) - 1) for n in range(11))
    _report(8, "int rho_n^W = 1, n <= 10", "<= 1e-8", err, err <= 1e-8)


@pytest.mark.criterion(8)
def test_wigner_orthonormality():
    err = 0.0
    for m, n in itertools.combinations_with_replacement(range(7), 2):
        val = P.planck * _plane_integral(lambda u: _rho(m, u) * _rho(n, u), 60.0)
        err = max(err, abs(val - (m == n)))
    _report(8, "h int rho_m rho_n = delta", "<= 1e-7", err, err <= 1e-7)


@pytest.mark.criterion(8)
@pytest.mark.parametrize("width", [0.5, 1.0, 2.0])
def test_weak_first_moment(width):
    state = gaussian_grid(P, width=width, half_width=11.0, nodes=441)
    mean = energy_distribution(Model.QUANTUM, state, 64).mean()
    # <H_c> of exp(-r^2/width^2)/(pi hbar width^2) is hbar omega width^2 / 2
    exact = 0.5 * HW * width**2
    _report(8, f"sum E_n P_n = <H_c>, width {width}", f"{exact} +- 1e-6", mean, abs(mean - exact) <= 1e-6)
    direct = expected_hamiltonian(state)
    _report(8, "direct <H_c> agrees", f"{exact} +- 1e-6", direct, abs(direct - exact) <= 1e-6)


# 9 ---------------------------------------------------------------------------

def _atoms_and_angles(state):
    out = []
    for c in state.components:
        if isinstance(c, PointMass):
            out += [c.q, c.p, c.weight]
        elif isinstance(c, GridDensity):
            out += [math.cos(c.angle), math.sin(c.angle)]
    return np.array(out)


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name", NAMES)
def test_dynamics_invariants(name):
    state = build(name, P)
    t1, t2, period = 0.83, 2.4, 2 * math.pi / P.omega
    for c in state.of_type(PointMass):
        pt = PhasePoint(c.q, c.p)
        drift = max(abs(r2(evolve_point(pt, t, P), P) - r2(pt, P)) for t in (t1, t2, 17.3))
        _report(9, f"{name} r^2 preserved", "<= 1e-10", drift, drift <= 1e-10)
    group = float(np.max(np.abs(_atoms_and_angles(evolve_state(evolve_state(state, t1), t2))
                                - _atoms_and_angles(evolve_state(state, t1 + t2))), initial=0.0))
    _report(9, f"{name} group law", "<= 1e-10", group, group <= 1e-10)
    per = float(np.max(np.abs(_atoms_and_angles(evolve_state(state, period))
                              - _atoms_and_angles(state)), initial=0.0))
    _report(9, f"{name} periodicity", "<= 1e-10", per, per <= 1e-10)
    for model in Model:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            a = energy_distribution(model, state, 40).probabilities
            b = energy_distribution(model, evolve_state(state, t1), 40).probabilities
        err = float(np.max(np.abs(a - b)))
        _report(9, f"{name} {model.value} energy invariance", "<= 1e-10", err, err <= 1e-10)


# 10 --------------------------------------------------------------------------

@pytest.mark.criterion(10)
@pytest.mark.parametrize("pair", list(itertools.combinations(["rho0", "rho_tn", "rho_nn"], 2)))
@pytest.mark.parametrize("lam", [0.25, 0.5, 0.75])
def test_convexity(pair, lam):
    a, b = (build(n, P) for n in pair)
    rep = validate(mix([(lam, a), (1 - lam, b)]))
    _report(10, f"{lam} {pair[0]} + {1 - lam} {pair[1]}", True, rep.verdict, rep.verdict)
