"""Every verifiable claim about the three oscillator models, as a table.

Each check returns rows ``(claim, expected, actual, passed)``. The tolerances
are fixed here; :func:`run_all` is what ``psosc selftest`` prints.
"""

from __future__ import annotations

import itertools
import math
import warnings

import numpy as np
from scipy.optimize import minimize_scalar

from . import catalog
from .core import OscillatorParams, PhasePoint, mix, r2, total_mass
from .dynamics import evolve_point, evolve_state
from .measures import Model, T, TruncationWarning, energy_distribution, expected_hamiltonian, marginal
from .oracle import ValidationConfig, potential_exceedance_closed_form, tunneling_test, validate
from .wigner import eigenstate_norm, quantum_purity_overlap

PARAMS = OscillatorParams()
MC_SAMPLES = 10_000_000
MC_SEED = 20240611


def _row(claim, expected, actual, passed):
    return (claim, str(expected), actual if isinstance(actual, str) else f"{actual:.12g}", bool(passed))


def sawtooth_identities():
    x = np.linspace(0.0, 20.0, 400)
    ones = np.zeros_like(x)
    first = np.zeros_like(x)
    for i, xi in enumerate(x):
        ns = range(int(math.ceil(xi)) + 2)
        ones[i] = sum(T(n, xi) for n in ns)
        first[i] = sum(n * T(n, xi) for n in ns)
    e1, e2 = np.max(np.abs(ones - 1)), np.max(np.abs(first - x))
    return [_row("sum_n T_n(x) = 1 on [0, 20]", "err <= 1e-12", e1, e1 <= 1e-12),
            _row("sum_n n T_n(x) = x on [0, 20]", "err <= 1e-12", e2, e2 <= 1e-12)]


def tunneling_state_energy():
    dist = energy_distribution(Model.SAWTOOTH, catalog.rho_tn(PARAMS), 10)
    p = dist.probabilities
    rest = np.max(np.abs(p[2:]))
    return [_row("rho_tn P(H=0)", 0.5, p[0], abs(p[0] - 0.5) <= 1e-10),
            _row("rho_tn P(H=hw/2)", 0.5, p[1], abs(p[1] - 0.5) <= 1e-10),
            _row("rho_tn max P(H=n hw/2), 2<=n<=10", 0, rest, rest <= 1e-12)]


def monte_carlo_mass(state, samples: int = MC_SAMPLES, seed: int = MC_SEED, chunk: int = 1_000_000):
    """Brute-force mass of a radial component: uniform samples on its bounding square."""
    comp = state.components[0]
    rng = np.random.default_rng(seed)
    side = 2.0 * comp.r_max
    s1 = s2 = 0.0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        pts = rng.uniform(-comp.r_max, comp.r_max, size=(n, 2))
        vals = comp(np.hypot(pts[:, 0], pts[:, 1]))
        s1 += vals.sum()
        s2 += (vals * vals).sum()
        done += n
    mean = s1 / samples
    sem = math.sqrt(max(s2 / samples - mean * mean, 0.0) / samples)
    scale = state.params.hbar * side * side
    return mean * scale, sem * scale


def nonpositive_eigenstate():
    state = catalog.rho_nn(PARAMS)
    dist = energy_distribution(Model.SAWTOOTH, state, 6)
    mass = total_mass(state)
    mc, sem = monte_carlo_mass(state)
    return [_row("rho_nn P(H=hw)", 1, dist.probability(2), abs(dist.probability(2) - 1) <= 1e-7),
            _row("rho_nn P(H=hw/2)", 0, dist.probability(1), abs(dist.probability(1)) <= 1e-7),
            _row("rho_nn total mass", 1, mass, abs(mass - 1) <= 1e-7),
            _row("rho_nn Monte Carlo mass (1e7 samples)", f"1 within 5 sem ({5 * sem:.2g})", mc,
                 abs(mc - 1) <= 5 * sem)]


def rho_nn_minimum(params: OscillatorParams = PARAMS) -> float:
    comp = catalog.rho_nn(params).components[0]
    r = np.linspace(1.0, math.sqrt(2.0), 4001)
    vals = comp(r)
    i = int(np.argmin(vals))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]
    res = minimize_scalar(lambda x: float(comp(x)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return min(float(res.fun), float(vals[i]))


def nonpositivity():
    bound = -1e-3 / (math.pi * PARAMS.hbar)
    m = rho_nn_minimum()
    return [_row("min rho_nn on [1, sqrt2]", f"< {bound:.6g}", m, m < bound)]


def broken_state():
    state = catalog.rho_bn(PARAMS)
    instant = validate(state, cfg=ValidationConfig(time_samples=1))
    t = math.pi / (4 * PARAMS.omega)
    marg = marginal(evolve_state(state, t), "position")
    target = math.sqrt(2 * PARAMS.hbar / (PARAMS.mass * PARAMS.omega))
    atom = marg.atom_at(target, tol=1e-10)
    negatives = ", ".join(f"{w:+g}@{loc:.6g}" for loc, w in marg.atoms if w < 0)
    full = validate(state)
    return [_row("rho_bn instantaneous checks at t=0", True, str(instant.verdict), instant.verdict),
            _row("rho_bn net atom at q=sqrt(2hbar/mw), wt=pi/4", -1,
                 f"{atom:g} (negative atoms: {negatives})", abs(atom + 1) <= 1e-10),
            _row("rho_bn verdict", False, str(full.verdict), not full.verdict)]


def tunneling_closed_form():
    state = catalog.rho_tn(PARAMS)
    rows = []
    for frac in (0.05, 0.1, 0.2, 0.24):
        alpha = frac * PARAMS.quantum
        got = tunneling_test(state, Model.SAWTOOTH, alpha).p_potential
        want = potential_exceedance_closed_form(alpha, PARAMS)
        rows.append(_row(f"rho_tn P(V>{frac} hw) vs closed form", f"{want:.12g} +- 1e-6", got,
                         abs(got - want) <= 1e-6))
    alpha = 0.5 * PARAMS.quantum * math.pi**2 / 16 * 0.1**2
    got = tunneling_test(state, Model.SAWTOOTH, alpha).p_potential
    rows.append(_row("rho_tn P(V>alpha_eps), eps=0.1", "[0.88, 0.92]", got, 0.88 <= got <= 0.92))
    return rows


def tunneling_verdicts():
    cases = [("rho0", Model.SAWTOOTH, 0.1, False), ("rho0", Model.SAWTOOTH, 0.4, False),
             ("rho_nn", Model.SAWTOOTH, 0.6, False), ("rho_nn", Model.SAWTOOTH, 0.9, False),
             ("rho_tn", Model.SAWTOOTH, 0.05, True),
             ("quantum_ground_grid", Model.QUANTUM, 0.45, True)]
    rows = []
    for name, model, frac, want in cases:
        rep = tunneling_test(catalog.build(name, PARAMS), model, frac * PARAMS.quantum)
        rows.append(_row(f"{name} ({model.value}) tunnels at alpha={frac} hw", want,
                         f"{rep.tunneling} (P_V={rep.p_potential:.6g}, P_H={rep.p_energy:.6g})",
                         rep.tunneling == want))
    return rows


def wigner_suite():
    norm = max(abs(eigenstate_norm(n, PARAMS) - 1) for n in range(11))
    ortho = max(abs(quantum_purity_overlap(m, n, PARAMS) - (m == n))
                for m in range(7) for n in range(m, 7))
    moment = 0.0
    for width in (0.5, 1.0, 2.0):
        state = catalog.gaussian_grid(PARAMS, width=width, half_width=11.0, nodes=441)
        dist = energy_distribution(Model.QUANTUM, state, 64)
        moment = max(moment, abs(dist.mean() - expected_hamiltonian(state)))
    return [_row("int rho_n^W = 1, n<=10", "err <= 1e-8", norm, norm <= 1e-8),
            _row("h int rho_m^W rho_n^W = delta_mn, m,n<=6", "err <= 1e-7", ortho, ortho <= 1e-7),
            _row("sum_n E_n <h rho_n^W, rho> = <H_c, rho>, N=64", "err <= 1e-6", moment, moment <= 1e-6)]


def dynamics_suite():
    worst = {"r2": 0.0, "group": 0.0, "period": 0.0, "energy": 0.0}
    t1, t2 = 0.37, 1.91
    period = 2 * math.pi / PARAMS.omega
    for name in catalog.NAMES:
        state = catalog.build(name, PARAMS)
        for comp in state.components:
            if hasattr(comp, "weight"):
                pt = PhasePoint(comp.q, comp.p)
                for t in (t1, t2, period):
                    worst["r2"] = max(worst["r2"], abs(r2(evolve_point(pt, t, PARAMS), PARAMS) - r2(pt, PARAMS)))
        worst["group"] = max(worst["group"], _state_distance(
            evolve_state(evolve_state(state, t1), t2), evolve_state(state, t1 + t2)))
        worst["period"] = max(worst["period"], _state_distance(evolve_state(state, period), state))
        for model in Model:
            levels = 64 if model is Model.QUANTUM else 12
            with warnings.catch_warnings():
                # point masses are not quantum states; only invariance matters here
                warnings.simplefilter("ignore", TruncationWarning)
                base = energy_distribution(model, state, levels).probabilities
                moved = energy_distribution(model, evolve_state(state, t1), levels).probabilities
            worst["energy"] = max(worst["energy"], float(np.max(np.abs(base - moved))))
    return [_row(f"dynamics: {key} on all named states", "err <= 1e-10", val, val <= 1e-10)
            for key, val in worst.items()]


def _state_distance(a, b) -> float:
    """Largest difference in atom positions/weights or grid flow angles."""
    worst = 0.0
    for ca, cb in zip(a.components, b.components):
        if hasattr(ca, "weight"):
            worst = max(worst, abs(ca.q - cb.q), abs(ca.p - cb.p), abs(ca.weight - cb.weight))
        elif hasattr(ca, "angle"):
            d = (ca.angle - cb.angle) % (2 * math.pi)
            worst = max(worst, min(d, 2 * math.pi - d))
    return worst


def convexity():
    states = {n: catalog.build(n, PARAMS) for n in ("rho0", "rho_tn", "rho_nn")}
    rows = []
    for (na, a), (nb, b) in itertools.combinations(states.items(), 2):
        for lam in (0.25, 0.5, 0.75):
            ok = validate(mix([(lam, a), (1 - lam, b)])).verdict
            rows.append(_row(f"{lam} {na} + {1 - lam} {nb} is a state", True, str(ok), ok))
    return rows


CLAIMS = [
    ("1", "T_n partition of unity and first moment", sawtooth_identities),
    ("2", "rho_tn energy split", tunneling_state_energy),
    ("3", "rho_nn is the hw eigenstate", nonpositive_eigenstate),
    ("4", "rho_nn is nonpositive", nonpositivity),
    ("5", "rho_bn broken by time evolution", broken_state),
    ("6", "rho_tn potential exceedance closed form", tunneling_closed_form),
    ("7", "tunneling verdicts", tunneling_verdicts),
    ("8", "quantum Wigner identities", wigner_suite),
    ("9", "exact dynamics invariants", dynamics_suite),
    ("10", "convexity of the state set", convexity),
]


def run_all():
    """Yield ``(criterion, claim, expected, actual, passed)`` for every claim."""
    for cid, _, check in CLAIMS:
        for row in check():
            yield (cid,) + row
