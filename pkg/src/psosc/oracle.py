"""Membership test for the state space and the tunneling criterion.

A pseudo-density is a state when it is normalized and, at every time of the
flow, its position and momentum marginals and its energy distribution are
nonnegative. Time is sampled on flow angles in ``[0, pi)``; marginal
positivity at ``theta + pi`` mirrors the one at ``theta``. Energy
probabilities depend on ``r**2`` only and are checked once.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, PhaseState, total_mass
from .dynamics import evolve_angle
from .measures import Axis, Model, energy_distribution, energy_exceedance, marginal


@dataclass(frozen=True)
class ValidationConfig:
    time_samples: int = 180
    marginal_grid: int = 200
    energy_levels: int = 64
    tol_negative: float = 1e-9
    tol_norm: float = 1e-9

    def __post_init__(self):
        if min(self.time_samples, self.marginal_grid, self.energy_levels) < 1:
            raise ValueError("sample counts must be at least 1")
        if self.tol_negative < 0 or self.tol_norm < 0:
            raise ValueError("tolerances must be nonnegative")


@dataclass(frozen=True)
class MarginalViolation:
    time: float
    axis: str
    interval: tuple[float, float]
    value: float


@dataclass(frozen=True)
class ValidationReport:
    normalized: bool
    total_mass: float
    marginal_violations: tuple = field(default=())
    energy_violations: tuple = field(default=())

    @property
    def verdict(self) -> bool:
        return self.normalized and not self.marginal_violations and not self.energy_violations

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "normalized": self.normalized,
            "total_mass": self.total_mass,
            "marginal_violations": [
                {"time": v.time, "axis": v.axis, "interval": list(v.interval), "value": v.value}
                for v in self.marginal_violations
            ],
            "energy_violations": [{"level": n, "value": v} for n, v in self.energy_violations],
        }


@dataclass(frozen=True)
class TunnelingReport:
    alpha: float
    p_potential: float
    p_energy: float
    tol: float = 1e-9

    @property
    def tunneling(self) -> bool:
        return self.p_potential > self.p_energy + self.tol

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "p_potential": self.p_potential,
                "p_energy": self.p_energy, "tunneling": self.tunneling}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PSOSC_THREADS", "1")))
    except ValueError:
        return 1


ATOM_PROBE = 1e-9


def marginal_violations(state: PhaseState, theta: float, cfg: ValidationConfig) -> list:
    """Negative interval probabilities of both marginals at flow angle ``theta``.

    Each negative net atom is reported on a tiny interval around it. For the
    continuous part the most negative of a family of overlapping intervals
    (two widths, half-width offsets) is reported per axis.
    """
    evolved = evolve_angle(state, theta)
    t = float(theta / state.params.omega)
    found = []
    for axis in (Axis.POSITION, Axis.MOMENTUM):
        marg = marginal(evolved, axis)
        probe = ATOM_PROBE * marg.scale
        for loc, w in marg.atoms:
            if w < -cfg.tol_negative:
                value = marg.integrate(loc - probe, loc + probe)
                if value < -cfg.tol_negative:
                    found.append(MarginalViolation(t, axis.value, (loc - probe, loc + probe), value))
        if not marg.parts:
            continue
        half = marg.bound * (1.0 + 1e-9)
        width = 2.0 * half / cfg.marginal_grid
        edges = -half + 0.5 * width * np.arange(2 * cfg.marginal_grid + 1)
        cdf = np.array([marg.cdf(e) for e in edges])
        worst = None
        for span in (2, 4):  # widths `width` and `2 * width`, mass of (a, b]
            vals = cdf[span:] - cdf[:-span]
            i = int(np.argmin(vals))
            if vals[i] < -cfg.tol_negative and (worst is None or vals[i] < worst.value):
                worst = MarginalViolation(t, axis.value, (float(edges[i]), float(edges[i + span])),
                                          float(vals[i]))
        if worst is not None:
            found.append(worst)
    return found


def energy_violations(state: PhaseState, model: Model | str, cfg: ValidationConfig) -> list:
    dist = energy_distribution(model, state, cfg.energy_levels)
    return [(n, p) for n, (_, p) in enumerate(dist.entries) if p < -cfg.tol_negative]


def validate(state: PhaseState, model: Model | str = Model.SAWTOOTH,
             cfg: ValidationConfig | None = None) -> ValidationReport:
    """Sampled membership test of ``state`` in the state space of ``model``."""
    cfg = cfg or ValidationConfig()
    mass = total_mass(state)
    thetas = math.pi * np.arange(cfg.time_samples) / cfg.time_samples
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_time = list(pool.map(lambda th: marginal_violations(state, th, cfg), thetas))
    else:
        per_time = [marginal_violations(state, th, cfg) for th in thetas]
    return ValidationReport(
        normalized=abs(mass - 1.0) <= cfg.tol_norm,
        total_mass=mass,
        marginal_violations=tuple(v for batch in per_time for v in batch),
        energy_violations=tuple(energy_violations(state, model, cfg)),
    )


def potential_threshold(alpha: float, params) -> float:
    """Position beyond which ``V(q) = m omega**2 q**2 / 2`` exceeds ``alpha``."""
    return math.sqrt(2.0 * alpha / (params.mass * params.omega**2))


def tunneling_test(state: PhaseState, model: Model | str, alpha: float,
                   tol: float = 1e-9, n_max: int | None = None) -> TunnelingReport:
    """Compare ``P(V(q) > alpha)`` against ``P(H > alpha)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    p_pot = marginal(state, Axis.POSITION).exceedance(potential_threshold(alpha, state.params))
    p_en = energy_exceedance(model, state, alpha, n_max)
    return TunnelingReport(alpha, p_pot, p_en, tol)


def potential_exceedance_closed_form(alpha: float, params) -> float:
    """``P(V(q) > alpha)`` for the uniform unit disk, ``0 < alpha < hbar omega / 2``."""
    s = 2.0 * alpha / params.quantum
    if not 0.0 < s < 1.0:
        raise DomainError(f"alpha must lie in (0, hbar omega / 2), got {alpha!r}")
    root = math.sqrt(s)
    return 1.0 - (2.0 / math.pi) * (math.asin(root) + root * math.sqrt(1.0 - s))
