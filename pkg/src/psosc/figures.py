"""Tabulated data behind the sawtooth-oscillator figures."""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .catalog import rho_bn, rho_nn, rho_tn
from .core import OscillatorParams, PhasePoint, r2
from .dynamics import evolve_state
from .measures import T

FIGURES = ("fig1", "fig2", "fig4")


def fig1(params: OscillatorParams, samples: int = 441) -> tuple[list, list]:
    """Weights ``T_0..T_3`` of ``r**2`` and the two radial states, ``r`` in ``[0, 2.2]``."""
    r = np.linspace(0.0, 2.2, samples)
    tn = rho_tn(params).components[0]
    nn = rho_nn(params).components[0]
    header = ["r", "T0", "T1", "T2", "T3", "rho_tn", "rho_nn"]
    cols = [r] + [T(n, r * r) for n in range(4)] + [tn(r), nn(r)]
    return header, np.column_stack(cols).tolist()


def fig2(params: OscillatorParams, samples: int = 401) -> tuple[list, list]:
    """``T_0..T_3`` on ``x`` in ``[0, 4]``."""
    x = np.linspace(0.0, 4.0, samples)
    return ["x", "T0", "T1", "T2", "T3"], np.column_stack([x] + [T(n, x) for n in range(4)]).tolist()


def fig4(params: OscillatorParams, samples: int = 181) -> tuple[list, list]:
    """Atoms of ``rho_bn`` at ``t = 0`` and ``t = pi / 4 omega`` with their orbits."""
    header = ["kind", "label", "t", "q", "p", "weight"]
    rows = []
    start = rho_bn(params)
    t_end = math.pi / (4.0 * params.omega)
    for t in (0.0, t_end):
        for i, atom in enumerate(evolve_state(start, t).components):
            rows.append(["atom", f"a{i}", t, atom.q, atom.p, atom.weight])
    phi = np.linspace(0.0, 2.0 * math.pi, samples)
    for i, atom in enumerate(start.components):
        radius = math.sqrt(r2(PhasePoint(atom.q, atom.p), params))
        for ph in phi:
            rows.append(["trajectory", f"a{i}", "", radius * math.cos(ph) * params.q_scale,
                         radius * math.sin(ph) * params.p_scale, ""])
    return header, rows


def figure_table(fig_id: str, params: OscillatorParams | None = None) -> tuple[list, list]:
    params = params or OscillatorParams()
    try:
        return {"fig1": fig1, "fig2": fig2, "fig4": fig4}[fig_id](params)
    except KeyError:
        raise ValueError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}") from None


def to_csv(header: list, rows: list) -> str:
    """CSV with floats at 9 significant digits; identical input gives identical bytes."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.9g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()
