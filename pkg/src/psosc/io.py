"""JSON state files.

Layout::

    {"params": {"hbar": 1.0, "m": 1.0, "omega": 1.0},
     "components": [{"type": "point", "q": 0, "p": 0, "weight": 1},
                    {"type": "radial_poly", "coeffs": [...], "r_min": 1, "r_max": 1.414},
                    {"type": "uniform_disk", "r_max": 1, "height": 0.318},
                    {"type": "grid", "q_grid": [...], "p_grid": [...], "values": [[...]],
                     "angle": 0.0}]}

``angle`` is optional and defaults to zero. Floats are written with
``repr``, which round-trips exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import GridDensity, OscillatorParams, PhaseState, PointMass, RadialPolynomial, UniformDisk


def component_to_dict(comp) -> dict:
    if isinstance(comp, PointMass):
        return {"type": "point", "q": comp.q, "p": comp.p, "weight": comp.weight}
    if isinstance(comp, RadialPolynomial):
        return {"type": "radial_poly", "coeffs": list(comp.coeffs), "r_min": comp.r_min,
                "r_max": comp.r_max}
    if isinstance(comp, UniformDisk):
        return {"type": "uniform_disk", "r_max": comp.r_max, "height": comp.height}
    if isinstance(comp, GridDensity):
        out = {"type": "grid", "q_grid": comp.q_grid.tolist(), "p_grid": comp.p_grid.tolist(),
               "values": comp.values.tolist()}
        if comp.angle:
            out["angle"] = comp.angle
        return out
    raise TypeError(f"cannot serialize {comp!r}")


def component_from_dict(d: dict):
    kind = d.get("type")
    if kind == "point":
        return PointMass(float(d["q"]), float(d["p"]), float(d.get("weight", 1.0)))
    if kind == "radial_poly":
        return RadialPolynomial(tuple(d["coeffs"]), float(d["r_min"]), float(d["r_max"]))
    if kind == "uniform_disk":
        return UniformDisk(float(d["r_max"]), float(d["height"]))
    if kind == "grid":
        return GridDensity(np.array(d["q_grid"], dtype=float), np.array(d["p_grid"], dtype=float),
                           np.array(d["values"], dtype=float), float(d.get("angle", 0.0)))
    raise ValueError(f"unknown component type {kind!r}")


def state_to_dict(state: PhaseState) -> dict:
    p = state.params
    return {"params": {"hbar": p.hbar, "m": p.mass, "omega": p.omega},
            "components": [component_to_dict(c) for c in state.components]}


def state_from_dict(d: dict) -> PhaseState:
    try:
        raw = d.get("params", {})
        params = OscillatorParams(float(raw.get("hbar", 1.0)), float(raw.get("m", 1.0)),
                                  float(raw.get("omega", 1.0)))
        comps = tuple(component_from_dict(c) for c in d["components"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed state: {exc!r}") from exc
    return PhaseState(comps, params)


def dumps_state(state: PhaseState) -> str:
    return json.dumps(state_to_dict(state), indent=1, allow_nan=False)


def loads_state(text: str) -> PhaseState:
    return state_from_dict(json.loads(text))


def save_state(state: PhaseState, path) -> None:
    Path(path).write_text(dumps_state(state) + "\n")


def load_state(path) -> PhaseState:
    return loads_state(Path(path).read_text())
