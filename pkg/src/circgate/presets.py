"""Named parameter presets, stored as data so new columns need no code change.

A "physical" preset carries (n, temperature, separation) and optional
published reference values for the report path; the gate parameters are
derived at load time: B from the blockade calculation, tau from the lifetime
model, Omega from the optimal-drive formula unless overridden.  A "direct"
preset carries explicit GateParams fields (tau_s null means no decay) and is
used for synthetic ideal-gate checks.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

from .atomic import lifetime
from .blockade import blockade_shift
from .error_model import CS_QUBIT_SPLITTING, GateParams, optimal_rabi
from .errors import ValidationError

# Table column order used by the report path.
TABLE_PRESETS = ("cs80-0K", "cs100-0K", "cs110-0K", "cs110-77K", "cs110-300K")


def load_presets() -> dict[str, dict[str, Any]]:
    text = resources.files("circgate").joinpath("data/presets.json").read_text("utf-8")
    return json.loads(text)


def preset_names() -> tuple[str, ...]:
    return tuple(load_presets())


def get_preset(name: str) -> dict[str, Any]:
    presets = load_presets()
    if name not in presets:
        known = ", ".join(sorted(presets))
        raise ValidationError(f"unknown preset {name!r}; available: {known}")
    return presets[name]


def gate_params_for(
    preset: dict[str, Any],
    omega_override: float | None = None,
    omega_10: float = CS_QUBIT_SPLITTING,
) -> GateParams:
    """Build the dynamics input record from a preset dictionary."""
    kind = preset.get("kind")
    if kind == "direct":
        p = preset["params"]
        tau = p.get("tau_s")
        return GateParams(
            omega=float(p["omega_rad_s"]) if omega_override is None else omega_override,
            omega_10=float(p["omega_10_rad_s"]),
            blockade_b=float(p["blockade_rad_s"]),
            tau=math.inf if tau is None else float(tau),
        )
    if kind == "physical":
        b = blockade_shift(preset["n"], preset["separation_m"]).blockade_shift
        tau = lifetime(preset["n"], preset["temperature_K"])
        omega = optimal_rabi(b, tau) if omega_override is None else omega_override
        return GateParams(omega=omega, omega_10=omega_10, blockade_b=b, tau=tau)
    raise ValidationError(f"preset kind must be 'physical' or 'direct', got {kind!r}")
