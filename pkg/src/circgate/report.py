"""Report generation: the reference table, figure data series, and the
circularization-ladder summary.

Everything numeric is produced by the library; this module only arranges it
into rows, writes RFC-4180 CSV or JSON, and (for figure series) renders a
matplotlib PNG next to the delimited output.  Frequencies go on the wire in
MHz/GHz to match the labeled reference values; everything internal is SI.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from typing import Any

import numpy as np

from .atomic import lifetime, stirap_chain
from .blockade import ExclusionRadiusWarning, blockade_shift, vdd_perpendicular
from .error_model import min_error, optimal_rabi, stirap_intermediate_error
from .errors import ValidationError
from .presets import TABLE_PRESETS, gate_params_for, get_preset
from .tomography import run_full_qpt

TWO_PI = 2.0 * math.pi

# (key, label, unit, tolerance kind) for the comparison table; "factor"
# tolerances bound computed/reference ratios, "relative" ones |dev|.
TABLE_QUANTITIES = (
    ("rabi_mhz", "Rabi frequency Omega/2pi", "MHz", "relative", 0.02),
    ("blockade_ghz", "Blockade shift B/2pi", "GHz", "relative", 0.02),
    ("lifetime_ms", "Lifetime", "ms", "relative", 0.03),
    ("e_cb", "Analytic error E_cb", "", "relative", 0.05),
    ("trace_loss", "Trace loss", "", "factor", 1.5),
    ("e_o", "Process error E_O", "", "factor", 1.5),
)


@dataclass(frozen=True)
class TableCell:
    preset: str
    key: str
    label: str
    unit: str
    computed: float
    reference: float
    tolerance_kind: str
    tolerance: float

    @property
    def rel_deviation(self) -> float:
        return abs(self.computed - self.reference) / abs(self.reference)

    @property
    def within(self) -> bool:
        if self.tolerance_kind == "factor":
            lo, hi = self.reference / self.tolerance, self.reference * self.tolerance
            return lo <= self.computed <= hi
        return self.rel_deviation <= self.tolerance


def table1_cells(run_qpt: bool = True) -> list[TableCell]:
    """All comparison cells, five presets x six quantities.

    ``run_qpt=False`` skips the two simulated rows (trace loss, E_O) for a
    fast analytic-only table.
    """
    cells = []
    for name in TABLE_PRESETS:
        preset = get_preset(name)
        params = gate_params_for(preset)
        ref = preset["reference"]
        computed = {
            "rabi_mhz": params.omega / TWO_PI / 1e6,
            "blockade_ghz": params.blockade_b / TWO_PI / 1e9,
            "lifetime_ms": params.tau * 1e3,
            "e_cb": min_error(params.blockade_b, params.tau),
        }
        if run_qpt:
            qpt = run_full_qpt(params)
            computed["trace_loss"] = qpt.mean_trace_loss
            computed["e_o"] = qpt.process_error
        for key, label, unit, kind, tol in TABLE_QUANTITIES:
            if key not in computed:
                continue
            cells.append(
                TableCell(
                    preset=name, key=key, label=label, unit=unit,
                    computed=computed[key], reference=float(ref[key]),
                    tolerance_kind=kind, tolerance=tol,
                )
            )
    return cells


def table_rows(cells: list[TableCell]) -> list[dict[str, Any]]:
    return [
        {
            "preset": c.preset,
            "quantity": c.label,
            "unit": c.unit,
            "computed": c.computed,
            "reference": c.reference,
            "rel_deviation": c.rel_deviation,
            "tolerance_kind": c.tolerance_kind,
            "tolerance": c.tolerance,
            "within_tolerance": c.within,
        }
        for c in cells
    ]


def write_csv(fieldnames: list[str], rows: list[dict[str, Any]], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def rows_to_csv_text(fieldnames: list[str], rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    write_csv(fieldnames, rows, buf)
    return buf.getvalue()


def rows_to_json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Figure data series
# ---------------------------------------------------------------------------

FIGURE_DEFAULTS = {
    "2": {"r_min_um": 1.0, "r_max_um": 20.0, "points": 120},
    "3": {"n_min": 60, "n_max": 140},
    "4": {"r_min_um": 1.0, "r_max_um": 10.0, "points": 100},
    "5": {"r_min_um": 1.0, "r_max_um": 10.0, "points": 100},
}


def _radius_grid(r_min_um: float, r_max_um: float, points: int) -> np.ndarray:
    if not (r_min_um > 0 and r_max_um > r_min_um):
        raise ValidationError("need 0 < r_min < r_max")
    if points < 2:
        raise ValidationError("need at least 2 grid points")
    return np.geomspace(r_min_um, r_max_um, points)


def figure_series(which: str, **grid: Any) -> tuple[list[str], list[dict[str, Any]]]:
    """Data series behind the four report figures; returns (fieldnames, rows).

    2: blockade shift vs separation, circular n = 90/100/110 plus the
       perpendicular-geometry n = 100 curve.
    3: circular-state lifetime vs n at 0, 77 and 300 K.  Columns for the
       low-angular-momentum comparison curves exist but are empty: those
       lifetimes are outside this package's model.
    4: minimum intrinsic error vs separation for n = 80/100/110 at 0 K.
    5: optimal Rabi frequency vs separation for the same states.
    """
    grid_spec = dict(FIGURE_DEFAULTS.get(which, {}))
    unknown = set(grid) - set(grid_spec)
    if unknown:
        raise ValidationError(f"unknown grid parameters for figure {which}: {sorted(unknown)}")
    grid_spec.update({k: v for k, v in grid.items() if v is not None})

    if which == "2":
        radii = _radius_grid(grid_spec["r_min_um"], grid_spec["r_max_um"], int(grid_spec["points"]))
        rows = []
        # the series deliberately extend below the exclusion radius; the
        # rendered figure marks that band, so the per-point warning is noise
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExclusionRadiusWarning)
            for r_um in radii:
                r = r_um * 1e-6
                row = {"separation_um": r_um}
                for n in (90, 100, 110):
                    row[f"blockade_n{n}_ghz"] = blockade_shift(n, r).blockade_shift_hz / 1e9
                row["vdd_perp_n100_ghz"] = vdd_perpendicular(100, r) / TWO_PI / 1e9
                rows.append(row)
        fields = ["separation_um", "blockade_n90_ghz", "blockade_n100_ghz",
                  "blockade_n110_ghz", "vdd_perp_n100_ghz"]
        return fields, rows

    if which == "3":
        n_min, n_max = int(grid_spec["n_min"]), int(grid_spec["n_max"])
        if not 2 <= n_min < n_max:
            raise ValidationError("need 2 <= n_min < n_max")
        rows = []
        for n in range(n_min, n_max + 1):
            rows.append(
                {
                    "n": n,
                    "lifetime_circular_0K_ms": lifetime(n, 0.0) * 1e3,
                    "lifetime_circular_77K_ms": lifetime(n, 77.0) * 1e3,
                    "lifetime_circular_300K_ms": lifetime(n, 300.0) * 1e3,
                    "lifetime_ns_state_0K_ms": "",
                    "lifetime_ns_state_300K_ms": "",
                }
            )
        fields = ["n", "lifetime_circular_0K_ms", "lifetime_circular_77K_ms",
                  "lifetime_circular_300K_ms", "lifetime_ns_state_0K_ms",
                  "lifetime_ns_state_300K_ms"]
        return fields, rows

    if which in ("4", "5"):
        radii = _radius_grid(grid_spec["r_min_um"], grid_spec["r_max_um"], int(grid_spec["points"]))
        rows = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExclusionRadiusWarning)
            for r_um in radii:
                r = r_um * 1e-6
                row = {"separation_um": r_um}
                for n in (80, 100, 110):
                    b = blockade_shift(n, r).blockade_shift
                    tau = lifetime(n, 0.0)
                    if which == "4":
                        row[f"min_error_n{n}"] = min_error(b, tau)
                    else:
                        row[f"optimal_rabi_n{n}_mhz"] = optimal_rabi(b, tau) / TWO_PI / 1e6
                rows.append(row)
        stem = "min_error_n" if which == "4" else "optimal_rabi_n"
        suffix = "" if which == "4" else "_mhz"
        fields = ["separation_um"] + [f"{stem}{n}{suffix}" for n in (80, 100, 110)]
        return fields, rows

    raise ValidationError(f"unknown figure {which!r}; choose 2, 3, 4 or 5")


def render_figure(which: str, fieldnames: list[str], rows: list[dict[str, Any]],
                  png_path: str) -> None:
    """Render a figure series to PNG alongside its CSV."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    x_key = fieldnames[0]
    x = [row[x_key] for row in rows]
    for key in fieldnames[1:]:
        y = [row[key] for row in rows]
        if any(v == "" for v in y):
            continue
        ax.plot(x, y, lw=1.6, label=key)
    titles = {
        "2": ("separation (um)", "blockade shift B/2pi (GHz)", "log", "log"),
        "3": ("n", "lifetime (ms)", "linear", "log"),
        "4": ("separation (um)", "minimum intrinsic error", "log", "log"),
        "5": ("separation (um)", "optimal Rabi frequency (MHz)", "log", "log"),
    }
    xlabel, ylabel, xscale, yscale = titles[which]
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_xscale(xscale)
    ax.set_yscale(yscale)
    if which in ("2", "4", "5") and x[0] < 2.0:
        ax.axvspan(x[0], 2.0, color="0.85", zorder=0,
                   label="wavefunction-overlap exclusion")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


# ---------------------------------------------------------------------------
# Ladder report
# ---------------------------------------------------------------------------

def stirap_rows(
    p_int: float = 1e-4,
    omega: float = TWO_PI * 5e6,
    tau_int: float = 100e-6,
) -> tuple[list[dict[str, Any]], dict[str, Any]]:
    """Ladder states with link frequencies, plus the transfer-error summary."""
    ladder = stirap_chain(112)
    rows = []
    for i, level in enumerate(ladder.levels):
        link = ladder.link_frequencies_hz[i] / 1e9 if i < len(ladder.link_frequencies_hz) else ""
        rows.append(
            {
                "position": i + 3,  # ladder numbering starts at state 3
                "n": level.n,
                "l": level.l,
                "m": level.m,
                "link_to_next_ghz": link,
            }
        )
    summary = {
        "states": len(ladder.levels),
        "first_link_ghz": ladder.link_frequencies_hz[0] / 1e9,
        "last_link_ghz": ladder.link_frequencies_hz[-1] / 1e9,
        "intermediate_population": p_int,
        "transfer_rabi_rad_s": omega,
        "intermediate_lifetime_s": tau_int,
        "intermediate_error": stirap_intermediate_error(p_int, omega, tau_int),
    }
    return rows, summary
