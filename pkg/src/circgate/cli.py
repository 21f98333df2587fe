"""Command-line front end.

Verbs: ``table1`` (reference-table comparison, CI-gated), ``figure {2,3,4,5}``
(CSV data series plus a rendered PNG), ``qpt`` (full simulated process
tomography for a preset or config), and ``stirap`` (circularization-ladder
report).  Exit codes: 0 success, 1 validation error, 2 a table1 value outside
its acceptance tolerance, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from typing import Any

import numpy as np

from . import report as report_mod
from .atomic import lifetime
from .blockade import DEFAULT_EXCLUSION_RADIUS, blockade_shift
from .error_model import CS_QUBIT_SPLITTING, GateParams, min_error, optimal_rabi
from .errors import NumericalError, ValidationError
from .presets import gate_params_for, get_preset
from .schema import validate_qpt_report
from .tomography import QPTResult, run_full_qpt


@dataclass
class RunConfig:
    """Validated inputs of the qpt command; unknown config keys are rejected."""

    preset: str | None = None
    species: str = "Cs"
    n: int | None = None
    temperature_K: float | None = None
    separation_m: float | None = None
    omega_10_rad_s: float = CS_QUBIT_SPLITTING
    omega_override_rad_s: float | None = None
    exclusion_radius_m: float = DEFAULT_EXCLUSION_RADIUS
    format: str = "json"
    out: str | None = None
    seed: int | None = None
    shots: int = 0

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self) -> None:
        if self.preset is None:
            if self.n is None or self.temperature_K is None or self.separation_m is None:
                raise ValidationError(
                    "config needs either a preset or all of n, temperature_K, separation_m"
                )
            if self.n < 2:
                raise ValidationError("n must be >= 2")
            if self.temperature_K < 0:
                raise ValidationError("temperature_K must be >= 0")
            if self.separation_m <= 0:
                raise ValidationError("separation_m must be positive")
        if self.format not in ("csv", "json"):
            raise ValidationError("format must be 'csv' or 'json'")
        if self.omega_override_rad_s is not None and self.omega_override_rad_s <= 0:
            raise ValidationError("omega_override_rad_s must be positive")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ValidationError("seed must fit in an unsigned 64-bit integer")
        if self.shots < 0:
            raise ValidationError("shots must be >= 0")

    def gate_params(self) -> GateParams:
        if self.preset is not None:
            return gate_params_for(
                get_preset(self.preset),
                omega_override=self.omega_override_rad_s,
                omega_10=self.omega_10_rad_s,
            )
        b = blockade_shift(self.n, self.separation_m, self.exclusion_radius_m).blockade_shift
        tau = lifetime(self.n, self.temperature_K)
        omega = self.omega_override_rad_s or optimal_rabi(b, tau)
        return GateParams(
            omega=omega, omega_10=self.omega_10_rad_s, blockade_b=b, tau=tau
        )


def _complex_matrix_json(m: np.ndarray) -> list[list[list[float]]]:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]


def build_qpt_report(config: RunConfig, params: GateParams, result: QPTResult) -> dict:
    return {
        "config": {
            "preset": config.preset,
            "species": config.species,
            "n": config.n,
            "temperature_K": config.temperature_K,
            "separation_m": config.separation_m,
            "shots": config.shots,
            "seed": config.seed,
        },
        "params": {
            "omega_rad_s": params.omega,
            "omega_10_rad_s": params.omega_10,
            "blockade_rad_s": params.blockade_b,
            "tau_s": None if math.isinf(params.tau) else params.tau,
            "gamma_r": params.gamma_r,
        },
        "results": {
            "process_error": result.process_error,
            "mean_trace_loss": result.mean_trace_loss,
            "analytic_error_cb": (
                min_error(params.blockade_b, params.tau)
                if params.blockade_b > 0 and not math.isinf(params.tau)
                else 0.0
            ),
        },
        "chi": {
            "physical": _complex_matrix_json(result.chi.chi),
            "raw": _complex_matrix_json(result.chi.chi_raw),
        },
        "inputs": [
            {
                "label": rec.label,
                "trace_loss": rec.trace_loss,
                "mle_converged": rec.qst.converged,
                "mle_grad_norm": rec.qst.grad_norm,
                "projected_state": _complex_matrix_json(rec.projected),
            }
            for rec in result.records
        ],
        "diagnostics": {
            "chi_tp_violation": result.chi.tp_violation,
            "chi_converged": result.chi.converged,
            "chi_grad_norm": result.chi.grad_norm,
            "all_converged": result.all_converged,
        },
    }


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_table1(args: argparse.Namespace) -> int:
    cells = report_mod.table1_cells(run_qpt=not args.no_qpt)
    rows = report_mod.table_rows(cells)
    fieldnames = list(rows[0].keys())
    if args.format == "json":
        _emit(report_mod.rows_to_json_text(rows), args.out)
    else:
        _emit(report_mod.rows_to_csv_text(fieldnames, rows), args.out)
    breaches = [c for c in cells if not c.within]
    for c in breaches:
        print(
            f"tolerance breach: {c.preset} {c.label}: computed {c.computed:.4g} "
            f"vs reference {c.reference:.4g}",
            file=sys.stderr,
        )
    return 2 if breaches else 0


def _cmd_figure(args: argparse.Namespace) -> int:
    if args.format == "json":
        raise ValidationError("figure output is CSV (plus PNG); use --format csv")
    grid: dict[str, Any] = {}
    if args.which in ("2", "4", "5"):
        grid = {"r_min_um": args.r_min_um, "r_max_um": args.r_max_um,
                "points": args.points}
    elif args.which == "3":
        grid = {"n_min": args.n_min, "n_max": args.n_max}
    fieldnames, rows = report_mod.figure_series(args.which, **grid)
    out = args.out or f"figure{args.which}.csv"
    _emit(report_mod.rows_to_csv_text(fieldnames, rows), out)
    if not args.no_plot:
        png = out[:-4] + ".png" if out.endswith(".csv") else out + ".png"
        report_mod.render_figure(args.which, fieldnames, rows, png)
        print(f"wrote {out} and {png}", file=sys.stderr)
    else:
        print(f"wrote {out}", file=sys.stderr)
    return 0


def _load_config(args: argparse.Namespace) -> RunConfig:
    data: dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError("config file must contain a JSON object")
    if args.preset:
        data["preset"] = args.preset
    if args.format:
        data["format"] = args.format
    if args.out:
        data["out"] = args.out
    if args.seed is not None:
        data["seed"] = args.seed
    config = RunConfig.from_dict(data)
    config.validate()
    return config


def _cmd_qpt(args: argparse.Namespace) -> int:
    config = _load_config(args)
    if config.preset is None and args.config is None:
        raise ValidationError("qpt needs --preset or --config")
    params = config.gate_params()
    result = run_full_qpt(params, shots=config.shots, seed=config.seed)
    report = build_qpt_report(config, params, result)
    validate_qpt_report(report)
    if config.format == "csv":
        rows = [
            {
                "label": rec["label"],
                "trace_loss": rec["trace_loss"],
                "mle_converged": rec["mle_converged"],
            }
            for rec in report["inputs"]
        ]
        rows.append({"label": "mean_trace_loss",
                     "trace_loss": report["results"]["mean_trace_loss"],
                     "mle_converged": ""})
        rows.append({"label": "process_error",
                     "trace_loss": report["results"]["process_error"],
                     "mle_converged": ""})
        text = report_mod.rows_to_csv_text(["label", "trace_loss", "mle_converged"], rows)
    else:
        text = report_mod.rows_to_json_text(report)
    _emit(text, config.out)
    return 0


def _cmd_stirap(args: argparse.Namespace) -> int:
    rows, summary = report_mod.stirap_rows()
    if args.format == "csv":
        table = [
            {
                "kind": "state",
                "position": r["position"],
                "n": r["n"],
                "l": r["l"],
                "m": r["m"],
                "frequency_ghz": r["link_to_next_ghz"],
                "value": "",
            }
            for r in rows
        ]
        for key in ("states", "first_link_ghz", "last_link_ghz", "intermediate_error"):
            table.append({"kind": "summary", "position": key, "n": "", "l": "",
                          "m": "", "frequency_ghz": "", "value": summary[key]})
        text = report_mod.rows_to_csv_text(
            ["kind", "position", "n", "l", "m", "frequency_ghz", "value"], table
        )
    else:
        text = report_mod.rows_to_json_text({"ladder": rows, "summary": summary})
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circgate",
        description="Rydberg-blockade controlled-phase gate calculator and simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table1", help="reference-table comparison report")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--out", default=None)
    p_table.add_argument("--no-qpt", action="store_true",
                         help="skip the simulated rows (trace loss, E_O)")
    p_table.set_defaults(func=_cmd_table1)

    p_fig = sub.add_parser("figure", help="figure data series as CSV + PNG")
    p_fig.add_argument("which", choices=("2", "3", "4", "5"))
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--out", default=None)
    p_fig.add_argument("--no-plot", action="store_true")
    p_fig.add_argument("--r-min-um", type=float, default=None, dest="r_min_um")
    p_fig.add_argument("--r-max-um", type=float, default=None, dest="r_max_um")
    p_fig.add_argument("--points", type=int, default=None)
    p_fig.add_argument("--n-min", type=int, default=None, dest="n_min")
    p_fig.add_argument("--n-max", type=int, default=None, dest="n_max")
    p_fig.set_defaults(func=_cmd_figure)

    p_qpt = sub.add_parser("qpt", help="simulated quantum process tomography")
    p_qpt.add_argument("--preset", default=None)
    p_qpt.add_argument("--config", default=None)
    p_qpt.add_argument("--format", choices=("csv", "json"), default=None)
    p_qpt.add_argument("--out", default=None)
    p_qpt.add_argument("--seed", type=int, default=None)
    p_qpt.set_defaults(func=_cmd_qpt)

    p_st = sub.add_parser("stirap", help="circularization-ladder report")
    p_st.add_argument("--format", choices=("csv", "json"), default="csv")
    p_st.add_argument("--out", default=None)
    p_st.set_defaults(func=_cmd_stirap)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
