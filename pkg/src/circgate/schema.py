"""Structural validator for the JSON reports the CLI emits.

Hand-rolled on purpose: the reports are a stable external interface and the
validator ships with the package so consumers can round-trip outputs without
pulling in a schema library.  Complex numbers are [re, im] pairs.
"""

from __future__ import annotations

from typing import Any

from .errors import ValidationError


class SchemaError(ValidationError):
    """A report object does not match the published schema."""


def _require(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(f"{path}: {message}")


def _check_number(value: Any, path: str) -> None:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             path, f"expected a number, got {type(value).__name__}")


def _check_complex_matrix(value: Any, path: str, dim: int) -> None:
    _require(isinstance(value, list) and len(value) == dim,
             path, f"expected a {dim}x{dim} matrix")
    for i, row in enumerate(value):
        _require(isinstance(row, list) and len(row) == dim,
                 f"{path}[{i}]", f"expected {dim} entries")
        for j, entry in enumerate(row):
            _require(isinstance(entry, list) and len(entry) == 2,
                     f"{path}[{i}][{j}]", "expected an [re, im] pair")
            for part in entry:
                _check_number(part, f"{path}[{i}][{j}]")


_PARAM_KEYS = ("omega_rad_s", "omega_10_rad_s", "blockade_rad_s", "tau_s", "gamma_r")
_RESULT_KEYS = ("process_error", "mean_trace_loss", "analytic_error_cb")


def validate_qpt_report(report: Any) -> None:
    """Raise SchemaError unless ``report`` matches the qpt report schema."""
    _require(isinstance(report, dict), "$", "report must be an object")
    for key in ("config", "params", "results", "chi", "inputs", "diagnostics"):
        _require(key in report, "$", f"missing key {key!r}")

    params = report["params"]
    _require(isinstance(params, dict), "$.params", "must be an object")
    for key in _PARAM_KEYS:
        _require(key in params, "$.params", f"missing key {key!r}")
        if key == "tau_s" and params[key] is None:  # infinite lifetime
            continue
        _check_number(params[key], f"$.params.{key}")

    results = report["results"]
    _require(isinstance(results, dict), "$.results", "must be an object")
    for key in _RESULT_KEYS:
        _require(key in results, "$.results", f"missing key {key!r}")
        _check_number(results[key], f"$.results.{key}")

    chi = report["chi"]
    _require(isinstance(chi, dict), "$.chi", "must be an object")
    for key in ("physical", "raw"):
        _require(key in chi, "$.chi", f"missing key {key!r}")
        _check_complex_matrix(chi[key], f"$.chi.{key}", 16)

    inputs = report["inputs"]
    _require(isinstance(inputs, list) and len(inputs) == 16,
             "$.inputs", "expected 16 per-input records")
    for i, rec in enumerate(inputs):
        path = f"$.inputs[{i}]"
        _require(isinstance(rec, dict), path, "must be an object")
        for key in ("label", "trace_loss", "mle_converged", "projected_state"):
            _require(key in rec, path, f"missing key {key!r}")
        _require(isinstance(rec["label"], str), f"{path}.label", "must be a string")
        _check_number(rec["trace_loss"], f"{path}.trace_loss")
        _require(isinstance(rec["mle_converged"], bool),
                 f"{path}.mle_converged", "must be a boolean")
        _check_complex_matrix(rec["projected_state"], f"{path}.projected_state", 4)

    diag = report["diagnostics"]
    _require(isinstance(diag, dict), "$.diagnostics", "must be an object")
    for key in ("chi_tp_violation", "chi_converged"):
        _require(key in diag, "$.diagnostics", f"missing key {key!r}")
