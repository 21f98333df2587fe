"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Criterion 5 compares the simulated trace-loss and process-error
columns against published reference values whose internal inconsistency is
documented in PHYSICS_NOTES.md section 2; with the physically consistent
decay rate those bands cannot be met, and the criterion reports its failure
honestly rather than loosening the check.
"""

import math
import pathlib

import numpy as np
import pytest

from circgate import dynamics, tomography as tomo
from circgate.atomic import (
    energy_defects,
    lifetime,
    lifetime_0k,
    radial_peak_radius,
    radial_probability_outside,
    reduced_dipole_down,
    reduced_dipole_up,
    einstein_a_coefficient,
    stirap_chain,
)
from circgate.blockade import blockade_shift, vdd_dimensionless_factor, vdd_parallel
from circgate.error_model import GateParams, min_error, optimal_rabi, stirap_intermediate_error
from circgate.numerics import clebsch_gordan, matrix_exp, rk4_integrate, trace_distance
from circgate.presets import TABLE_PRESETS, get_preset
from circgate.tomography import mle_state, measurement_probabilities
from conftest import random_density_matrix

TWO_PI = 2.0 * math.pi
REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]


def report(criterion, ok, detail):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


class TestCriterion1Blockade:
    def test_blockade_shifts(self):
        expectations = {80: 2.21, 100: 5.89, 110: 8.71}
        values = {n: blockade_shift(n, 2e-6).blockade_shift_hz / 1e9 for n in expectations}
        devs = {n: abs(values[n] - ref) / ref for n, ref in expectations.items()}
        ok = all(d <= 0.02 for d in devs.values())
        report(1, ok, "B/2pi GHz " + ", ".join(
            f"n={n}: {values[n]:.3f} vs {expectations[n]} ({devs[n]:.2%})"
            for n in expectations))
        assert ok


class TestCriterion2Lifetimes:
    def test_lifetimes(self):
        cases = [(80, 0.0, 307.0), (100, 0.0, 940.0), (110, 0.0, 1520.0),
                 (110, 77.0, 4.71), (110, 300.0, 1.21)]
        devs = []
        for n, t, ref_ms in cases:
            value = lifetime(n, t) * 1e3
            devs.append((n, t, value, ref_ms, abs(value - ref_ms) / ref_ms))
        hydrogen_2p = lifetime_0k(2) * 1e9
        dev_2p = abs(hydrogen_2p - 1.596) / 1.596
        ok = all(d[4] <= 0.03 for d in devs) and dev_2p <= 0.01
        report(2, ok, "lifetimes ms " + ", ".join(
            f"(n={n},T={t:g}): {v:.4g} vs {r} ({d:.2%})" for n, t, v, r, d in devs)
            + f"; 2p {hydrogen_2p:.4f} ns vs 1.596 ({dev_2p:.2%})")
        assert ok


class TestCriterion3OptimalRabi:
    def test_optimal_rabi(self):
        cases = [(80, 0.0, 3.82), (100, 0.0, 5.05), (110, 0.0, 5.6),
                 (110, 77.0, 38.4), (110, 300.0, 60.3)]
        devs = []
        for n, t, ref_mhz in cases:
            b = blockade_shift(n, 2e-6).blockade_shift
            value = optimal_rabi(b, lifetime(n, t)) / TWO_PI / 1e6
            devs.append((ref_mhz, value, abs(value - ref_mhz) / ref_mhz))
        ok = all(d[2] <= 0.02 for d in devs)
        report(3, ok, "Omega/2pi MHz " + ", ".join(
            f"{v:.3f} vs {r} ({d:.2%})" for r, v, d in devs))
        assert ok


class TestCriterion4AnalyticError:
    def test_min_error(self):
        cases = [(80, 0.0, 1.1e-6), (100, 0.0, 2.8e-7), (110, 0.0, 1.6e-7),
                 (110, 77.0, 7.3e-6), (110, 300.0, 1.8e-5)]
        devs = []
        for n, t, ref in cases:
            b = blockade_shift(n, 2e-6).blockade_shift
            value = min_error(b, lifetime(n, t))
            devs.append((ref, value, abs(value - ref) / ref))
        ok = all(d[2] <= 0.05 for d in devs)
        report(4, ok, "E_cb " + ", ".join(
            f"{v:.3g} vs {r:g} ({d:.2%})" for r, v, d in devs))
        assert ok


class TestCriterion5QptPipeline:
    def test_simulated_table_columns(self, table_qpt):
        lines = []
        bands_ok = True
        for name in TABLE_PRESETS:
            params, result = table_qpt[name]
            ref = get_preset(name)["reference"]
            e_cb = min_error(params.blockade_b, params.tau)
            for key, value in (("trace_loss", result.mean_trace_loss),
                               ("e_o", result.process_error)):
                lo, hi = ref[key] / 1.5, ref[key] * 1.5
                inside = lo <= value <= hi
                bands_ok &= inside
                lines.append(f"{name} {key}: {value:.3g} vs {ref[key]:g} "
                             f"[{lo:.3g}, {hi:.3g}] {'ok' if inside else 'OUT'}")
            hierarchy = e_cb < result.mean_trace_loss < result.process_error
            bands_ok &= hierarchy
            lines.append(f"{name} hierarchy E_cb({e_cb:.3g}) < loss < E_O: "
                         f"{'ok' if hierarchy else 'VIOLATED'}")
        e_o = {name: table_qpt[name][1].process_error for name in TABLE_PRESETS}
        n_order = e_o["cs80-0K"] > e_o["cs100-0K"] > e_o["cs110-0K"]
        t_order = e_o["cs110-0K"] < e_o["cs110-77K"] < e_o["cs110-300K"]
        lines.append(f"E_O decreasing in n at 0K: {'ok' if n_order else 'VIOLATED'} "
                     f"({e_o['cs80-0K']:.3g} > {e_o['cs100-0K']:.3g} > {e_o['cs110-0K']:.3g})")
        lines.append(f"E_O increasing in T at n=110: {'ok' if t_order else 'VIOLATED'}")
        ok = bands_ok and n_order and t_order
        report(5, ok, "simulated QPT columns:\n    " + "\n    ".join(lines))
        assert ok, (
            "simulated trace-loss/E_O columns disagree with the published "
            "values; see PHYSICS_NOTES.md section 2 for the quantitative "
            "analysis (published loss ~ 12pi/(Omega tau) exceeds the "
            "sequence's physical exposure ceiling)"
        )


class TestCriterion6EnergyDefects:
    def test_defects(self):
        pair = energy_defects(100)
        dev_d = abs(pair.delta_hartree - (-3e-8)) / 3e-8
        dev_dp = abs(pair.delta_prime_hartree - 0.93e-6) / 0.93e-6
        ok = dev_d <= 0.03 and dev_dp <= 0.03
        report(6, ok, f"hbar*delta = {pair.delta_hartree:.3e} E_H ({dev_d:.2%}), "
                      f"hbar*delta' = {pair.delta_prime_hartree:.3e} E_H ({dev_dp:.2%})")
        assert ok


class TestCriterion7StirapLadder:
    def test_ladder(self):
        ladder = stirap_chain(112)
        first = ladder.link_frequencies_hz[0] / 1e9
        last = ladder.link_frequencies_hz[-1] / 1e9
        err = stirap_intermediate_error(1e-4, TWO_PI * 5e6, 100e-6)
        dev_first = abs(first - 859.0) / 859.0
        dev_last = abs(last - 9.1) / 9.1
        dev_err = abs(err - 1e-7) / 1e-7
        ok = dev_first <= 0.01 and dev_last <= 0.01 and dev_err <= 0.2
        report(7, ok, f"links {first:.1f} GHz ({dev_first:.2%} vs 859) down to "
                      f"{last:.2f} GHz ({dev_last:.2%} vs 9.1); "
                      f"intermediate error {err:.2e} ({dev_err:.0%} vs 1e-7)")
        assert ok


class TestCriterion8Localization:
    def test_radial_localization(self):
        peak_um = radial_peak_radius(110) * 1e6
        tail = radial_probability_outside(110, 1e-6)
        dev_peak = abs(peak_um - 0.64) / 0.64
        ok = dev_peak <= 0.02 and tail < 1e-12
        report(8, ok, f"peak {peak_um:.4f} um ({dev_peak:.2%} vs 0.64), "
                      f"P(r > 1 um) = {tail:.2e}")
        assert ok


class TestCriterion9PropertySuites:
    def test_trace_positivity_through_sequence(self, table_qpt):
        params, _ = table_qpt["cs110-0K"]
        propagators = dynamics.sequence_propagators(params)
        worst_trace, worst_eig = 0.0, 0.0
        for _, rho in tomo.qpt_input_states():
            state = rho
            for u in propagators:
                state = dynamics.unvectorize(u @ dynamics.vectorize(state), 16)
                state = 0.5 * (state + state.conj().T)
                worst_trace = max(worst_trace, abs(np.trace(state).real - 1.0))
                worst_eig = min(worst_eig, float(np.linalg.eigvalsh(state).min()))
        ok = worst_trace <= 1e-9 and worst_eig >= -1e-9
        report(9, ok, f"trace dev {worst_trace:.1e} (<=1e-9), "
                      f"min eigenvalue {worst_eig:.1e} (>=-1e-9)")
        assert ok

    def test_propagator_vs_rk4_every_table_column(self):
        rng = np.random.default_rng(11)
        rho0 = random_density_matrix(rng, 16)
        worst_slice, worst_group = 0.0, 0.0
        for name in TABLE_PRESETS:
            preset = get_preset(name)
            b = blockade_shift(preset["n"], preset["separation_m"]).blockade_shift
            tau = lifetime(preset["n"], preset["temperature_K"])
            params = GateParams(omega=optimal_rabi(b, tau),
                                omega_10=TWO_PI * 9_192_631_770.0,
                                blockade_b=b, tau=tau)
            seg = dynamics.cz_pulse_sequence(params.omega)[0]
            gen = dynamics.two_atom_generator(params, seg)
            # RK4 resolves a 1/256 slice of the pulse at 1e-8; the slice
            # propagator to the 256th power then reproduces the full-pulse
            # exponential, tying the independent integrator to the
            # propagator actually used in the pipeline
            t_slice = seg.duration / 256.0
            u_slice = matrix_exp(gen * t_slice)
            stepped = rk4_integrate(gen, dynamics.vectorize(rho0),
                                    (0.0, t_slice), 20_000)
            dist = trace_distance(dynamics.unvectorize(u_slice @ dynamics.vectorize(rho0), 16),
                                  dynamics.unvectorize(stepped, 16))
            worst_slice = max(worst_slice, dist)
            u_full = matrix_exp(gen * seg.duration)
            u_pow = np.linalg.matrix_power(u_slice, 256)
            group_dev = np.linalg.norm(u_pow - u_full) / np.linalg.norm(u_full)
            worst_group = max(worst_group, group_dev)
        ok = worst_slice <= 1e-8 and worst_group <= 1e-9
        report(9, ok, f"RK4 vs propagator: worst slice distance {worst_slice:.1e} "
                      f"(<=1e-8), worst semigroup deviation {worst_group:.1e}")
        assert ok

    def test_mle_round_trip(self):
        worst = 0.0
        for seed in range(6):
            rho = random_density_matrix(np.random.default_rng(seed), 4)
            result = mle_state(measurement_probabilities(rho))
            worst = max(worst, trace_distance(result.rho, rho))
        ok = worst <= 1e-6
        report(9, ok, f"MLE round-trip worst trace distance {worst:.1e} (<=1e-6)")
        assert ok

    def test_cg_orthogonality(self):
        worst = 0.0
        for j1 in (0.5, 1, 1.5, 2, 3):
            for j2 in (0.5, 1, 2):
                pairs = []
                j = abs(j1 - j2)
                while j <= j1 + j2:
                    m = -j
                    while m <= j:
                        pairs.append((j, m))
                        m += 1
                    j += 1
                for ja, ma in pairs:
                    for jb, mb in pairs:
                        total = 0.0
                        m1 = -j1
                        while m1 <= j1:
                            m2 = ma - m1
                            if abs(m2) <= j2 and (m2 * 2) == int(m2 * 2):
                                total += (clebsch_gordan(j1, m1, j2, m2, ja, ma)
                                          * clebsch_gordan(j1, m1, j2, m2, jb, mb))
                            m1 += 1
                        expect = 1.0 if (ja, ma) == (jb, mb) else 0.0
                        worst = max(worst, abs(total - expect))
        ok = worst <= 1e-12
        report(9, ok, f"CG orthogonality worst deviation {worst:.1e} (<=1e-12)")
        assert ok

    def test_lifetime_internal_identity(self):
        worst = max(
            abs(lifetime_0k(n) * einstein_a_coefficient(n) - 1.0) for n in range(2, 151)
        )
        ok = worst <= 1e-10
        report(9, ok, f"closed-form lifetime vs rate expression, worst rel {worst:.1e}")
        assert ok

    def test_ideal_gate_error_floor(self, ideal_qpt):
        _, result = ideal_qpt
        ok = result.process_error <= 1e-8
        report(9, ok, f"ideal-limit pipeline E_O = {result.process_error:.2e} (<=1e-8)")
        assert ok

    def test_coupling_closed_form_vs_assembly(self):
        from test_blockade import assembled_vdd_parallel

        worst = 0.0
        for n in (5, 30, 80, 110):
            closed = vdd_parallel(n, 2e-6)
            oracle = abs(assembled_vdd_parallel(n, 2e-6))
            worst = max(worst, abs(closed - oracle) / closed)
        ok = worst <= 1e-10
        report(9, ok, f"closed form vs angular assembly, worst rel {worst:.1e}")
        assert ok


class TestCriterion10DocumentedErratum:
    def test_factor_converges_to_half_and_notes_exist(self):
        f110 = vdd_dimensionless_factor(110) / 110**4
        f180 = vdd_dimensionless_factor(180) / 180**4
        towards_half = abs(f180 - 0.5) < abs(f110 - 0.5) and abs(f180 - 0.5) <= 0.005
        far_from_eight = abs(f180 - 8.0) > 7.0
        notes = (REPO_ROOT / "PHYSICS_NOTES.md").read_text(encoding="utf-8")
        documented = ("factor of 16" in notes) and ("8 n^4" in notes) and ("n^4/2" in notes)
        ok = towards_half and far_from_eight and documented
        report(10, ok, f"factor/n^4 at 180 = {f180:.4f} -> 0.5 (not 8); "
                       f"notes document the discrepancy: {documented}")
        assert ok
