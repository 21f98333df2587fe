"""Simulated quantum state and process tomography of the gate.

Pipeline: sixteen product input states (each atom prepared in one of |0>,
|1>, (|0>+|1>)/sqrt2, (|0>+i|1>)/sqrt2) are evolved through the pulse
sequence, projected onto the computational subspace without renormalizing
(the missing trace is reported as trace loss), converted to Born
probabilities over the 36 two-qubit Pauli-pair measurement outcomes (9 basis
pairs x 4 outcomes), and reconstructed by maximum-likelihood estimation.
A process matrix is then fitted to the sixteen reconstructed input/output
pairs and compared against the ideal gate by the trace-overlap error

    E_O = 1 - Tr^2[ sqrt( sqrt(chi_sim) chi_id sqrt(chi_sim) ) ].

Conventions fixed here, in one place:

* Two-qubit Pauli basis {I,X,Y,Z} x {I,X,Y,Z} in that order, unnormalized
  operators.  chi matrices are normalized to unit trace before any fidelity
  evaluation, which makes the ideal chi of a unitary rank one with trace 1.
* The ideal gate is diag(1,-1,-1,-1): the pi-2pi-pi sequence imprints a
  minus sign on each of |01>, |10>, |11>.  Comparing against the canonical
  controlled-Z diag(1,1,1,-1) would misreport deterministic single-qubit
  phases as process error.
* Measurement model: exact Born probabilities, no shot noise (a seeded
  multinomial sampling mode exists but is off by default).  Probabilities in
  one setting sum to the (possibly < 1) trace of the projected state; the
  MLE fits a unit-trace state to that subnormalized table.
* Density matrices vectorize row-major, matching :mod:`circgate.dynamics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from . import dynamics
from .error_model import GateParams
from .errors import ValidationError
from .numerics import hermitian_eig, psd_sqrt

QST_GRAD_TOL = 1e-10
QST_MAX_ITER = 10_000
CHI_TP_TOL = 1e-8
# Stationarity threshold for the penalized least-squares Choi projection.
# Its objective sits at ~1e-12 for gate-scale data, so a 1e-7 gradient norm
# is deep in the flat bottom; the contractual tolerance for this stage is
# the trace-preservation bound CHI_TP_TOL.
CHI_GRAD_TOL = 1e-7

PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_LABELS_2Q = tuple(a + b for a in "IXYZ" for b in "IXYZ")

PREP_LABELS = ("0", "1", "+", "+i")
_QUBIT_KETS = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
    "+i": np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2.0),
}

SETTING_LABELS = tuple(a + b for a in "XYZ" for b in "XYZ")

# Computational-subspace extractor: atom indices 0 and 2 are the qubit.
_QUBIT_FROM_ATOM = np.zeros((2, dynamics.DIM_ATOM), dtype=complex)
_QUBIT_FROM_ATOM[0, dynamics.IDX_0] = 1.0
_QUBIT_FROM_ATOM[1, dynamics.IDX_1] = 1.0
_PAIR_PROJECTOR = np.kron(_QUBIT_FROM_ATOM, _QUBIT_FROM_ATOM)  # 4 x 16


def pauli_basis_2q() -> list[np.ndarray]:
    """The sixteen unnormalized two-qubit Pauli operators, fixed order."""
    return [np.kron(PAULI_1Q[l[0]], PAULI_1Q[l[1]]) for l in PAULI_LABELS_2Q]


@lru_cache(maxsize=1)
def _pauli_stack() -> np.ndarray:
    return np.array(pauli_basis_2q())


@lru_cache(maxsize=1)
def _chi_basis_matrix() -> np.ndarray:
    """Columns vec(P_m^T); maps chi to the Choi matrix via Lambda = V chi V^+."""
    return np.column_stack([p.T.reshape(-1) for p in pauli_basis_2q()])


def _atom_ket(label: str) -> np.ndarray:
    ket = np.zeros(dynamics.DIM_ATOM, dtype=complex)
    q = _QUBIT_KETS[label]
    ket[dynamics.IDX_0] = q[0]
    ket[dynamics.IDX_1] = q[1]
    return ket


def qpt_input_states() -> list[tuple[str, np.ndarray]]:
    """Sixteen pure product inputs as 16x16 pair density matrices.

    Labels are "control|target", e.g. "0|+i".  All populations sit in the
    qubit levels; |g> and |r> start empty.
    """
    out = []
    for lc in PREP_LABELS:
        for lt in PREP_LABELS:
            ket = np.kron(_atom_ket(lc), _atom_ket(lt))
            out.append((f"{lc}|{lt}", np.outer(ket, ket.conj())))
    return out


def qpt_input_states_qubit() -> list[tuple[str, np.ndarray]]:
    """The same sixteen inputs as ideal 4x4 two-qubit density matrices."""
    out = []
    for lc in PREP_LABELS:
        for lt in PREP_LABELS:
            ket = np.kron(_QUBIT_KETS[lc], _QUBIT_KETS[lt])
            out.append((f"{lc}|{lt}", np.outer(ket, ket.conj())))
    return out


def project_to_computational(rho16: np.ndarray) -> tuple[np.ndarray, float]:
    """Restrict a pair state to the two-qubit subspace, without renormalizing.

    Returns (rho4, trace_loss); the loss is the population left in states
    involving |g> or |r> at the end of the sequence.
    """
    rho16 = np.asarray(rho16, dtype=complex)
    if rho16.shape != (16, 16):
        raise ValidationError("expected a 16x16 pair density matrix")
    rho4 = _PAIR_PROJECTOR @ rho16 @ _PAIR_PROJECTOR.conj().T
    rho4 = 0.5 * (rho4 + rho4.conj().T)
    loss = max(1.0 - float(np.trace(rho4).real), 0.0)
    return rho4, loss


def _pauli_eigenkets(label: str) -> tuple[np.ndarray, np.ndarray]:
    s2 = 1.0 / math.sqrt(2.0)
    if label == "X":
        return (np.array([s2, s2], dtype=complex), np.array([s2, -s2], dtype=complex))
    if label == "Y":
        return (np.array([s2, 1j * s2]), np.array([s2, -1j * s2]))
    if label == "Z":
        return (np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex))
    raise ValidationError(f"unknown Pauli label {label!r}")


@lru_cache(maxsize=1)
def measurement_projectors() -> np.ndarray:
    """Projectors of the 36 measurement outcomes, shape (9, 4, 4, 4).

    Setting order follows SETTING_LABELS; within a setting the outcomes are
    (+,+), (+,-), (-,+), (-,-) in the eigenbases of the two Pauli operators.
    """
    out = np.zeros((9, 4, 4, 4), dtype=complex)
    for si, label in enumerate(SETTING_LABELS):
        kets_a = _pauli_eigenkets(label[0])
        kets_b = _pauli_eigenkets(label[1])
        oi = 0
        for ka in kets_a:
            for kb in kets_b:
                ket = np.kron(ka, kb)
                out[si, oi] = np.outer(ket, ket.conj())
                oi += 1
    out.flags.writeable = False
    return out


def measurement_probabilities(rho4: np.ndarray) -> np.ndarray:
    """Noise-free Born probabilities, shape (9, 4).

    Each setting row sums to Tr(rho4), which is <= 1 for projected states.
    """
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise ValidationError("expected a 4x4 two-qubit density matrix")
    probs = np.einsum("soij,ji->so", measurement_projectors(), rho4).real
    return np.clip(probs, 0.0, None)


def sample_probabilities(
    probs: np.ndarray, shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Finite-shot frequencies for the optional sampling mode.

    Each setting draws ``shots`` outcomes from its four probabilities plus an
    implicit fifth "outside the computational basis" outcome carrying the
    missing trace, so subnormalization survives sampling.
    """
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    freq = np.zeros_like(probs)
    for si in range(probs.shape[0]):
        row = np.clip(probs[si], 0.0, None)
        p_loss = max(1.0 - row.sum(), 0.0)
        pvals = np.append(row, p_loss)
        pvals = pvals / pvals.sum()
        counts = rng.multinomial(shots, pvals)
        freq[si] = counts[:4] / shots
    return freq


# ---------------------------------------------------------------------------
# Cholesky-parameterized maximum-likelihood machinery
# ---------------------------------------------------------------------------

def _psd_clip(m: np.ndarray) -> np.ndarray:
    """Nearest PSD matrix (eigenvalue clip); removes propagator rounding dirt.

    The exact-exponential path leaves eigenvalues around -1e-11.  Born
    probabilities of a slightly non-PSD state are inconsistent with every
    physical state, and the likelihood's log leverage near zero-probability
    outcomes turns that inconsistency into 1e-6-scale reconstruction bias,
    so states are cleaned before the measurement model is applied.
    """
    m = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(m)
    if w.min() >= 0.0:
        return m
    return (v * np.clip(w, 0.0, None)) @ v.conj().T


def _tril_factor_psd(a: np.ndarray) -> np.ndarray:
    """Lower-triangular T with T^+ T = a, for Hermitian PSD a of any rank.

    Built from the eigendecomposition and a flipped QR instead of Cholesky so
    exactly singular matrices factor cleanly: zero eigenvalues give (near-)
    zero rows of T rather than a floor-sized perturbation.  Starting the
    likelihood optimizers from an unperturbed factor matters, because the
    likelihood is quartically flat around rank-deficient optima and any
    start-up perturbation there would never be pulled back in.
    """
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    w = np.clip(w, 0.0, None)
    m = np.sqrt(w)[:, None] * v.conj().T  # m^+ m = a
    r = np.linalg.qr(m[:, ::-1], mode="r")  # upper triangular, r^+ r = flipped a
    return r[::-1, ::-1]


def _pack(t: np.ndarray) -> np.ndarray:
    d = t.shape[0]
    rows, cols = np.tril_indices(d, -1)
    return np.concatenate([np.diag(t).real, t[rows, cols].real, t[rows, cols].imag])


def _unpack(x: np.ndarray, d: int) -> np.ndarray:
    t = np.zeros((d, d), dtype=complex)
    n_off = d * (d - 1) // 2
    t[np.diag_indices(d)] = x[:d]
    rows, cols = np.tril_indices(d, -1)
    t[rows, cols] = x[d : d + n_off] + 1j * x[d + n_off :]
    return t


def _pack_grad(g: np.ndarray) -> np.ndarray:
    # real-parameter gradient from the Wirtinger derivative wrt conj(T)
    d = g.shape[0]
    rows, cols = np.tril_indices(d, -1)
    return 2.0 * np.concatenate(
        [np.diag(g).real, g[rows, cols].real, g[rows, cols].imag]
    )


def _minimize_cholesky(objective, x0, grad_tol, max_iter):
    """L-BFGS-B followed by a Barzilai-Borwein polish.

    Two non-obvious safeguards.  The likelihood surfaces here are quartically
    flat around rank-deficient optima, so (1) if the warm start already meets
    the gradient criterion we return it untouched rather than let a line
    search wander within objective values that are flat to double precision,
    and (2) among iterates whose objective ties to fp resolution we keep the
    one with the smallest gradient.  The BB polish uses exact gradients and
    no line search, which is what lets the gradient norm reach ~1e-10 after
    quasi-Newton stalls.
    """
    f0, g0 = objective(x0)
    gnorm0 = float(np.linalg.norm(g0))
    if gnorm0 <= grad_tol:
        return x0, f0, gnorm0, 1, True

    def slack(f):
        return 1e-12 * (abs(f) + 1e-30)

    x, f, g, gnorm = x0, f0, g0, gnorm0
    iterations = 1
    while gnorm > grad_tol and iterations < max_iter:
        res = minimize(
            objective,
            x,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": max_iter - iterations, "maxfun": 4 * max_iter,
                     "ftol": 1e-18, "gtol": grad_tol / 10.0},
        )
        f_new, g_new = objective(res.x)
        gnorm_new = float(np.linalg.norm(g_new))
        iterations += int(res.nit) + 1
        if f_new < f - slack(f) or (f_new <= f + slack(f) and gnorm_new < gnorm):
            x, f, g, gnorm = res.x, f_new, g_new, gnorm_new

        # Barzilai-Borwein polish: exact gradients, no line search, so it
        # keeps moving after quasi-Newton stalls on fp-flat objectives.
        best = (gnorm, x.copy(), f, g.copy())
        alpha = 1e-4 / max(gnorm, 1e-30)
        rejects = 0
        while gnorm > grad_tol and iterations < max_iter and rejects < 60:
            x_new = x - alpha * g
            f_new, g_new = objective(x_new)
            iterations += 1
            if not np.isfinite(f_new) or f_new > f + slack(f):
                alpha *= 0.5
                rejects += 1
                continue
            rejects = 0
            s = x_new - x
            y = g_new - g
            sy = float(s @ y)
            yy = float(y @ y)
            alpha = sy / yy if (yy > 0.0 and sy > 0.0) else alpha * 1.5
            x, f, g = x_new, f_new, g_new
            gnorm = float(np.linalg.norm(g))
            if gnorm < best[0] and f <= best[2] + slack(best[2]):
                best = (gnorm, x.copy(), f, g.copy())
        if best[0] < gnorm:
            gnorm, x, f, g = best[0], best[1], best[2], best[3]
    return x, f, gnorm, iterations, gnorm <= grad_tol


@dataclass(frozen=True)
class QSTResult:
    """Reconstructed state plus optimizer diagnostics (never silent)."""

    rho: np.ndarray
    converged: bool
    grad_norm: float
    iterations: int
    log_likelihood: float


def _linear_inversion_state(p: np.ndarray) -> np.ndarray:
    paulis = _pauli_stack()
    projectors = measurement_projectors().reshape(36, 4, 4)
    a = np.einsum("kij,mji->km", projectors, paulis).real / 4.0
    coeff, *_ = np.linalg.lstsq(a, p, rcond=None)
    rho = np.einsum("m,mij->ij", coeff, paulis) / 4.0
    return 0.5 * (rho + rho.conj().T)


def mle_state(prob_table: np.ndarray) -> QSTResult:
    """Maximum-likelihood state from a (9, 4) or flat (36,) probability table.

    Maximizes the cross-entropy sum_k p_k log q_k over unit-trace physical
    states rho = T^+T / Tr(T^+T).  Two candidates compete on likelihood: the
    gradient-optimized Cholesky factors, and the PSD-projected linear
    inversion they were warm-started from.  For noise-free tables the linear
    inversion already sits at the constrained optimum, where the likelihood
    is so anisotropic (curvatures spanning ~10 decades) that any descent
    path scatters in shallow directions by far more than its own likelihood
    resolution; picking the strictly-higher-likelihood candidate at the end
    removes that scatter while leaving sampled-data behaviour untouched.
    """
    p = np.asarray(prob_table, dtype=float).reshape(-1)
    if p.shape != (36,):
        raise ValidationError("probability table must contain 9 x 4 entries")
    if p.min() < -1e-12:
        raise ValidationError("probabilities must be non-negative")
    p = np.clip(p, 0.0, None)
    projectors = measurement_projectors().reshape(36, 4, 4)
    p_sum = p.sum()
    if p_sum <= 0:
        raise ValidationError("probability table is identically zero")

    rho0 = _linear_inversion_state(p)
    tr0 = float(np.trace(rho0).real)
    if tr0 <= 0:
        rho0 = np.eye(4, dtype=complex) / 4.0
    else:
        rho0 = rho0 / tr0
    x0 = _pack(_tril_factor_psd(rho0))

    active = p > 0.0

    def objective(x):
        t = _unpack(x, 4)
        w_mat = t.conj().T @ t
        norm = float(np.trace(w_mat).real)
        if not np.isfinite(norm) or norm <= 0.0:
            return np.inf, np.zeros_like(x)
        q = np.einsum("kij,ji->k", projectors, w_mat).real / norm
        q = np.clip(q, 1e-300, None)
        nll = -float(np.sum(p[active] * np.log(q[active])))
        r = np.einsum("k,kij->ij", p / q, projectors)
        g = -(t @ r - p_sum * t) / norm
        return nll, _pack_grad(g)

    x, f, gnorm, iterations, converged = _minimize_cholesky(
        objective, x0, QST_GRAD_TOL, QST_MAX_ITER
    )
    f0, g0 = objective(x0)
    if f0 <= f + 1e-14 * (abs(f) + 1.0):
        # The warm start is itself a likelihood maximizer to fp resolution;
        # prefer it, since descent paths scatter in shallow directions.
        x, f = x0, f0
        gnorm = float(np.linalg.norm(g0))
        converged = True
    t = _unpack(x, 4)
    rho = t.conj().T @ t
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    return QSTResult(
        rho=rho,
        converged=converged,
        grad_norm=gnorm,
        iterations=iterations,
        log_likelihood=-f,
    )


# ---------------------------------------------------------------------------
# Process matrices
# ---------------------------------------------------------------------------

def choi_from_transfer(transfer: np.ndarray) -> np.ndarray:
    """Choi matrix (unnormalized, trace d) from a row-major transfer matrix."""
    m4 = transfer.reshape(4, 4, 4, 4)  # [out_row, out_col, in_row, in_col]
    return m4.transpose(2, 0, 3, 1).reshape(16, 16)


def apply_choi(choi: np.ndarray, rho: np.ndarray) -> np.ndarray:
    lam4 = choi.reshape(4, 4, 4, 4)
    return np.einsum("jakb,jk->ab", lam4, rho)


def chi_from_choi(choi: np.ndarray) -> np.ndarray:
    v = _chi_basis_matrix()
    return v.conj().T @ choi @ v / 16.0


def choi_from_chi(chi: np.ndarray) -> np.ndarray:
    v = _chi_basis_matrix()
    return v @ chi @ v.conj().T


def apply_chi(chi: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Apply the channel sum_mn chi_mn P_m rho P_n^+ to a 4x4 state."""
    return apply_choi(choi_from_chi(chi), rho)


def ideal_chi_cz() -> np.ndarray:
    """Unit-trace process matrix of the gate's native unitary diag(1,-1,-1,-1).

    Rank one; support on {II, IZ, ZI, ZZ} with amplitudes (-1, 1, 1, 1)/2.
    """
    u = np.diag(np.array([1.0, -1.0, -1.0, -1.0], dtype=complex))
    amps = np.array([np.trace(p @ u) / 4.0 for p in pauli_basis_2q()])
    return np.outer(amps, amps.conj())


@dataclass(frozen=True)
class ChiResult:
    """Raw (linear-inversion) and physical (CPTP-projected) process matrices."""

    chi: np.ndarray
    chi_raw: np.ndarray
    tp_violation: float
    converged: bool
    grad_norm: float
    iterations: int


def chi_from_map(
    inputs: list[np.ndarray],
    outputs: list[np.ndarray],
    tp_penalty: float = 1.0,
) -> ChiResult:
    """Process matrix fitted to (input, output) density-matrix pairs.

    Linear inversion gives the raw chi; the physical chi is the closest
    completely positive map in Frobenius distance, found by minimizing
    ||T^+T - Choi_raw||^2 over a lower-triangular Cholesky factor with the
    trace-preservation constraint enforced through a quadratic penalty that
    is escalated until the violation is below CHI_TP_TOL.  The starting
    penalty weight is kept of the same order as the misfit curvature: the
    fitted map is trace preserving to rounding already, and a dominating
    penalty would only make the landscape needlessly ill-conditioned.
    """
    if len(inputs) != len(outputs) or len(inputs) != 16:
        raise ValidationError("chi_from_map needs 16 input/output pairs")
    s_in = np.column_stack([np.asarray(r, dtype=complex).reshape(-1) for r in inputs])
    if np.linalg.cond(s_in) > 1e9:
        raise ValidationError("input states do not span the operator space")
    s_out = np.column_stack([np.asarray(r, dtype=complex).reshape(-1) for r in outputs])
    transfer = s_out @ np.linalg.inv(s_in)
    choi_raw = choi_from_transfer(transfer)
    choi_raw = 0.5 * (choi_raw + choi_raw.conj().T)
    chi_raw = chi_from_choi(choi_raw)

    x0 = _pack(_tril_factor_psd(choi_raw))
    scale = max(float(np.linalg.norm(choi_raw) ** 2), 1e-30)
    eye4 = np.eye(4)

    def make_objective(mu):
        def objective(x):
            t = _unpack(x, 16)
            if not np.all(np.isfinite(x)):
                return np.inf, np.zeros_like(x)
            lam = t.conj().T @ t
            delta = lam - choi_raw
            tp_dev = np.einsum("jaka->jk", lam.reshape(4, 4, 4, 4)) - eye4
            f = float(np.linalg.norm(delta) ** 2) / scale
            f += mu * float(np.linalg.norm(tp_dev) ** 2)
            # both objective terms are quadratic in Lambda, so the Wirtinger
            # derivative picks up contributions through Lambda and its
            # conjugate: d f / d conj(T) = 2 T (dF/dLambda-bar)
            g_lam = delta / scale + mu * np.kron(tp_dev, eye4)
            return f, _pack_grad(2.0 * (t @ g_lam))

        return objective

    mu = tp_penalty
    x, gnorm, iterations, converged = x0, np.inf, 0, False
    for _ in range(3):
        x, _f, gnorm, its, converged = _minimize_cholesky(
            make_objective(mu), x, CHI_GRAD_TOL, QST_MAX_ITER
        )
        iterations += its
        t = _unpack(x, 16)
        lam = t.conj().T @ t
        tp_violation = float(
            np.abs(np.einsum("jaka->jk", lam.reshape(4, 4, 4, 4)) - eye4).max()
        )
        if tp_violation <= CHI_TP_TOL:
            break
        mu *= 100.0
    lam = 0.5 * (lam + lam.conj().T)
    chi_phys = chi_from_choi(lam)
    chi_phys = 0.5 * (chi_phys + chi_phys.conj().T)
    chi_phys /= np.trace(chi_phys).real
    return ChiResult(
        chi=chi_phys,
        chi_raw=chi_raw,
        tp_violation=tp_violation,
        converged=converged and tp_violation <= CHI_TP_TOL,
        grad_norm=gnorm,
        iterations=iterations,
    )


def process_error(chi_sim: np.ndarray, chi_id: np.ndarray) -> float:
    """Trace-overlap process error between two process matrices.

    Both arguments are normalized to unit trace first; the result lies in
    [0, 1] and is symmetric under argument exchange.
    """
    a = _unit_trace_psd(chi_sim)
    b = _unit_trace_psd(chi_id)
    s = psd_sqrt(a, tol=1e-9)
    inner = s @ b @ s
    inner = 0.5 * (inner + inner.conj().T)
    root = psd_sqrt(inner, tol=1e-9)
    fidelity = float(np.trace(root).real) ** 2
    return float(min(max(1.0 - fidelity, 0.0), 1.0))


def _unit_trace_psd(chi: np.ndarray) -> np.ndarray:
    chi = np.asarray(chi, dtype=complex)
    w, _ = hermitian_eig(chi, tol=1e-8)
    if w.min() < -1e-9:
        raise ValidationError(f"process matrix eigenvalue {w.min():.2e} below -1e-9")
    tr = float(np.trace(chi).real)
    if tr <= 0:
        raise ValidationError("process matrix must have positive trace")
    return chi / tr


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TomographyRecord:
    """Everything retained per QPT input state."""

    label: str
    final_state: np.ndarray       # 16x16, end of the pulse sequence
    projected: np.ndarray         # 4x4, not renormalized
    trace_loss: float
    probabilities: np.ndarray     # (9, 4) measurement table
    qst: QSTResult


@dataclass(frozen=True)
class QPTResult:
    params: GateParams
    process_error: float
    mean_trace_loss: float
    chi: ChiResult
    records: tuple[TomographyRecord, ...]

    @property
    def all_converged(self) -> bool:
        return self.chi.converged and all(r.qst.converged for r in self.records)


def run_full_qpt(
    params: GateParams, shots: int = 0, seed: int | None = None
) -> QPTResult:
    """Deterministic pipeline: inputs -> dynamics -> projection -> QST -> chi -> E_O.

    ``shots > 0`` switches on multinomial sampling of the measurement tables
    (seeded); the default is the exact, noise-free mode.
    """
    rng = np.random.default_rng(seed) if shots else None
    propagators = dynamics.sequence_propagators(params)
    records = []
    for label, rho16 in qpt_input_states():
        final = dynamics.apply_sequence(rho16, propagators, params)
        rho4, loss = project_to_computational(final)
        probs = measurement_probabilities(_psd_clip(rho4))
        if shots:
            probs = sample_probabilities(probs, shots, rng)
        qst = mle_state(probs)
        records.append(
            TomographyRecord(
                label=label,
                final_state=final,
                projected=rho4,
                trace_loss=loss,
                probabilities=probs,
                qst=qst,
            )
        )
    ideal_inputs = [rho for _, rho in qpt_input_states_qubit()]
    chi_res = chi_from_map(ideal_inputs, [r.qst.rho for r in records])
    e_o = process_error(chi_res.chi, ideal_chi_cz())
    mean_loss = float(np.mean([r.trace_loss for r in records]))
    return QPTResult(
        params=params,
        process_error=e_o,
        mean_trace_loss=mean_loss,
        chi=chi_res,
        records=tuple(records),
    )
