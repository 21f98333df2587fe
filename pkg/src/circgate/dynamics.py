"""Open-system dynamics of the two-atom gate through the pi-2pi-pi sequence.

Each atom is a four-level system in the fixed basis {|0>, |g>, |1>, |r>}:
the two qubit states, the reservoir of other ground sublevels that Rydberg
decay populates, and the Rydberg state.  The pair space is the Kronecker
product control (x) target, so basis index 4*i_c + i_t, and |rr> is the last
basis state (index 15).

Single-atom Hamiltonian in the frame rotating at the |1>-|r> laser frequency
(rad/s, hbar = 1):  diagonal (-omega_10, 0, 0, 0), couplings Omega/2 on both
|0>-|r> and |1>-|r>.  Decay is a Lindblad dissipator with jumps from |r> to
|0>, |g>, |1> at rates gamma_r/16, 7 gamma_r/8, gamma_r/16: the Rydberg
state decays to the 16 ground sublevels with equal branching, of which two
are the qubit states and the other fourteen aggregate into |g>.

Within each pulse the generator is time independent, so segments are
propagated exactly by the superoperator exponential; fixed-step RK4 from
``numerics`` is kept purely as a cross-check oracle.  Density matrices are
vectorized row-major: vec(A rho B) = (A kron B^T) vec(rho).

After the last pulse the state is re-expressed in the frame co-rotating with
the qubit splitting, i.e. the deterministic phase exp(i omega_10 T) that
|0> accumulates relative to |1> over the sequence duration T is removed.
Measurement and tomography are phase-referenced to the qubit clock, so this
bookkeeping phase is not gate error; without removing it any process-fidelity
number would be meaningless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .error_model import GateParams
from .errors import ValidationError
from .numerics import matrix_exp

ATOM_BASIS_LABELS = ("0", "g", "1", "r")
DIM_ATOM = 4
DIM_PAIR = 16
IDX_0, IDX_G, IDX_1, IDX_R = range(DIM_ATOM)
RR_INDEX = DIM_ATOM * IDX_R + IDX_R  # = 15, the |rr> diagonal slot

CONTROL = "control"
TARGET = "target"


@dataclass(frozen=True)
class PulseSegment:
    """One constant-drive section of the gate sequence."""

    target_atom: str    # "control" or "target"
    pulse_area: float   # radians
    omega: float        # rad/s, drive on the active atom (inactive atom has 0)

    def __post_init__(self) -> None:
        if self.target_atom not in (CONTROL, TARGET):
            raise ValidationError("target_atom must be 'control' or 'target'")
        if self.pulse_area <= 0 or self.omega <= 0:
            raise ValidationError("pulse_area and omega must be positive")

    @property
    def duration(self) -> float:
        return self.pulse_area / self.omega


def cz_pulse_sequence(omega: float) -> tuple[PulseSegment, PulseSegment, PulseSegment]:
    """The pi(control), 2pi(target), pi(control) sequence; total time 4pi/Omega."""
    return (
        PulseSegment(CONTROL, math.pi, omega),
        PulseSegment(TARGET, 2.0 * math.pi, omega),
        PulseSegment(CONTROL, math.pi, omega),
    )


def single_atom_hamiltonian(omega: complex, omega_10: float) -> np.ndarray:
    """4x4 rotating-frame Hamiltonian (rad/s) in the basis {|0>,|g>,|1>,|r>}."""
    h = np.zeros((DIM_ATOM, DIM_ATOM), dtype=complex)
    h[IDX_0, IDX_0] = -omega_10
    h[IDX_R, IDX_0] = omega / 2.0
    h[IDX_R, IDX_1] = omega / 2.0
    h[IDX_0, IDX_R] = np.conj(omega) / 2.0
    h[IDX_1, IDX_R] = np.conj(omega) / 2.0
    return h


def decay_jump_operators(gamma_r: float) -> list[np.ndarray]:
    """Lindblad jumps out of |r| at branching 1/16 : 7/8 : 1/16 into |0>,|g>,|1>."""
    if gamma_r < 0:
        raise ValidationError("gamma_r must be >= 0")
    jumps = []
    for idx, rate in ((IDX_0, gamma_r / 16.0), (IDX_G, 7.0 * gamma_r / 8.0), (IDX_1, gamma_r / 16.0)):
        op = np.zeros((DIM_ATOM, DIM_ATOM), dtype=complex)
        op[idx, IDX_R] = math.sqrt(rate)
        jumps.append(op)
    return jumps


def vectorize(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1)


def unvectorize(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(dim, dim)


def hamiltonian_superoperator(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i[H, .] under row-major vectorization."""
    d = h.shape[0]
    eye = np.eye(d)
    return -1j * (np.kron(h, eye) - np.kron(eye, h.T))


def dissipator_superoperator(jump_ops: list[np.ndarray]) -> np.ndarray:
    """Lindblad dissipator sum_k (L rho L^+ - {L^+L, rho}/2) as a superoperator."""
    d = jump_ops[0].shape[0]
    eye = np.eye(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for op in jump_ops:
        rate_op = op.conj().T @ op
        out += np.kron(op, op.conj())
        out -= 0.5 * (np.kron(rate_op, eye) + np.kron(eye, rate_op.T))
    return out


def single_atom_liouvillian(gamma_r: float) -> np.ndarray:
    """Dissipative part of the single-atom master equation (16x16 superoperator).

    Feeds rho_rr into the |0>, |g>, |1> populations with weights 1/16, 7/8,
    1/16 and damps every coherence with |r> at gamma_r/2; trace-free on its
    own because the branching weights sum to one.
    """
    return dissipator_superoperator(decay_jump_operators(gamma_r))


def two_atom_hamiltonian(params: GateParams, segment: PulseSegment) -> np.ndarray:
    """16x16 pair Hamiltonian H_c x I + I x H_t + B |rr><rr| (rad/s)."""
    omega_c = segment.omega if segment.target_atom == CONTROL else 0.0
    omega_t = segment.omega if segment.target_atom == TARGET else 0.0
    h_c = single_atom_hamiltonian(omega_c, params.omega_10)
    h_t = single_atom_hamiltonian(omega_t, params.omega_10)
    eye = np.eye(DIM_ATOM)
    h = np.kron(h_c, eye) + np.kron(eye, h_t)
    h[RR_INDEX, RR_INDEX] += params.blockade_b
    return h


def two_atom_generator(params: GateParams, segment: PulseSegment) -> np.ndarray:
    """Full master-equation generator (256x256) for one pulse segment."""
    gen = hamiltonian_superoperator(two_atom_hamiltonian(params, segment))
    eye = np.eye(DIM_ATOM)
    for op in decay_jump_operators(params.gamma_r):
        pair_jumps = [np.kron(op, eye), np.kron(eye, op)]
        gen += dissipator_superoperator(pair_jumps)
    return gen


def _hermitized(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def propagate(rho0: np.ndarray, params: GateParams, segment: PulseSegment) -> np.ndarray:
    """Evolve a 16x16 state through one segment by the exact exponential."""
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (DIM_PAIR, DIM_PAIR):
        raise ValidationError("propagate expects a 16x16 pair density matrix")
    u = matrix_exp(two_atom_generator(params, segment) * segment.duration)
    return _hermitized(unvectorize(u @ vectorize(rho0), DIM_PAIR))


@lru_cache(maxsize=32)
def sequence_propagators(params: GateParams) -> tuple[np.ndarray, ...]:
    """Superoperator propagators of the three gate pulses (first == third)."""
    seg_pi_c, seg_2pi_t, _ = cz_pulse_sequence(params.omega)
    u1 = matrix_exp(two_atom_generator(params, seg_pi_c) * seg_pi_c.duration)
    u2 = matrix_exp(two_atom_generator(params, seg_2pi_t) * seg_2pi_t.duration)
    for u in (u1, u2):
        u.flags.writeable = False
    return (u1, u2, u1)


def qubit_frame_unitary(omega_10: float, elapsed: float) -> np.ndarray:
    """Pair unitary that removes the free qubit precession exp(i omega_10 t) of |0>."""
    single = np.diag(
        np.array([np.exp(-1j * omega_10 * elapsed), 1.0, 1.0, 1.0], dtype=complex)
    )
    return np.kron(single, single)


def apply_sequence(
    rho0: np.ndarray,
    propagators: tuple[np.ndarray, ...],
    params: GateParams,
    qubit_frame: bool = True,
) -> np.ndarray:
    """Apply pre-built segment propagators, then restore the qubit frame."""
    v = vectorize(rho0)
    for u in propagators:
        v = u @ v
    rho = unvectorize(v, DIM_PAIR)
    if qubit_frame:
        total = 4.0 * math.pi / params.omega
        w = qubit_frame_unitary(params.omega_10, total)
        rho = w @ rho @ w.conj().T
    return _hermitized(rho)


def run_cz_sequence(
    rho0: np.ndarray, params: GateParams, qubit_frame: bool = True
) -> np.ndarray:
    """Evolve a 16x16 input state through the full controlled-phase sequence.

    Ideal limit (gamma_r = 0, B and omega_10 both >> Omega): |00> is
    untouched and each of |01>, |10>, |11> acquires a minus sign, i.e. the
    gate is diag(1,-1,-1,-1) in the computational basis.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (DIM_PAIR, DIM_PAIR):
        raise ValidationError("run_cz_sequence expects a 16x16 pair density matrix")
    return apply_sequence(rho0, sequence_propagators(params), params, qubit_frame)
