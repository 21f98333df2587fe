"""circgate: Rydberg-blockade controlled-phase gate with circular states.

Atomic-physics inputs (matrix elements, blockade shifts, lifetimes), analytic
gate-error models, exact open-system propagation of the pi-2pi-pi pulse
sequence, and simulated quantum process tomography.
"""

from .atomic import (
    DefectPair,
    RydbergLevel,
    StirapLadder,
    einstein_a_coefficient,
    energy_defects,
    lifetime,
    lifetime_0k,
    radial_peak_radius,
    radial_probability_outside,
    reduced_dipole_down,
    reduced_dipole_up,
    stirap_chain,
    transition_angular_frequency,
    transition_frequency_hz,
)
from .blockade import (
    BlockadeResult,
    PairGeometry,
    blockade_shift,
    forster_eigenvalues,
    vdd_parallel,
    vdd_perpendicular,
)
from .constants import CODATA2018, PhysicalConstants
from .dynamics import (
    PulseSegment,
    cz_pulse_sequence,
    propagate,
    run_cz_sequence,
    single_atom_hamiltonian,
    single_atom_liouvillian,
    two_atom_generator,
)
from .error_model import (
    CS_QUBIT_SPLITTING,
    GateParams,
    intrinsic_error_e1,
    min_error,
    optimal_rabi,
    stirap_intermediate_error,
)
from .errors import NumericalError, ValidationError
from .numerics import (
    clebsch_gordan,
    hermitian_eig,
    kron,
    log_product,
    matrix_exp,
    psd_sqrt,
    rk4_integrate,
)
from .presets import TABLE_PRESETS, gate_params_for, get_preset, preset_names
from .tomography import (
    ChiResult,
    QPTResult,
    QSTResult,
    TomographyRecord,
    chi_from_map,
    ideal_chi_cz,
    measurement_probabilities,
    mle_state,
    process_error,
    project_to_computational,
    qpt_input_states,
    run_full_qpt,
)

__version__ = "0.1.0"
