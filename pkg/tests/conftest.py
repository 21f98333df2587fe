import numpy as np
import pytest

from circgate import gate_params_for, get_preset, run_full_qpt
from circgate.presets import TABLE_PRESETS


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


@pytest.fixture(scope="session")
def ideal_qpt():
    params = gate_params_for(get_preset("ideal"))
    return params, run_full_qpt(params)


@pytest.fixture(scope="session")
def table_qpt():
    """Full tomography pipeline for every reference-table preset."""
    out = {}
    for name in TABLE_PRESETS:
        params = gate_params_for(get_preset(name))
        out[name] = (params, run_full_qpt(params))
    return out


def random_density_matrix(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
