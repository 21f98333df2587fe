"""Dipole-dipole interaction and blockade shift for circular-state pairs.

Two geometries are covered: quantization axis parallel to the molecular axis
(the near-resonant Forster channel |c_n c_n> <-> |c_{n+1} c_{n-1}>, which is
what matters at gate-scale separations) and perpendicular (a weaker but
exactly resonant channel, so there B equals the coupling itself).

The parallel-channel blockade shift is the upper eigenvalue of the two-level
Hamiltonian [[0, V], [V, delta]]; with delta < 0 that is

    B = U_+ = (delta + sqrt(delta^2 + 4 V^2)) / 2,

computed in a cancellation-safe form so the van der Waals regime V << |delta|
does not lose all significant digits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .atomic import energy_defects
from .constants import BOHR_RADIUS, ELEMENTARY_CHARGE, HBAR, VACUUM_PERMITTIVITY
from .errors import ValidationError
from .numerics import log_product

TWO_PI = 2.0 * math.pi
DEFAULT_EXCLUSION_RADIUS = 2e-6  # m; wavefunction-overlap validity bound

_ORIENTATIONS = ("parallel", "perpendicular")


class ExclusionRadiusWarning(UserWarning):
    """Separation is below the wavefunction-overlap validity radius."""


@dataclass(frozen=True)
class PairGeometry:
    """Interatomic separation and quantization-axis orientation."""

    separation: float  # m
    orientation: str = "parallel"
    exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS

    def __post_init__(self) -> None:
        if self.separation <= 0:
            raise ValidationError("separation must be positive")
        if self.orientation not in _ORIENTATIONS:
            raise ValidationError(f"orientation must be one of {_ORIENTATIONS}")

    @property
    def within_exclusion(self) -> bool:
        return self.separation < self.exclusion_radius


@dataclass(frozen=True)
class BlockadeResult:
    """Forster-channel quantities for one (n, R); all rates in rad/s."""

    n: int
    separation: float
    v_dd: float
    delta: float
    u_plus: float
    u_minus: float

    @property
    def blockade_shift(self) -> float:
        """Effective blockade shift B = U_+ (rad/s)."""
        return self.u_plus

    @property
    def blockade_shift_hz(self) -> float:
        return self.u_plus / TWO_PI

    @property
    def v_dd_hz(self) -> float:
        return self.v_dd / TWO_PI


def _interaction_prefactor(separation: float) -> float:
    """e^2 a0^2 / (4 pi eps0 R^3 hbar) in rad/s."""
    return (
        ELEMENTARY_CHARGE**2
        * BOHR_RADIUS**2
        / (4.0 * math.pi * VACUUM_PERMITTIVITY * separation**3 * HBAR)
    )


def vdd_dimensionless_factor(n: int) -> float:
    """The n-dependent factor of the parallel-geometry coupling.

        8 * 2^{4n} n^{2n+4} (n^2-1)^{n+2} / ((2n+1)^{2n+3} (2n-1)^{2n+1})

    Approaches n^4 / 2 for large n.  Note: a widely quoted large-n asymptote
    of 8 n^4 for this channel is inconsistent with the exact closed form by a
    factor of 16 (see PHYSICS_NOTES.md); the reference blockade values this
    package reproduces are consistent with the n^4/2 behaviour.
    """
    if n < 2:
        raise ValidationError("dipole-dipole factor requires n >= 2")
    return log_product(
        [
            (8.0, 1.0),
            (2.0, 4 * n),
            (float(n), 2 * n + 4),
            (float(n * n - 1), n + 2),
            (float(2 * n + 1), -(2 * n + 3)),
            (float(2 * n - 1), -(2 * n + 1)),
        ]
    )


def vdd_parallel(n: int, separation: float) -> float:
    """Dipole-dipole matrix element (rad/s), quantization axis parallel.

    Couples |c_n c_n> to |c_{n+1} c_{n-1}>; exact 1/R^3 scaling.
    """
    if separation <= 0:
        raise ValidationError("separation must be positive")
    return _interaction_prefactor(separation) * vdd_dimensionless_factor(n)


def vdd_perpendicular(n: int, separation: float) -> float:
    """Resonant dipole-dipole coupling (rad/s), quantization axis perpendicular.

    |c_n c_n> <-> |n,n-2,n-2>|n,n-2,n-2| is exactly resonant, so the blockade
    shift in this geometry is the coupling itself:

        V = (e^2 a0^2 / 4 pi eps0 R^3) * (27/8) n^2 (n-1),

    an n^3 scaling, much weaker than the parallel channel at gate-relevant n.
    """
    if n < 2:
        raise ValidationError("perpendicular coupling requires n >= 2")
    if separation <= 0:
        raise ValidationError("separation must be positive")
    return _interaction_prefactor(separation) * (27.0 / 8.0) * n**2 * (n - 1)


def forster_eigenvalues(v_dd: float, delta: float) -> tuple[float, float]:
    """Exact roots (u_plus, u_minus) of lambda^2 - delta*lambda - V^2 = 0.

    For delta < 0 the upper root is evaluated as 2V^2/(-delta + sqrt(...)),
    which is algebraically identical but immune to catastrophic cancellation
    when V << |delta|.
    """
    root = math.hypot(delta, 2.0 * v_dd)
    if delta <= 0:
        u_plus = 0.0 if v_dd == 0.0 else 2.0 * v_dd**2 / (root - delta)
        u_minus = 0.5 * (delta - root)
    else:
        u_plus = 0.5 * (delta + root)
        u_minus = 0.0 if v_dd == 0.0 else -2.0 * v_dd**2 / (root + delta)
    return u_plus, u_minus


def blockade_shift(
    n: int,
    separation: float,
    exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
) -> BlockadeResult:
    """Blockade shift of the parallel-geometry Forster channel.

    Separations below ``exclusion_radius`` emit ExclusionRadiusWarning: the
    two-atom treatment stops being physically meaningful once the Rydberg
    wavefunctions overlap, but the formula itself stays well defined.
    """
    geometry = PairGeometry(separation, "parallel", exclusion_radius)
    if geometry.within_exclusion:
        warnings.warn(
            f"separation {separation:.3e} m is inside the exclusion radius "
            f"{exclusion_radius:.3e} m; wavefunction overlap is not negligible",
            ExclusionRadiusWarning,
            stacklevel=2,
        )
    v = vdd_parallel(n, separation)
    delta = energy_defects(n).delta
    u_plus, u_minus = forster_eigenvalues(v, delta)
    return BlockadeResult(
        n=n, separation=separation, v_dd=v, delta=delta, u_plus=u_plus, u_minus=u_minus
    )
