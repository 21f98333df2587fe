"""Hydrogenic circular-state structure.

Quantum numbers, radial matrix elements, transition frequencies, energy
defects, radiative lifetimes with blackbody correction, radial localization,
and the microwave-ladder transfer chain that ends on a circular state.

Conventions
-----------
* Hydrogenic energies throughout: E_n = -E_R / n^2 (no quantum defects).
  Circular and near-circular states have negligible core penetration, so the
  hydrogenic approximation is excellent; the one place it visibly matters is
  the first ladder link, which comes out near 861 GHz where published values
  that include quantum defects quote 859 GHz.
* The circular state |c_n> has l = m = n - 1.
* Reduced dipole matrix elements follow the convention
  <l'||r||l> = sqrt(max(l, l')) * (radial integral), which makes
  |<c_{n+1}||r||c_n>| = |<c_n||r||c_{n+1}>| exactly.
* Frequencies are exposed both as angular frequency (rad/s) and cyclic
  frequency (Hz) with explicit names; everything internal is SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaincc

from .constants import (
    BOHR_RADIUS,
    BOLTZMANN,
    E_HARTREE,
    E_RYDBERG,
    ELEMENTARY_CHARGE,
    HBAR,
    PLANCK,
    SPEED_OF_LIGHT,
    VACUUM_PERMITTIVITY,
)
from .errors import ValidationError
from .numerics import log_product

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RydbergLevel:
    """Hydrogenic level |n, l, m>."""

    n: int
    l: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"principal quantum number must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValidationError(f"need 0 <= l <= n-1, got l={self.l} for n={self.n}")
        if abs(self.m) > self.l:
            raise ValidationError(f"need |m| <= l, got m={self.m} for l={self.l}")

    @classmethod
    def circular(cls, n: int) -> "RydbergLevel":
        """The circular state |c_n>: maximal angular momentum l = m = n - 1."""
        return cls(n, n - 1, n - 1)

    @property
    def is_circular(self) -> bool:
        return self.l == self.n - 1 and self.m == self.l

    @property
    def energy(self) -> float:
        """Hydrogenic binding energy -E_R/n^2 in J."""
        return -E_RYDBERG / self.n**2


@dataclass(frozen=True)
class DefectPair:
    """Energy defects (rad/s) of the two nearest pair-state channels.

    ``delta`` is the defect of the channel |c_n c_n> <-> |c_{n+1} c_{n-1}>,
    negative for every n >= 2.  ``delta_prime`` belongs to the next channel
    |c_n c_n> <-> |n+2, n, n>|c_{n-1}>; the ratio delta/delta_prime falls off
    as 1/n, which is what justifies the two-level blockade treatment.
    """

    delta: float
    delta_prime: float

    @property
    def delta_hartree(self) -> float:
        """hbar*delta in units of the Hartree energy."""
        return self.delta * HBAR / E_HARTREE

    @property
    def delta_prime_hartree(self) -> float:
        return self.delta_prime * HBAR / E_HARTREE

    @property
    def delta_hz(self) -> float:
        return self.delta / TWO_PI

    @property
    def delta_prime_hz(self) -> float:
        return self.delta_prime / TWO_PI


def reduced_dipole_down(n: int) -> float:
    """Reduced dipole matrix element <c_{n-1}||r||c_n> in units of a0.

    Closed hydrogenic form, negative for all n >= 2:

        -4^n n^{n+1} (n-1)^{n+3/2} sqrt(4n^2-6n+2) / (2n-1)^{2n+1}

    Evaluated in log space; the individual powers overflow doubles near
    n ~ 150 even though the result only grows like n^2.
    """
    if n < 2:
        raise ValidationError("downward circular dipole requires n >= 2")
    return log_product(
        [
            (4.0, n),
            (float(n), n + 1),
            (float(n - 1), n + 1.5),
            (float(4 * n * n - 6 * n + 2), 0.5),
            (float(2 * n - 1), -(2 * n + 1)),
        ],
        leading_sign=-1.0,
    )


def reduced_dipole_up(n: int) -> float:
    """Reduced dipole matrix element <c_{n+1}||r||c_n> in units of a0 (positive).

        2^{1/2} 4^{n+1} (n+1)^{n+2} n^{n+3} / (2n+1)^{2n+5/2}
    """
    if n < 1:
        raise ValidationError("upward circular dipole requires n >= 1")
    return log_product(
        [
            (2.0, 0.5),
            (4.0, n + 1),
            (float(n + 1), n + 2),
            (float(n), n + 3),
            (float(2 * n + 1), -(2 * n + 2.5)),
        ]
    )


def transition_angular_frequency(n: int) -> float:
    """omega_eg of the circular decay channel c_n -> c_{n-1}, rad/s.

    omega_eg = (E_R/hbar) [1/(n-1)^2 - 1/n^2]; microwave-range for large n.
    """
    if n < 2:
        raise ValidationError("transition frequency requires n >= 2")
    return E_RYDBERG / HBAR * (1.0 / (n - 1) ** 2 - 1.0 / n**2)


def transition_frequency_hz(n: int) -> float:
    return transition_angular_frequency(n) / TWO_PI


def energy_defects(n: int) -> DefectPair:
    """Pair-state energy defects for the parallel-geometry blockade channels."""
    if n < 2:
        raise ValidationError("energy defects require n >= 2")
    delta = E_HARTREE / 2.0 / HBAR * (
        -1.0 / (n + 1) ** 2 - 1.0 / (n - 1) ** 2 + 2.0 / n**2
    )
    delta_prime = E_HARTREE / 2.0 / HBAR * (
        -1.0 / (n + 2) ** 2 - 1.0 / (n - 1) ** 2 + 2.0 / n**2
    )
    return DefectPair(delta=delta, delta_prime=delta_prime)


def einstein_a_coefficient(n: int) -> float:
    """Spontaneous decay rate (1/s) of c_n -> c_{n-1}.

    A = omega_eg^3 e^2 |<c_{n-1}|r_{-1}|c_n>|^2 / (3 pi eps0 hbar c^3), with
    the stretched-state component |<c_{n-1}|r_{-1}|c_n>|^2 equal to the
    squared reduced element divided by 2n-1.
    """
    omega = transition_angular_frequency(n)
    m2 = (reduced_dipole_down(n) * BOHR_RADIUS) ** 2 / (2 * n - 1)
    return (
        omega**3
        * ELEMENTARY_CHARGE**2
        * m2
        / (3.0 * math.pi * VACUUM_PERMITTIVITY * HBAR * SPEED_OF_LIGHT**3)
    )


def lifetime_0k(n: int) -> float:
    """Zero-temperature radiative lifetime (s) of the circular state c_n.

    Closed form obtained by substituting the hydrogenic matrix element into
    the inverse Einstein-A expression:

        tau0 = (3 pi eps0 hbar^4 c^3 / E_R^3 a0^2 e^2)
               * (2n-1)^{4n-1} / (2^{4n+1} n^{2n-4} (n-1)^{2n-2})

    Log-space evaluation; agrees with 1/einstein_a_coefficient to rounding.
    """
    if n < 2:
        raise ValidationError("lifetime requires n >= 2")
    prefactor = (
        3.0
        * math.pi
        * VACUUM_PERMITTIVITY
        * HBAR**4
        * SPEED_OF_LIGHT**3
        / (E_RYDBERG**3 * BOHR_RADIUS**2 * ELEMENTARY_CHARGE**2)
    )
    return prefactor * log_product(
        [
            (float(2 * n - 1), 4 * n - 1),
            (2.0, -(4 * n + 1)),
            (float(n), -(2 * n - 4)),
            (float(n - 1), -(2 * n - 2)),
        ]
    )


def lifetime(n: int, temperature: float) -> float:
    """Circular-state lifetime (s) including blackbody stimulation.

    1/tau = (1/tau0) (nbar + 1) with nbar the thermal photon number at the
    decay frequency.  Only the c_n -> c_{n-1} channel is included;
    blackbody-driven transfer to other levels is not part of this model.
    """
    if temperature < 0:
        raise ValidationError("temperature must be >= 0 K")
    tau0 = lifetime_0k(n)
    if temperature == 0.0:
        return tau0
    x = HBAR * transition_angular_frequency(n) / (BOLTZMANN * temperature)
    if x > 700.0:  # exp overflow guard; nbar is indistinguishable from zero
        return tau0
    nbar = 1.0 / math.expm1(x)
    return tau0 / (nbar + 1.0)


def radial_peak_radius(n: int) -> float:
    """Radius (m) at which the circular-state radial density r^2 R^2 peaks.

    For R_{n,n-1} ~ r^{n-1} exp(-r/(n a0)) the peak sits exactly at n^2 a0.
    """
    if n < 1:
        raise ValidationError("peak radius requires n >= 1")
    return n**2 * BOHR_RADIUS


def radial_probability_outside(n: int, radius: float) -> float:
    """Probability of finding a circular-state electron beyond ``radius`` (m).

    The circular radial density is a gamma density in r, so the tail integral
    is the regularized upper incomplete gamma function Q(2n+1, 2r/(n a0)),
    which scipy evaluates in log space; no overflow at large n.
    """
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    if radius == 0.0:
        return 1.0
    x = 2.0 * radius / (n * BOHR_RADIUS)
    return float(gammaincc(2 * n + 1, x))


@dataclass(frozen=True)
class StirapLadder:
    """Microwave ladder from |168,2,2> up to the circular |112,111,111>.

    ``levels`` holds the ladder states in transfer order; link k couples
    levels[k] and levels[k+1] at ``link_frequencies_hz[k]`` (hydrogenic).
    """

    levels: tuple[RydbergLevel, ...]
    link_frequencies_hz: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.levels)


def stirap_chain(n_final: int = 112) -> StirapLadder:
    """Build the two interleaved Rydberg chains of the circularization ladder.

    Odd-position states sit at n = 170 - (j+1)/2 and even-position states at
    n = 56 + j/2, with l = m = j - 1 throughout, so each link changes l and m
    by exactly one (sigma+/- dipole selection rules).  Only the n_final = 112
    instance is validated; other targets raise.
    """
    if n_final != 112:
        raise ValidationError("only the n_final = 112 ladder is supported")
    levels = []
    for j in range(3, 113):
        n = 170 - (j + 1) // 2 if j % 2 else 56 + j // 2
        levels.append(RydbergLevel(n=n, l=j - 1, m=j - 1))
    freqs = tuple(
        abs(b.energy - a.energy) / PLANCK for a, b in zip(levels, levels[1:])
    )
    return StirapLadder(levels=tuple(levels), link_frequencies_hz=freqs)
