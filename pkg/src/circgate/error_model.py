"""Analytic intrinsic-error estimates for the blockade controlled-phase gate.

The computational-basis gate error has two pieces: Rydberg decay during the
finite pulse sequence and rotation errors from imperfect blockade,

    E1 = (7 pi / 4 Omega tau) (1 + Omega^2/omega10^2 + Omega^2/(7 B^2))
         + (Omega^2 / 8 B^2) (1 + 6 B^2/omega10^2).

In the limit omega10 >> (B, Omega) the trade-off between the two leading
terms gives the optimum drive and minimum error

    Omega_opt = (7 pi)^{1/3} B^{2/3} / tau^{1/3},
    E_min     = (3 (7 pi)^{2/3} / 8) / (B tau)^{2/3},

which is the pair this package uses to reproduce the reference table
(E1 with the finite-omega10 corrections is exposed for analysis; at 77 K and
above, where B is comparable to the qubit splitting, it is a few times
larger than E_min).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

TWO_PI = 2.0 * math.pi

# Cs hyperfine clock splitting, exact by SI definition of the second.
CS_QUBIT_SPLITTING = TWO_PI * 9_192_631_770.0  # rad/s


@dataclass(frozen=True)
class GateParams:
    """Full input record for the gate dynamics; all rates in rad/s, tau in s.

    ``tau = math.inf`` switches decay off (gamma_r = 0), which the synthetic
    ideal-gate presets use.
    """

    omega: float        # Rabi frequency of the qubit-Rydberg drive
    omega_10: float     # qubit splitting
    blockade_b: float   # blockade shift B
    tau: float          # Rydberg lifetime

    def __post_init__(self) -> None:
        if not self.omega > 0:
            raise ValidationError("omega must be positive")
        if not self.omega_10 > 0:
            raise ValidationError("omega_10 must be positive")
        if self.blockade_b < 0:
            raise ValidationError("blockade_b must be >= 0")
        if not self.tau > 0:
            raise ValidationError("tau must be positive (math.inf for no decay)")

    @property
    def gamma_r(self) -> float:
        """Rydberg decay rate 1/tau (1/s); zero for infinite lifetime."""
        return 0.0 if math.isinf(self.tau) else 1.0 / self.tau

    @property
    def strong_blockade(self) -> bool:
        """Whether the strong-blockade hierarchy Omega << B < omega_10 holds."""
        return self.omega < self.blockade_b / 10.0 and self.blockade_b < self.omega_10


def intrinsic_error_e1(params: GateParams) -> float:
    """Computational-basis gate error, exact evaluation (no regime clamping).

    The bracketed products are expanded so that infinite B, omega_10 or tau
    give exact limits instead of inf/inf.
    """
    omega, b, w10, tau = params.omega, params.blockade_b, params.omega_10, params.tau
    decay_base = 7.0 * math.pi / (4.0 * omega * tau)
    decay = decay_base * (1.0 + omega**2 / w10**2) + decay_base * omega**2 / (7.0 * b**2)
    rotation = omega**2 / (8.0 * b**2) + 0.75 * omega**2 / w10**2
    return decay + rotation


def optimal_rabi(blockade_b: float, tau: float) -> float:
    """Drive strength (rad/s) minimizing the decay/rotation trade-off."""
    if blockade_b <= 0 or tau <= 0:
        raise ValidationError("optimal_rabi requires positive B and tau")
    return (7.0 * math.pi) ** (1.0 / 3.0) * blockade_b ** (2.0 / 3.0) / tau ** (1.0 / 3.0)


def min_error(blockade_b: float, tau: float) -> float:
    """Minimum computational-basis error; depends only on the product B*tau."""
    if blockade_b <= 0 or tau <= 0:
        raise ValidationError("min_error requires positive B and tau")
    return 3.0 * (7.0 * math.pi) ** (2.0 / 3.0) / 8.0 / (blockade_b * tau) ** (2.0 / 3.0)


def stirap_intermediate_error(p_int: float, omega: float, tau_int: float) -> float:
    """Spontaneous-emission error of a pi pulse routed through ladder states.

    pi * P_int / (Omega * tau_int): P_int is the summed population of the
    intermediate states during transfer, tau_int their average lifetime.
    """
    if not 0 <= p_int <= 1:
        raise ValidationError("p_int must lie in [0, 1]")
    if omega <= 0 or tau_int <= 0:
        raise ValidationError("omega and tau_int must be positive")
    return math.pi * p_int / (omega * tau_int)
