"""Physical constants, CODATA-2018 values, SI units.

Pinned here rather than imported from scipy.constants so the numbers cannot
drift when scipy moves to a newer CODATA adjustment.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used by the atomic-structure formulas.

    rydberg_energy is derived, not stored, so E_R = E_H / 2 holds exactly.
    """

    hartree_energy: float       # J
    bohr_radius: float          # m
    elementary_charge: float    # C
    vacuum_permittivity: float  # F/m
    hbar: float                 # J s
    speed_of_light: float       # m/s
    boltzmann: float            # J/K

    @property
    def rydberg_energy(self) -> float:
        return self.hartree_energy / 2.0


CODATA2018 = PhysicalConstants(
    hartree_energy=4.3597447222071e-18,
    bohr_radius=5.29177210903e-11,
    elementary_charge=1.602176634e-19,
    vacuum_permittivity=8.8541878128e-12,
    hbar=1.054571817e-34,
    speed_of_light=299792458.0,
    boltzmann=1.380649e-23,
)

# Convenience aliases.
E_HARTREE = CODATA2018.hartree_energy
E_RYDBERG = CODATA2018.rydberg_energy
BOHR_RADIUS = CODATA2018.bohr_radius
ELEMENTARY_CHARGE = CODATA2018.elementary_charge
VACUUM_PERMITTIVITY = CODATA2018.vacuum_permittivity
HBAR = CODATA2018.hbar
SPEED_OF_LIGHT = CODATA2018.speed_of_light
BOLTZMANN = CODATA2018.boltzmann
PLANCK = 6.62607015e-34  # J s, exact SI definition
