"""Decoherence of the centre-of-mass mode of a relativistic harmonic ring.

The lowest-order relativistic correction to the kinetic energy of a ring of
N identical, nearest-neighbour-coupled particles couples the centre-of-mass
(CM) momentum to every internal vibrational mode.  A CM momentum
superposition therefore dephases against the ring's own vacuum, without any
external environment.  This package provides:

* exact per-mode vacuum overlaps via a 6x6 complex Gaussian determinant,
  together with their second-order approximation (``squeeze_overlap``),
* closed-form decoherence curves, decoherence times and the long-time
  plateau, plus the free-particle contrast model (``curves``),
* phase-space (Wigner) analysis of an evolving cat state and its fringe
  visibility (``wigner``),
* an independent truncated-Fock brute-force oracle used to certify every
  analytic formula at desk scale (``fock``),
* a CLI with named presets, CSV/JSON export and static SVG figures
  (``cli``).
"""

__version__ = "0.1.0"

from .constants import ATOMIC_MASS_KG, BOLTZMANN, CARBON_ATOM_MASS_KG, HBAR, LIGHT_SPEED
from .errors import ConfigError, LeakageError, NumericError, ResourceGuardError, RingdecError, ValidityError
from .model_core import (
    CatState,
    DerivedScalars,
    ModeSpectrum,
    MomentumSuperposition,
    RingConfig,
    bessel_j0,
    bogoliubov_matrix,
    derived_scalars,
    fourier_matrix,
    kinetic_energy_diff,
    mode_frequencies,
    n0_bound,
    relativistic_shift,
    squeeze_magnitude,
    validate_low_temperature,
)

__all__ = [
    "ATOMIC_MASS_KG",
    "BOLTZMANN",
    "CARBON_ATOM_MASS_KG",
    "CatState",
    "ConfigError",
    "DerivedScalars",
    "HBAR",
    "LIGHT_SPEED",
    "LeakageError",
    "ModeSpectrum",
    "MomentumSuperposition",
    "NumericError",
    "ResourceGuardError",
    "RingConfig",
    "RingdecError",
    "ValidityError",
    "bessel_j0",
    "bogoliubov_matrix",
    "derived_scalars",
    "fourier_matrix",
    "kinetic_energy_diff",
    "mode_frequencies",
    "n0_bound",
    "relativistic_shift",
    "squeeze_magnitude",
    "validate_low_temperature",
]
