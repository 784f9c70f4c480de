"""SI physical constants (CODATA 2018 / exact SI values).

All public inputs are SI; the closed forms only ever depend on the
dimensionless ratios N/N0, dE/Mc^2 and omega*t, so these defaults can be
overridden (e.g. hbar = c = 1) without touching any formula.
"""

LIGHT_SPEED = 299_792_458.0  # m/s, exact
HBAR = 1.054_571_817e-34  # J*s, h = 6.62607015e-34 exact / 2 pi
BOLTZMANN = 1.380_649e-23  # J/K, exact
ATOMIC_MASS_KG = 1.660_539_066_60e-27  # kg

# The bundled presets treat every system as built from carbon atoms.
CARBON_ATOM_MASS_KG = 12.0 * ATOMIC_MASS_KG
