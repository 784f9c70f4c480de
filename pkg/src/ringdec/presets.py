"""Named scenario presets.

The four momentum-superposition presets span the scales of interest (all
assembled from carbon atoms, coupling 1e14 rad/s); ``fig2`` is the
natural-units cat-state benchmark used by the phase-space figures.
"""

from __future__ import annotations

from .constants import CARBON_ATOM_MASS_KG

_COMMON_SYSTEM = {
    "particle_mass": CARBON_ATOM_MASS_KG,
    "coupling": 1.0e14,
}

PRESETS: dict[str, dict] = {
    "universe": {
        "system": {**_COMMON_SYSTEM, "n_particles": 5.0e78},
        "state": {"kind": "momentum-superposition", "v1": 2.0e6, "v2": 1.0e6},
        "run": {"method": "large-N"},
    },
    "earth": {
        "system": {**_COMMON_SYSTEM, "n_particles": 2.5e50},
        "state": {"kind": "momentum-superposition", "v1": 3.0e4, "v2": 2.0e4},
        "run": {"method": "large-N"},
    },
    "person": {
        "system": {**_COMMON_SYSTEM, "n_particles": 5.0e27},
        "state": {"kind": "momentum-superposition", "v1": 10.0, "v2": 5.0},
        "run": {"method": "large-N"},
    },
    "c60": {
        "system": {**_COMMON_SYSTEM, "n_particles": 60},
        "state": {"kind": "momentum-superposition", "v1": 1.0e3, "v2": 2.0e2},
        "run": {"method": "large-N"},
    },
    # Natural-units cat-state benchmark: hbar = c = 1, sigma = 1, N = 10,
    # gamma pinned to 10, packets at (p/N, q) = (0.3, 10) and (0.7, 6).
    "fig2": {
        "system": {
            "n_particles": 10,
            "particle_mass": 1.0,
            "coupling": 1.0,
            "light_speed": 1.0,
            "hbar": 1.0,
        },
        "state": {
            "kind": "cat",
            "alpha": 5 + 3j,
            "beta": 3 + 7j,
            "sigma": 1.0,
            "gamma": 10.0,
        },
        "run": {"method": "large-N", "omega_t": (0.0, 0.5, 1.0)},
    },
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(PRESETS))
