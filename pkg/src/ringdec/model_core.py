"""Ring configuration, normal-mode construction and derived scalar quantities.

The model: N identical particles of mass m on a ring with nearest-neighbour
harmonic coupling omega, expanded to second order in 1/c^2.  A Fourier
transform separates the centre of mass (CM) from N-1 relative modes with
frequencies omega_k = 2 omega sin(pi k / N); a two-entry-per-row unitary W
then pairs the +k/-k Fourier modes into independent real oscillators.  The
surviving relativistic coupling rescales every relative-mode kinetic term by
1 - delta with delta = 3 P^2 / (2 M^2 c^2), P the CM momentum and M = N m.

Everything here is a pure function of its inputs; values are freely
shareable across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .constants import BOLTZMANN, HBAR, LIGHT_SPEED
from .errors import ConfigError, ValidityError
from .special import bessel_j0

__all__ = [
    "RingConfig",
    "MomentumSuperposition",
    "CatState",
    "CollectiveState",
    "ModeSpectrum",
    "DerivedScalars",
    "TemperatureCheck",
    "mode_frequencies",
    "fourier_matrix",
    "bogoliubov_matrix",
    "kinetic_energy_diff",
    "n0_bound",
    "relativistic_shift",
    "squeeze_magnitude",
    "bessel_j0",
    "validate_low_temperature",
]

# Mode-enumerating operations refuse rings larger than this; the closed-form
# laws cover the astronomical-N regime.
MAX_ENUMERABLE_N = 1_000_001


@dataclass(frozen=True)
class RingConfig:
    """Physical description of the ring.

    ``n_particles`` may be an int, or a float for astronomical sizes that
    only ever enter closed-form laws.  Operations that enumerate the N-1
    relative modes additionally require an exact odd integer (the +k/-k mode
    pairing needs it); they raise ``ConfigError`` otherwise.
    """

    n_particles: Union[int, float]
    particle_mass: float
    coupling: float
    light_speed: float = LIGHT_SPEED
    hbar: float = HBAR

    def __post_init__(self) -> None:
        n = self.n_particles
        if not (isinstance(n, (int, float)) and not isinstance(n, bool)) or math.isnan(float(n)):
            raise ConfigError(f"n_particles must be a number, got {n!r}")
        if float(n) < 3:
            raise ConfigError(f"n_particles must be >= 3, got {n!r}")
        for name in ("particle_mass", "coupling", "light_speed", "hbar"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ConfigError(f"{name} must be positive and finite, got {value!r}")

    @property
    def total_mass(self) -> float:
        return float(self.n_particles) * self.particle_mass

    def mode_count(self) -> int:
        """N - 1, available only when the modes are actually enumerable."""
        return self.require_enumerable() - 1

    def require_enumerable(self) -> int:
        """Return N as an exact odd int, or raise ``ConfigError``.

        The diagonalisation pairs mode k with mode N-k, which requires an odd
        particle number; enumeration is capped at desk scale.
        """
        n = self.n_particles
        if isinstance(n, float):
            if not n.is_integer() or n > MAX_ENUMERABLE_N:
                raise ConfigError(
                    f"n_particles={n!r} is not an enumerable integer; "
                    "use a closed-form method (large-N, small-t) instead"
                )
            n = int(n)
        if n > MAX_ENUMERABLE_N:
            raise ConfigError(f"n_particles={n} exceeds the enumeration guard {MAX_ENUMERABLE_N}")
        if n % 2 == 0:
            raise ConfigError(f"mode enumeration requires odd n_particles, got {n}")
        return n


@dataclass(frozen=True)
class MomentumSuperposition:
    """CM prepared in an equal superposition of momentum eigenstates p1, p2 (kg m/s)."""

    p1: float
    p2: float

    @classmethod
    def from_velocities(cls, v1: float, v2: float, cfg: RingConfig) -> "MomentumSuperposition":
        m = cfg.total_mass
        return cls(p1=m * v1, p2=m * v2)

    def validate(self, cfg: RingConfig) -> None:
        """Both branches must stay inside the kinetic expansion's domain."""
        for label, p in (("p1", self.p1), ("p2", self.p2)):
            delta = relativistic_shift(p, cfg.total_mass, cfg.light_speed)
            if delta >= 1.0:
                raise ValidityError(
                    f"3*{label}^2/(2 M^2 c^2) = {delta:.6g} >= 1; relativistic expansion invalid"
                )

    def velocities(self, cfg: RingConfig) -> tuple[float, float]:
        m = cfg.total_mass
        return self.p1 / m, self.p2 / m


@dataclass(frozen=True)
class CatState:
    """CM prepared in a normalised superposition of coherent states alpha, beta.

    ``sigma`` (m) is the position width of the underlying packets; it sets
    the coherent-state length scale.
    """

    alpha: complex
    beta: complex
    sigma: float

    def __post_init__(self) -> None:
        if not (self.sigma > 0.0):
            raise ConfigError(f"sigma must be positive, got {self.sigma!r}")


CollectiveState = Union[MomentumSuperposition, CatState]


@dataclass(frozen=True)
class ModeSpectrum:
    """Relative-mode frequencies omega_k = 2 omega sin(pi k / N), k = 1..N-1."""

    frequencies: np.ndarray

    def __len__(self) -> int:
        return len(self.frequencies)


@dataclass(frozen=True)
class DerivedScalars:
    """Scalars derived from a ring plus a momentum superposition.

    delta_e      kinetic-energy difference (P1^2 - P2^2)/(2M), signed, J
    n0           particle-number bound 32 M^2 c^4 / (9 delta_e^2)
    squeeze_r1/2 squeeze magnitudes -ln(1 - delta_i)/4 of the two branches
    delta1/2     kinetic rescalings 3 P_i^2 / (2 M^2 c^2)
    """

    delta_e: float
    n0: float
    squeeze_r1: float
    squeeze_r2: float
    delta1: float
    delta2: float


class TemperatureCheck(NamedTuple):
    passed: bool
    margin: float
    threshold_kelvin: float


def mode_frequencies(cfg: RingConfig) -> ModeSpectrum:
    """Frequencies of the N-1 relative modes, in index order k = 1..N-1."""
    n = cfg.n_particles
    if isinstance(n, float):
        if not n.is_integer() or n > MAX_ENUMERABLE_N:
            raise ConfigError(f"cannot enumerate mode frequencies for n_particles={n!r}")
        n = int(n)
    if n > MAX_ENUMERABLE_N:
        raise ConfigError(f"n_particles={n} exceeds the enumeration guard {MAX_ENUMERABLE_N}")
    k = np.arange(1, n)
    return ModeSpectrum(frequencies=2.0 * cfg.coupling * np.sin(np.pi * k / n))


def fourier_matrix(n: int) -> np.ndarray:
    """Unitary N x N discrete Fourier matrix in the momentum convention.

    Entry [k-1, j-1] = exp(-i 2 pi k j / N) / sqrt(N) for k, j = 1..N; the
    position transform uses the complex conjugate.  The k = N row has equal
    weights 1/sqrt(N), so it maps the site momenta onto the CM combination
    (sum_j p_j)/sqrt(N).
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) / math.sqrt(n)


def bogoliubov_matrix(n: int) -> np.ndarray:
    """Unitary (N-1) x (N-1) pairing matrix W for odd N.

    W combines the degenerate +k/-k Fourier modes into independent real
    normal modes: rows j <= (N-1)/2 carry (1/sqrt2, 1/sqrt2) at columns j and
    N-j, rows j >= (N+1)/2 carry (i/sqrt2, -i/sqrt2).  Exactly two entries
    per row and per column are nonzero.
    """
    if n < 3 or n % 2 == 0:
        raise ConfigError(f"bogoliubov_matrix requires odd n >= 3, got {n}")
    w = np.zeros((n - 1, n - 1), dtype=complex)
    s = 1.0 / math.sqrt(2.0)
    half = (n - 1) // 2
    for j in range(1, n):  # 1-based row index
        if j <= half:
            w[j - 1, j - 1] = s
            w[j - 1, n - j - 1] = s
        else:
            w[j - 1, j - 1] = 1j * s
            w[j - 1, n - j - 1] = -1j * s
    return w


def kinetic_energy_diff(p1: float, p2: float, m_total: float) -> float:
    """Signed CM kinetic-energy difference (p1^2 - p2^2) / (2 m_total)."""
    if not (m_total > 0.0):
        raise ConfigError(f"m_total must be positive, got {m_total!r}")
    return (p1 * p1 - p2 * p2) / (2.0 * m_total)


def n0_bound(delta_e: float, m_total: float, c: float = LIGHT_SPEED) -> float:
    """Particle-number bound 32 M^2 c^4 / (9 delta_e^2).

    Complete long-time decoherence requires N >> this bound.  Returns
    ``math.inf`` when delta_e == 0 (no decoherence channel at all).  For
    velocity-specified branches the bound reduces to
    128 c^4 / (9 (v1^2 - v2^2)^2), independent of the mass.
    """
    if delta_e == 0.0:
        return math.inf
    # Grouped to stay finite for astronomical masses (M^2 c^4 can overflow).
    ratio = m_total * c * c / delta_e
    return (32.0 / 9.0) * ratio * ratio


def relativistic_shift(p: float, m_total: float, c: float = LIGHT_SPEED) -> float:
    """Kinetic rescaling delta = 3 p^2 / (2 M^2 c^2) seen by every relative mode."""
    x = p / (m_total * c)
    return 1.5 * x * x


def squeeze_magnitude(p: float, m_total: float, c: float = LIGHT_SPEED) -> float:
    """Squeeze magnitude |r| = -ln(1 - delta)/4 encoding the frequency shift.

    Uses log1p so the small-P asymptote |r| ~ 3 P^2 / (8 M^2 c^2) is exact to
    machine precision even for delta ~ 1e-20.
    """
    delta = relativistic_shift(p, m_total, c)
    if delta >= 1.0:
        raise ValidityError(f"3P^2/(2M^2c^2) = {delta:.6g} >= 1; relativistic expansion invalid")
    return -0.25 * math.log1p(-delta)


def derived_scalars(cfg: RingConfig, state: MomentumSuperposition) -> DerivedScalars:
    state.validate(cfg)
    m = cfg.total_mass
    c = cfg.light_speed
    de = kinetic_energy_diff(state.p1, state.p2, m)
    return DerivedScalars(
        delta_e=de,
        n0=n0_bound(de, m, c),
        squeeze_r1=squeeze_magnitude(state.p1, m, c),
        squeeze_r2=squeeze_magnitude(state.p2, m, c),
        delta1=relativistic_shift(state.p1, m, c),
        delta2=relativistic_shift(state.p2, m, c),
    )


def validate_low_temperature(
    cfg: RingConfig,
    temperature: float,
    strictness: float = 10.0,
    kb: float = BOLTZMANN,
) -> TemperatureCheck:
    """Check that kB T sits well below the minimal relative-mode gap.

    The lowest gap at large N is 2 pi hbar omega / N.  The check passes when
    kB T is below that gap divided by ``strictness`` (the "much less than"
    safety factor); the returned margin is gap / (strictness kB T), infinite
    at T = 0.  Failing is a result, not an error.
    """
    if temperature < 0.0:
        raise ConfigError(f"temperature must be >= 0, got {temperature!r}")
    gap = 2.0 * math.pi * cfg.hbar * cfg.coupling / float(cfg.n_particles)
    threshold = gap / kb
    if temperature == 0.0:
        return TemperatureCheck(passed=True, margin=math.inf, threshold_kelvin=threshold)
    margin = gap / (strictness * kb * temperature)
    return TemperatureCheck(passed=margin > 1.0, margin=margin, threshold_kelvin=threshold)
