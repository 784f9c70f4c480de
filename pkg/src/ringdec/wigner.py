"""Phase-space analysis of an evolving CM cat state.

A superposition of coherent packets (alpha, beta) dephases through the same
per-mode overlap product as a momentum superposition; replacing the product
by its modulus gives a Gaussian coherence kernel between momentum components
P and P' proportional to exp[-g (1 - J0(4 w t)) sigma^4 (P^2 - P'^2)^2 /
hbar^4].  The Wigner transform of the resulting reduced state splits into
two positive packets plus an oscillatory interference band.

Convention for the interaction constant: ``gamma`` is the constant that the
component formulas divide by N^4 (the single-particle-mass convention, the
one bounded against N^4 in the peak-stability conditions).  Every decay
exponent therefore carries gamma / N^4, which equals the total-mass variant
of the constant; the two normalisations describe one and the same kernel.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import ConfigError
from .model_core import CatState, RingConfig
from .special import bessel_j0

__all__ = [
    "CatParameters",
    "WignerField",
    "WignerPeaks",
    "StabilityCondition",
    "VisibilityLimits",
    "cat_parameters",
    "coherent_momentum_amplitude",
    "wigner_components",
    "wigner_field",
    "default_grid",
    "wigner_peaks",
    "fringe_visibility",
    "fringe_visibility_from_peaks",
    "visibility_limits",
]


@dataclass(frozen=True)
class CatParameters:
    """Cat-state amplitudes plus the interaction constant and particle count."""

    alpha: complex
    beta: complex
    sigma: float
    gamma: float
    n: float

    def __post_init__(self) -> None:
        if not (self.sigma > 0.0):
            raise ConfigError(f"sigma must be positive, got {self.sigma!r}")
        if self.gamma < 0.0:
            raise ConfigError(f"gamma must be >= 0, got {self.gamma!r}")
        if self.n < 1.0:
            raise ConfigError(f"n must be >= 1, got {self.n!r}")

    @property
    def overlap_alpha_beta(self) -> complex:
        """<alpha|beta> = exp[-(|a|^2 + |b|^2)/2 + a* b]."""
        a, b = self.alpha, self.beta
        return cmath.exp(-(abs(a) ** 2 + abs(b) ** 2) / 2.0 + a.conjugate() * b)

    @property
    def norm_sq(self) -> float:
        """|Xi|^2 = 2 + 2 Re<alpha|beta> for the state (|a> + |b>)/Xi."""
        return 2.0 + 2.0 * self.overlap_alpha_beta.real


def cat_parameters(
    cfg: RingConfig,
    state: CatState,
    gamma: Optional[float] = None,
    n: Optional[float] = None,
) -> CatParameters:
    """Build CatParameters from a ring config, deriving gamma when not overridden.

    The physical constant is gamma = 9 N hbar^4 / (128 sigma^4 m^4 c^4) with
    the single-particle mass m (see the module docstring for the N^4
    bookkeeping).
    """
    count = float(cfg.n_particles) if n is None else float(n)
    if gamma is None:
        gamma = (
            9.0
            * count
            * cfg.hbar**4
            / (128.0 * state.sigma**4 * cfg.particle_mass**4 * cfg.light_speed**4)
        )
    return CatParameters(alpha=complex(state.alpha), beta=complex(state.beta), sigma=state.sigma, gamma=gamma, n=count)


def coherent_momentum_amplitude(p, alpha: complex, sigma: float, hbar: float):
    """Momentum amplitude of a coherent packet: a Gaussian of width hbar/(2 sigma)
    centred at hbar Im(alpha)/sigma, with a linear phase from Re(alpha).
    """
    if not (sigma > 0.0):
        raise ConfigError(f"sigma must be positive, got {sigma!r}")
    p = np.asarray(p, dtype=float)
    alpha = complex(alpha)
    centre = hbar * alpha.imag / sigma
    envelope = (2.0 * sigma**2 / (math.pi * hbar**2)) ** 0.25 * np.exp(
        -(sigma**2 / hbar**2) * (p - centre) ** 2
    )
    return envelope * np.exp(-2j * (sigma / hbar) * alpha.real * p)


def _decay_coefficient(t: float, params: CatParameters, omega: float) -> float:
    """gamma (1 - J0(4 w t)) / N^4, the common damping coefficient."""
    return params.gamma * (1.0 - float(bessel_j0(4.0 * omega * t))) / params.n**4


def wigner_components(p, q, t: float, params: CatParameters, cfg: RingConfig):
    """The two packet terms and the interference term of the Wigner field.

    ``p``/``q`` broadcast; returns (w_alpha, w_beta, w_interference) as real
    arrays.  The interference term is the hermitian pair summed, i.e. twice
    the real part of the complex branch, which involves a Gaussian of the
    complex argument p + i hbar (alpha - beta*) / (2 sigma).
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a, b = params.alpha, params.beta
    s = params.sigma
    hbar = cfg.hbar
    norm = 1.0 / (params.norm_sq * math.pi * hbar)
    dc = _decay_coefficient(t, params, cfg.coupling)

    def packet(ampl: complex):
        gq = q - 2.0 * s * ampl.real  # G_q(-Re ampl)
        gauss_q = np.exp(-(gq**2) / (2.0 * s**2))
        gauss_p = np.exp(-2.0 * (s * p - hbar * ampl.imag) ** 2 / hbar**2)
        damp = np.exp(-4.0 * dc * (p * s / hbar) ** 2 * (1.0 - gq**2 / s**2))
        return norm * gauss_q * gauss_p * damp

    w_alpha = packet(a)
    w_beta = packet(b)

    gc = q - s * (a + b.conjugate())  # complex G_q(-(alpha + beta*)/2)
    z = p + 1j * hbar * (a - b.conjugate()) / (2.0 * s)
    branch = (
        np.exp(-2.0 * (s / hbar) ** 2 * z**2)
        * cmath.exp(-((a - b.conjugate()) ** 2) / 2.0 - a.imag**2 - b.imag**2)
        * np.exp(-(gc**2) / (2.0 * s**2))
        * np.exp(-4.0 * dc * (p * s / hbar) ** 2 * (1.0 - gc**2 / s**2))
    )
    w_int = 2.0 * np.real(norm * branch)
    return w_alpha, w_beta, w_int


@dataclass(frozen=True)
class WignerField:
    """Wigner components sampled on a (p, q) grid; arrays indexed [i_p, i_q]."""

    p_grid: np.ndarray
    q_grid: np.ndarray
    w_alpha: np.ndarray
    w_beta: np.ndarray
    w_interference: np.ndarray
    w_total: np.ndarray
    time: float


def wigner_field(p_grid, q_grid, t: float, params: CatParameters, cfg: RingConfig) -> WignerField:
    """Evaluate all components over the tensor grid, rows in ascending p order."""
    p_grid = np.asarray(p_grid, dtype=float)
    q_grid = np.asarray(q_grid, dtype=float)
    pp = p_grid[:, None]
    qq = q_grid[None, :]
    wa, wb, wi = wigner_components(pp, qq, t, params, cfg)
    return WignerField(
        p_grid=p_grid,
        q_grid=q_grid,
        w_alpha=wa,
        w_beta=wb,
        w_interference=wi,
        w_total=wa + wb + wi,
        time=t,
    )


def default_grid(
    params: CatParameters,
    cfg: RingConfig,
    size: int = 512,
    span: float = 6.0,
    boundary_tol: float = 1e-8,
) -> tuple[np.ndarray, np.ndarray]:
    """Grid covering both packet centres to +-``span`` widths per axis.

    The packet widths are hbar/(2 sigma) in p and sigma in q.  If a coarse
    probe still finds more than ``boundary_tol`` of the peak magnitude on the
    border, the window is widened before the final grid is returned.
    """
    s = params.sigma
    hbar = cfg.hbar
    pc = (hbar * params.alpha.imag / s, hbar * params.beta.imag / s)
    qc = (2.0 * s * params.alpha.real, 2.0 * s * params.beta.real)
    wp, wq = hbar / (2.0 * s), s
    plo, phi = min(pc) - span * wp, max(pc) + span * wp
    qlo, qhi = min(qc) - span * wq, max(qc) + span * wq
    for _ in range(8):
        probe = wigner_field(np.linspace(plo, phi, 64), np.linspace(qlo, qhi, 64), 0.0, params, cfg)
        peak = float(np.max(np.abs(probe.w_total)))
        border = max(
            float(np.max(np.abs(probe.w_total[0, :]))),
            float(np.max(np.abs(probe.w_total[-1, :]))),
            float(np.max(np.abs(probe.w_total[:, 0]))),
            float(np.max(np.abs(probe.w_total[:, -1]))),
        )
        if peak == 0.0 or border <= boundary_tol * peak:
            break
        plo, phi = plo - 2.0 * wp, phi + 2.0 * wp
        qlo, qhi = qlo - 2.0 * wq, qhi + 2.0 * wq
    return np.linspace(plo, phi, size), np.linspace(qlo, qhi, size)


class StabilityCondition(NamedTuple):
    name: str
    value: float
    bound: float
    ok: bool


class WignerPeaks(NamedTuple):
    alpha_peak: float
    beta_peak: float
    interference_peak: float
    interference_envelope: float
    alpha_position: tuple[float, float]
    beta_position: tuple[float, float]
    interference_position: tuple[float, float]
    stability: tuple[StabilityCondition, ...]


def wigner_peaks(t: float, params: CatParameters, cfg: RingConfig) -> WignerPeaks:
    """Peak values of the three components, with the stationarity conditions.

    The packet peaks stay pinned at (hbar Im/sigma, 2 sigma Re) while their
    height decays as exp[-4 (gamma/N^4)(1 - J0) Im^2]; the interference term
    is evaluated at the midpoint of the two centres.  Its plain field value
    oscillates with the fringe phase, so the fringe amplitude 2|T| is
    reported alongside as the envelope.  Stationarity requires the damping
    to stay weak against the packet widths; each condition is reported with
    its margin rather than enforced.
    """
    a, b = params.alpha, params.beta
    s = params.sigma
    hbar = cfg.hbar
    norm = 1.0 / (params.norm_sq * math.pi * hbar)
    dc = _decay_coefficient(t, params, cfg.coupling)
    jt = params.gamma * (1.0 - float(bessel_j0(4.0 * cfg.coupling * t)))  # gamma (1 - J0)

    alpha_pk = norm * math.exp(-4.0 * dc * a.imag**2)
    beta_pk = norm * math.exp(-4.0 * dc * b.imag**2)

    p_mid = hbar * (a.imag + b.imag) / (2.0 * s)
    q_mid = s * (a.real + b.real)
    gc = q_mid - s * (a + b.conjugate())
    z = p_mid + 1j * hbar * (a - b.conjugate()) / (2.0 * s)
    branch = (
        cmath.exp(-2.0 * (s / hbar) ** 2 * z**2)
        * cmath.exp(-((a - b.conjugate()) ** 2) / 2.0 - a.imag**2 - b.imag**2)
        * cmath.exp(-(gc**2) / (2.0 * s**2))
        * cmath.exp(-4.0 * dc * (p_mid * s / hbar) ** 2 * (1.0 - gc**2 / s**2))
    )
    interference_pk = 2.0 * (norm * branch).real
    envelope = 2.0 * abs(norm * branch)

    n4 = params.n**4
    conditions = (
        StabilityCondition("2*gamma*(1-J0) << N^4", 2.0 * jt, 0.1 * n4, 2.0 * jt < 0.1 * n4),
        StabilityCondition("8*gamma*(1-J0)*Im(alpha)^2 < N^4", 8.0 * jt * a.imag**2, n4, 8.0 * jt * a.imag**2 < n4),
        StabilityCondition("8*gamma*(1-J0)*Im(beta)^2 < N^4", 8.0 * jt * b.imag**2, n4, 8.0 * jt * b.imag**2 < n4),
    )
    return WignerPeaks(
        alpha_peak=alpha_pk,
        beta_peak=beta_pk,
        interference_peak=interference_pk,
        interference_envelope=envelope,
        alpha_position=(hbar * a.imag / s, 2.0 * s * a.real),
        beta_position=(hbar * b.imag / s, 2.0 * s * b.real),
        interference_position=(p_mid, q_mid),
        stability=conditions,
    )


def fringe_visibility(t: float, params: CatParameters, cfg: RingConfig) -> float:
    """Fringe visibility F(t): interference amplitude normalised by the packets.

    F(0) is the peak ratio (1/2) W_int / sqrt(W_alpha W_beta) at t = 0
    (identically 1 for this balanced superposition, using the fringe
    envelope); the time dependence is the coherence-kernel decay between the
    two packet momenta,

        F(t)/F(0) = exp[-(gamma/N^4)(1 - J0(4 w t)) (Im(alpha)^2 - Im(beta)^2)^2],

    the same law the momentum-superposition product obeys.  The literal
    midpoint-peak ratio differs from this by a width-renormalisation term
    (Im alpha - Im beta)^2, a ~1% correction for typical amplitudes; it is
    available as ``fringe_visibility_from_peaks`` for comparison.
    """
    base = wigner_peaks(0.0, params, cfg)
    f0 = 0.5 * base.interference_envelope / math.sqrt(base.alpha_peak * base.beta_peak)
    dc = _decay_coefficient(t, params, cfg.coupling)
    u, v = params.alpha.imag, params.beta.imag
    return f0 * math.exp(-dc * (u * u - v * v) ** 2)


def fringe_visibility_from_peaks(t: float, params: CatParameters, cfg: RingConfig) -> float:
    """Literal Zurek peak ratio from the exact midpoint evaluation (diagnostic)."""
    peaks = wigner_peaks(t, params, cfg)
    return 0.5 * peaks.interference_envelope / math.sqrt(peaks.alpha_peak * peaks.beta_peak)


class VisibilityLimits(NamedTuple):
    small_t_rate: float
    large_t_plateau_exponent: float


def visibility_limits(params: CatParameters, cfg: RingConfig) -> VisibilityLimits:
    """Closed-form limits of -ln[F(t)/F(0)].

    Small times: rate * t^2 with rate = 4 w^2 (gamma/N^4)(Im a^2 - Im b^2)^2;
    long times: the plateau exponent (gamma/N^4)(Im a^2 - Im b^2)^2.  The
    rate/plateau ratio is 4 w^2 identically.  For a physically derived gamma
    these equal (9N/8) w^2 (dE/Mc^2)^2 and (9N/32)(dE/Mc^2)^2 with
    dE = hbar^2 (Im a^2 - Im b^2) / (2 M sigma^2).
    """
    u, v = params.alpha.imag, params.beta.imag
    geff = params.gamma / params.n**4
    plateau_exp = geff * (u * u - v * v) ** 2
    return VisibilityLimits(
        small_t_rate=4.0 * cfg.coupling**2 * plateau_exp,
        large_t_plateau_exponent=plateau_exp,
    )
