"""Exact and second-order per-mode vacuum overlaps of the two evolution branches.

For one relative mode of frequency w_k, each CM momentum branch P_i rescales
the kinetic term by 1 - delta_i, i.e. shifts the frequency to
w_k(P_i) = w_k sqrt(1 - delta_i).  The shifted oscillator is a squeezed
image of the unshifted one (squeeze magnitude r_i = -ln(1 - delta_i)/4,
phase pi), so the branch overlap

    f_k(t) = <0| e^{i H_k(P1) t / hbar} e^{-i H_k(P2) t / hbar} |0>

is a vacuum expectation of four squeeze operators.  Normal-ordering each
squeeze through its SU(1,1) decomposition and resolving the three operator
seams with coherent-state identities turns f_k into a 6-dimensional Gaussian
integral, hence

    f_k = zp * 8 / (cosh r1 cosh r2 sqrt(det A(t))),

with A(t) the 6x6 complex symmetric matrix assembled below and zp the
zero-point phase exp[i (w_k(P1) - w_k(P2)) t / 2] that the four-operator
chain strips from the full propagators.  The square root's branch is fixed
by continuity in t from f_k(0) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NumericError, ValidityError
from .model_core import (
    MomentumSuperposition,
    RingConfig,
    kinetic_energy_diff,
    mode_frequencies,
    relativistic_shift,
    squeeze_magnitude,
)

__all__ = [
    "SqueezePhaseSet",
    "GaussianQuadraticForm",
    "ModeOverlap",
    "OffdiagProduct",
    "frequency_shift_to_squeeze",
    "su11_disentangle",
    "squeeze_phase_set",
    "assemble_gaussian_matrix",
    "mode_overlap_exact",
    "mode_overlap_approx",
    "offdiag_product",
]

# Exponents below this are reported as 0.0 with the underflow flag set.
UNDERFLOW_LOG = -700.0
# |det A| never reaches 0 on the real time axis (the overlap is bounded away
# from zero for finite squeezing); falling under this floor means the branch
# tracking lost the determinant.
DET_FLOOR = 1e-250


def frequency_shift_to_squeeze(delta: float) -> tuple[float, float, float]:
    """Map a kinetic rescaling 1 - delta to the equivalent squeezed oscillator.

    Returns (m_eff/m, w_eff/w, |r|): effective mass ratio 1/(1 - delta),
    effective frequency ratio sqrt(1 - delta) and squeeze magnitude
    -ln(1 - delta)/4.  The squeeze phase is pi by construction.
    """
    if delta >= 1.0:
        raise ValidityError(f"delta = {delta:.6g} >= 1; oscillator map invalid")
    return 1.0 / (1.0 - delta), math.sqrt(1.0 - delta), -0.25 * math.log1p(-delta)


def su11_disentangle(z: complex) -> tuple[complex, float, complex]:
    """Normal-ordered SU(1,1) factorisation of the squeeze operator.

    S(z) = exp(c_plus L+) exp(c_log L3) exp(c_minus L-) with L+ = a+^2/2,
    L- = a^2/2, L3 = (a+ a + 1/2)/2 and, for z = |z| e^{i phi},

        c_plus  = -e^{i phi} tanh|z|
        c_log   = -2 ln cosh|z|
        c_minus =  e^{-i phi} tanh|z|
    """
    z = complex(z)
    mag = abs(z)
    if mag == 0.0:
        return 0.0 + 0.0j, 0.0, 0.0 + 0.0j
    phase = cmath.exp(1j * cmath.phase(z))
    th = math.tanh(mag)
    return -phase * th, -2.0 * math.log(math.cosh(mag)), th / phase


@dataclass(frozen=True)
class SqueezePhaseSet:
    """Squeeze data of one mode at one time: magnitudes, shifted frequencies
    and the resulting normal-ordering coefficients.

    ``xi1_phase``/``xi2_phase`` are the raw squeeze-argument phases
    pi - 2 w_k(P_i) t; ``reduced_xi_phases`` folds them into (-pi, pi] for
    reporting only, so continuity in t is never destroyed.
    """

    r1: float
    r2: float
    omega_k_p1: float
    omega_k_p2: float
    time: float

    @property
    def xi1_phase(self) -> float:
        return math.pi - 2.0 * self.omega_k_p1 * self.time

    @property
    def xi2_phase(self) -> float:
        return math.pi - 2.0 * self.omega_k_p2 * self.time

    def reduced_xi_phases(self) -> tuple[float, float]:
        def fold(phi: float) -> float:
            out = math.remainder(phi, 2.0 * math.pi)
            return out if out != -math.pi else math.pi

        return fold(self.xi1_phase), fold(self.xi2_phase)

    @property
    def g1(self) -> complex:
        """Left boundary coefficient e^{2 i w_k(P1) t} tanh r1."""
        return cmath.exp(2j * self.omega_k_p1 * self.time) * math.tanh(self.r1)

    @property
    def g2(self) -> complex:
        """Right boundary coefficient e^{-2 i w_k(P2) t} tanh r2."""
        return cmath.exp(-2j * self.omega_k_p2 * self.time) * math.tanh(self.r2)


def squeeze_phase_set(k: int, state: MomentumSuperposition, t: float, cfg: RingConfig) -> SqueezePhaseSet:
    n = cfg.require_enumerable()
    if not (1 <= k <= n - 1):
        raise ValidityError(f"mode index k must be in 1..{n - 1}, got {k}")
    m = cfg.total_mass
    c = cfg.light_speed
    omega_k = float(mode_frequencies(cfg).frequencies[k - 1])
    d1 = relativistic_shift(state.p1, m, c)
    d2 = relativistic_shift(state.p2, m, c)
    r1 = squeeze_magnitude(state.p1, m, c)
    r2 = squeeze_magnitude(state.p2, m, c)
    return SqueezePhaseSet(
        r1=r1,
        r2=r2,
        omega_k_p1=omega_k * math.sqrt(1.0 - d1),
        omega_k_p2=omega_k * math.sqrt(1.0 - d2),
        time=t,
    )


@dataclass(frozen=True)
class GaussianQuadraticForm:
    """6x6 complex symmetric quadratic form A(t) plus the 8/(cosh cosh) prefactor."""

    a: np.ndarray
    prefactor: float


class ModeOverlap(NamedTuple):
    value: complex
    method: str
    mode_index: int


class OffdiagProduct(NamedTuple):
    value: float
    underflow: bool


def _gaussian_blocks(g1, g2, th1: float, th2: float, ch1: float, ch2: float) -> np.ndarray:
    """Assemble A for broadcast arrays of boundary coefficients g1, g2.

    th_i = tanh r_i, ch_i = 1/cosh r_i.  Block layout (2x2 blocks)

        [ Theta1   Omega1    0     ]
        [ Omega1^T Lambda12  Omega2]
        [ 0        Omega2^T  Theta2]

    with the off-diagonal blocks entered once and mirrored, so A == A^T holds
    exactly by construction.
    """
    g1 = np.asarray(g1, dtype=complex)
    g2 = np.asarray(g2, dtype=complex)
    shape = np.broadcast(g1, g2).shape
    g1 = np.broadcast_to(g1, shape)
    g2 = np.broadcast_to(g2, shape)
    a = np.zeros(shape + (6, 6), dtype=complex)

    a[..., 0, 0] = 2.0 - g1 - th1
    a[..., 0, 1] = a[..., 1, 0] = 1j * (th1 - g1)
    a[..., 1, 1] = 2.0 + g1 + th1

    a[..., 0, 2] = -ch1
    a[..., 0, 3] = -1j * ch1
    a[..., 1, 2] = 1j * ch1
    a[..., 1, 3] = -ch1
    a[..., 2, 0] = a[..., 0, 2]
    a[..., 3, 0] = a[..., 0, 3]
    a[..., 2, 1] = a[..., 1, 2]
    a[..., 3, 1] = a[..., 1, 3]

    a[..., 2, 2] = 2.0 + th1 + th2
    a[..., 2, 3] = a[..., 3, 2] = 1j * (th1 - th2)
    a[..., 3, 3] = 2.0 - th1 - th2

    a[..., 2, 4] = -ch2
    a[..., 2, 5] = -1j * ch2
    a[..., 3, 4] = 1j * ch2
    a[..., 3, 5] = -ch2
    a[..., 4, 2] = a[..., 2, 4]
    a[..., 5, 2] = a[..., 2, 5]
    a[..., 4, 3] = a[..., 3, 4]
    a[..., 5, 3] = a[..., 3, 5]

    a[..., 4, 4] = 2.0 - g2 - th2
    a[..., 4, 5] = a[..., 5, 4] = -1j * (th2 - g2)
    a[..., 5, 5] = 2.0 + g2 + th2
    return a


def assemble_gaussian_matrix(
    k: int, state: MomentumSuperposition, t: float, cfg: RingConfig
) -> GaussianQuadraticForm:
    """The quadratic form behind the mode-k overlap at time t.

    At zero squeezing A is not diagonal (the three coherent-state seams keep
    unit coupling blocks) but det A = 2^6 there, so the overlap is exactly 1.
    """
    ph = squeeze_phase_set(k, state, t, cfg)
    th1, th2 = math.tanh(ph.r1), math.tanh(ph.r2)
    ch1, ch2 = 1.0 / math.cosh(ph.r1), 1.0 / math.cosh(ph.r2)
    a = _gaussian_blocks(ph.g1, ph.g2, th1, th2, ch1, ch2)
    return GaussianQuadraticForm(a=a, prefactor=8.0 * ch1 * ch2)


def _lu_det6(a: np.ndarray) -> tuple[complex, float, float]:
    """Determinant of a 6x6 complex matrix by LU with partial pivoting.

    Returns (det, min |pivot|, max |pivot|); the pivot magnitudes are the
    conditioning monitor for the scalar overlap path.
    """
    m = a.astype(complex).copy()
    det = 1.0 + 0.0j
    pmin, pmax = math.inf, 0.0
    for col in range(6):
        pivot_row = col + int(np.argmax(np.abs(m[col:, col])))
        if pivot_row != col:
            m[[col, pivot_row]] = m[[pivot_row, col]]
            det = -det
        pivot = m[col, col]
        mag = abs(pivot)
        if mag == 0.0:
            return 0.0 + 0.0j, 0.0, pmax
        pmin = min(pmin, mag)
        pmax = max(pmax, mag)
        det *= pivot
        if col < 5:
            factors = m[col + 1 :, col] / pivot
            m[col + 1 :, col:] -= factors[:, None] * m[col, col:]
    return det, pmin, pmax


def _wrap_angle(phi: np.ndarray) -> np.ndarray:
    return (phi + math.pi) % (2.0 * math.pi) - math.pi


def _tracked_sqrt_det(ph: SqueezePhaseSet, max_refine: int = 40) -> complex:
    """sqrt(det A) at ph.time with the branch continued from t = 0.

    det A(t) is sampled along [0, t]; its phase is accumulated from wrapped
    increments and any interval whose increment exceeds pi/2 is bisected
    until the walk is resolved.  det A(0) is real positive, so the branch
    starts at phase 0.
    """
    th1, th2 = math.tanh(ph.r1), math.tanh(ph.r2)
    ch1, ch2 = 1.0 / math.cosh(ph.r1), 1.0 / math.cosh(ph.r2)

    def dets_at(ts: np.ndarray) -> np.ndarray:
        g1 = np.exp(2j * ph.omega_k_p1 * ts) * th1
        g2 = np.exp(-2j * ph.omega_k_p2 * ts) * th2
        return np.linalg.det(_gaussian_blocks(g1, g2, th1, th2, ch1, ch2))

    t = ph.time
    wmax = max(ph.omega_k_p1, ph.omega_k_p2, 1e-300)
    npts = max(2, int(math.ceil(abs(t) * wmax / 0.2)) + 1)
    ts = np.linspace(0.0, t, npts)
    dets = dets_at(ts)
    for _ in range(max_refine):
        if np.any(np.abs(dets) < DET_FLOOR):
            raise NumericError("det A crossed zero within resolution; branch tracking aborted")
        steps = _wrap_angle(np.diff(np.angle(dets)))
        bad = np.abs(steps) > 0.5 * math.pi
        if not bad.any():
            break
        mids = 0.5 * (ts[:-1][bad] + ts[1:][bad])
        ts = np.sort(np.concatenate([ts, mids]))
        dets = dets_at(ts)
    else:
        raise NumericError("determinant phase not resolved after maximum refinement")
    phase = float(np.sum(_wrap_angle(np.diff(np.angle(dets)))) + np.angle(dets[0]))
    return cmath.exp(0.5 * math.log(abs(dets[-1])) + 0.5j * phase)


def mode_overlap_exact(k: int, state: MomentumSuperposition, t: float, cfg: RingConfig) -> ModeOverlap:
    """Exact complex overlap of the two branch evolutions of mode k.

    Evaluates the Gaussian-determinant closed form with the square-root
    branch continued from f_k(0) = 1, then restores the zero-point phase
    e^{i (w_k(P1) - w_k(P2)) t / 2} so the value matches the full propagator
    sandwich (and the brute-force oracle) including its phase.
    """
    ph = squeeze_phase_set(k, state, t, cfg)
    prefactor = 8.0 / (math.cosh(ph.r1) * math.cosh(ph.r2))
    if t == 0.0:
        form = assemble_gaussian_matrix(k, state, 0.0, cfg)
        det, pmin, _ = _lu_det6(form.a)
        if pmin == 0.0 or abs(det) < DET_FLOOR:
            raise NumericError("singular quadratic form at t = 0")
        value = prefactor / cmath.sqrt(det)
    else:
        sqrt_det = _tracked_sqrt_det(ph)
        zero_point = cmath.exp(0.5j * (ph.omega_k_p1 - ph.omega_k_p2) * t)
        value = prefactor / sqrt_det * zero_point
    return ModeOverlap(value=value, method="exact-determinant", mode_index=k)


def _approx_coefficient(state: MomentumSuperposition, cfg: RingConfig) -> float:
    state.validate(cfg)
    de = kinetic_energy_diff(state.p1, state.p2, cfg.total_mass)
    x = de / (cfg.total_mass * cfg.light_speed**2)
    return (9.0 / 32.0) * x * x


def mode_overlap_approx(k: int, state: MomentumSuperposition, t: float, cfg: RingConfig) -> ModeOverlap:
    """Second-order overlap modulus 1 - (9/32)(dE/Mc^2)^2 (1 - cos 2 w_k t).

    Valid to O(r^2); the shifted frequencies are replaced by the bare w_k at
    this order.  Raises ``ValidityError`` if the factor would go negative,
    where the truncation stops making sense.
    """
    n = cfg.require_enumerable()
    if not (1 <= k <= n - 1):
        raise ValidityError(f"mode index k must be in 1..{n - 1}, got {k}")
    coef = _approx_coefficient(state, cfg)
    omega_k = float(mode_frequencies(cfg).frequencies[k - 1])
    factor = 1.0 - coef * (1.0 - math.cos(2.0 * omega_k * t))
    if factor <= 0.0:
        raise ValidityError(
            f"second-order mode factor {factor:.6g} <= 0 (coefficient {coef:.6g}); "
            "approximation out of range"
        )
    return ModeOverlap(value=complex(factor), method="second-order", mode_index=k)


def _log_moduli_exact(state: MomentumSuperposition, t: float, cfg: RingConfig) -> np.ndarray:
    """ln |f_k| for every mode at one time, via batched 6x6 determinants.

    Moduli need no branch tracking: |f_k| = prefactor / sqrt(|det A|).
    LAPACK's batched det is the same partial-pivoting LU as the scalar path.
    """
    n = cfg.require_enumerable()
    m = cfg.total_mass
    c = cfg.light_speed
    d1 = relativistic_shift(state.p1, m, c)
    d2 = relativistic_shift(state.p2, m, c)
    r1 = squeeze_magnitude(state.p1, m, c)
    r2 = squeeze_magnitude(state.p2, m, c)
    th1, th2 = math.tanh(r1), math.tanh(r2)
    ch1, ch2 = 1.0 / math.cosh(r1), 1.0 / math.cosh(r2)
    log_pref = math.log(8.0 * ch1 * ch2)
    freqs = mode_frequencies(cfg).frequencies
    out = np.empty(n - 1)
    chunk = 65536
    for start in range(0, n - 1, chunk):
        wk = freqs[start : start + chunk]
        g1 = np.exp(2j * (wk * math.sqrt(1.0 - d1)) * t) * th1
        g2 = np.exp(-2j * (wk * math.sqrt(1.0 - d2)) * t) * th2
        dets = np.linalg.det(_gaussian_blocks(g1, g2, th1, th2, ch1, ch2))
        mags = np.abs(dets)
        if np.any(mags < DET_FLOOR):
            raise NumericError("det A collapsed in the mode product")
        out[start : start + chunk] = log_pref - 0.5 * np.log(mags)
    return out


def offdiag_product(
    state: MomentumSuperposition, t: float, cfg: RingConfig, method: str = "exact"
) -> OffdiagProduct:
    """Off-diagonal CM coherence (1/2) prod_k |f_k| over all N-1 modes.

    The product is accumulated as a log sum in ascending mode order (a fixed
    deterministic reduction), then exponentiated.  Exponents below -700 are
    reported as 0.0 with the underflow flag set.
    """
    state.validate(cfg)
    if method == "exact":
        logs = _log_moduli_exact(state, t, cfg)
        total = math.log(0.5) + float(np.sum(logs))
    elif method == "approx":
        n = cfg.require_enumerable()
        coef = _approx_coefficient(state, cfg)
        freqs = mode_frequencies(cfg).frequencies
        factors = 1.0 - coef * (1.0 - np.cos(2.0 * freqs * t))
        if np.any(factors <= 0.0):
            raise ValidityError("second-order mode factor went non-positive; approximation invalid")
        total = math.log(0.5) + float(np.sum(np.log(factors)))
    else:
        raise ValidityError(f"unknown product method {method!r}")
    if total < UNDERFLOW_LOG:
        return OffdiagProduct(value=0.0, underflow=True)
    return OffdiagProduct(value=math.exp(total), underflow=False)
