"""Closed-form decoherence laws, decoherence times and the free-particle contrast.

The mode product collapses, for N >> 1, to the Bessel law

    |rho12(t)| = (1/2) exp[-(N/N0) (1 - J0(4 w t))],      N0 = 32 M^2 c^4 / (9 dE^2),

whose small-time limit is Gaussian with rate 4 N w^2 / N0 and whose long-time
envelope settles on the plateau (1/2) exp(-N/N0).  For opposite momenta
(P1 = -P2) the quadratic coupling channel is silent and the decay comes from
the cubic (linear-in-P) channel; both Gaussian rates are derived here from
the vacuum variance of the branch-Hamiltonian difference via Wick pairing.
The interaction-free model with matched initial packet widths decoheres at
the same small-time rate but has no plateau at all.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ConfigError, ValidityError
from .model_core import (
    MomentumSuperposition,
    RingConfig,
    bogoliubov_matrix,
    derived_scalars,
    kinetic_energy_diff,
    mode_frequencies,
)
from .special import bessel_j0
from .squeeze_overlap import UNDERFLOW_LOG, offdiag_product

__all__ = [
    "DecoherenceCurve",
    "OppositeMomentumRates",
    "CURVE_METHODS",
    "offdiag_largeN",
    "offdiag_smallt",
    "decoherence_time",
    "plateau",
    "wick_vacuum_moment",
    "cubic_coupling_triples",
    "opposite_momentum_rates",
    "free_particle_offdiag",
    "curve_sample",
]

CURVE_METHODS = ("large-N", "small-t", "product-exact", "product-approx", "free-particle")

SMALL_T_DOMAIN = 0.1  # validity bound on omega*t for the small-time law


@dataclass(frozen=True)
class DecoherenceCurve:
    """|rho12| sampled over a time grid, with method provenance."""

    times: np.ndarray
    values: np.ndarray
    method: str
    underflow: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values):
            raise ConfigError("times and values must have equal length")


@dataclass(frozen=True)
class OppositeMomentumRates:
    """Gaussian decay rates 1/tau^2 (quadratic channel) and 1/tau'^2 (cubic channel).

    Both come from the Wick vacuum variance of the branch-Hamiltonian
    difference, so the decay factor is exp(-t^2/tau^2 - t^2/tau'^2).  The
    as-printed reference constants (whose tau entry drops the factor N and
    whose tau' entry is not dimensionally a rate) are carried alongside for
    comparison, never used.
    """

    tau_sq_inv: float
    tau_prime_sq_inv: float
    ratio: float
    printed_tau_inv: float
    printed_tau_prime_inv: float
    printed_ratio: float


def _largeN_exponent(t, n: float, n0: float, omega: float):
    return -(n / n0) * (1.0 - bessel_j0(4.0 * omega * np.asarray(t, dtype=float)))


def offdiag_largeN(t: float, n: float, n0: float, omega: float) -> float:
    """Large-N Bessel law (1/2) exp[-(N/N0)(1 - J0(4 w t))]; underflow returns 0."""
    ex = float(_largeN_exponent(t, n, n0, omega))
    return 0.0 if ex < UNDERFLOW_LOG else 0.5 * math.exp(ex)


def offdiag_smallt(t: float, n: float, n0: float, omega: float) -> float:
    """Small-time Gaussian law (1/2) exp[-4 N w^2 t^2 / N0].

    Only meaningful for omega*t below ~0.1; out-of-domain use is allowed and
    merely flagged by the curve samplers.
    """
    ex = -4.0 * (n / n0) * (omega * t) ** 2
    return 0.0 if ex < UNDERFLOW_LOG else 0.5 * math.exp(ex)


def decoherence_time(cfg: RingConfig, state: MomentumSuperposition) -> float:
    """1/e time of the small-time Gaussian, 2 sqrt(2) M c^2 / (3 sqrt(N) |dE| w).

    Infinite when the kinetic energies match (no quadratic decoherence
    channel).
    """
    de = kinetic_energy_diff(state.p1, state.p2, cfg.total_mass)
    if de == 0.0:
        return math.inf
    mc2 = cfg.total_mass * cfg.light_speed**2
    return (2.0 * math.sqrt(2.0) / 3.0) * mc2 / (math.sqrt(float(cfg.n_particles)) * abs(de) * cfg.coupling)


def plateau(n: float, n0: float) -> float:
    """Long-time residual coherence (1/2) exp(-N/N0)."""
    ex = -n / n0
    return 0.0 if ex < UNDERFLOW_LOG else 0.5 * math.exp(ex)


def _pairings(indices: Sequence[int]) -> Iterable[list[tuple[int, int]]]:
    """All perfect matchings of the index list (first element paired in turn)."""
    if not indices:
        yield []
        return
    first, rest = indices[0], indices[1:]
    for pos in range(len(rest)):
        partner = rest[pos]
        remaining = rest[:pos] + rest[pos + 1 :]
        for tail in _pairings(remaining):
            yield [(first, partner)] + tail


def _fourier_momentum_covariance(cfg: RingConfig) -> np.ndarray:
    """<p_k p_l> over the relative-mode vacuum, mapped through W.

    The diagonal normal modes have <P_j P_l> = delta_jl m hbar w_j / 2; the
    Fourier momenta are p_k = sum_j conj(W[j,k]) P_j.  The result is real and
    supported on l = N - k.
    """
    n = cfg.require_enumerable()
    w = bogoliubov_matrix(n)
    diag = cfg.particle_mass * cfg.hbar * mode_frequencies(cfg).frequencies / 2.0
    cov = np.einsum("jk,jl,j->kl", np.conj(w), np.conj(w), diag)
    if np.max(np.abs(cov.imag)) > 1e-12 * max(1.0, float(np.max(np.abs(cov.real)))):
        raise ValidityError("Fourier momentum covariance came out non-real")
    return cov.real


def wick_vacuum_moment(
    operator_list: Sequence[int], cfg: RingConfig, basis: str = "p"
) -> float:
    """Vacuum expectation of a product of momentum operators by Wick pairing.

    ``basis="P"`` uses the independent normal-mode momenta with ground-state
    covariance <P_k P_k> = m hbar w_k / 2; ``basis="p"`` uses the Fourier
    momenta, whose covariance is obtained through the pairing matrix W.  Odd
    products vanish.  All momenta commute, so operator order is irrelevant.
    """
    labels = list(operator_list)
    if len(labels) % 2 == 1:
        return 0.0
    if not labels:
        return 1.0
    n = cfg.require_enumerable()
    if any(not (1 <= k <= n - 1) for k in labels):
        raise ConfigError(f"labels must be in 1..{n - 1}, got {labels}")
    if basis == "P":
        diag = cfg.particle_mass * cfg.hbar * mode_frequencies(cfg).frequencies / 2.0
        cov = np.diag(diag)
    elif basis == "p":
        cov = _fourier_momentum_covariance(cfg)
    else:
        raise ConfigError(f"basis must be 'p' or 'P', got {basis!r}")
    idx = list(range(len(labels)))
    total = 0.0
    for pairing in _pairings(idx):
        term = 1.0
        for a, b in pairing:
            term *= cov[labels[a] - 1, labels[b] - 1]
            if term == 0.0:
                break
        total += term
    return total


def cubic_coupling_triples(n: int) -> list[tuple[int, int, int]]:
    """Ordered triples (k1, k2, k3) in 1..N-1 with k1 + k2 + k3 = q N, q > 0.

    This is the explicit enumeration of the Kronecker constraint carried by
    the cubic CM-relative coupling.
    """
    triples = []
    for k1 in range(1, n):
        for k2 in range(1, n):
            k3 = (-k1 - k2) % n
            if 1 <= k3 <= n - 1:
                triples.append((k1, k2, k3))
    return triples


def opposite_momentum_rates(cfg: RingConfig, p1: float, p2: float) -> OppositeMomentumRates:
    """Gaussian rates of both interaction channels from the Wick second moment.

    Quadratic channel: the P^2-coupled operator sum_k P_k^2 / 2m with its
    vacuum variance sum_k (hbar w_k)^2 / 8; cubic channel: the P-coupled
    triple sum over Fourier momenta, whose intra-triple pairings vanish (the
    momentum constraint forbids them), leaving 3! cross pairings per triple.
    The decay factor is exp(-t^2/tau^2 - t^2/tau'^2) with
    1/tau^2 = Var / (2 hbar^2) per channel.
    """
    state = MomentumSuperposition(p1=p1, p2=p2)
    state.validate(cfg)
    n = cfg.require_enumerable()
    m = cfg.particle_mass
    mtot = cfg.total_mass
    c = cfg.light_speed
    hbar = cfg.hbar
    freqs = mode_frequencies(cfg).frequencies

    # Quadratic channel.  Modes are independent, so the variance of the sum
    # is the sum of per-mode variances <P_k^4> - <P_k^2>^2, each evaluated by
    # Wick pairing.
    coef_quad = 3.0 * (p1 * p1 - p2 * p2) / (2.0 * mtot * mtot * c * c)
    var_k = np.array(
        [
            wick_vacuum_moment([k, k, k, k], cfg, basis="P")
            - wick_vacuum_moment([k, k], cfg, basis="P") ** 2
            for k in range(1, n)
        ]
    )
    var_quad = float(np.sum(var_k)) / (4.0 * m * m)
    tau_sq_inv = coef_quad * coef_quad * var_quad / (2.0 * hbar * hbar)

    # Cubic channel.  <T^2> with T = sum over constrained triples of
    # p_{k1} p_{k2} p_{k3}; only full cross pairings survive and each of the
    # 3! of them forces the partner triple to (N-k1, N-k2, N-k3).
    coef_cubic = (p1 - p2) / (2.0 * m * m * mtot * c * c * math.sqrt(n))
    pair_weight = m * hbar * freqs / 2.0  # <p_k p_{N-k}>
    second_moment = 0.0
    for k1, k2, k3 in cubic_coupling_triples(n):
        second_moment += pair_weight[k1 - 1] * pair_weight[k2 - 1] * pair_weight[k3 - 1]
    second_moment *= math.factorial(3)
    tau_prime_sq_inv = coef_cubic * coef_cubic * second_moment / (2.0 * hbar * hbar)

    # tau'/tau = sqrt[(1/tau^2) / (1/tau'^2)]; 0 when the quadratic channel
    # is silent, inf when only the quadratic one is active.
    if tau_sq_inv == 0.0:
        ratio = 0.0
    elif tau_prime_sq_inv == 0.0:
        ratio = math.inf
    else:
        ratio = math.sqrt(tau_sq_inv / tau_prime_sq_inv)

    v1, v2 = p1 / mtot, p2 / mtot
    printed_tau_inv = (9.0 / 32.0) * ((v1 * v1 - v2 * v2) / (c * c)) ** 2 * cfg.coupling**2
    printed_tau_prime_inv = (
        (v1 - v2) ** 2 * cfg.coupling**2 / (32.0 * mtot * c**4) * hbar * cfg.coupling
    )
    printed_ratio = float(cfg.n_particles) * m * (v1 + v2) ** 2 / (hbar * cfg.coupling)
    return OppositeMomentumRates(
        tau_sq_inv=tau_sq_inv,
        tau_prime_sq_inv=tau_prime_sq_inv,
        ratio=ratio,
        printed_tau_inv=printed_tau_inv,
        printed_tau_prime_inv=printed_tau_prime_inv,
        printed_ratio=printed_ratio,
    )


def free_particle_offdiag(t: float, cfg: RingConfig, state: MomentumSuperposition) -> float:
    """Coherence of the interaction-free model with matched initial widths.

    Each mode starts in a Gaussian packet of width sigma_k^2 =
    hbar / (4 m w sin(pi k / N)) (the coupled model's ground-state width) and
    spreads freely, giving

        (1/2) exp[-(1/4) sum_k ln(1 + 9 w^2 sin^2(pi k/N) (dE/Mc^2)^2 t^2)].

    The simplified coefficient equals 9 hbar^2 / (16 sigma_k^4 m^2) exactly;
    both forms are computed and cross-checked on every call.  The exponent
    grows without bound, so there is no plateau and no particle-number
    restriction.
    """
    state.validate(cfg)
    n = cfg.require_enumerable()
    de = kinetic_energy_diff(state.p1, state.p2, cfg.total_mass)
    x = de / (cfg.total_mass * cfg.light_speed**2)
    k = np.arange(1, n)
    sin_k = np.sin(np.pi * k / n)
    coef = 9.0 * (cfg.coupling * sin_k) ** 2
    sigma_sq = cfg.hbar / (4.0 * cfg.particle_mass * cfg.coupling * sin_k)
    coef_raw = 9.0 * cfg.hbar**2 / (16.0 * sigma_sq**2 * cfg.particle_mass**2)
    assert np.allclose(coef, coef_raw, rtol=1e-12), "width simplification failed"
    ex = -0.25 * float(np.sum(np.log1p(coef * (x * t) ** 2)))
    return 0.0 if ex < UNDERFLOW_LOG else 0.5 * math.exp(ex)


def curve_sample(
    method: str,
    times: Sequence[float],
    cfg: Optional[RingConfig] = None,
    state: Optional[MomentumSuperposition] = None,
    n: Optional[float] = None,
    n0: Optional[float] = None,
    omega: Optional[float] = None,
) -> DecoherenceCurve:
    """Sample one decoherence law over a time grid.

    The closed-form laws (large-N, small-t) need the scalars (n, n0, omega),
    which are filled in from (cfg, state) when not given explicitly; the
    enumerating methods (product-exact, product-approx, free-particle) need
    cfg and state.  Validity warnings are attached as notes, never enforced.
    """
    if method not in CURVE_METHODS:
        raise ConfigError(f"unknown method {method!r}; choose one of {CURVE_METHODS}")
    times_arr = np.asarray(list(times), dtype=float)
    if times_arr.size and (np.any(np.diff(times_arr) < 0.0) or times_arr[0] < 0.0):
        raise ConfigError("times must be non-negative and non-decreasing")

    notes: list[str] = []
    if method in ("large-N", "small-t"):
        if n is None or n0 is None or omega is None:
            if cfg is None or state is None:
                raise ConfigError(f"method {method!r} needs (n, n0, omega) or (cfg, state)")
            scalars = derived_scalars(cfg, state)
            n = float(cfg.n_particles) if n is None else n
            n0 = scalars.n0 if n0 is None else n0
            omega = cfg.coupling if omega is None else omega
        if method == "large-N":
            notes.append("large-N closed form assumes N >> 1")
            fn = lambda t: offdiag_largeN(t, n, n0, omega)
        else:
            wt_max = omega * times_arr[-1] if times_arr.size else 0.0
            if wt_max > SMALL_T_DOMAIN:
                notes.append(
                    f"omega*t reaches {wt_max:.3g}, beyond the small-t domain {SMALL_T_DOMAIN:g}"
                )
            fn = lambda t: offdiag_smallt(t, n, n0, omega)
        values = np.array([fn(t) for t in times_arr])
        underflow = bool(times_arr.size) and bool(np.any(values == 0.0))
        return DecoherenceCurve(times_arr, values, method, underflow, tuple(notes))

    if cfg is None or state is None:
        raise ConfigError(f"method {method!r} needs cfg and state")
    if method == "free-particle":
        values = np.array([free_particle_offdiag(t, cfg, state) for t in times_arr])
        underflow = bool(np.any(values == 0.0)) if times_arr.size else False
        return DecoherenceCurve(times_arr, values, method, underflow, tuple(notes))

    kind = "exact" if method == "product-exact" else "approx"
    vals = []
    underflow = False
    for t in times_arr:
        res = offdiag_product(state, float(t), cfg, method=kind)
        vals.append(res.value)
        underflow = underflow or res.underflow
    return DecoherenceCurve(times_arr, np.asarray(vals), method, underflow, tuple(notes))
