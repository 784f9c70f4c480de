"""Truncated number-basis brute force: the ground truth for the analytic formulas.

Every mode Hamiltonian here is built directly from ladder operators and
propagated by spectral decomposition, so the only approximation is the basis
cutoff itself, and that is monitored: results whose propagated states put
more than 1e-8 of population in the top two retained levels are rejected
rather than reported with degraded accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, LeakageError, ResourceGuardError, ValidityError
from .model_core import RingConfig, bogoliubov_matrix, mode_frequencies, relativistic_shift

__all__ = [
    "TruncatedMode",
    "annihilation_matrix",
    "build_mode_hamiltonian",
    "vacuum_overlap_bruteforce",
    "squeeze_matrix",
    "multimode_vacuum_moment",
]

LEAK_TOLERANCE = 1e-8
# Tensor-product guard: 4 modes x 16 levels = 65536 amplitudes.
MAX_TENSOR_MODES = 4
MAX_TENSOR_CUTOFF = 16


@dataclass(frozen=True)
class TruncatedMode:
    """One relative mode in a cutoff-D number basis."""

    cutoff: int
    annihilation: np.ndarray
    hamiltonian: np.ndarray
    omega_k: float
    shift: float


def annihilation_matrix(cutoff: int) -> np.ndarray:
    a = np.zeros((cutoff, cutoff), dtype=complex)
    n = np.arange(1, cutoff)
    a[n - 1, n] = np.sqrt(n)
    return a


def build_mode_hamiltonian(k: int, p_cm: float, cutoff: int, cfg: RingConfig) -> TruncatedMode:
    """Truncated H = hbar w_k (n + 1/2) + (delta/2)(hbar w_k/2)(a - a+)^2.

    The quadratic correction is the relative-mode kinetic rescaling by
    1 - delta written in the unperturbed ladder basis; its exact spectrum is
    (n + 1/2) hbar w_k sqrt(1 - delta).
    """
    if cutoff < 8:
        raise ConfigError(f"cutoff must be >= 8, got {cutoff}")
    n = cfg.require_enumerable()
    if not (1 <= k <= n - 1):
        raise ConfigError(f"mode index k must be in 1..{n - 1}, got {k}")
    delta = relativistic_shift(p_cm, cfg.total_mass, cfg.light_speed)
    if delta >= 1.0:
        raise ValidityError(f"delta = {delta:.6g} >= 1; expansion invalid")
    omega_k = float(mode_frequencies(cfg).frequencies[k - 1])
    a = annihilation_matrix(cutoff)
    ad = a.conj().T
    quad = a - ad
    h = cfg.hbar * omega_k * (ad @ a + 0.5 * np.eye(cutoff)) + 0.5 * delta * (
        0.5 * cfg.hbar * omega_k
    ) * (quad @ quad)
    return TruncatedMode(cutoff=cutoff, annihilation=a, hamiltonian=h, omega_k=omega_k, shift=delta)


def _propagated_vacuum(mode: TruncatedMode, t: float, hbar: float) -> np.ndarray:
    energies, vectors = np.linalg.eigh(mode.hamiltonian)
    vac = np.zeros(mode.cutoff, dtype=complex)
    vac[0] = 1.0
    psi = vectors @ (np.exp(-1j * energies * t / hbar) * (vectors.conj().T @ vac))
    leak = float(np.abs(psi[-2:]) @ np.abs(psi[-2:]))
    if leak > LEAK_TOLERANCE:
        raise LeakageError(
            f"top-two-level population {leak:.3e} > {LEAK_TOLERANCE:g} at cutoff {mode.cutoff}; "
            "increase the cutoff"
        )
    return psi


def vacuum_overlap_bruteforce(
    k: int,
    p1: float,
    p2: float,
    t: float,
    cutoff: int,
    cfg: RingConfig,
    check_convergence: bool = False,
) -> complex:
    """Exact <0| e^{i H_k(p1) t / hbar} e^{-i H_k(p2) t / hbar} |0>.

    Both exponentials come from spectral decompositions, so there is no
    time-stepping error; the phase is included.  With ``check_convergence``
    the overlap is recomputed at twice the cutoff and must agree to 1e-8.
    """

    def overlap_at(d: int) -> complex:
        m1 = build_mode_hamiltonian(k, p1, d, cfg)
        m2 = build_mode_hamiltonian(k, p2, d, cfg)
        psi1 = _propagated_vacuum(m1, t, cfg.hbar)
        psi2 = _propagated_vacuum(m2, t, cfg.hbar)
        return complex(np.vdot(psi1, psi2))

    value = overlap_at(cutoff)
    if check_convergence:
        refined = overlap_at(2 * cutoff)
        if abs(refined - value) > 1e-8:
            raise LeakageError(
                f"overlap not cutoff-converged: |f({cutoff}) - f({2 * cutoff})| = "
                f"{abs(refined - value):.3e}"
            )
    return value


def squeeze_matrix(z: complex, cutoff: int) -> np.ndarray:
    """Matrix of S(z) = exp(z* a^2/2 - z a+^2/2) on the truncated basis.

    The generator is anti-hermitian, so the exponential is taken through an
    eigendecomposition of its hermitian i-multiple.  Unitarity is enforced to
    1e-8 on the lower three quarters of the basis; stronger squeezing than
    the truncation supports raises ``LeakageError``.
    """
    z = complex(z)
    if abs(z) > 2.0:
        raise ConfigError(f"|z| = {abs(z):.3g} > 2 exceeds the truncation sanity bound")
    a = annihilation_matrix(cutoff)
    ad = a.conj().T
    gen = 0.5 * (np.conj(z) * (a @ a) - z * (ad @ ad))
    herm = 1j * gen
    lam, vec = np.linalg.eigh(herm)
    s = vec @ (np.exp(-1j * lam)[:, None] * vec.conj().T)
    keep = (3 * cutoff) // 4
    residual = s.conj().T @ s - np.eye(cutoff)
    err = float(np.max(np.abs(residual[:keep, :keep])))
    if err > 1e-8:
        raise LeakageError(f"squeeze matrix unitarity defect {err:.3e} on retained subspace")
    return s


def _apply_single_mode(op: np.ndarray, state: np.ndarray, axis: int) -> np.ndarray:
    moved = np.tensordot(op, state, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def multimode_vacuum_moment(
    n_modes: int,
    operator_product: Sequence[int],
    cutoff: int,
    cfg: RingConfig,
    basis: str = "p",
) -> float:
    """Vacuum expectation of a product of momentum operators, evaluated exactly.

    ``operator_product`` lists mode labels k in 1..N-1, applied right to
    left. ``basis="P"`` means the diagonal normal-mode momenta; ``basis="p"``
    means the Fourier-mode momenta, reconstructed through the pairing matrix
    W.  Each momentum operator raises any occupation by at most one, so a
    cutoff above len(operator_product) + 1 makes the result exact, not
    merely converged.
    """
    n = cfg.require_enumerable()
    if n_modes != n - 1:
        raise ConfigError(f"n_modes = {n_modes} does not match N-1 = {n - 1}")
    if n_modes > MAX_TENSOR_MODES or cutoff > MAX_TENSOR_CUTOFF:
        raise ResourceGuardError(
            f"tensor oracle capped at {MAX_TENSOR_MODES} modes x {MAX_TENSOR_CUTOFF} levels; "
            f"got {n_modes} x {cutoff}"
        )
    if basis not in ("p", "P"):
        raise ConfigError(f"basis must be 'p' or 'P', got {basis!r}")
    labels = list(operator_product)
    if any(not (1 <= k <= n - 1) for k in labels):
        raise ConfigError(f"labels must be in 1..{n - 1}, got {labels}")
    if cutoff < len(labels) + 2:
        raise ConfigError(f"cutoff {cutoff} too small for {len(labels)} operator applications")

    freqs = mode_frequencies(cfg).frequencies
    a = annihilation_matrix(cutoff)
    ad = a.conj().T
    # Normal-mode momentum (mass m, frequency w_j): i sqrt(m hbar w_j / 2)(a+ - a).
    momenta = [1j * np.sqrt(cfg.particle_mass * cfg.hbar * freqs[j] / 2.0) * (ad - a) for j in range(n - 1)]
    w = bogoliubov_matrix(n)

    state = np.zeros((cutoff,) * n_modes, dtype=complex)
    state[(0,) * n_modes] = 1.0
    vacuum = state.copy()

    for k in reversed(labels):
        if basis == "P":
            state = _apply_single_mode(momenta[k - 1], state, axis=k - 1)
        else:
            # Fourier mode p_k = sum_j conj(W[j, k]) P_j.
            acc = np.zeros_like(state)
            for j in range(n - 1):
                coef = np.conj(w[j, k - 1])
                if coef != 0:
                    acc = acc + coef * _apply_single_mode(momenta[j], state, axis=j)
            state = acc

    value = complex(np.vdot(vacuum, state))
    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise ValidityError(f"moment came out non-real: {value!r}")
    return value.real
