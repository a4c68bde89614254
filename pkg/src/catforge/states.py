"""State factories: coherent, single-mode cats, proto-Bell, Bell cats, multi-mode cats.

All factories renormalize after truncation and fix the global phase so the
first nonzero amplitude is real positive, which keeps amplitude arrays
deterministic and golden-file friendly.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateNormalizationError, TruncationWarning
from .fockspace import ProductSpace, StateVector, default_dim


@dataclass(frozen=True)
class Displacement:
    """Coherent amplitude with the two-sheeted convention alpha = sqrt(r/K) e^{i phi/2}.

    phi in [0, 4 pi) maps one-to-one onto alpha; advancing phi by 2 pi flips
    the sign of alpha.
    """

    alpha: complex

    @staticmethod
    def from_polar(r: float, phi: float, kerr: float = 1.0) -> "Displacement":
        if r < 0 or kerr <= 0:
            raise ValueError("drive magnitude must be >= 0 and Kerr > 0")
        return Displacement(math.sqrt(r / kerr) * cmath.exp(0.5j * phi))

    def advanced(self, dphi: float) -> "Displacement":
        """Displacement after the drive phase advances by dphi."""
        return Displacement(self.alpha * cmath.exp(0.5j * dphi))

    @property
    def magnitude(self) -> float:
        return abs(self.alpha)


class BellKind(Enum):
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"

    @property
    def total_parity(self) -> int:
        """+1 for the Phi pair (even), -1 for the Psi pair (odd)."""
        return +1 if self in (BellKind.PHI_PLUS, BellKind.PHI_MINUS) else -1

    @property
    def constraint_sign(self) -> int:
        """Sign s in the coupler relation eps_12 = s * K_12 * alpha_1 * alpha_2."""
        return +1 if self in (BellKind.PHI_PLUS, BellKind.PSI_PLUS) else -1


@dataclass(frozen=True)
class SignPattern:
    """Per-mode signs sigma_j = +/-1; the first is pinned to +1 (global sign)."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.sigma):
            raise ValueError("signs must be +1 or -1")
        if self.sigma and self.sigma[0] != 1:
            raise ValueError("sigma_1 is fixed to +1; a global sign is redundant")

    @staticmethod
    def plus(n: int) -> "SignPattern":
        return SignPattern((1,) * n)


def cat_norm(alpha: complex, parity: int) -> float:
    """N^{+/-} = sqrt(2 (1 +/- exp(-2|alpha|^2)))."""
    return math.sqrt(2.0 * (1.0 + parity * math.exp(-2.0 * abs(alpha) ** 2)))


def _coherent_raw(alpha: complex, dim: int) -> np.ndarray:
    """Analytic coherent amplitudes exp(-|a|^2/2) a^n / sqrt(n!), unrenormalized."""
    amps = np.empty(dim, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps


def _fix_phase(amps: np.ndarray) -> np.ndarray:
    """Rotate a global phase so the first nonzero amplitude is real positive."""
    mags = np.abs(amps)
    cutoff = mags.max() * 1e-13
    idx = int(np.argmax(mags > cutoff))
    ph = cmath.exp(-1j * cmath.phase(amps[idx]))
    return amps * ph


def _finalize(space: ProductSpace, raw: np.ndarray) -> StateVector:
    nrm = np.linalg.norm(raw)
    if nrm < 1e-14:
        raise DegenerateNormalizationError("state family degenerates to the zero vector")
    return StateVector(space, _fix_phase(raw / nrm))


def _check_truncation(alpha: complex, dim: int):
    need = default_dim(alpha)
    if dim < need:
        warnings.warn(
            f"dim={dim} below the recommended cutoff {need} for |alpha|={abs(alpha):.3g}",
            TruncationWarning,
            stacklevel=3,
        )


def coherent(alpha: complex, dim: int) -> StateVector:
    """Truncated coherent state |alpha>, renormalized."""
    _check_truncation(alpha, dim)
    return _finalize(ProductSpace.of_dims(dim), _coherent_raw(alpha, dim))


def cat(alpha: complex, parity: int, dim: int) -> StateVector:
    """Cat state (|alpha> + parity |-alpha>) / N, a photon-number parity eigenstate."""
    if parity not in (-1, 1):
        raise ValueError("parity must be +1 or -1")
    if parity == -1 and alpha == 0:
        raise DegenerateNormalizationError("odd cat is undefined at alpha = 0")
    _check_truncation(alpha, dim)
    base = _coherent_raw(alpha, dim)
    signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    raw = base * (1.0 + parity * signs)  # exact zeros in the wrong-parity sector
    return _finalize(ProductSpace.of_dims(dim), raw)


def _product_coherent_raw(alphas, dims) -> np.ndarray:
    out = _coherent_raw(alphas[0], dims[0])
    for a, d in zip(alphas[1:], dims[1:]):
        out = np.kron(out, _coherent_raw(a, d))
    return out


def multimode_cat(alphas, sigma: SignPattern, parity: int, dims) -> StateVector:
    """N-mode cat (prod |sigma_j alpha_j> + parity * prod |-sigma_j alpha_j>) / N."""
    alphas = tuple(complex(a) for a in alphas)
    dims = tuple(int(d) for d in dims)
    if len(sigma.sigma) != len(alphas) or len(dims) != len(alphas):
        raise ValueError("alphas, sigma and dims must have one entry per mode")
    if parity not in (-1, 1):
        raise ValueError("parity must be +1 or -1")
    if parity == -1 and all(a == 0 for a in alphas):
        raise DegenerateNormalizationError("odd multi-mode cat undefined when all alpha_j = 0")
    for a, d in zip(alphas, dims):
        _check_truncation(a, d)
    space = ProductSpace.of_dims(*dims)
    base = _product_coherent_raw([s * a for s, a in zip(sigma.sigma, alphas)], dims)
    tot = space.occupations().sum(axis=1)
    signs = np.where(tot % 2 == 0, 1.0, -1.0)
    raw = base * (1.0 + parity * signs)
    return _finalize(space, raw)


def proto_bell(alpha1: complex, alpha2: complex, sign: int, parity: int, dims) -> StateVector:
    """Two-mode degenerate eigenstate (|a1, s a2> + parity |-a1, -s a2>) / N.

    These converge to the four Bell cat states at amplitudes above roughly one.
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    sigma = SignPattern((1, sign))
    return multimode_cat((alpha1, alpha2), sigma, parity, dims)


def bell_cat(kind: BellKind, alpha1: complex, alpha2: complex, dims) -> StateVector:
    """Maximally entangled two-cat state of the requested kind."""
    if alpha1 == 0 or alpha2 == 0:
        raise DegenerateNormalizationError("Bell cats need nonzero amplitudes in both modes")
    d1, d2 = int(dims[0]), int(dims[1])
    even1, odd1 = cat(alpha1, +1, d1).amps, cat(alpha1, -1, d1).amps
    even2, odd2 = cat(alpha2, +1, d2).amps, cat(alpha2, -1, d2).amps
    if kind is BellKind.PHI_PLUS:
        raw = np.kron(even1, even2) + np.kron(odd1, odd2)
    elif kind is BellKind.PHI_MINUS:
        raw = np.kron(even1, even2) - np.kron(odd1, odd2)
    elif kind is BellKind.PSI_PLUS:
        raw = np.kron(even1, odd2) + np.kron(odd1, even2)
    else:
        raw = np.kron(even1, odd2) - np.kron(odd1, even2)
    return _finalize(ProductSpace.of_dims(d1, d2), raw)


def nu_coefficients(alpha1: complex, alpha2: complex) -> tuple[float, float]:
    """Decomposition of the even proto-Bell state over {Phi+, Phi-}.

    nu_pm = (N+_1 N+_2 +/- N-_1 N-_2) / (2 sqrt(2) N+_{12}); nu_minus is
    exponentially suppressed in |alpha_1|^2 + |alpha_2|^2.
    """
    np1, nm1 = cat_norm(alpha1, +1), cat_norm(alpha1, -1)
    np2, nm2 = cat_norm(alpha2, +1), cat_norm(alpha2, -1)
    n12 = math.sqrt(2.0 * (1.0 + math.exp(-2.0 * (abs(alpha1) ** 2 + abs(alpha2) ** 2))))
    denom = 2.0 * math.sqrt(2.0) * n12
    return (np1 * np2 + nm1 * nm2) / denom, (np1 * np2 - nm1 * nm2) / denom
