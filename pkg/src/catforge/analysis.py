"""Observables and phase-space diagnostics.

Covers state fidelity, the Berry-phase closed forms for rotated cat drives
(with a Fock-space quadrature cross-check), relative-phase extraction from
simulated states, displaced-parity Wigner functions, and the two-branch Bell
projection map used to visualize rotations of entangled cats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SpaceMismatchError, UndefinedPhaseError
from .fockspace import StateVector, annihilation, parity_diagonal
from .states import BellKind, bell_cat


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular grid over a complex phase-space variable."""

    re_range: tuple[float, float]
    im_range: tuple[float, float]
    n_re: int
    n_im: int

    def __post_init__(self):
        if self.n_re < 2 or self.n_im < 2:
            raise ValueError("grid needs at least 2 points per axis")
        for lo, hi in (self.re_range, self.im_range):
            if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
                raise ValueError("grid ranges must be finite and increasing")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.re_range[0], self.re_range[1], self.n_re),
            np.linspace(self.im_range[0], self.im_range[1], self.n_im),
        )

    def cell_area(self) -> float:
        re, im = self.axes()
        return float((re[1] - re[0]) * (im[1] - im[0]))


@dataclass(frozen=True)
class BerrySpec:
    """Drive-rotation loop at constant |alpha| for one parity sector."""

    alpha_mag: float
    parity: int
    loops: int = 1

    def __post_init__(self):
        if self.alpha_mag <= 0:
            raise ValueError("alpha_mag must be positive")
        if self.parity not in (-1, 1):
            raise ValueError("parity must be +1 or -1")


def fidelity(psi: StateVector, phi: StateVector) -> float:
    """|<psi|phi>|^2, free of global phases."""
    if psi.space.dims != phi.space.dims:
        raise SpaceMismatchError("fidelity between states on different spaces")
    return float(abs(np.vdot(psi.amps, phi.amps)) ** 2)


def berry_phase_per_loop(spec: BerrySpec) -> float:
    """Geometric phase of a cat state per full 2 pi rotation of the drive phase.

    phi_B = -pi |alpha|^2 (1 - p e^{-2|alpha|^2}) / (1 + p e^{-2|alpha|^2})
    for parity p; the bracket is the mean photon number over |alpha|^2.
    """
    e = math.exp(-2.0 * spec.alpha_mag**2)
    return -math.pi * spec.alpha_mag**2 * (1.0 - spec.parity * e) / (1.0 + spec.parity * e)


def berry_phase_quadrature(alpha_mag: float, parity: int, n_phi: int = 257, dim: int | None = None) -> float:
    """Per-loop geometric phase from Fock-space quadrature of the connection.

    Builds the cat state in the natural coherent-state gauge, evaluates
    <C|d/dphi C> = (i/2) <n> numerically from the truncated amplitudes, and
    integrates -Im(...) over one loop with Simpson's rule. Independent of the
    closed form in `berry_phase_per_loop`.
    """
    from scipy.integrate import simpson

    if dim is None:
        dim = int(math.ceil(alpha_mag**2 + 10 * alpha_mag + 20))
    n = np.arange(dim)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi)
    vals = np.empty(n_phi)
    for k, phi in enumerate(phis):
        a = alpha_mag * cmath.exp(0.5j * phi)
        amps = np.empty(dim, dtype=complex)
        amps[0] = math.exp(-0.5 * alpha_mag**2)
        for m in range(1, dim):
            amps[m] = amps[m - 1] * a / math.sqrt(m)
        amps = amps * (1.0 + parity * np.where(n % 2 == 0, 1.0, -1.0))
        w = np.abs(amps) ** 2
        mean_n = float((n * w).sum() / w.sum())
        vals[k] = -0.5 * mean_n  # -Im[(i/2) <n>]
    return float(simpson(vals, x=phis))


def delta_berry(alpha_mag: float, loops: int) -> float:
    """Even/odd Berry-phase difference after an even number of drive loops.

    Per loop the difference is 2 pi x / sinh(2x) with x = |alpha|^2; it tends
    to pi as alpha -> 0 and is exponentially suppressed for large alpha.
    """
    if loops % 2 != 0 or loops <= 0:
        raise ValueError("loops must be a positive even count (parity phase cancels)")
    if alpha_mag <= 0:
        raise ValueError("alpha_mag must be positive")
    x = alpha_mag**2
    return loops * 2.0 * math.pi * x / math.sinh(2.0 * x)


def extract_relative_phase(
    psi_final: StateVector,
    basis_even: StateVector,
    basis_odd: StateVector,
    psi_initial: StateVector,
) -> float:
    """Phase gained by the odd basis component relative to the even one.

    Returns arg[(<odd|psi_f>/<even|psi_f>) / (<odd|psi_i>/<even|psi_i>)]
    wrapped to (-pi, pi]. Dynamical phases cancel because the two basis
    states are degenerate.
    """
    ov = [
        basis_even.overlap(psi_initial),
        basis_odd.overlap(psi_initial),
        basis_even.overlap(psi_final),
        basis_odd.overlap(psi_final),
    ]
    if min(abs(z) for z in ov) < 1e-10:
        raise UndefinedPhaseError("state has vanishing overlap with a basis component")
    ratio = (ov[3] / ov[2]) / (ov[1] / ov[0])
    phase = cmath.phase(ratio)
    if phase <= -math.pi:
        phase += 2.0 * math.pi
    return phase


def _displacement_matrix(beta: complex, dim: int) -> np.ndarray:
    a = annihilation(dim).matrix.toarray()
    gen = beta * a.conj().T - np.conj(beta) * a
    return scipy.linalg.expm(gen)


class _DisplacementEngine:
    """Grid evaluation of D†(beta)|psi| with D = exp(beta a† - beta* a) built
    from truncated ladder operators.

    Uses the Weyl split D(x + iy) = D(x) D(iy) e^{ixy}: both factors are
    exponentials of fixed Hermitian generators, diagonalized once, so each
    grid cell costs one dense matvec. The scalar phase never enters the
    displaced-parity modulus.
    """

    def __init__(self, dim: int):
        a = annihilation(dim).matrix.toarray()
        h1 = 1j * (a - a.conj().T)  # a† - a = i h1
        h2 = a + a.conj().T
        self.lam1, self.v1 = np.linalg.eigh(h1)
        self.lam2, self.v2 = np.linalg.eigh(h2)
        self.w21 = self.v2.conj().T @ self.v1
        self.parity = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)

    def displaced_parity(self, xs, ys, amps) -> np.ndarray:
        """(len(ys), len(xs)) array of <psi|D P D†|psi> over beta = x + iy."""
        u0 = self.v1.conj().T @ amps
        out = np.empty((len(ys), len(xs)))
        for j, x in enumerate(xs):
            wj = self.w21 @ (np.exp(-1j * x * self.lam1) * u0)
            for i, y in enumerate(ys):
                fock = self.v2 @ (np.exp(-1j * y * self.lam2) * wj)
                out[i, j] = float((self.parity * np.abs(fock) ** 2).sum())
        return out


def wigner(psi: StateVector, grid: PhaseSpaceGrid) -> np.ndarray:
    """Displaced-parity Wigner function W(beta) = (2/pi) <psi|D P D†|psi>.

    D is the displacement built from the truncated ladder operators; the
    truncation is padded so the displaced state still fits below the cutoff
    for every grid point. Output is real with shape (n_im, n_re) and
    integrates to 1 over the plane.
    """
    if psi.space.n_modes != 1:
        raise SpaceMismatchError("wigner is defined for single-mode states")
    dim = psi.space.dims[0]
    bmax = math.hypot(max(abs(v) for v in grid.re_range), max(abs(v) for v in grid.im_range))
    mean_n = float((np.arange(dim) * np.abs(psi.amps) ** 2).sum())
    from .fockspace import default_dim

    dim_eff = max(dim, default_dim(bmax + math.sqrt(mean_n)))
    amps = np.zeros(dim_eff, dtype=complex)
    amps[:dim] = psi.amps
    re, im = grid.axes()
    engine = _DisplacementEngine(dim_eff)
    return engine.displaced_parity(re, im, amps) * (2.0 / math.pi)


def bell_projection_map(
    psi: StateVector,
    grid: PhaseSpaceGrid,
    alpha2_fixed: complex,
    min_alpha: float = 1e-6,
) -> np.ndarray:
    """Two-branch Bell projection over a grid of mode-1 displacements.

    For Re(alpha) >= 0 the cell holds |<Phi+_{alpha, a2}|psi>|; for
    Re(alpha) < 0 it holds |<Phi-_{-alpha, a2}|psi>|. Cells with |alpha|
    below min_alpha are undefined (NaN). alpha2 stays fixed at the value of
    the initial state.
    """
    if psi.space.n_modes != 2:
        raise SpaceMismatchError("bell_projection_map needs a two-mode state")
    dims = psi.space.dims
    re, im = grid.axes()
    out = np.full((grid.n_im, grid.n_re), np.nan)
    for i, y in enumerate(im):
        for j, x in enumerate(re):
            alpha = complex(x, y)
            if abs(alpha) < min_alpha:
                continue
            if x >= 0.0:
                ref = bell_cat(BellKind.PHI_PLUS, alpha, alpha2_fixed, dims)
            else:
                ref = bell_cat(BellKind.PHI_MINUS, -alpha, alpha2_fixed, dims)
            out[i, j] = abs(ref.overlap(psi))
    return out


def total_parity_expectation(psi: StateVector) -> float:
    """<(-1)^(sum n_j)> of a state."""
    signs = parity_diagonal(psi.space)
    return float((signs * np.abs(psi.amps) ** 2).sum())
