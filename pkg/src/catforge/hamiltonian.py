"""Hamiltonian builders for driven Kerr parametric oscillators and chains.

Single mode:  H = -K a†²a² + eps a†² + eps* a²
Coupled pair: H = H₁ + H₂ - K₁₂ n₁n₂ + eps₁₂ a₁†a₂† + eps₁₂* a₁a₂
Chains add nearest-neighbor cross-Kerr and mode-mixing terms.

With eps_j = K_j alpha_j² and eps_c = ± K_c alpha_j alpha_k, the two-mode
coherent superpositions stay degenerate eigenstates; the cat manifold sits at
the top of the rotating-frame spectrum (all other levels lie below).

Time-dependent Hamiltonians are realized as cached operator templates
(`ChainTemplates`) combined with scalar drive coefficients, so integrator
loops never rebuild matrices.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConstraintViolationError
from .fockspace import Operator, ProductSpace, annihilation, lift


@dataclass(frozen=True)
class KpoParams:
    """Kerr strength K > 0 and two-photon drive amplitude eps (hbar = 1)."""

    K: float
    epsilon: complex = 0.0

    def __post_init__(self):
        if self.K <= 0:
            raise ValueError(f"Kerr coefficient must be positive, got {self.K}")

    @property
    def alpha(self) -> complex:
        """Principal-branch displacement with alpha² = eps / K."""
        return cmath.sqrt(complex(self.epsilon) / self.K)


@dataclass(frozen=True)
class CouplingParams:
    """Cross-Kerr K12 >= 0 and two-mode mixing drive eps12.

    The relation eps12 = ± K12 alpha1 alpha2 is enforced only by protocol
    factories; builders accept arbitrary values so robustness experiments can
    violate it deliberately.
    """

    K12: float = 0.0
    epsilon12: complex = 0.0

    def __post_init__(self):
        if self.K12 < 0:
            raise ValueError(f"cross-Kerr must be >= 0, got {self.K12}")


@dataclass(frozen=True)
class ChainParams:
    """N oscillators with N-1 nearest-neighbor couplers."""

    kpo: tuple[KpoParams, ...]
    couplers: tuple[CouplingParams, ...] = ()

    def __post_init__(self):
        if len(self.couplers) != max(len(self.kpo) - 1, 0):
            raise ValueError(
                f"{len(self.kpo)} modes need {len(self.kpo) - 1} couplers, "
                f"got {len(self.couplers)}"
            )

    @property
    def n_modes(self) -> int:
        return len(self.kpo)


def cross_kerr_from_circuit(ejc: float, delta1: float, delta2: float) -> float:
    """Cross-Kerr rate of a SQUID coupler: E_J^C (delta1 delta2)² / 16."""
    if ejc < 0 or delta1 < 0 or delta2 < 0:
        raise ValueError("circuit parameters must be >= 0")
    return ejc * (delta1 * delta2) ** 2 / 16.0


class ChainTemplates:
    """Cached operator structure for a chain Hamiltonian on a fixed space.

    Diagonal pieces (a†²a² per mode, n_j n_{j+1} per coupler) are kept as real
    vectors; the drive pieces a†² and a₁†a₂† are cached sparse matrices. All
    members are read-only after construction and safe to share across threads.
    """

    def __init__(self, space: ProductSpace):
        self.space = space
        occ = space.occupations().astype(float)
        n = space.n_modes
        self.selfkerr_diag = [occ[:, j] * (occ[:, j] - 1.0) for j in range(n)]
        self.crosskerr_diag = [occ[:, c] * occ[:, c + 1] for c in range(n - 1)]
        ups = []
        for j in range(n):
            a = annihilation(space.dims[j])
            ad2 = (a.dagger() @ a.dagger()).matrix.tocsr()
            ups.append(lift(Operator(a.space, ad2), j, space).matrix.tocsr())
        self.ad2 = ups
        self.a2 = [m.conj().T.tocsr() for m in ups]
        pairs = []
        for c in range(n - 1):
            adj = lift(annihilation(space.dims[c]).dagger(), c, space).matrix
            adk = lift(annihilation(space.dims[c + 1]).dagger(), c + 1, space).matrix
            pairs.append((adj @ adk).tocsr())
        self.adad = pairs
        self.aa = [m.conj().T.tocsr() for m in pairs]

    def diagonal(self, p: ChainParams) -> np.ndarray:
        d = np.zeros(self.space.total_dim)
        for j, kp in enumerate(p.kpo):
            d -= kp.K * self.selfkerr_diag[j]
        for c, cp in enumerate(p.couplers):
            d -= cp.K12 * self.crosskerr_diag[c]
        return d

    def matvec(self, p: ChainParams, vec: np.ndarray) -> np.ndarray:
        out = self.diagonal(p) * vec
        for j, kp in enumerate(p.kpo):
            e = complex(kp.epsilon)
            if e != 0:
                out += e * (self.ad2[j] @ vec)
                out += e.conjugate() * (self.a2[j] @ vec)
        for c, cp in enumerate(p.couplers):
            e = complex(cp.epsilon12)
            if e != 0:
                out += e * (self.adad[c] @ vec)
                out += e.conjugate() * (self.aa[c] @ vec)
        return out

    def matrix(self, p: ChainParams) -> Operator:
        m = sp.diags(self.diagonal(p).astype(complex)).tocsr()
        for j, kp in enumerate(p.kpo):
            e = complex(kp.epsilon)
            if e != 0:
                m = m + e * self.ad2[j] + e.conjugate() * self.a2[j]
        for c, cp in enumerate(p.couplers):
            e = complex(cp.epsilon12)
            if e != 0:
                m = m + e * self.adad[c] + e.conjugate() * self.aa[c]
        return Operator(self.space, m.tocsr())


def single_kpo_h(p: KpoParams, dim: int) -> Operator:
    """-K a†²a² + eps a†² + eps* a² on a single truncated mode."""
    space = ProductSpace.of_dims(dim)
    return ChainTemplates(space).matrix(ChainParams((p,)))


def coupled_h(p1: KpoParams, p2: KpoParams, c: CouplingParams, dims) -> Operator:
    """Two driven KPOs with cross-Kerr and two-mode mixing drive."""
    space = ProductSpace.of_dims(int(dims[0]), int(dims[1]))
    return ChainTemplates(space).matrix(ChainParams((p1, p2), (c,)))


def chain_h(p: ChainParams, dims) -> Operator:
    """Nearest-neighbor chain of driven KPOs."""
    if p.n_modes < 2:
        raise ValueError("chain_h needs at least two modes; use single_kpo_h")
    space = ProductSpace.of_dims(*(int(d) for d in dims))
    if space.n_modes != p.n_modes:
        raise ValueError(f"{p.n_modes} modes but {space.n_modes} dims")
    return ChainTemplates(space).matrix(p)


def _constrained_alphas(p: ChainParams) -> list[complex]:
    return [kp.alpha for kp in p.kpo]


def check_constraints(p: ChainParams, rel_tol: float = 1e-10):
    """Verify eps_c = ± K_c alpha_j alpha_{j+1} for every coupler."""
    alphas = _constrained_alphas(p)
    for c, cp in enumerate(p.couplers):
        target = cp.K12 * alphas[c] * alphas[c + 1]
        e = complex(cp.epsilon12)
        scale = max(abs(e), abs(target), 1e-300)
        if min(abs(e - target), abs(e + target)) > rel_tol * scale:
            raise ConstraintViolationError(
                f"coupler {c}: eps12={e} violates ±K12*a_j*a_k={target}", coupler=c
            )


def ground_energy(p: ChainParams, rel_tol: float = 1e-10) -> float:
    """Energy of the degenerate coherent manifold when all constraints hold.

    E = sum_j K_j |alpha_j|^4 + sum_c K_c |alpha_j|^2 |alpha_{j+1}|^2, with
    |alpha_j|^2 = |eps_j| / K_j. The manifold is the top of the spectrum.
    """
    check_constraints(p, rel_tol)
    mag2 = [abs(kp.epsilon) / kp.K for kp in p.kpo]
    e = sum(kp.K * m * m for kp, m in zip(p.kpo, mag2))
    e += sum(cp.K12 * mag2[c] * mag2[c + 1] for c, cp in enumerate(p.couplers))
    return float(e)
