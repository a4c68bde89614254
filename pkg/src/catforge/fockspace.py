"""Truncated Fock-space substrate: mode spaces, ladder/parity operators, lifting.

Basis ordering is row-major over occupation tuples (n_1, ..., n_N) with the
first mode slowest, fixed project-wide. Matrices may be sparse or dense; the
matrix-vector product is the contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

import numpy as np
import scipy.sparse as sp

from .errors import InvalidDimensionError, SpaceMismatchError


def default_dim(alpha: complex) -> int:
    """Fock cutoff adequate for propagating coherent amplitudes up to |alpha|.

    The coherent-state tail weight above ceil(|a|^2 + 7|a| + 10) stays below
    1e-10 for |a| <= 3. Eigen-residual checks at 1e-8 need `spectral_dim`.
    """
    a = abs(alpha)
    return int(ceil(a * a + 7.0 * a + 10.0))


def spectral_dim(alpha: complex) -> int:
    """Larger cutoff so that ||(H - E)|cat>|| < 1e-8 holds at amplitude alpha."""
    a = abs(alpha)
    return int(ceil(a * a + 10.0 * a + 14.0))


@dataclass(frozen=True)
class ModeSpace:
    """A single bosonic mode truncated to Fock levels |0> ... |dim-1>."""

    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise InvalidDimensionError(f"mode dimension must be >= 2, got {self.dim}")


@dataclass(frozen=True)
class ProductSpace:
    """Ordered tensor product of truncated modes."""

    modes: tuple[ModeSpace, ...]

    def __post_init__(self):
        if not self.modes:
            raise InvalidDimensionError("product space needs at least one mode")

    @staticmethod
    def of_dims(*dims: int) -> "ProductSpace":
        return ProductSpace(tuple(ModeSpace(d) for d in dims))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.dim for m in self.modes)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def occupations(self) -> np.ndarray:
        """(total_dim, n_modes) array of occupation numbers per basis index."""
        return _occupations(self.dims)

    def index_of(self, occ: tuple[int, ...]) -> int:
        if len(occ) != self.n_modes:
            raise SpaceMismatchError(f"occupation tuple length {len(occ)} != {self.n_modes} modes")
        return int(np.ravel_multi_index(occ, self.dims))


@lru_cache(maxsize=64)
def _occupations(dims: tuple[int, ...]) -> np.ndarray:
    grids = np.indices(dims).reshape(len(dims), -1)
    occ = grids.T.copy()
    occ.setflags(write=False)
    return occ


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over a product-space Fock basis."""

    space: ProductSpace
    amps: np.ndarray

    def __post_init__(self):
        if self.amps.shape != (self.space.total_dim,):
            raise SpaceMismatchError(
                f"amplitude vector of length {self.amps.shape} does not match "
                f"space dimension {self.space.total_dim}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: "StateVector") -> complex:
        """<self|other>."""
        if self.space.dims != other.space.dims:
            raise SpaceMismatchError("overlap between states on different spaces")
        return complex(np.vdot(self.amps, other.amps))

    def expectation(self, op: "Operator") -> complex:
        return complex(np.vdot(self.amps, op.matvec(self.amps)))

    def mode_populations(self, mode: int) -> np.ndarray:
        """Marginal Fock-level populations of one mode."""
        probs = np.abs(self.amps.reshape(self.space.dims)) ** 2
        axes = tuple(k for k in range(self.space.n_modes) if k != mode)
        return probs.sum(axis=axes)


@dataclass(frozen=True)
class Operator:
    """Complex matrix over a product-space Fock basis (sparse or dense)."""

    space: ProductSpace
    matrix: object  # scipy sparse matrix or np.ndarray

    def matvec(self, vec: np.ndarray) -> np.ndarray:
        return self.matrix @ vec

    def dense(self) -> np.ndarray:
        if sp.issparse(self.matrix):
            return self.matrix.toarray()
        return np.asarray(self.matrix)

    def dagger(self) -> "Operator":
        if sp.issparse(self.matrix):
            return Operator(self.space, self.matrix.conj().T.tocsr())
        return Operator(self.space, self.dense().conj().T)

    def hermiticity_defect(self) -> float:
        """max |M - M^dagger| entry."""
        d = self.matrix - (self.matrix.conj().T if sp.issparse(self.matrix) else self.dense().conj().T)
        if sp.issparse(d):
            return float(np.abs(d.toarray()).max()) if d.nnz else 0.0
        return float(np.abs(d).max())

    def __matmul__(self, other):
        if isinstance(other, Operator):
            if self.space.dims != other.space.dims:
                raise SpaceMismatchError("operator product over mismatched spaces")
            return Operator(self.space, self.matrix @ other.matrix)
        return self.matrix @ other


def _single_space(dim: int) -> ProductSpace:
    return ProductSpace.of_dims(dim)


def annihilation(dim: int) -> Operator:
    """Single-mode lowering operator, <n-1|a|n> = sqrt(n)."""
    if dim < 2:
        raise InvalidDimensionError(f"annihilation needs dim >= 2, got {dim}")
    data = np.sqrt(np.arange(1, dim, dtype=float))
    mat = sp.diags(data, offsets=1, shape=(dim, dim), dtype=complex).tocsr()
    return Operator(_single_space(dim), mat)


def creation(dim: int) -> Operator:
    return annihilation(dim).dagger()


def number_operator(dim: int) -> Operator:
    return Operator(_single_space(dim), sp.diags(np.arange(dim, dtype=complex)).tocsr())


def identity(dim: int) -> Operator:
    return Operator(_single_space(dim), sp.identity(dim, dtype=complex, format="csr"))


def lift(op: Operator, mode_index: int, space: ProductSpace) -> Operator:
    """Embed a single-mode operator into the product space at mode_index."""
    if not 0 <= mode_index < space.n_modes:
        raise SpaceMismatchError(f"mode index {mode_index} out of range for {space.n_modes} modes")
    d = space.dims[mode_index]
    if op.space.total_dim != d:
        raise SpaceMismatchError(
            f"operator dimension {op.space.total_dim} != mode dimension {d}"
        )
    mat = op.matrix if sp.issparse(op.matrix) else sp.csr_matrix(op.matrix)
    left = int(np.prod(space.dims[:mode_index], initial=1))
    right = int(np.prod(space.dims[mode_index + 1:], initial=1))
    out = sp.kron(sp.identity(left, format="csr"), sp.kron(mat, sp.identity(right, format="csr")))
    return Operator(space, out.tocsr())


def parity_operator(space: ProductSpace, modes="all") -> Operator:
    """Diagonal operator (-1)^(sum of n_j over the selected modes)."""
    if modes == "all":
        sel = tuple(range(space.n_modes))
    else:
        sel = tuple(modes)
    if not sel:
        raise SpaceMismatchError("parity operator needs a non-empty mode subset")
    if any(not 0 <= m < space.n_modes for m in sel):
        raise SpaceMismatchError(f"mode subset {sel} out of range")
    signs = parity_diagonal(space, sel)
    return Operator(space, sp.diags(signs.astype(complex)).tocsr())


def parity_diagonal(space: ProductSpace, modes=None) -> np.ndarray:
    """(-1)^(total occupation) as a real diagonal vector."""
    occ = space.occupations()
    sel = tuple(range(space.n_modes)) if modes is None else tuple(modes)
    tot = occ[:, sel].sum(axis=1)
    return np.where(tot % 2 == 0, 1.0, -1.0)


def basis_state(space: ProductSpace, occ: tuple[int, ...]) -> StateVector:
    """Product Fock state |n_1, ..., n_N>."""
    for n, m in zip(occ, space.modes):
        if not 0 <= n < m.dim:
            raise InvalidDimensionError(f"occupation {n} outside truncation {m.dim}")
    amps = np.zeros(space.total_dim, dtype=complex)
    amps[space.index_of(occ)] = 1.0
    return StateVector(space, amps)


def tensor(psi_a: StateVector, psi_b: StateVector) -> StateVector:
    """Kronecker product of two states in fixed mode order, renormalized."""
    space = ProductSpace(psi_a.space.modes + psi_b.space.modes)
    amps = np.kron(psi_a.amps, psi_b.amps)
    nrm = np.linalg.norm(amps)
    return StateVector(space, amps / nrm)
