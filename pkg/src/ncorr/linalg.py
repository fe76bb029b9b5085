"""Bipartite linear algebra primitives.

Composite indices are subsystem-A major throughout: basis vector |a>|b> of a
dA x dB system sits at position a * dB + b, which is exactly the ordering
produced by numpy.kron.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import NamedTuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import MalformedInputError


@dataclass(frozen=True)
class BipartiteDims:
    """Subsystem dimensions (dA, dB) of a bipartite system."""

    dA: int
    dB: int

    def __post_init__(self):
        if self.dA < 1 or self.dB < 1:
            raise MalformedInputError(f"subsystem dimensions must be >= 1, got {(self.dA, self.dB)}")

    @property
    def total(self) -> int:
        return self.dA * self.dB


def _as_dims(dims) -> BipartiteDims:
    if isinstance(dims, BipartiteDims):
        return dims
    return BipartiteDims(int(dims[0]), int(dims[1]))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated bipartite density matrix: Hermitian, unit trace, positive semidefinite."""

    mat: np.ndarray
    dims: BipartiteDims
    tol: InitVar[Tolerances | None] = None

    def __post_init__(self, tol: Tolerances | None):
        tol = tol or DEFAULT_TOLERANCES
        mat = np.asarray(self.mat, dtype=np.complex128)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", _as_dims(self.dims))
        d = self.dims.total
        if mat.ndim != 2 or mat.shape != (d, d):
            raise MalformedInputError(
                f"matrix shape {mat.shape} does not match dims {self.dims.dA}x{self.dims.dB} (need {d}x{d})"
            )
        herm_err = np.abs(mat - mat.conj().T).max()
        if herm_err > tol.herm:
            raise MalformedInputError(f"matrix is not Hermitian: max |m - m^dag| = {herm_err:.3e}")
        tr_err = abs(mat.trace() - 1.0)
        if tr_err > tol.trace:
            raise MalformedInputError(f"trace differs from 1 by {tr_err:.3e}")
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -tol.psd:
            raise MalformedInputError(f"matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")


class EigenSystem(NamedTuple):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    values: np.ndarray
    vectors: np.ndarray  # column k pairs with values[k]


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the A-major index convention."""
    return np.kron(a, b)


def partial_trace(mat: np.ndarray, dims, keep: str = "A") -> np.ndarray:
    """Trace out one subsystem; keep='A' returns the dA x dA matrix tr_B(mat)."""
    dims = _as_dims(dims)
    mat = np.asarray(mat)
    d = dims.total
    if mat.shape != (d, d):
        raise MalformedInputError(f"matrix shape {mat.shape} does not match dims {dims.dA}x{dims.dB}")
    r = mat.reshape(dims.dA, dims.dB, dims.dA, dims.dB)
    if keep == "A":
        return np.einsum("abcb->ac", r)
    if keep == "B":
        return np.einsum("abad->bd", r)
    raise MalformedInputError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(mat: np.ndarray, dims, side: str = "B") -> np.ndarray:
    """Transpose the indices of one subsystem only."""
    dims = _as_dims(dims)
    mat = np.asarray(mat)
    d = dims.total
    if mat.shape != (d, d):
        raise MalformedInputError(f"matrix shape {mat.shape} does not match dims {dims.dA}x{dims.dB}")
    r = mat.reshape(dims.dA, dims.dB, dims.dA, dims.dB)
    if side == "B":
        r = r.transpose(0, 3, 2, 1)
    elif side == "A":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise MalformedInputError(f"side must be 'A' or 'B', got {side!r}")
    return r.reshape(d, d)


def hermitian_eig(mat: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenSystem:
    """Eigendecomposition for Hermitian input; rejects non-Hermitian matrices."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise MalformedInputError(f"expected a square matrix, got shape {mat.shape}")
    herm_err = np.abs(mat - mat.conj().T).max()
    if herm_err > tol.herm:
        raise MalformedInputError(f"matrix is not Hermitian: max |m - m^dag| = {herm_err:.3e}")
    values, vectors = np.linalg.eigh(mat)
    return EigenSystem(values, vectors)


def commutator_fro_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of the commutator [a, b]."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MalformedInputError(f"operands must be square matrices of equal shape, got {a.shape} and {b.shape}")
    return float(np.linalg.norm(a @ b - b @ a, "fro"))


def tensor_product(state_1: DensityMatrix, state_2: DensityMatrix) -> DensityMatrix:
    """Tensor product of two bipartite states as one bipartite state.

    The first factor's subsystems (A, B) and the second's (C, D) are combined
    so the result is bipartite across AC | BD, with A-major index order inside
    each combined subsystem.
    """
    a, b = state_1.dims.dA, state_1.dims.dB
    c, d = state_2.dims.dA, state_2.dims.dB
    big = np.kron(state_1.mat, state_2.mat)
    big = big.reshape(a, b, c, d, a, b, c, d).transpose(0, 2, 1, 3, 4, 6, 5, 7)
    dims = BipartiteDims(a * c, b * d)
    return DensityMatrix(big.reshape(dims.total, dims.total), dims)
