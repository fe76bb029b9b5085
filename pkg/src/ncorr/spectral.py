"""Eigenspace clustering and density matrix truncation.

A truncated component of a state keeps one eigenvalue's eigenspace and scales
its projector by the eigenvalue itself: eta * sum_k |v_k><v_k| over the
eigenspace basis. The component's reduced spectra on each side drive the
truncation measure; for states with a product eigenbasis every such reduced
eigenvalue is an integer multiple of eta.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import MalformedInputError
from .linalg import DensityMatrix, hermitian_eig, partial_trace


@dataclass(frozen=True, eq=False)
class EigenCluster:
    """One distinct eigenvalue with its eigenspace basis (columns of vectors)."""

    eta: float
    multiplicity: int
    vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct nonzero eigenvalues of a state, ascending by eta."""

    clusters: tuple[EigenCluster, ...]
    dropped: int  # eigenvalues discarded as numerically zero

    @property
    def distinct_count(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True, eq=False)
class TruncatedComponent:
    """eta-scaled eigenspace projector with its nonzero reduced spectra.

    spectrum_a and spectrum_b hold the eigenvalues of tr_B(matrix) and
    tr_A(matrix) above the rank cutoff, descending. trace(matrix) equals
    eta * multiplicity, so each spectrum sums to that quota.
    """

    eta: float
    multiplicity: int
    matrix: np.ndarray
    spectrum_a: np.ndarray
    spectrum_b: np.ndarray


def cluster_spectrum(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    """Group the eigenvalues of rho into distinct-value clusters.

    Sorted eigenvalues chain into one cluster while consecutive gaps stay at or
    below tol.deg; each cluster is represented by the mean of its members.
    Clusters whose representative is at or below tol.zero are dropped.
    """
    if not isinstance(rho, DensityMatrix):
        raise MalformedInputError("cluster_spectrum expects a DensityMatrix")
    values, vectors = hermitian_eig(rho.mat, tol)
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tol.deg:
            groups[-1].append(i)
        else:
            groups.append([i])
    clusters = []
    dropped = 0
    for idx in groups:
        eta = float(values[idx].mean())
        if eta <= tol.zero:
            dropped += len(idx)
            continue
        clusters.append(EigenCluster(eta=eta, multiplicity=len(idx), vectors=vectors[:, idx]))
    return SpectralDecomposition(clusters=tuple(clusters), dropped=dropped)


def truncated_component(
    cluster: EigenCluster, dims, tol: Tolerances = DEFAULT_TOLERANCES
) -> TruncatedComponent:
    """Build eta * (eigenspace projector) and its nonzero reduced spectra."""
    v = cluster.vectors
    matrix = cluster.eta * (v @ v.conj().T)
    spectra = []
    for keep in ("A", "B"):
        w = hermitian_eig(partial_trace(matrix, dims, keep), tol).values
        spectra.append(np.sort(w[w > tol.rank])[::-1])
    return TruncatedComponent(
        eta=cluster.eta,
        multiplicity=cluster.multiplicity,
        matrix=matrix,
        spectrum_a=spectra[0],
        spectrum_b=spectra[1],
    )


def decompose(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[TruncatedComponent, ...]:
    """All truncated components of rho, ascending by eta."""
    decomposition = cluster_spectrum(rho, tol)
    return tuple(truncated_component(c, rho.dims, tol) for c in decomposition.clusters)
