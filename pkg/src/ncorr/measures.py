"""Correlation measures built on density matrix truncations.

The truncation measure compares each truncated component's reduced spectrum
against its rounding to integer multiples of the component eigenvalue eta.
States with a product eigenbasis score zero exactly; the measure is computable
in polynomial time. The partition measure instead searches every grouping of
the global spectrum into equal-size sets whose sums mimic a reduced spectrum,
which is exponential in the total dimension and therefore guarded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import CapabilityError, DomainError, MalformedInputError
from .linalg import DensityMatrix, _as_dims, hermitian_eig, partial_trace, partial_transpose
from .spectral import TruncatedComponent, decompose

_QUOTA_SLACK = 1e-9  # relative headroom over the quota before x is out of domain


def nearest_integer_multiple(x: float, y: float, tie_tol: float = DEFAULT_TOLERANCES.tie) -> float:
    """The multiple of y nearest to x, rounding half-way cases down; 0 when y = 0.

    A tie is declared whenever the remainder of x modulo y lies within
    tie_tol * y of y/2, so half-way points reached through floating-point
    noise still round down deterministically.
    """
    if x < 0 or y < 0:
        raise DomainError(f"arguments must be nonnegative, got x={x}, y={y}")
    if y == 0:
        return 0.0
    q = math.floor(x / y)
    rem = x - q * y
    if abs(rem - y / 2) <= tie_tol * y:
        return q * y
    if rem <= y - rem:
        return q * y
    return (q + 1) * y


def surprisal_term(x: float, y: float, quota: float) -> float:
    """Contribution -|x - y| * log2(x / quota) of one spectrum entry.

    x must lie in (0, quota]; the result is nonnegative because the log factor
    is then nonpositive. Tiny positive excursions from rounding are clamped.
    """
    if quota <= 0:
        raise DomainError(f"quota must be positive, got {quota}")
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    if x > quota * (1 + _QUOTA_SLACK):
        raise DomainError(f"x={x} exceeds quota={quota}")
    if y < 0:
        raise DomainError(f"y must be nonnegative, got {y}")
    return max(0.0, -abs(x - y) * math.log2(x / quota))


@dataclass(frozen=True)
class Collection:
    """Grouped spectrum values with one quota per group."""

    groups: tuple[tuple[float, ...], ...]
    quotas: tuple[float, ...]

    def __post_init__(self):
        if len(self.groups) != len(self.quotas):
            raise DomainError(
                f"{len(self.groups)} groups but {len(self.quotas)} quotas"
            )

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[float]]) -> "Collection":
        """Collection whose quotas are the group sums."""
        groups = tuple(tuple(float(v) for v in g) for g in groups)
        return cls(groups=groups, quotas=tuple(math.fsum(g) for g in groups))


def _group_discrepancy(xs: Sequence[float], ys: Sequence[float], quota: float) -> float:
    return math.fsum(surprisal_term(x, y, quota) for x, y in zip(xs, ys))


def collection_discrepancy(x: Collection, y: Collection) -> float:
    """Sum of surprisal terms over paired groups, using the x-side quotas."""
    if len(x.groups) != len(y.groups):
        raise DomainError(
            f"collections disagree on group count: {len(x.groups)} vs {len(y.groups)}"
        )
    total = 0.0
    for j, (gx, gy) in enumerate(zip(x.groups, y.groups)):
        if len(gx) != len(gy):
            raise DomainError(f"group {j} size mismatch: {len(gx)} vs {len(gy)}")
        total += _group_discrepancy(gx, gy, x.quotas[j])
    return total


def truncation_measure_side(
    components: Sequence[TruncatedComponent], side: str, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[float, tuple[float, ...]]:
    """One-sided truncation measure and its per-component contributions.

    For each component the reduced spectrum is compared against its entrywise
    rounding to integer multiples of eta, with quota eta * multiplicity.
    """
    if side not in ("A", "B"):
        raise DomainError(f"side must be 'A' or 'B', got {side!r}")
    contribs = []
    for comp in components:
        spectrum = comp.spectrum_a if side == "A" else comp.spectrum_b
        quota = comp.eta * comp.multiplicity
        predicted = [nearest_integer_multiple(lam, comp.eta, tol.tie) for lam in spectrum]
        contribs.append(_group_discrepancy(spectrum, predicted, quota))
    return math.fsum(contribs), tuple(contribs)


class ComponentContribution(NamedTuple):
    eta: float
    multiplicity: int
    side_a: float
    side_b: float


@dataclass(frozen=True)
class MeasureReport:
    """Measure values for one state; partition fields stay None unless requested."""

    value: float
    side_a: float
    side_b: float
    per_component: tuple[ComponentContribution, ...]
    entropy_a: float
    entropy_b: float
    ppt_min_eig: float
    partition_value: float | None = None
    partition_side_a: float | None = None
    partition_side_b: float | None = None


def truncation_measure(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> MeasureReport:
    """Truncation measure of a state: mean of the two one-sided values."""
    components = decompose(rho, tol)
    total_a, contribs_a = truncation_measure_side(components, "A", tol)
    total_b, contribs_b = truncation_measure_side(components, "B", tol)
    per_component = tuple(
        ComponentContribution(c.eta, c.multiplicity, ca, cb)
        for c, ca, cb in zip(components, contribs_a, contribs_b)
    )
    return MeasureReport(
        value=(total_a + total_b) / 2,
        side_a=total_a,
        side_b=total_b,
        per_component=per_component,
        entropy_a=von_neumann_entropy(partial_trace(rho.mat, rho.dims, "A"), tol),
        entropy_b=von_neumann_entropy(partial_trace(rho.mat, rho.dims, "B"), tol),
        ppt_min_eig=ppt_min_eigenvalue(rho),
    )


def _equal_partitions(indices: tuple[int, ...], group_size: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unordered partitions of indices into groups of group_size.

    The lowest remaining index anchors each group, so every unordered
    partition appears exactly once.
    """
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for combo in combinations(rest, group_size - 1):
        group = (first,) + combo
        taken = set(combo)
        remaining = tuple(i for i in rest if i not in taken)
        for tail in _equal_partitions(remaining, group_size):
            yield (group,) + tail


def _xlog2x(v: float) -> float:
    return v * math.log2(v) if v > 0 else 0.0


def mimic_discrepancy(
    global_spectrum: Sequence[float],
    genuine_spectrum: Sequence[float],
    n_groups: int,
    group_size: int,
) -> float:
    """Smallest |sum of mimicked entropy terms - sum of genuine entropy terms|.

    The global spectrum (all entries, zeros included) is split into n_groups
    unordered groups of group_size; each group's sum is one mimicked
    eigenvalue. Entropy terms are e * log2(e) with 0 * log2(0) = 0. Entries
    are treated as distinguishable items, so duplicate values are allowed.
    The genuine list enters only through its entropy-term sum, which makes the
    result independent of how mimicked and genuine entries would be paired.
    """
    if len(global_spectrum) != n_groups * group_size:
        raise DomainError(
            f"{len(global_spectrum)} global eigenvalues cannot split into "
            f"{n_groups} groups of {group_size}"
        )
    if len(genuine_spectrum) != n_groups:
        raise DomainError(f"expected {n_groups} genuine eigenvalues, got {len(genuine_spectrum)}")
    evals = np.maximum(np.asarray(global_spectrum, dtype=float), 0.0)
    genuine_term = math.fsum(_xlog2x(e) for e in sorted(max(float(g), 0.0) for g in genuine_spectrum))
    best = math.inf
    for partition in _equal_partitions(tuple(range(len(evals))), group_size):
        mimicked = math.fsum(_xlog2x(float(evals[list(g)].sum())) for g in partition)
        best = min(best, abs(mimicked - genuine_term))
    return best


def _partition_count(n: int, group_size: int, n_groups: int) -> int:
    return math.factorial(n) // (math.factorial(group_size) ** n_groups)


def partition_discrepancy(
    rho: DensityMatrix, side: str, max_dim: int = 16, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """One-sided partition measure via exhaustive grouping of the global spectrum."""
    if side not in ("A", "B"):
        raise DomainError(f"side must be 'A' or 'B', got {side!r}")
    dims = rho.dims
    d = dims.total
    if d > max_dim:
        n_groups = dims.dA if side == "A" else dims.dB
        group_size = d // n_groups
        count = _partition_count(d, group_size, n_groups)
        raise CapabilityError(
            f"total dimension {d} exceeds the guard limit {max_dim}: the partition search "
            f"enumerates (d^A d^B)!/(d^B!)^(d^A) groupings, here {count}"
        )
    global_spectrum = hermitian_eig(rho.mat, tol).values
    n_groups = dims.dA if side == "A" else dims.dB
    group_size = dims.dB if side == "A" else dims.dA
    genuine = hermitian_eig(partial_trace(rho.mat, dims, side), tol).values
    return mimic_discrepancy(global_spectrum, genuine, n_groups, group_size)


def partition_measure(rho: DensityMatrix, max_dim: int = 16, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Larger of the two one-sided partition discrepancies."""
    return max(
        partition_discrepancy(rho, "A", max_dim, tol),
        partition_discrepancy(rho, "B", max_dim, tol),
    )


def von_neumann_entropy(mat: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Entropy -sum(w * log2(w)) over eigenvalues above the rank cutoff."""
    w = hermitian_eig(mat, tol).values
    if w[0] < -tol.psd:
        raise DomainError(f"matrix is not positive semidefinite: min eigenvalue {float(w[0]):.3e}")
    return -math.fsum(_xlog2x(float(v)) for v in w if v > tol.rank)


class SchmidtDecomposition(NamedTuple):
    """Coefficients descending; columns of vectors_a/vectors_b pair by position."""

    coefficients: np.ndarray
    vectors_a: np.ndarray
    vectors_b: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.coefficients)


def schmidt_decomposition(vec: np.ndarray, dims, tol: Tolerances = DEFAULT_TOLERANCES) -> SchmidtDecomposition:
    """Schmidt form of a unit vector: vec = sum_k coeff_k |a_k>|b_k>."""
    dims = _as_dims(dims)
    vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != dims.total:
        raise MalformedInputError(f"vector length {vec.shape[0]} does not match dims {dims.dA}x{dims.dB}")
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > 1e-8:
        raise DomainError(f"vector norm {norm} is not 1")
    u, s, vh = np.linalg.svd(vec.reshape(dims.dA, dims.dB), full_matrices=False)
    keep = s**2 > tol.rank
    return SchmidtDecomposition(
        coefficients=s[keep],
        vectors_a=u[:, keep],
        vectors_b=vh[keep].T,
    )


def entropy_of_entanglement(vec: np.ndarray, dims, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Reduced-state entropy of a pure state, from its Schmidt coefficients."""
    c = schmidt_decomposition(vec, dims, tol).coefficients ** 2
    return -math.fsum(_xlog2x(float(v)) for v in c)


def ppt_min_eigenvalue(rho: DensityMatrix) -> float:
    """Minimum eigenvalue of the partial transpose; negative certifies entanglement."""
    return float(np.linalg.eigvalsh(partial_transpose(rho.mat, rho.dims, "B"))[0])
