"""Diagonalization, steady states and relaxation observables of Liouvillians."""

import logging
from collections.abc import Sequence

import numpy as np
from pydantic import ValidationError
from scipy import linalg, sparse
from scipy.sparse.linalg import splu
from scipy.spatial import cKDTree

from paraspec.base.constants import (
    CLUSTER_RADIUS,
    RELAXATION_NOISE_FACTOR,
    STEADY_STATE_RESIDUAL,
    ZERO_EIGENVALUE_TOLERANCE,
    SectorRule,
)
from paraspec.base.exceptions import ErrorCode, NumericalError
from paraspec.fock.schemas import OperatorMatrix
from paraspec.liouville.blocks import block_decompose
from paraspec.liouville.schemas import LiouvillianMatrix
from paraspec.liouville.superoperator import devectorize
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.spectra.matching import as_values, match_spectra
from paraspec.spectra.schemas import DensityMatrix, GapSummary, PhysicalReport, Spectrum, SpectrumPoint

logger = logging.getLogger(__name__)

# two null-space solves disagreeing beyond this mean the zero eigenvalue is degenerate
STEADY_STATE_AGREEMENT = 1e-6


def multiplicities(values: np.ndarray, radius: float = CLUSTER_RADIUS) -> np.ndarray:
    """Number of eigenvalues within radius * (1 + |lambda|) of each eigenvalue, itself included."""
    if values.size == 0:
        return np.empty(0, dtype=int)
    coordinates = np.column_stack([values.real, values.imag])
    tree = cKDTree(coordinates)
    neighbours = tree.query_ball_point(coordinates, r=radius * (1 + np.abs(values)))
    return np.array([len(found) for found in neighbours], dtype=int)


def _eig(matrix: np.ndarray, *, with_vectors: bool) -> tuple[np.ndarray, np.ndarray | None]:
    try:
        if with_vectors:
            return linalg.eig(matrix)
        return linalg.eigvals(matrix), None
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalError.of(ErrorCode.EIGENSOLVER_FAILURE, f"eigensolver failed: {e}", dim=matrix.shape[0]) from e


def eigendecompose(
    liouvillian: LiouvillianMatrix, rule: SectorRule | None = None, *, with_vectors: bool = False
) -> Spectrum:
    """
    Full spectrum of a Liouvillian, optionally block by block.

    :param rule: Sector rule to decompose by before diagonalizing, the dense matrix is used when None.
    :param with_vectors: Also return right eigenvectors, embedded in the full dyad basis.
    """
    if rule is None:
        values, vectors = _eig(liouvillian.to_dense(), with_vectors=with_vectors)
    else:
        decomposition = block_decompose(liouvillian, rule)
        parts = [_eig(block.matrix, with_vectors=with_vectors) for block in decomposition.blocks]
        values = np.concatenate([part[0] for part in parts])
        vectors = None
        if with_vectors:
            vectors = np.zeros((liouvillian.dim, liouvillian.dim), dtype=np.complex128)
            column = 0
            for block, (_, local) in zip(decomposition.blocks, parts, strict=True):
                vectors[block.indices, column : column + block.size] = local
                column += block.size

    if not np.all(np.isfinite(values)):
        raise NumericalError.of(ErrorCode.EIGENSOLVER_FAILURE, "eigensolver returned non-finite eigenvalues")
    tolerance = ZERO_EIGENVALUE_TOLERANCE * (1 + liouvillian.norm_inf())
    if values.size and values.real.max() > tolerance:
        logger.warning("Eigenvalue with positive real part %.3g above tolerance", values.real.max())

    counts = multiplicities(values)
    points = [SpectrumPoint(value=complex(v), multiplicity=int(c)) for v, c in zip(values, counts, strict=True)]
    return Spectrum(points=points, vectors=vectors)


def preferred_rule(params: HamiltonianParams, channels: Sequence[DissipationChannel]) -> SectorRule | None:
    """
    The finest sector rule the model is known to respect.

    Every k-photon loss channel, thermal or not, conserves n - m, only squeezing breaks it.
    """
    del channels
    if not params.is_squeezed:
        return SectorRule.U1_COHERENCE
    if params.conserves_parity:
        return SectorRule.Z2_PARITY
    return None


def sort_spectrum(points: Sequence[SpectrumPoint], tolerance: float = ZERO_EIGENVALUE_TOLERANCE) -> list[SpectrumPoint]:
    """
    Order by ascending |Re lambda|.

    Points whose |Re| lies within tolerance of the first point of their group are tied and
    ordered by descending Im, then by their labels.
    """
    by_real = sorted(points, key=lambda point: (abs(point.re), -point.im, point.label_key))
    ordered: list[SpectrumPoint] = []
    group: list[SpectrumPoint] = []
    for point in by_real:
        if group and abs(point.re) - abs(group[0].re) > tolerance * (1 + abs(group[0].re)):
            ordered.extend(sorted(group, key=lambda item: (-item.im, item.label_key)))
            group = []
        group.append(point)
    ordered.extend(sorted(group, key=lambda item: (-item.im, item.label_key)))
    return ordered


def gaps(points: Sequence[SpectrumPoint]) -> GapSummary:
    ordered = sort_spectrum(points)
    if len(ordered) < 2:
        raise NumericalError.of(ErrorCode.EMPTY_SPECTRUM, f"gap needs at least two eigenvalues, got {len(ordered)}")
    first = ordered[1]
    second = ordered[2] if len(ordered) > 2 else None
    return GapSummary(
        liouvillian_gap=max(0.0, -first.re),
        hamiltonian_gap=abs(first.im),
        second_gap=None if second is None else max(0.0, -second.re),
    )


def noise_floor(points: Sequence[SpectrumPoint]) -> float:
    """Accuracy of the eigensolver on this spectrum, read off the null eigenvalue lambda_0."""
    ordered = sort_spectrum(points)
    scale = max((abs(point.value) for point in ordered), default=0.0)
    residual = abs(ordered[0].value) if ordered else 0.0
    return max(residual, float(np.finfo(float).eps) * (1 + scale))


def relaxation_time(points: Sequence[SpectrumPoint]) -> float:
    """T_X = -1 / Re lambda_1."""
    summary = gaps(points)
    floor = noise_floor(points)
    if summary.liouvillian_gap <= RELAXATION_NOISE_FACTOR * floor:
        raise NumericalError.of(
            ErrorCode.DIVERGENT_RELAXATION,
            "Liouvillian gap is closed, relaxation time diverges",
            gap=summary.liouvillian_gap,
            floor=floor,
        )
    return 1 / summary.liouvillian_gap


def _is_unitary(liouvillian: LiouvillianMatrix) -> bool:
    dissipative = liouvillian.entries + liouvillian.entries.conj().T
    return dissipative.nnz == 0 or float(abs(dissipative).max()) <= ZERO_EIGENVALUE_TOLERANCE


def _null_solve(liouvillian: LiouvillianMatrix, row: int) -> np.ndarray:
    """Solve L x = 0 with row `row` replaced by the trace condition Tr[x] = 1."""
    dim = liouvillian.dim
    d = liouvillian.space.dim
    keep = np.ones(dim)
    keep[row] = 0.0
    diagonal_dyads = np.arange(d) * (d + 1)
    trace_row = sparse.csr_matrix((np.ones(d), (np.full(d, row), diagonal_dyads)), shape=(dim, dim))
    system = (sparse.diags(keep) @ liouvillian.entries + trace_row).tocsc()
    rhs = np.zeros(dim, dtype=np.complex128)
    rhs[row] = 1.0
    try:
        solution = splu(system).solve(rhs)
    except RuntimeError as e:
        raise NumericalError.of(
            ErrorCode.NON_UNIQUE_STEADY_STATE, f"steady-state manifold not unique: {e}"
        ) from e
    if not np.all(np.isfinite(solution)):
        raise NumericalError.of(ErrorCode.NON_UNIQUE_STEADY_STATE, "steady-state manifold not unique")
    return solution


def steady_state(liouvillian: LiouvillianMatrix) -> DensityMatrix:
    """
    Unique stationary state by a sparse null-space solve.

    The trace condition is imposed in place of the |0><0| and of the |N><N| row, the two solutions
    agree only when the zero eigenvalue is simple.
    """
    space = liouvillian.space
    if space.dim == 1:
        return DensityMatrix(matrix=OperatorMatrix.wrap(space, [[1.0]]))
    if _is_unitary(liouvillian):
        raise NumericalError.of(
            ErrorCode.NON_UNIQUE_STEADY_STATE, "steady-state manifold not unique: no dissipation"
        )

    vacuum = _null_solve(liouvillian, 0)
    top = _null_solve(liouvillian, liouvillian.dim - 1)
    residual = float(np.max(np.abs(liouvillian @ vacuum)))
    if residual > STEADY_STATE_RESIDUAL * max(1.0, liouvillian.norm_inf()):
        raise NumericalError.of(
            ErrorCode.NON_UNIQUE_STEADY_STATE, f"steady-state residual {residual:.3g} too large", residual=residual
        )
    if np.max(np.abs(vacuum - top)) > STEADY_STATE_AGREEMENT:
        raise NumericalError.of(ErrorCode.NON_UNIQUE_STEADY_STATE, "steady-state manifold not unique")

    rho = devectorize(vacuum, space).entries
    rho = (rho + rho.conj().T) / 2
    rho = rho / np.trace(rho).real
    try:
        return DensityMatrix(matrix=OperatorMatrix.wrap(space, rho))
    except ValidationError as e:
        raise NumericalError.of(
            ErrorCode.NON_UNIQUE_STEADY_STATE, f"null-space solution is not a physical state: {e}"
        ) from e


def expectation(rho: DensityMatrix, operator: OperatorMatrix) -> complex:
    """Tr[rho O]."""
    return complex(np.sum(rho.matrix.entries * operator.entries.T))


def check_physical(spectrum: Spectrum | Sequence[SpectrumPoint], scale: float = 1.0) -> PhysicalReport:
    """
    Worst violations of the universal Liouvillian spectral properties.

    :param scale: Norm the zero-eigenvalue tolerance is measured against.
    """
    values = as_values(spectrum)
    if values.size == 0:
        raise NumericalError.of(ErrorCode.EMPTY_SPECTRUM, "cannot check an empty spectrum")
    return PhysicalReport(
        tolerance=ZERO_EIGENVALUE_TOLERANCE * (1 + scale),
        max_real=float(values.real.max()),
        min_abs=float(np.abs(values).min()),
        conjugation_distance=match_spectra(values, values.conj()),
    )
