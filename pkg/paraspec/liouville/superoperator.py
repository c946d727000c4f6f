"""Vectorization and Liouvillian assembly in the dyad basis."""

import logging
import math

import numpy as np
from scipy import sparse

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.operators import annihilation, creation
from paraspec.fock.schemas import FockSpace, OperatorMatrix
from paraspec.liouville.schemas import LiouvillianMatrix
from paraspec.models.hamiltonian import build_hamiltonian
from paraspec.models.schemas import DissipationChannel, HamiltonianParams

logger = logging.getLogger(__name__)


def vectorize(operator: OperatorMatrix) -> np.ndarray:
    """Row-major stacking, A[n, m] lands at n * dim + m."""
    return operator.entries.reshape(-1).copy()


def devectorize(vector: np.ndarray, space: FockSpace | None = None) -> OperatorMatrix:
    vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
    dim = math.isqrt(vector.size)
    if dim == 0 or dim * dim != vector.size:
        raise DomainError.of(ErrorCode.DIMENSION_MISMATCH, f"vector length {vector.size} is not a square")
    if space is None:
        space = FockSpace.from_dim(dim)
    elif space.dim != dim:
        raise DomainError.of(
            ErrorCode.DIMENSION_MISMATCH, f"vector length {vector.size} does not match space dimension {space.dim}"
        )
    return OperatorMatrix.wrap(space, vector.reshape(dim, dim))


def _sparse(operator: OperatorMatrix) -> sparse.csr_matrix:
    return sparse.csr_matrix(operator.entries)


def _identity(space: FockSpace) -> sparse.csr_matrix:
    return sparse.identity(space.dim, dtype=np.complex128, format="csr")


def left_super(operator: OperatorMatrix) -> LiouvillianMatrix:
    """O A  ->  (O x I) vec(A)."""
    return LiouvillianMatrix(
        space=operator.space, entries=sparse.kron(_sparse(operator), _identity(operator.space), format="csr")
    )


def right_super(operator: OperatorMatrix) -> LiouvillianMatrix:
    """A O  ->  (I x O^T) vec(A)."""
    return LiouvillianMatrix(
        space=operator.space, entries=sparse.kron(_identity(operator.space), _sparse(operator).T, format="csr")
    )


def hamiltonian_part(hamiltonian: OperatorMatrix) -> sparse.csr_matrix:
    space = hamiltonian.space
    h = _sparse(hamiltonian)
    identity = _identity(space)
    return (-1j * (sparse.kron(h, identity) - sparse.kron(identity, h.T))).tocsr()


def dissipator(jump: OperatorMatrix, rate: float) -> sparse.csr_matrix:
    """rate * (G rho G^dagger - {G^dagger G, rho} / 2) in the dyad basis."""
    space = jump.space
    g = _sparse(jump)
    gdg = g.conj().T @ g
    identity = _identity(space)
    return (
        rate
        * (
            sparse.kron(g, g.conj())
            - 0.5 * sparse.kron(gdg, identity)
            - 0.5 * sparse.kron(identity, gdg.T)
        )
    ).tocsr()


def channel_part(channel: DissipationChannel, space: FockSpace) -> sparse.csr_matrix:
    """
    Superoperator of one dissipation channel.

    A thermal linear channel is kappa (1 + n_th) D[a] + kappa n_th D[a^dagger], with a^dagger truncated,
    so trace preservation holds exactly at the truncation edge.
    """
    lowering = OperatorMatrix.wrap(space, np.linalg.matrix_power(annihilation(space).entries, channel.order))
    if not channel.is_thermal:
        return dissipator(lowering, channel.kappa)
    return dissipator(lowering, channel.kappa * (1 + channel.n_th)) + dissipator(
        creation(space), channel.kappa * channel.n_th
    )


def assemble(
    params: HamiltonianParams, channels: list[DissipationChannel], space: FockSpace
) -> LiouvillianMatrix:
    entries = hamiltonian_part(build_hamiltonian(params, space))
    for channel in channels:
        if channel.kappa:
            entries = entries + channel_part(channel, space)
    entries = entries.tocsr()
    entries.eliminate_zeros()
    logger.debug("Assembled Liouvillian of dimension %d with %d non-zeros", space.dim**2, entries.nnz)
    return LiouvillianMatrix(space=space, entries=entries)
