"""Boson operators on a truncated Fock space."""

import logging

import numpy as np

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.schemas import FockSpace, OperatorMatrix

logger = logging.getLogger(__name__)


def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix.wrap(space, np.eye(space.dim))


def dyad(space: FockSpace, n: int, m: int) -> OperatorMatrix:
    """The operator |n><m|."""
    if not (0 <= n <= space.n_max and 0 <= m <= space.n_max):
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"dyad ({n}, {m}) outside n_max={space.n_max}")
    entries = np.zeros((space.dim, space.dim))
    entries[n, m] = 1.0
    return OperatorMatrix.wrap(space, entries)


def annihilation(space: FockSpace) -> OperatorMatrix:
    """a|n> = sqrt(n)|n-1>, so A[n-1, n] = sqrt(n)."""
    return OperatorMatrix.wrap(space, np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), k=1))


def creation(space: FockSpace) -> OperatorMatrix:
    return annihilation(space).dagger()


def number(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix.wrap(space, np.diag(np.arange(space.dim, dtype=float)))


def pairing(space: FockSpace, order: int) -> OperatorMatrix:
    """
    Pairing operator of the given order, (a^dagger)^k + a^k.

    An order above n_max leaves nothing to pair inside the truncated space, the result is the zero matrix.
    """
    if order < 1:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"pairing order must be >= 1, got {order}")
    if order > space.n_max:
        logger.warning("Pairing order %d exceeds n_max=%d, pairing operator is zero", order, space.n_max)
        return OperatorMatrix.wrap(space, np.zeros((space.dim, space.dim)))
    lowering = np.linalg.matrix_power(annihilation(space).entries, order)
    return OperatorMatrix.wrap(space, lowering + lowering.conj().T)


def dagger(operator: OperatorMatrix) -> OperatorMatrix:
    return operator.dagger()


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    return a @ b - b @ a


def hs_inner(a: OperatorMatrix, b: OperatorMatrix) -> complex:
    """Hilbert-Schmidt inner product Tr[A^dagger B]."""
    if a.space != b.space:
        raise DomainError.of(
            ErrorCode.DIMENSION_MISMATCH,
            f"Hilbert-Schmidt product of operators with dimensions {a.space.dim} and {b.space.dim}",
        )
    return complex(np.vdot(a.entries, b.entries))
