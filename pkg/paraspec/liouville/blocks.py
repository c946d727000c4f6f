"""Weak-symmetry block decomposition of Liouvillians."""

import logging

import numpy as np

from paraspec.base.constants import BLOCK_COUPLING_TOLERANCE, SectorRule
from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.schemas import FockSpace
from paraspec.liouville.schemas import BlockDecomposition, LiouvillianMatrix, SectorBlock

logger = logging.getLogger(__name__)


def _dyad_grid(space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    n, m = np.divmod(np.arange(space.dim**2), space.dim)
    return n, m


def coherence_sectors(space: FockSpace) -> np.ndarray:
    n, m = _dyad_grid(space)
    return n - m


def parity_sectors(space: FockSpace) -> np.ndarray:
    n, m = _dyad_grid(space)
    return np.mod(n - m, 2)


def excitation_order(space: FockSpace) -> np.ndarray:
    """Permutation of dyad indices sorted by n + m, then n."""
    n, m = _dyad_grid(space)
    return np.lexsort((n, n + m))


def sector_labels(space: FockSpace, rule: SectorRule) -> np.ndarray:
    match rule:
        case SectorRule.U1_COHERENCE:
            return coherence_sectors(space)
        case SectorRule.Z2_PARITY:
            return parity_sectors(space)


def block_decompose(liouvillian: LiouvillianMatrix, rule: SectorRule) -> BlockDecomposition:
    """
    Split the Liouvillian into the blocks of a sector rule.

    The rule is checked against the matrix itself, any coupling between two sectors
    above BLOCK_COUPLING_TOLERANCE makes it inapplicable.
    """
    labels = sector_labels(liouvillian.space, rule)
    coo = liouvillian.entries.tocoo()
    crossing = (labels[coo.row] != labels[coo.col]) & (np.abs(coo.data) > BLOCK_COUPLING_TOLERANCE)
    if np.any(crossing):
        worst = float(np.max(np.abs(coo.data[crossing])))
        raise DomainError.of(
            ErrorCode.RULE_INAPPLICABLE,
            f"rule {rule.value} inapplicable to this model, sectors coupled with magnitude {worst:.3g}",
            rule=rule.value,
            coupling=worst,
        )

    csr = liouvillian.entries
    blocks = []
    for label in np.unique(labels):
        indices = np.flatnonzero(labels == label)
        blocks.append(
            SectorBlock(label=int(label), indices=indices, matrix=csr[indices][:, indices].toarray())
        )
    logger.debug("Decomposed by %s into block sizes %s", rule.value, [block.size for block in blocks])
    return BlockDecomposition(sector_rule=rule, dim=liouvillian.dim, blocks=blocks)
