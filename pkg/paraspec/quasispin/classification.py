"""Quasi-spin labels of Phase II Liouvillian eigenvalues."""

import logging

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.models.constants import INTEGER_TOLERANCE
from paraspec.quasispin.constants import (
    LABEL_BRANCH,
    LABEL_M,
    LABEL_N,
    LABEL_TWO_J,
    LABEL_TWO_JM,
    LABEL_TWO_MJ,
    LABEL_TWO_MJ_PRIME,
    LABEL_TWO_MM,
    Branch,
)
from paraspec.quasispin.oracles import labelled_points, two_j_of
from paraspec.quasispin.schemas import JMLabel, QuasiSpinLabel
from paraspec.spectra.schemas import SpectrumPoint

logger = logging.getLogger(__name__)


def classify_jm(n: int, m: int, j: float) -> JMLabel:
    two_j = two_j_of(j)
    if not (0 <= n <= two_j and 0 <= m <= two_j):
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"dyad ({n}, {m}) outside the j={j} multiplet", n=n, m=m)
    if n + m <= two_j:
        return JMLabel(branch=Branch.RIGHT, two_j=two_j, two_big_j=n + m, two_big_m=n - m)
    return JMLabel(branch=Branch.LEFT, two_j=two_j, two_big_j=2 * two_j - (n + m), two_big_m=m - n)


def enumerate_jm(j: float, kappa: float) -> list[SpectrumPoint]:
    """All (2j + 1)^2 Phase II eigenvalues computed from their (J, M) or (J-bar, M-bar) labels."""
    two_j = two_j_of(j)
    values, labels = [], []
    for n in range(two_j + 1):
        for m in range(two_j + 1):
            spin = QuasiSpinLabel.from_dyad(n, m, two_j)
            jm = classify_jm(n, m, j)
            values.append(jm.eigenvalue(kappa))
            labels.append(
                {
                    LABEL_N: n,
                    LABEL_M: m,
                    LABEL_TWO_J: two_j,
                    LABEL_TWO_MJ: spin.two_mj,
                    LABEL_TWO_MJ_PRIME: spin.two_mj_prime,
                    LABEL_BRANCH: jm.branch.value,
                    LABEL_TWO_JM: jm.two_big_j,
                    LABEL_TWO_MM: jm.two_big_m,
                }
            )
    return labelled_points(values, labels)


def is_accumulation(n: int, m: int, j: float) -> bool:
    """Members of the accumulation point at Re = -kappa j, Im = 0 are the dyads with n + m = 2j and m_j' = -m_j."""
    return n + m == two_j_of(j)


def phase_two_labels(eta_prime: float, n_fock: int) -> list[tuple[int, int]]:
    """Dyads (n, m) that carry quasi-spin labels in a truncated space."""
    if eta_prime < 0 or abs(eta_prime - round(eta_prime)) > INTEGER_TOLERANCE:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"quasi-spin labels need integer eta' >= 0, got {eta_prime}")
    top = min(round(eta_prime), n_fock - 1)
    if top < round(eta_prime):
        logger.warning("Truncation n_fock=%d cuts the j=%s multiplet", n_fock, eta_prime / 2)
    return [(n, m) for n in range(top + 1) for m in range(top + 1)]
