"""Closed-form Liouvillian spectra."""

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
from scipy.special import perm

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.models.schemas import DissipationChannel
from paraspec.quasispin.constants import (
    LABEL_M,
    LABEL_N,
    LABEL_NU,
    LABEL_NU_PRIME,
    LABEL_TWO_J,
    LABEL_TWO_MJ,
    LABEL_TWO_MJ_PRIME,
)
from paraspec.quasispin.schemas import AnharmonicApprox, QuasiSpinLabel, QuasiSpinLevel, doubled
from paraspec.spectra.schemas import SpectrumPoint
from paraspec.spectra.solver import multiplicities

logger = logging.getLogger(__name__)


def labelled_points(values: Sequence[complex], labels: Sequence[dict], copies: int = 1) -> list[SpectrumPoint]:
    array = np.asarray(values, dtype=np.complex128)
    counts = multiplicities(array) * copies
    return [
        SpectrumPoint(value=complex(value), labels=label, multiplicity=int(count))
        for value, label, count in zip(array, labels, counts, strict=True)
    ]


def oracle_u1(
    energies: Sequence[float] | np.ndarray, channels: Iterable[DissipationChannel], n_fock: int
) -> list[SpectrumPoint]:
    """
    Spectrum of a diagonal Hamiltonian under zero-temperature k-photon loss.

    lambda_{n,m} = -i (E_n - E_m) - sum_k kappa_k / 2 [n!/(n-k)! + m!/(m-k)!]
    """
    energies = np.asarray(energies, dtype=float)
    if energies.size < n_fock:
        raise DomainError.of(ErrorCode.DIMENSION_MISMATCH, f"{energies.size} energies for n_fock={n_fock}")
    channels = list(channels)
    if any(channel.is_thermal for channel in channels):
        raise DomainError.of(ErrorCode.RULE_INAPPLICABLE, "no closed form for thermal channels")
    n, m = np.divmod(np.arange(n_fock * n_fock), n_fock)
    decay = np.zeros(n.size)
    for channel in channels:
        decay += channel.kappa / 2 * (perm(n, channel.order) + perm(m, channel.order))
    values = -1j * (energies[n] - energies[m]) - decay
    labels = [{LABEL_N: int(a), LABEL_M: int(b)} for a, b in zip(n, m, strict=True)]
    return labelled_points(values, labels)


def oracle_harmonic(omega: float, kappa: float, n_fock: int) -> list[SpectrumPoint]:
    return oracle_u1(omega * np.arange(n_fock), [DissipationChannel.linear(kappa)], n_fock)


def kerr_energies(eta_prime: float, n_fock: int) -> np.ndarray:
    n = np.arange(n_fock, dtype=float)
    return -eta_prime * n + n**2


def oracle_kerr(eta_prime: float, kappa: float, n_fock: int) -> list[SpectrumPoint]:
    return oracle_u1(kerr_energies(eta_prime, n_fock), [DissipationChannel.linear(kappa)], n_fock)


def oracle_quadratic_dissipation(eta_prime: float, kappa2: float, n_fock: int) -> list[SpectrumPoint]:
    return oracle_u1(kerr_energies(eta_prime, n_fock), [DissipationChannel.quadratic(kappa2)], n_fock)


def two_j_of(j: float) -> int:
    try:
        two_j = doubled(j)
    except ValueError as e:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"2j must be a non-negative integer, got j={j}") from e
    if two_j < 0:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"2j must be a non-negative integer, got j={j}")
    return two_j


def oracle_su2(j: float, kappa: float) -> list[SpectrumPoint]:
    """Phase II spectrum of a spin-j multiplet, labelled by (m_j, m_j')."""
    two_j = two_j_of(j)
    labels = [
        QuasiSpinLabel(two_j=two_j, two_mj=two_mj, two_mj_prime=two_mjp)
        for two_mj in range(two_j, -two_j - 1, -2)
        for two_mjp in range(two_j, -two_j - 1, -2)
    ]
    values = [label.eigenvalue(kappa) for label in labels]
    tags = [
        {
            LABEL_N: label.n,
            LABEL_M: label.m,
            LABEL_TWO_J: two_j,
            LABEL_TWO_MJ: label.two_mj,
            LABEL_TWO_MJ_PRIME: label.two_mj_prime,
        }
        for label in labels
    ]
    return labelled_points(values, tags)


def stability_boundary(omega: float, kappa: float) -> float:
    return 0.5 * math.sqrt(omega**2 + kappa**2 / 4)


def oracle_squeezed_harmonic(omega: float, eps2: float, kappa: float, count: int) -> list[SpectrumPoint]:
    """
    Lowest `count` eigenvalues of the squeezed harmonic oscillator, ordered by (n1 + n2, n1).

    The oscillator keeps its form with the renormalized frequency sqrt(omega^2 - 4 eps2^2)
    while eps2 <= |omega| / 2.
    """
    if 2 * abs(eps2) > abs(omega):
        raise DomainError.of(
            ErrorCode.UNSTABLE_REGIME,
            f"eps2={eps2} outside stable regime |eps2| <= |omega|/2={abs(omega) / 2}, no closed form implemented",
            omega=omega,
            eps2=eps2,
        )
    frequency = math.copysign(math.sqrt(max(0.0, omega**2 - 4 * eps2**2)), omega)
    values, labels = [], []
    shell = 0
    while len(values) < count:
        for n1 in range(shell + 1):
            if len(values) == count:
                break
            n2 = shell - n1
            values.append(complex(-kappa / 2 * (n1 + n2), -frequency * (n1 - n2)))
            labels.append({LABEL_N: n1, LABEL_M: n2})
        shell += 1
    return labelled_points(values, labels)


def oracle_anharmonic_phase2(xi: float, n_eff: float, kappa: float, nu_max: int) -> list[SpectrumPoint]:
    """Approximate strong-squeezing spectrum with E_nu = 4 xi nu (1 - nu / N_eff), parity doubled."""
    if nu_max > n_eff:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"nu_max={nu_max} exceeds N_eff={n_eff}")
    levels = [AnharmonicApprox(nu=nu, parity=1, n_eff=n_eff, xi=xi) for nu in range(nu_max + 1)]
    values, labels = [], []
    for first in levels:
        for second in levels:
            values.append(complex(-kappa / 2 * (first.nu + second.nu), -(first.energy - second.energy)))
            labels.append({LABEL_NU: first.nu, LABEL_NU_PRIME: second.nu})
    return labelled_points(values, labels, copies=2)


def quasispin_energies(j: float) -> list[QuasiSpinLevel]:
    two_j = two_j_of(j)
    offset = 0.25 if two_j % 2 else 0.0
    levels = []
    for two_mj in range(-two_j, two_j + 1, 2):
        m_j = two_mj / 2
        levels.append(QuasiSpinLevel(two_mj=two_mj, energy=m_j**2 - offset, total_energy=m_j**2 - (two_j / 2) ** 2))
    return levels
