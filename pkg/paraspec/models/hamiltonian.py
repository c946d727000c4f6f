"""Hamiltonian matrices and closed-system spectra of the oscillator models."""

import logging

import numpy as np
from scipy import linalg

from paraspec.base.constants import DEGENERACY_TOLERANCE, Phase
from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.operators import pairing
from paraspec.fock.schemas import FockSpace, OperatorMatrix
from paraspec.models.constants import KISSING_ETA_RANGE, SEPARATRIX_OFFSET, ModelFamily
from paraspec.models.schemas import HamiltonianLevel, HamiltonianParams

logger = logging.getLogger(__name__)


def diagonal_energies(params: HamiltonianParams, space: FockSpace) -> np.ndarray:
    """
    Diagonal of the Hamiltonian in the Fock basis.

    These are the exact energies E_n whenever no squeezing drive is present.
    """
    n = np.arange(space.dim, dtype=float)
    scale = params.scale_for(space)
    if params.family is ModelFamily.HARMONIC:
        energies = params.omega * n
    else:
        energies = -params.omega * n + (params.kerr / scale) * n * (n - 1)
    for power, coefficient in enumerate(params.number_polynomial, start=1):
        energies = energies + coefficient * n**power
    return energies


def build_hamiltonian(params: HamiltonianParams, space: FockSpace) -> OperatorMatrix:
    scale = params.scale_for(space)
    entries = np.diag(diagonal_energies(params, space)).astype(np.complex128)
    for drive in params.squeeze_amps:
        if drive.amplitude:
            entries -= (drive.amplitude / scale) * pairing(space, drive.order).entries
    return OperatorMatrix.wrap(space, entries)


def separatrix_energy(eta: float) -> float:
    return eta / 2 + eta**2 / 4


def kissing_point(eta: float) -> float:
    low, high = KISSING_ETA_RANGE
    if not low <= eta <= high:
        raise DomainError.of(
            ErrorCode.OUT_OF_RANGE,
            f"kissing point formula not established for eta={eta}, valid range is [{low}, {high}]",
            eta=eta,
        )
    return -2 * eta


def sector_indices(space: FockSpace, parity: int) -> np.ndarray:
    return np.arange(0 if parity == 1 else 1, space.dim, 2)


def _is_sector_tridiagonal(params: HamiltonianParams) -> bool:
    return all(drive.order == 2 for drive in params.squeeze_amps if drive.amplitude)


def sector_eigh(
    params: HamiltonianParams, space: FockSpace, parity: int, count: int | None = None, *, vectors: bool = False
) -> tuple[np.ndarray, np.ndarray | None]:
    """
    Diagonalize the Hamiltonian restricted to one Fock parity sector.

    Only valid for parity-conserving models. Returns ascending energies and, when requested,
    eigenvectors embedded in the full Fock space as columns.

    :param parity: +1 for the even sector, -1 for the odd one.
    :param count: Number of lowest levels to compute, all of them when None.
    """
    idx = sector_indices(space, parity)
    if idx.size == 0:
        return np.empty(0), (np.empty((space.dim, 0)) if vectors else None)
    count = idx.size if count is None else min(count, idx.size)
    if idx.size == 1:
        energies = diagonal_energies(params, space)[idx]
        local = np.ones((1, 1))
    elif _is_sector_tridiagonal(params):
        # P_2 only couples n to n + 2, the sector matrix is tridiagonal
        diagonal = diagonal_energies(params, space)[idx]
        lower = idx[:-1]
        off = -(params.amplitude(2) / params.scale_for(space)) * np.sqrt((lower + 1.0) * (lower + 2.0))
        result = linalg.eigh_tridiagonal(
            diagonal, off, eigvals_only=not vectors, select="i", select_range=(0, count - 1)
        )
        energies, local = (result, None) if not vectors else result
    else:
        matrix = build_hamiltonian(params, space).entries.real[np.ix_(idx, idx)]
        result = linalg.eigh(matrix, eigvals_only=not vectors, subset_by_index=[0, count - 1])
        energies, local = (result, None) if not vectors else result
    if not vectors:
        return np.asarray(energies)[:count], None
    embedded = np.zeros((space.dim, count))
    embedded[idx, :] = np.asarray(local)[:, :count]
    return np.asarray(energies)[:count], embedded


def parity_ground_energies(params: HamiltonianParams, space: FockSpace) -> tuple[float, float]:
    """Lowest energy of the even and of the odd sector."""
    even, _ = sector_eigh(params, space, 1, count=1)
    odd, _ = sector_eigh(params, space, -1, count=1)
    return float(even[0]), float(odd[0]) if odd.size else float("inf")


def ground_state(params: HamiltonianParams, space: FockSpace) -> tuple[float, np.ndarray]:
    if params.conserves_parity:
        candidates = [sector_eigh(params, space, parity, count=1, vectors=True) for parity in (1, -1)]
        energy, vector = min(
            ((float(e[0]), v[:, 0]) for e, v in candidates if e.size), key=lambda item: item[0]
        )
        return energy, vector
    energies, vectors = linalg.eigh(build_hamiltonian(params, space).entries, subset_by_index=[0, 0])
    return float(energies[0]), vectors[:, 0]


def _unsqueezed_phases(params: HamiltonianParams, energies: np.ndarray) -> list[Phase]:
    # quasi-spin multiplets exist only for integer eta and positive K
    if (
        params.family is not ModelFamily.KERR
        or params.kerr <= 0
        or params.scaled
        or params.number_polynomial
        or not params.is_integer_eta
        or params.eta_prime < 0
    ):
        return [Phase.I] * energies.size
    excitation = (energies - energies.min()) / params.kerr
    threshold = separatrix_energy(round(params.eta)) + SEPARATRIX_OFFSET + DEGENERACY_TOLERANCE
    return [Phase.II if value <= threshold else Phase.I for value in excitation]


def _paired_phases(energies: np.ndarray) -> list[Phase]:
    phases = []
    for i, energy in enumerate(energies):
        tol = DEGENERACY_TOLERANCE * max(1.0, abs(energy))
        neighbours = [energies[j] for j in (i - 1, i + 1) if 0 <= j < energies.size]
        phases.append(Phase.II if any(abs(energy - other) < tol for other in neighbours) else Phase.I)
    return phases


def closed_spectrum(params: HamiltonianParams, space: FockSpace) -> list[HamiltonianLevel]:
    """
    All Hamiltonian levels in ascending energy with parity and phase labels.

    Parity comes from sector membership; degenerate levels are listed even parity first.
    """
    if not params.is_squeezed:
        energies = diagonal_energies(params, space)
        parities = np.where(np.arange(space.dim) % 2 == 0, 1, -1)
        phases = _unsqueezed_phases(params, energies)
    elif params.conserves_parity:
        even, _ = sector_eigh(params, space, 1)
        odd, _ = sector_eigh(params, space, -1)
        energies = np.concatenate([even, odd])
        parities = np.concatenate([np.ones(even.size, dtype=int), -np.ones(odd.size, dtype=int)])
        phases = None
    else:
        energies, vectors = linalg.eigh(build_hamiltonian(params, space).entries)
        even_weight = np.sum(np.abs(vectors[sector_indices(space, 1), :]) ** 2, axis=0)
        parities = np.where(even_weight >= 0.5, 1, -1)
        phases = None
        logger.debug("Odd-order squeezing mixes parity, labels follow the dominant sector")

    order = np.lexsort((-parities, energies))
    energies = np.asarray(energies)[order]
    parities = np.asarray(parities)[order]
    if phases is None:
        phases = _paired_phases(energies)
    else:
        phases = [phases[i] for i in order]

    return [
        HamiltonianLevel(index=i, energy=float(e), parity=int(p), phase=phase)
        for i, (e, p, phase) in enumerate(zip(energies, parities, phases, strict=True))
    ]
