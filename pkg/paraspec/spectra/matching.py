"""Comparison of numerical spectra with closed-form ones."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from paraspec.base.constants import MATCH_EXACT_LIMIT
from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.spectra.schemas import Spectrum, SpectrumPoint

logger = logging.getLogger(__name__)

SpectrumLike = Spectrum | Sequence[SpectrumPoint] | Sequence[complex] | np.ndarray


def as_values(spectrum: SpectrumLike) -> np.ndarray:
    if isinstance(spectrum, Spectrum):
        return spectrum.values
    items = list(spectrum)
    if items and isinstance(items[0], SpectrumPoint):
        return np.array([point.value for point in items], dtype=np.complex128)
    return np.asarray(items, dtype=np.complex128).reshape(-1)


def _greedy_distance(first: np.ndarray, second: np.ndarray) -> float:
    a = first[np.lexsort((first.imag, first.real))]
    b = second[np.lexsort((second.imag, second.real))]
    distances = np.abs(a - b)
    improved = True
    while improved:
        improved = False
        for i in range(b.size - 1):
            swapped = (abs(a[i] - b[i + 1]), abs(a[i + 1] - b[i]))
            if max(swapped) < max(distances[i], distances[i + 1]):
                b[i], b[i + 1] = b[i + 1], b[i]
                distances[i], distances[i + 1] = swapped
                improved = True
    return float(distances.max())


def match_spectra(first: SpectrumLike, second: SpectrumLike) -> float:
    """
    Largest distance in the complex plane between paired eigenvalues of two spectra.

    Spectra up to MATCH_EXACT_LIMIT points are paired by a minimum-cost perfect matching,
    larger ones by lexicographic pairing refined with neighbour swaps.
    """
    a = as_values(first)
    b = as_values(second)
    if a.size != b.size:
        raise DomainError.of(
            ErrorCode.CARDINALITY_MISMATCH, f"cannot match spectra of sizes {a.size} and {b.size}"
        )
    if a.size == 0:
        return 0.0
    if a.size > MATCH_EXACT_LIMIT:
        logger.debug("Matching %d eigenvalues greedily", a.size)
        return max(_greedy_distance(a, b), _greedy_distance(b, a))
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def reflect_harmonic(spectrum: SpectrumLike, kappa: float, n_max: int) -> np.ndarray:
    """Image under lambda -> -kappa N - conj(lambda), a symmetry of the zero-temperature harmonic spectrum."""
    return -kappa * n_max - np.conj(as_values(spectrum))
