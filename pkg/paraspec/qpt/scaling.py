"""Finite-size scaling fits and numerical derivatives."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy import stats

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.schemas import FockSpace
from paraspec.models.schemas import HamiltonianParams
from paraspec.qpt.constants import HAMILTONIAN_SCALING_SIZES
from paraspec.qpt.schemas import FirstOrderJump, FirstOrderTrend, ScalingFit
from paraspec.qpt.sweep import hamiltonian_order_parameter

logger = logging.getLogger(__name__)


def fit_power_law(points: Sequence[tuple[float, float]]) -> ScalingFit:
    """
    Least-squares fit of y = A N^B in log-log space.

    :param points: (N, y) pairs with y > 0, at least three of them.
    """
    if len(points) < 3:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, f"power-law fit needs at least 3 points, got {len(points)}")
    sizes = np.array([p[0] for p in points], dtype=float)
    values = np.array([p[1] for p in points], dtype=float)
    if np.any(values <= 0) or np.any(sizes <= 0):
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, "power-law fit needs positive N and y")
    if np.unique(sizes).size < 2:
        raise DomainError.of(ErrorCode.OUT_OF_RANGE, "power-law fit needs at least two distinct N")
    log_n, log_y = np.log(sizes), np.log(values)
    result = stats.linregress(log_n, log_y)
    residual = float(np.max(np.abs(log_y - (result.intercept + result.slope * log_n))))
    fit = ScalingFit(amplitude=float(np.exp(result.intercept)), exponent=float(result.slope), residual=residual)
    logger.info("Power-law fit A=%.6g B=%.6g residual=%.3g", fit.amplitude, fit.exponent, fit.residual)
    return fit


def hamiltonian_critical_scaling(
    eta: float, chi_c: float, sizes: Sequence[int] = HAMILTONIAN_SCALING_SIZES, kerr: float = 1.0
) -> ScalingFit:
    """
    Power law of the closed-system order parameter of the scaled Kerr oscillator at chi_c.

    Smaller sizes are still bending towards the law, the default sizes are past that.
    """
    points = [
        (n, hamiltonian_order_parameter(HamiltonianParams.scaled_kerr(eta, chi_c, n, kerr), FockSpace(n_max=n)))
        for n in sizes
    ]
    logger.debug("Closed-system nu at chi_c=%g: %s", chi_c, points)
    return fit_power_law(points)


def finite_diff_derivative(grid: Sequence[float] | np.ndarray, values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Central differences inside the grid, one-sided at both ends."""
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.size < 3 or grid.size != values.size:
        raise DomainError.of(
            ErrorCode.OUT_OF_RANGE, f"derivative needs >= 3 matching points, got {grid.size} and {values.size}"
        )
    return np.gradient(values, grid, edge_order=1)


def extrapolate_first_order(jumps: Sequence[FirstOrderJump]) -> FirstOrderTrend:
    """Per-N jump locations with a linear trend in 1/N; the intercept is reported, not asserted as the limit."""
    sized = sorted((jump for jump in jumps if jump.n), key=lambda jump: jump.n or 0)
    if len(sized) < 2:
        return FirstOrderTrend(jumps=list(jumps))
    inverse = np.array([1 / jump.n for jump in sized if jump.n])
    result = stats.linregress(inverse, [jump.chi_c for jump in sized])
    return FirstOrderTrend(jumps=sized, slope=float(result.slope), intercept=float(result.intercept))
