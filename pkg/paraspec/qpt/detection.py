"""Location of kissing points and of second- and first-order transitions."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy import optimize, stats

from paraspec.base.constants import CLUSTER_RADIUS, DEGENERACY_TOLERANCE
from paraspec.base.exceptions import ErrorCode, NumericalError
from paraspec.fock.schemas import FockSpace
from paraspec.models.constants import ModelFamily
from paraspec.models.hamiltonian import parity_ground_energies
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.qpt.constants import (
    GAP_WINDOW,
    JUMP_FACTOR,
    JUMP_FLOOR,
    KISSING_BISECTION_STEPS,
    KISSING_CHI_RATIO,
    Observable,
)
from paraspec.qpt.schemas import FirstOrderJump, KissingPoint, SecondOrderEstimate, SweepResult
from paraspec.qpt.sweep import hamiltonian_gap_scan, hamiltonian_order_parameter, model_spectrum
from paraspec.spectra.solver import gaps

logger = logging.getLogger(__name__)


def parabolic_vertex(x: np.ndarray, y: np.ndarray, i: int) -> float:
    """Abscissa of the parabola through the grid points i - 1, i, i + 1."""
    x0, x1, x2 = x[i - 1], x[i], x[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denominator = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denominator
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denominator
    if a == 0:
        return float(x1)
    return float(np.clip(-b / (2 * a), x0, x2))


def first_local_minimum(grid: Sequence[float], values: Sequence[float]) -> tuple[float, int]:
    """Parabolically refined position of the first interior local minimum, and its grid index."""
    x = np.asarray(grid, dtype=float)
    y = np.asarray(values, dtype=float)
    for i in range(1, x.size - 1):
        if y[i] <= y[i - 1] and y[i] <= y[i + 1]:
            return parabolic_vertex(x, y, i), i
    raise NumericalError.of(ErrorCode.NOT_DETECTED, "no interior minimum on the grid")


def _parity_splitting(params: HamiltonianParams, xi: float, space: FockSpace) -> float:
    even, odd = parity_ground_energies(params.with_amplitude(2, xi * (params.kerr or 1.0)), space)
    return odd - even


def _ordered_point(params: HamiltonianParams, chi: float, n: int) -> float | None:
    """nu of the scaled model at chi when its two parity ground states are degenerate, else None."""
    kerr = params.kerr or 1.0
    scaled = params.model_copy(update={"scaled": True, "scale_n": n}).with_amplitude(2, chi * n * kerr)
    space = FockSpace(n_max=n)
    even, odd = parity_ground_energies(scaled, space)
    if abs(odd - even) > DEGENERACY_TOLERANCE * max(1.0, abs(min(even, odd))):
        return None
    return hamiltonian_order_parameter(scaled, space)


def ordered_phase_extrapolation(params: HamiltonianParams, xi_grid: Sequence[float], space: FockSpace) -> float:
    """
    Kissing point from the order parameter of the scaled model.

    Each grid point is mapped to chi = xi / 4 of the model scaled by N = n_max. Points with degenerate
    parity ground states are in the ordered phase, where nu grows linearly in chi; the zero of the
    fitted line is chi_c and the kissing point is 4 chi_c.
    """
    grid = np.asarray(xi_grid, dtype=float)
    ordered = []
    for xi in grid:
        chi = xi / KISSING_CHI_RATIO
        nu = _ordered_point(params, chi, space.n_max)
        if nu is not None and nu > 0:
            ordered.append((chi, nu))
    if len(ordered) < 2:
        raise NumericalError.of(
            ErrorCode.NOT_DETECTED, f"{len(ordered)} ordered grid points, a linear fit needs 2", n=space.n_max
        )
    chis, nus = zip(*ordered, strict=True)
    fit = stats.linregress(chis, nus)
    if fit.slope <= 0:
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "order parameter does not grow with chi")
    xi_k = -KISSING_CHI_RATIO * fit.intercept / fit.slope
    logger.debug("Ordered points %s, slope=%.6g", ordered, fit.slope)
    if not grid[0] <= xi_k <= grid[-1]:
        raise NumericalError.of(ErrorCode.NOT_DETECTED, f"extrapolated kissing point {xi_k:.6g} is off the grid")
    return float(xi_k)


def detect_kissing_point(params: HamiltonianParams, xi_grid: Sequence[float], space: FockSpace) -> KissingPoint:
    """
    First squeezing strength where the two lowest levels touch.

    A gap already closed at the first grid point is reported as a boundary minimum. A sign change
    of E_odd,0 - E_even,0 is refined with brentq. Without one, the Kerr oscillator's kissing point
    comes from the ordered phase of its scaled model, and any other model takes the first
    interior minimum of E_1 - E_0.
    """
    grid = np.asarray(xi_grid, dtype=float)
    if grid.size < 3:
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "kissing-point scan needs at least 3 grid points")
    gap = hamiltonian_gap_scan(params, grid, space)
    if gap[0] <= DEGENERACY_TOLERANCE * max(1.0, abs(gap[0])):
        logger.info("Gap closed at the grid boundary xi=%s", grid[0])
        return KissingPoint(xi=float(grid[0]), gap=float(max(gap[0], 0.0)), boundary=True)

    if params.conserves_parity:
        splitting = np.array([_parity_splitting(params, xi, space) for xi in grid])
        changes = np.flatnonzero(np.sign(splitting[1:]) != np.sign(splitting[:-1]))
        if changes.size:
            i = int(changes[0])
            xi = optimize.brentq(lambda value: _parity_splitting(params, value, space), grid[i], grid[i + 1])
            logger.info("Kissing point at xi=%.8g from parity crossing", xi)
            return KissingPoint(xi=float(xi), gap=0.0)
        if params.family is ModelFamily.KERR:
            xi = ordered_phase_extrapolation(params, grid, space)
            logger.info("Kissing point at xi=%.8g from the ordered phase", xi)
            return KissingPoint(xi=xi, gap=float(max(np.interp(xi, grid, gap), 0.0)))

    xi, i = first_local_minimum(grid, gap)
    logger.info("Kissing point at xi=%.8g from gap minimum", xi)
    return KissingPoint(xi=xi, gap=float(gap[i]))


def _coherence_closed(
    params: HamiltonianParams, channels: Sequence[DissipationChannel], xi: float, space: FockSpace
) -> bool:
    spectrum = model_spectrum(params.with_amplitude(2, xi * (params.kerr or 1.0)), channels, space, block_threshold=0)
    summary = gaps(spectrum.points)
    return summary.hamiltonian_gap <= CLUSTER_RADIUS * (1 + summary.liouvillian_gap)


def detect_liouvillian_kissing_point(
    params: HamiltonianParams,
    channels: Sequence[DissipationChannel],
    xi_grid: Sequence[float],
    space: FockSpace,
    steps: int = KISSING_BISECTION_STEPS,
) -> KissingPoint:
    """
    First squeezing strength where the Hamiltonian gap |Im lambda_1| closes.

    The grid is scanned in order until lambda_1 is real, then the bracket is bisected.
    """
    grid = np.asarray(xi_grid, dtype=float)
    if grid.size < 2:
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "kissing-point scan needs at least 2 grid points")
    for i, xi in enumerate(grid):
        if not _coherence_closed(params, channels, xi, space):
            continue
        if i == 0:
            return KissingPoint(xi=float(xi), gap=0.0, boundary=True)
        low, high = float(grid[i - 1]), float(xi)
        for _ in range(steps):
            middle = (low + high) / 2
            if _coherence_closed(params, channels, middle, space):
                high = middle
            else:
                low = middle
        logger.info("Hamiltonian gap of the Liouvillian closes at xi=%.6g", (low + high) / 2)
        return KissingPoint(xi=(low + high) / 2, gap=0.0)
    raise NumericalError.of(ErrorCode.NOT_DETECTED, "Im lambda_1 stays non-zero on the grid")


def detect_critical_point_2nd(
    result: SweepResult,
    chi_c: float | None = None,
    window: tuple[float, float] = GAP_WINDOW,
) -> SecondOrderEstimate:
    """
    chi_max of the Liouvillian gap maximum per N, and Delta chi_1 = chi_max - chi_c.

    :param chi_c: Known critical point (a quarter of the kissing point); without it chi_c is the
        linear-in-1/N extrapolation of chi_max.
    """
    chi_max: dict[int, float] = {}
    for n in result.n_values:
        grid, gap = result.series(Observable.GAP, n)
        inside = (grid >= window[0]) & (grid <= window[1])
        grid, gap = grid[inside], gap[inside]
        if grid.size < 3:
            raise NumericalError.of(ErrorCode.NOT_DETECTED, f"too few gap values in window {window} at N={n}")
        i = int(np.argmax(gap))
        if i in (0, grid.size - 1):
            raise NumericalError.of(ErrorCode.NOT_DETECTED, f"gap maximum at the window edge for N={n}", n=n)
        chi_max[n] = parabolic_vertex(grid, gap, i)

    known = chi_c is not None
    if chi_c is None:
        if len(chi_max) < 2:
            raise NumericalError.of(ErrorCode.NOT_DETECTED, "extrapolating chi_c needs at least two sizes")
        sizes = sorted(chi_max)
        chi_c = float(stats.linregress([1 / n for n in sizes], [chi_max[n] for n in sizes]).intercept)
    return SecondOrderEstimate(
        chi_c=chi_c,
        chi_c_known=known,
        chi_max=chi_max,
        delta_chi={n: value - chi_c for n, value in chi_max.items()},
    )


def detect_first_order_jump(
    grid: Sequence[float] | np.ndarray, nu: Sequence[float] | np.ndarray, n: int | None = None
) -> FirstOrderJump:
    """
    Largest single-step increase of the order parameter, accepted when it exceeds JUMP_FACTOR
    times the median step and JUMP_FLOOR.
    """
    x = np.asarray(grid, dtype=float)
    y = np.asarray(nu, dtype=float)
    if x.size < 3 or np.any(np.diff(x) <= 0):
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "jump detection needs a monotone grid of >= 3 points")
    steps = np.diff(y)
    i = int(np.argmax(steps))
    median = float(np.median(np.abs(steps)))
    if steps[i] <= max(JUMP_FACTOR * median, JUMP_FLOOR):
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "no discontinuity in the order parameter", n=n)
    return FirstOrderJump(n=n, chi_c=float((x[i] + x[i + 1]) / 2), jump=float(steps[i]))
