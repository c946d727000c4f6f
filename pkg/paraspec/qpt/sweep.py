"""Parameter sweeps of steady-state and spectral observables."""

import asyncio
import logging
from collections.abc import Sequence
from functools import partial

import numpy as np

from paraspec.base.exceptions import DomainError, ErrorCode, ErrorDetail, NumericalError
from paraspec.base.runner import TaskRunner
from paraspec.fock.operators import number
from paraspec.fock.schemas import FockSpace
from paraspec.liouville.superoperator import assemble
from paraspec.models.hamiltonian import closed_spectrum, ground_state, sector_eigh
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.qpt.constants import (
    CONVERGENCE_BUDGET,
    CONVERGENCE_START,
    DEFAULT_BLOCK_THRESHOLD,
    Observable,
    SweepAxis,
)
from paraspec.qpt.schemas import ConvergenceResult, ModelTemplate, SweepConfig, SweepResult, SweepRow
from paraspec.spectra.matching import match_spectra
from paraspec.spectra.schemas import Spectrum
from paraspec.spectra.solver import (
    eigendecompose,
    expectation,
    gaps,
    preferred_rule,
    relaxation_time,
    sort_spectrum,
    steady_state,
)

logger = logging.getLogger(__name__)

SPECTRAL_OBSERVABLES = {Observable.GAP, Observable.HAMILTONIAN_GAP, Observable.GAP2, Observable.T_X}


def _size_of(params: HamiltonianParams, space: FockSpace) -> float:
    return params.scale_for(space) if params.scaled else float(max(space.n_max, 1))


def apply_axis(
    template: ModelTemplate, axis: SweepAxis, value: float, n: int
) -> tuple[HamiltonianParams, list[DissipationChannel], FockSpace]:
    """Model at one grid point; n is the truncation n_max and the scale N of scaled models."""
    params = template.hamiltonian
    channels = list(template.channels)
    kerr = params.kerr or 1.0
    if params.scaled:
        params = params.at_scale(n)
    match axis:
        case SweepAxis.XI:
            params = params.with_amplitude(2, value * kerr)
        case SweepAxis.CHI:
            params = params.model_copy(update={"scaled": True, "scale_n": n}).with_amplitude(2, value * n * kerr)
        case SweepAxis.ETA:
            params = params.model_copy(update={"omega": value * kerr})
        case SweepAxis.N_TH:
            if not any(channel.order == 1 for channel in channels):
                raise DomainError.of(ErrorCode.INVALID_CONFIG, "an n_th sweep needs a linear dissipation channel")
            channels = [
                channel.model_copy(update={"n_th": value}) if channel.order == 1 else channel for channel in channels
            ]
    return params, channels, FockSpace(n_max=n)


def order_parameter(params: HamiltonianParams, channels: Sequence[DissipationChannel], space: FockSpace) -> float:
    """nu = Tr[rho_ss n] / N."""
    rho = steady_state(assemble(params, list(channels), space))
    return expectation(rho, number(space)).real / _size_of(params, space)


def hamiltonian_order_parameter(params: HamiltonianParams, space: FockSpace) -> float:
    """nu = <n> / N in the closed-system ground state."""
    _, vector = ground_state(params, space)
    return float(np.sum(np.arange(space.dim) * np.abs(vector) ** 2)) / _size_of(params, space)


def _lowest_two(params: HamiltonianParams, space: FockSpace) -> np.ndarray:
    if params.conserves_parity:
        energies = np.concatenate([sector_eigh(params, space, parity, count=2)[0] for parity in (1, -1)])
        return np.sort(energies)[:2]
    return np.array([level.energy for level in closed_spectrum(params, space)[:2]])


def hamiltonian_gap_scan(
    params: HamiltonianParams, xi_grid: Sequence[float], space: FockSpace
) -> np.ndarray:
    """E_1 - E_0 at each squeezing xi, eps_2 = xi K."""
    kerr = params.kerr or 1.0
    gaps_ = []
    for xi in xi_grid:
        lowest = _lowest_two(params.with_amplitude(2, xi * kerr), space)
        gaps_.append(lowest[1] - lowest[0] if lowest.size > 1 else np.inf)
    return np.array(gaps_)


def model_spectrum(
    params: HamiltonianParams,
    channels: Sequence[DissipationChannel],
    space: FockSpace,
    block_threshold: int = DEFAULT_BLOCK_THRESHOLD,
) -> Spectrum:
    liouvillian = assemble(params, list(channels), space)
    rule = None
    if liouvillian.dim > block_threshold:
        rule = preferred_rule(params, channels)
        if rule is None:
            logger.warning("No sector rule applies, diagonalizing dimension %d densely", liouvillian.dim)
    return eigendecompose(liouvillian, rule)


def evaluate_point(
    params: HamiltonianParams,
    channels: Sequence[DissipationChannel],
    space: FockSpace,
    observables: Sequence[Observable],
    block_threshold: int = DEFAULT_BLOCK_THRESHOLD,
) -> dict[str, float]:
    values: dict[str, float] = {}
    if Observable.NU in observables:
        values[Observable.NU.value] = order_parameter(params, channels, space)
    if SPECTRAL_OBSERVABLES.intersection(observables):
        points = model_spectrum(params, channels, space, block_threshold).points
        summary = gaps(points)
        if Observable.GAP in observables:
            values[Observable.GAP.value] = summary.liouvillian_gap
        if Observable.HAMILTONIAN_GAP in observables:
            values[Observable.HAMILTONIAN_GAP.value] = summary.hamiltonian_gap
        if Observable.GAP2 in observables and summary.second_gap is not None:
            values[Observable.GAP2.value] = summary.second_gap
        if Observable.T_X in observables:
            values[Observable.T_X.value] = relaxation_time(points)
    return values


def _evaluate_row(config: SweepConfig, point: tuple[float, int]) -> dict[str, float]:
    value, n = point
    params, channels, space = apply_axis(config.template, config.axis, value, n)
    return evaluate_point(params, channels, space, config.observables, config.block_threshold)


def _row(coordinates: dict[str, float], n: int, outcome: dict[str, float] | ErrorDetail) -> SweepRow:
    if isinstance(outcome, ErrorDetail):
        return SweepRow(coordinates=coordinates, n=n, error=outcome)
    return SweepRow(coordinates=coordinates, n=n, values=outcome)


async def sweep(config: SweepConfig, runner: TaskRunner | None = None) -> SweepResult:
    """
    Evaluate the configured observables on every (grid value, N) pair.

    A failing point is stored with its error, the remaining points are still computed.
    """
    runner = runner or TaskRunner()
    points = [(value, n) for value in config.grid for n in config.n_list]
    logger.info("Sweeping %s over %d points with %d workers", config.axis.value, len(points), runner.workers)
    outcomes = await runner.map_guarded(partial(_evaluate_row, config), points)
    rows = [_row({config.axis.value: value}, n, outcome) for (value, n), outcome in zip(points, outcomes, strict=True)]
    rows.sort(key=lambda row: row.sort_key)
    return SweepResult(axes=[config.axis.value], rows=rows)


def run_sweep(config: SweepConfig, workers: int | None = None) -> SweepResult:
    return asyncio.run(sweep(config, TaskRunner(workers)))


def _relaxation_point(point: tuple[float, float], kappa: float, n_th: float, space: FockSpace) -> dict[str, float]:
    eta, xi = point
    params = HamiltonianParams.kerr_oscillator(eta, xi)
    channel = DissipationChannel.linear(kappa, n_th)
    return evaluate_point(params, [channel], space, [Observable.T_X])


async def relaxation_surface(
    eta_grid: Sequence[float],
    xi_grid: Sequence[float],
    kappa: float,
    n_th: float,
    space: FockSpace,
    runner: TaskRunner | None = None,
) -> SweepResult:
    """T_X of the squeezed Kerr oscillator (K = 1) over an (eta, xi) grid."""
    runner = runner or TaskRunner()
    points = [(eta, xi) for eta in eta_grid for xi in xi_grid]
    outcomes = await runner.map_guarded(partial(_relaxation_point, kappa=kappa, n_th=n_th, space=space), points)
    rows = [
        _row({"eta": eta, "xi": xi}, space.n_max, outcome)
        for (eta, xi), outcome in zip(points, outcomes, strict=True)
    ]
    rows.sort(key=lambda row: row.sort_key)
    return SweepResult(axes=["eta", "xi"], rows=rows)


def run_relaxation_surface(
    eta_grid: Sequence[float],
    xi_grid: Sequence[float],
    kappa: float,
    n_th: float,
    space: FockSpace,
    workers: int | None = None,
) -> SweepResult:
    return asyncio.run(relaxation_surface(eta_grid, xi_grid, kappa, n_th, space, TaskRunner(workers)))


def _lowest_values(
    params: HamiltonianParams, channels: Sequence[DissipationChannel], n_max: int, k: int
) -> np.ndarray:
    points = sort_spectrum(model_spectrum(params, channels, FockSpace(n_max=n_max)).points)
    return np.array([point.value for point in points[:k]])


def convergence_N(
    params: HamiltonianParams,
    channels: Sequence[DissipationChannel],
    k: int,
    tol: float,
    start: int = CONVERGENCE_START,
    budget: int = CONVERGENCE_BUDGET,
) -> ConvergenceResult:
    """
    Smallest n_max of the doubling schedule whose k lowest-|Re| eigenvalues move by less than tol when n_max doubles.
    """
    if params.scaled and params.scale_n is None:
        raise DomainError.of(ErrorCode.INVALID_CONFIG, "convergence of a scaled model needs a fixed scale_n")
    n_max = start
    current = _lowest_values(params, channels, n_max, k)
    while 2 * n_max <= budget:
        refined = _lowest_values(params, channels, 2 * n_max, k)
        size = min(current.size, refined.size)
        shift = match_spectra(current[:size], refined[:size])
        logger.debug("Convergence n_max=%d shift=%.3g", n_max, shift)
        if shift < tol:
            return ConvergenceResult(n_conv=n_max, shift=shift)
        n_max, current = 2 * n_max, refined
    raise NumericalError.of(
        ErrorCode.NOT_CONVERGED, f"no convergence to {tol} within n_max <= {budget}", budget=budget, k=k
    )
