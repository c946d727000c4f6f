"""Subcommand implementations, each returning the files it wrote."""

import logging
from pathlib import Path

import numpy as np
from scipy.optimize import linear_sum_assignment

from paraspec.base.constants import Phase, SectorRule
from paraspec.base.exceptions import DomainError, ErrorCode, NumericalError
from paraspec.cli.constants import SQUEEZED_ORACLE_COUNT, TransitionKind
from paraspec.cli.schemas import RunConfig, grid_values
from paraspec.cli.writers import write_manifest, write_table
from paraspec.fock.schemas import FockSpace
from paraspec.liouville.superoperator import assemble
from paraspec.models.constants import ModelFamily
from paraspec.models.hamiltonian import diagonal_energies
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.qpt.constants import Observable, SweepAxis
from paraspec.qpt.detection import detect_critical_point_2nd, detect_first_order_jump
from paraspec.qpt.scaling import extrapolate_first_order, fit_power_law
from paraspec.qpt.schemas import ModelTemplate, SweepConfig, SweepResult
from paraspec.qpt.sweep import apply_axis, convergence_N, order_parameter, run_relaxation_surface, run_sweep
from paraspec.quasispin.classification import classify_jm, enumerate_jm, is_accumulation, phase_two_labels
from paraspec.quasispin.oracles import oracle_squeezed_harmonic, oracle_u1
from paraspec.quasispin.schemas import QuasiSpinLabel
from paraspec.spectra.schemas import SpectrumPoint
from paraspec.spectra.solver import eigendecompose, preferred_rule, sort_spectrum

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = (
    "re",
    "im",
    "multiplicity",
    "n",
    "m",
    "phase",
    "m_j",
    "m_j_prime",
    "branch",
    "J",
    "M",
    "oracle_re",
    "oracle_im",
)
CLASSIFY_COLUMNS = ("n", "m", "m_j", "m_j_prime", "branch", "J", "M", "re", "im", "accumulation")


def _out_dir(config: RunConfig) -> Path:
    return Path(config.output.path)


def resolve_space(config: RunConfig) -> FockSpace:
    if config.space.n_fock is not None:
        return FockSpace.from_dim(config.space.n_fock)
    params = config.model.to_params()
    result = convergence_N(params, config.channels, config.space.k, config.space.tol)
    logger.info("Converged truncation n_max=%d", result.n_conv)
    return FockSpace(n_max=result.n_conv)


def _linear_channel(config: RunConfig) -> DissipationChannel:
    channel = next((channel for channel in config.channels if channel.order == 1), None)
    if channel is None:
        raise DomainError.of(ErrorCode.INVALID_CONFIG, "this command needs a linear dissipation channel")
    return channel


def _finish(config: RunConfig, command: str, files: list[Path]) -> list[Path]:
    return [*files, write_manifest(_out_dir(config), command, config.resolved(), files)]


def _oracle(params: HamiltonianParams, channels: list[DissipationChannel], space: FockSpace) -> list[SpectrumPoint]:
    """Closed-form spectrum applicable to the model, empty when none applies."""
    if any(channel.is_thermal for channel in channels):
        return []
    if not params.is_squeezed:
        return oracle_u1(diagonal_energies(params, space), channels, space.dim)
    only_linear = all(channel.order == 1 for channel in channels)
    if params.family is ModelFamily.HARMONIC and only_linear and len(params.squeeze_amps) == 1:
        drive = params.squeeze_amps[0]
        kappa = sum(channel.kappa for channel in channels)
        if drive.order == 2 and 2 * abs(drive.amplitude) <= abs(params.omega):
            count = min(SQUEEZED_ORACLE_COUNT, space.dim**2)
            return oracle_squeezed_harmonic(params.omega, drive.amplitude, kappa, count)
    return []


def _pair(numeric: list[SpectrumPoint], oracle: list[SpectrumPoint]) -> dict[int, SpectrumPoint]:
    """Oracle point assigned to each numeric index, the oracle is matched against the lowest-|Re| numeric points."""
    candidates = numeric[: len(oracle)]
    if not candidates:
        return {}
    a = np.array([point.value for point in candidates])
    b = np.array([point.value for point in oracle])
    rows, cols = linear_sum_assignment(np.abs(a[:, None] - b[None, :]))
    return {int(r): oracle[int(c)] for r, c in zip(rows, cols, strict=True)}


def _quasispin_dyads(params: HamiltonianParams, space: FockSpace) -> set[tuple[int, int]]:
    if params.is_squeezed or params.family is not ModelFamily.KERR or params.scaled or not params.is_integer_eta:
        return set()
    if params.eta_prime < 0:
        return set()
    return set(phase_two_labels(params.eta_prime, space.dim))


def spectrum_records(
    params: HamiltonianParams,
    channels: list[DissipationChannel],
    space: FockSpace,
    rule: SectorRule | None = None,
) -> list[dict]:
    liouvillian = assemble(params, channels, space)
    numeric = sort_spectrum(eigendecompose(liouvillian, rule).points)
    pairs = _pair(numeric, _oracle(params, channels, space))
    phase_two = _quasispin_dyads(params, space)
    two_j = round(params.eta_prime) if phase_two else 0

    records = []
    for i, point in enumerate(numeric):
        record: dict = {"re": point.re, "im": point.im, "multiplicity": point.multiplicity}
        oracle = pairs.get(i)
        if oracle is not None:
            record |= {"oracle_re": oracle.re, "oracle_im": oracle.im}
            n, m = oracle.labels.get("n"), oracle.labels.get("m")
            if isinstance(n, int) and isinstance(m, int):
                record |= {"n": n, "m": m, "phase": Phase.I.value}
                if (n, m) in phase_two:
                    spin = QuasiSpinLabel.from_dyad(n, m, two_j)
                    jm = classify_jm(n, m, two_j / 2)
                    record |= {
                        "phase": Phase.II.value,
                        "m_j": spin.m_j,
                        "m_j_prime": spin.m_j_prime,
                        "branch": jm.branch.value,
                        "J": jm.big_j,
                        "M": jm.big_m,
                    }
        records.append(record)
    return records


def cmd_spectrum(config: RunConfig, workers: int | None = None) -> list[Path]:
    del workers
    params = config.model.to_params()
    space = resolve_space(config)
    rule = config.task.rule
    if rule is None and space.dim**2 > config.task.block_threshold:
        rule = preferred_rule(params, config.channels)
    records = spectrum_records(params, config.channels, space, rule)
    path = write_table(_out_dir(config), "spectrum", SPECTRUM_COLUMNS, records, config.resolved(), config.output.format)
    return _finish(config, "spectrum", [path])


def _sweep_config(config: RunConfig, axis: SweepAxis, observables: list[Observable]) -> SweepConfig:
    grid = grid_values(config.task.grid)
    if not grid:
        raise DomainError.of(ErrorCode.INVALID_CONFIG, "task.grid is required for sweeps")
    n_list = config.task.n_list or [resolve_space(config).n_max]
    return SweepConfig(
        template=ModelTemplate(hamiltonian=config.model.to_params(), channels=config.channels),
        axis=axis,
        grid=grid,
        n_list=n_list,
        observables=observables,
        block_threshold=config.task.block_threshold,
    )


def _sweep_records(result: SweepResult, observables: list[Observable]) -> tuple[list[str], list[dict]]:
    columns = [*result.axes, "N", *(observable.value for observable in observables), "error"]
    records = []
    for row in result.rows:
        record: dict = {**row.coordinates, "N": row.n, **row.values}
        if row.error is not None:
            record["error"] = row.error.code.value
        records.append(record)
    return columns, records


def _check_total_failure(result: SweepResult) -> None:
    if not result.rows or len(result.failures) < len(result.rows):
        return
    first = result.failures[0].error
    if first is not None:
        raise NumericalError.of(first.code, f"every sweep point failed: {first.message}")


def cmd_sweep(config: RunConfig, workers: int | None = None) -> list[Path]:
    sweep_config = _sweep_config(config, config.task.axis, config.task.observables)
    result = run_sweep(sweep_config, workers)
    _check_total_failure(result)
    columns, records = _sweep_records(result, sweep_config.observables)
    path = write_table(_out_dir(config), "sweep", columns, records, config.resolved(), config.output.format)
    return _finish(config, "sweep", [path])


def _second_order(config: RunConfig, sweep_config: SweepConfig, result: SweepResult) -> list[Path]:
    estimate = detect_critical_point_2nd(result, config.task.chi_c, config.task.window)
    out_dir, resolved, fmt = _out_dir(config), config.resolved(), config.output.format

    nu_at_critical = {}
    for n in sweep_config.n_list:
        params, channels, space = apply_axis(sweep_config.template, SweepAxis.CHI, estimate.chi_c, n)
        nu_at_critical[n] = order_parameter(params, channels, space)
    critical = [
        {
            "N": n,
            "chi_c": estimate.chi_c,
            "chi_max": estimate.chi_max.get(n),
            "delta_chi": estimate.delta_chi.get(n),
            "nu_at_chi_c": nu_at_critical[n],
        }
        for n in sweep_config.n_list
    ]
    critical_columns = ("N", "chi_c", "chi_max", "delta_chi", "nu_at_chi_c")
    files = [write_table(out_dir, "qpt_critical", critical_columns, critical, resolved, fmt)]

    fits = []
    series = {
        "nu_at_chi_c": [(n, nu_at_critical[n]) for n in sweep_config.n_list],
        "delta_chi": sorted(estimate.delta_chi.items()),
    }
    for quantity, points in series.items():
        if len(points) >= 3 and all(value > 0 for _, value in points):
            fit = fit_power_law(points)
            fits.append(
                {"quantity": quantity, "amplitude": fit.amplitude, "exponent": fit.exponent, "residual": fit.residual}
            )
        else:
            logger.warning("Skipping power-law fit of %s, needs 3 positive values", quantity)
    fit_columns = ("quantity", "amplitude", "exponent", "residual")
    files.append(write_table(out_dir, "qpt_fit", fit_columns, fits, resolved, fmt))
    return files


def _first_order(config: RunConfig, result: SweepResult) -> list[Path]:
    jumps = []
    records = []
    for n in result.n_values:
        grid, nu = result.series(Observable.NU, n)
        try:
            jump = detect_first_order_jump(grid, nu, n)
        except NumericalError as e:
            records.append({"N": n, "error": e.code.value})
            continue
        jumps.append(jump)
        records.append({"N": n, "chi_c": jump.chi_c, "jump": jump.jump})
    if not jumps:
        raise NumericalError.of(ErrorCode.NOT_DETECTED, "no first-order jump found at any N")
    trend = extrapolate_first_order(jumps)
    out_dir, resolved, fmt = _out_dir(config), config.resolved(), config.output.format
    return [
        write_table(out_dir, "qpt_jumps", ("N", "chi_c", "jump", "error"), records, resolved, fmt),
        write_table(
            out_dir,
            "qpt_trend",
            ("slope", "intercept"),
            [{"slope": trend.slope, "intercept": trend.intercept}],
            resolved,
            fmt,
        ),
    ]


def cmd_qpt(config: RunConfig, workers: int | None = None) -> list[Path]:
    observables = [Observable.NU, Observable.GAP, Observable.GAP2]
    sweep_config = _sweep_config(config, SweepAxis.CHI, observables)
    result = run_sweep(sweep_config, workers)
    _check_total_failure(result)
    columns, records = _sweep_records(result, observables)
    files = [write_table(_out_dir(config), "qpt", columns, records, config.resolved(), config.output.format)]
    match config.task.transition:
        case TransitionKind.SECOND:
            files.extend(_second_order(config, sweep_config, result))
        case TransitionKind.FIRST:
            files.extend(_first_order(config, result))
    return _finish(config, "qpt", files)


def cmd_relaxation(config: RunConfig, workers: int | None = None) -> list[Path]:
    eta_grid = grid_values(config.task.eta_grid)
    xi_grid = grid_values(config.task.xi_grid)
    if not eta_grid or not xi_grid:
        raise DomainError.of(ErrorCode.INVALID_CONFIG, "task.eta_grid and task.xi_grid are required")
    channel = _linear_channel(config)
    result = run_relaxation_surface(eta_grid, xi_grid, channel.kappa, channel.n_th, resolve_space(config), workers)
    _check_total_failure(result)
    columns, records = _sweep_records(result, [Observable.T_X])
    path = write_table(_out_dir(config), "relaxation", columns, records, config.resolved(), config.output.format)
    return _finish(config, "relaxation", [path])


def cmd_classify(config: RunConfig, workers: int | None = None) -> list[Path]:
    del workers
    j = config.task.j
    if j is None:
        j = config.model.to_params().eta_prime / 2
    kappa = config.task.kappa if config.task.kappa is not None else _linear_channel(config).kappa
    records = []
    for point in enumerate_jm(j, kappa):
        n, m = int(point.labels["n"]), int(point.labels["m"])
        spin = QuasiSpinLabel.from_dyad(n, m, round(2 * j))
        jm = classify_jm(n, m, j)
        records.append(
            {
                "n": n,
                "m": m,
                "m_j": spin.m_j,
                "m_j_prime": spin.m_j_prime,
                "branch": jm.branch.value,
                "J": jm.big_j,
                "M": jm.big_m,
                "re": point.re,
                "im": point.im,
                "accumulation": is_accumulation(n, m, j),
            }
        )
    path = write_table(_out_dir(config), "classify", CLASSIFY_COLUMNS, records, config.resolved(), config.output.format)
    return _finish(config, "classify", [path])


def cmd_converge(config: RunConfig, workers: int | None = None) -> list[Path]:
    del workers
    result = convergence_N(config.model.to_params(), config.channels, config.space.k, config.space.tol)
    record = {"n_conv": result.n_conv, "n_eff": result.n_eff, "shift": result.shift}
    path = write_table(
        _out_dir(config), "converge", ("n_conv", "n_eff", "shift"), [record], config.resolved(), config.output.format
    )
    return _finish(config, "converge", [path])
