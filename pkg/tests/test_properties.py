"""Universal Liouvillian properties checked on randomly drawn models."""

import numpy as np
import pytest

from paraspec.fock.schemas import FockSpace
from paraspec.liouville.superoperator import assemble
from paraspec.models.schemas import DissipationChannel, HamiltonianParams, SqueezeDrive
from paraspec.spectra.matching import match_spectra
from paraspec.spectra.solver import check_physical, eigendecompose, preferred_rule, steady_state


def _random_model(seed: int) -> tuple[HamiltonianParams, list[DissipationChannel], FockSpace]:
    rng = np.random.default_rng(seed)
    drives = []
    if rng.random() < 0.6:
        drives.append(SqueezeDrive(order=2, amplitude=rng.uniform(0, 1)))
    if rng.random() < 0.2:
        drives.append(SqueezeDrive(order=int(rng.choice([1, 3])), amplitude=rng.uniform(0, 0.5)))
    params = HamiltonianParams(
        omega=rng.uniform(-2, 2),
        kerr=0.0 if rng.random() < 0.25 else rng.uniform(0.1, 1),
        squeeze_amps=drives,
    )
    n_th = 0.0 if rng.random() < 0.5 else rng.uniform(0, 0.5)
    channels = [DissipationChannel.linear(rng.uniform(0.05, 0.5), n_th=n_th)]
    if rng.random() < 0.3:
        channels.append(DissipationChannel.quadratic(rng.uniform(0.01, 0.2)))
    return params, channels, FockSpace.from_dim(int(rng.integers(3, 9)))


@pytest.mark.parametrize("seed", range(100))
def test_liouvillian_properties(seed: int):
    params, channels, space = _random_model(seed)
    liouvillian = assemble(params, channels, space)
    spectrum = eigendecompose(liouvillian)

    report = check_physical(spectrum, scale=liouvillian.norm_inf())
    assert report.max_real < report.tolerance
    assert report.min_abs < report.tolerance
    assert report.conjugation_distance < report.tolerance

    # validated on construction: Hermitian, unit trace, positive semidefinite
    rho = steady_state(liouvillian)
    assert np.trace(rho.matrix.entries).real == pytest.approx(1.0)

    rule = preferred_rule(params, channels)
    if rule is not None:
        assert match_spectra(spectrum, eigendecompose(liouvillian, rule)) < 1e-9
