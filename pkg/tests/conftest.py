import numpy as np
import pytest
import pytest_asyncio

from paraspec.base.runner import TaskRunner
from paraspec.fock.schemas import FockSpace
from paraspec.liouville.schemas import LiouvillianMatrix
from paraspec.liouville.superoperator import assemble
from paraspec.models.schemas import DissipationChannel, HamiltonianParams


@pytest.fixture(scope="session")
def space10() -> FockSpace:
    """N_Fock = 10, the truncation used for the closed-form comparisons."""
    return FockSpace.from_dim(10)


@pytest.fixture(scope="session")
def harmonic_params() -> HamiltonianParams:
    return HamiltonianParams.harmonic(omega=-1.0)


@pytest.fixture(scope="session")
def linear_loss() -> DissipationChannel:
    return DissipationChannel.linear(kappa=0.1)


@pytest.fixture(scope="session")
def harmonic_liouvillian(
    harmonic_params: HamiltonianParams, linear_loss: DissipationChannel, space10: FockSpace
) -> LiouvillianMatrix:
    return assemble(harmonic_params, [linear_loss], space10)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest_asyncio.fixture()
async def runner():
    yield TaskRunner(workers=2)
