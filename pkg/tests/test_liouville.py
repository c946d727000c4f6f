import numpy as np
import pytest
from pydantic import ValidationError

from paraspec.base.constants import SectorRule
from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.operators import annihilation, dyad, identity
from paraspec.fock.schemas import FockSpace, OperatorMatrix
from paraspec.liouville.blocks import block_decompose, coherence_sectors, excitation_order, parity_sectors
from paraspec.liouville.schemas import LiouvillianMatrix
from paraspec.liouville.superoperator import assemble, devectorize, left_super, right_super, vectorize
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.spectra.matching import match_spectra
from paraspec.spectra.solver import eigendecompose


def _random_operator(space: FockSpace, rng: np.random.Generator) -> OperatorMatrix:
    shape = (space.dim, space.dim)
    return OperatorMatrix.wrap(space, rng.normal(size=shape) + 1j * rng.normal(size=shape))


MODELS = [
    (HamiltonianParams.harmonic(-1.0), [DissipationChannel.linear(0.1)]),
    (HamiltonianParams.harmonic(-1.0), [DissipationChannel.linear(0.1, n_th=0.2)]),
    (HamiltonianParams.kerr_oscillator(3.0), [DissipationChannel.quadratic(0.1)]),
    (HamiltonianParams.kerr_oscillator(-1.0, xi=1.2), [DissipationChannel.linear(0.1, n_th=0.3)]),
    (
        HamiltonianParams.kerr_oscillator(1.0, xi=0.7),
        [DissipationChannel.linear(0.2), DissipationChannel.quadratic(0.05)],
    ),
]


def test_vectorize_examples():
    space = FockSpace.from_dim(2)
    assert np.array_equal(vectorize(identity(space)), [1, 0, 0, 1])
    assert np.array_equal(vectorize(dyad(space, 0, 1)), [0, 1, 0, 0])


def test_devectorize_inverts_vectorize(rng: np.random.Generator):
    operator = _random_operator(FockSpace.from_dim(5), rng)
    assert np.array_equal(devectorize(vectorize(operator)).entries, operator.entries)


def test_devectorize_length_mismatch():
    with pytest.raises(DomainError) as err:
        devectorize(np.zeros(3))
    assert err.value.code is ErrorCode.DIMENSION_MISMATCH

    with pytest.raises(DomainError):
        devectorize(np.zeros(4), FockSpace.from_dim(3))


def test_left_and_right_multiplication(rng: np.random.Generator):
    space = FockSpace.from_dim(4)
    a = annihilation(space)
    one = dyad(space, 1, 1)

    assert np.array_equal(left_super(identity(space)).to_dense(), np.eye(16))
    assert np.allclose(left_super(a) @ vectorize(one), vectorize(a @ one))
    assert np.allclose(right_super(a) @ vectorize(one), vectorize(one @ a))

    operator, state = _random_operator(space, rng), _random_operator(space, rng)
    assert np.allclose(left_super(operator) @ vectorize(state), vectorize(operator @ state))
    assert np.allclose(right_super(operator) @ vectorize(state), vectorize(state @ operator))


def test_harmonic_matrix_elements(harmonic_liouvillian: LiouvillianMatrix):
    dense = harmonic_liouvillian.to_dense()
    index = harmonic_liouvillian.index
    assert dense[index(1, 0), index(1, 0)] == pytest.approx(-0.05 + 1j)
    assert dense[index(0, 0), index(1, 1)] == pytest.approx(0.1)
    assert dense[index(3, 2), index(4, 3)] == pytest.approx(0.1 * np.sqrt(4 * 3))


def test_thermal_matrix_elements():
    space = FockSpace.from_dim(6)
    liouvillian = assemble(HamiltonianParams.harmonic(-1.0), [DissipationChannel.linear(0.1, n_th=0.2)], space)
    dense = liouvillian.to_dense()
    for n in range(5):
        for m in range(5):
            expected = -1j * (-n + m) - 0.05 * 1.4 * (n + m) - 0.02
            assert dense[liouvillian.index(n, m), liouvillian.index(n, m)] == pytest.approx(expected)
    # heating feeds (n, m) from (n - 1, m - 1) with kappa n_th sqrt(n m)
    assert dense[liouvillian.index(2, 1), liouvillian.index(1, 0)] == pytest.approx(0.02 * np.sqrt(2))


def test_quadratic_matrix_elements():
    space = FockSpace.from_dim(6)
    liouvillian = assemble(HamiltonianParams.kerr_oscillator(3.0), [DissipationChannel.quadratic(0.1)], space)
    dense = liouvillian.to_dense()
    assert dense[liouvillian.index(1, 0), liouvillian.index(1, 0)] == pytest.approx(3j)
    assert dense[liouvillian.index(2, 0), liouvillian.index(2, 0)].real == pytest.approx(-0.1)
    assert dense[liouvillian.index(0, 0), liouvillian.index(2, 2)] == pytest.approx(0.1 * 2)


@pytest.mark.parametrize(("params", "channels"), MODELS)
def test_trace_preservation(params: HamiltonianParams, channels: list[DissipationChannel]):
    space = FockSpace.from_dim(7)
    liouvillian = assemble(params, channels, space)
    trace_dual = vectorize(identity(space)).conj()
    assert np.max(np.abs(trace_dual @ liouvillian.to_dense())) < 1e-10


@pytest.mark.parametrize(("params", "channels"), MODELS)
def test_hermiticity_preservation(
    params: HamiltonianParams, channels: list[DissipationChannel], rng: np.random.Generator
):
    space = FockSpace.from_dim(6)
    liouvillian = assemble(params, channels, space)
    operator = _random_operator(space, rng)
    image = devectorize(liouvillian @ vectorize(operator), space)
    image_of_adjoint = devectorize(liouvillian @ vectorize(operator.dagger()), space)
    assert np.allclose(image.dagger().entries, image_of_adjoint.entries)


def test_upper_triangular_in_excitation_order(harmonic_liouvillian: LiouvillianMatrix):
    order = excitation_order(harmonic_liouvillian.space)
    permuted = harmonic_liouvillian.to_dense()[np.ix_(order, order)]
    assert not np.any(np.tril(permuted, -1))


def test_thermal_couples_neighbouring_shells_only():
    space = FockSpace.from_dim(6)
    liouvillian = assemble(HamiltonianParams.harmonic(-1.0), [DissipationChannel.linear(0.1, n_th=0.2)], space)
    coo = liouvillian.entries.tocoo()
    n, m = np.divmod(np.arange(space.dim**2), space.dim)
    shell = n + m
    assert set(np.abs(shell[coo.row] - shell[coo.col]).tolist()) == {0, 2}


def test_sector_labels():
    space = FockSpace.from_dim(3)
    assert coherence_sectors(space).tolist() == [0, -1, -2, 1, 0, -1, 2, 1, 0]
    assert parity_sectors(space).tolist() == [0, 1, 0, 1, 0, 1, 0, 1, 0]


def test_coherence_blocks_of_thermal_harmonic():
    space = FockSpace.from_dim(4)
    liouvillian = assemble(HamiltonianParams.harmonic(-1.0), [DissipationChannel.linear(0.1, n_th=0.2)], space)
    decomposition = block_decompose(liouvillian, SectorRule.U1_COHERENCE)
    assert [block.label for block in decomposition.blocks] == [-3, -2, -1, 0, 1, 2, 3]
    assert decomposition.sizes == [1, 2, 3, 4, 3, 2, 1]


def test_coherence_rule_inapplicable_with_squeezing():
    space = FockSpace.from_dim(5)
    liouvillian = assemble(HamiltonianParams.kerr_oscillator(1.0, xi=0.5), [DissipationChannel.linear(0.1)], space)
    with pytest.raises(DomainError) as err:
        block_decompose(liouvillian, SectorRule.U1_COHERENCE)
    assert err.value.code is ErrorCode.RULE_INAPPLICABLE


def test_parity_blocks_of_squeezed_kerr():
    space = FockSpace.from_dim(5)
    liouvillian = assemble(HamiltonianParams.kerr_oscillator(1.0, xi=0.5), [DissipationChannel.linear(0.1)], space)
    decomposition = block_decompose(liouvillian, SectorRule.Z2_PARITY)
    assert decomposition.sizes == [13, 12]


def test_parity_rule_inapplicable_with_odd_squeezing():
    space = FockSpace.from_dim(5)
    params = HamiltonianParams(omega=1.0, kerr=1.0).with_amplitude(1, 0.3)
    liouvillian = assemble(params, [DissipationChannel.linear(0.1)], space)
    with pytest.raises(DomainError):
        block_decompose(liouvillian, SectorRule.Z2_PARITY)


@pytest.mark.parametrize(
    ("params", "channels", "rule"),
    [
        (HamiltonianParams.kerr_oscillator(2.3), [DissipationChannel.linear(0.1, n_th=0.3)], SectorRule.U1_COHERENCE),
        (HamiltonianParams.kerr_oscillator(0.4, xi=0.9), [DissipationChannel.linear(0.15)], SectorRule.Z2_PARITY),
    ],
)
def test_block_spectra_union_equals_full(
    params: HamiltonianParams, channels: list[DissipationChannel], rule: SectorRule
):
    liouvillian = assemble(params, channels, FockSpace.from_dim(6))
    full = eigendecompose(liouvillian)
    blocked = eigendecompose(liouvillian, rule)
    assert match_spectra(full, blocked) < 1e-10


def test_liouvillian_shape_validation():
    with pytest.raises(ValidationError):
        LiouvillianMatrix(space=FockSpace.from_dim(2), entries=np.eye(3))
    liouvillian = LiouvillianMatrix(space=FockSpace.from_dim(2), entries=np.eye(4))
    assert liouvillian.basis_map == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert liouvillian.dyad(2) == (1, 0)
