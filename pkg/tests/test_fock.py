import numpy as np
import pytest
from pydantic import ValidationError

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.operators import (
    annihilation,
    commutator,
    creation,
    dagger,
    dyad,
    hs_inner,
    identity,
    number,
    pairing,
)
from paraspec.fock.schemas import FockSpace, OperatorMatrix


def test_fock_space_dimension():
    space = FockSpace(n_max=9)
    assert space.dim == 10
    assert FockSpace.from_dim(1).n_max == 0

    with pytest.raises(ValidationError):
        FockSpace(n_max=-1)


def test_annihilation_two_levels():
    a = annihilation(FockSpace.from_dim(2))
    assert np.array_equal(a.entries, [[0, 1], [0, 0]])


def test_annihilation_kills_vacuum():
    a = annihilation(FockSpace.from_dim(5))
    vacuum = np.zeros(5)
    vacuum[0] = 1
    assert np.array_equal(a.entries @ vacuum, np.zeros(5))


def test_annihilation_entries():
    a = annihilation(FockSpace.from_dim(6)).entries
    for n in range(1, 6):
        assert a[n - 1, n] == pytest.approx(np.sqrt(n))
    assert np.count_nonzero(a) == 5


def test_truncated_commutator():
    space = FockSpace.from_dim(4)
    result = commutator(annihilation(space), creation(space))
    assert np.allclose(result.entries, np.diag([1, 1, 1, -3]))


def test_creation():
    space = FockSpace.from_dim(2)
    assert np.array_equal(creation(space).entries, [[0, 0], [1, 0]])

    space = FockSpace.from_dim(7)
    assert np.array_equal(creation(space).entries, dagger(annihilation(space)).entries)
    assert np.allclose((creation(space) @ annihilation(space)).entries, number(space).entries)


def test_number_and_pairing():
    space = FockSpace.from_dim(3)
    assert np.array_equal(number(space).entries, np.diag([0, 1, 2]))

    p2 = pairing(space, 2).entries
    assert p2[2, 0] == pytest.approx(np.sqrt(2))
    assert p2[0, 2] == pytest.approx(np.sqrt(2))
    assert np.count_nonzero(p2) == 2


def test_pairing_above_truncation_is_zero(caplog: pytest.LogCaptureFixture):
    with caplog.at_level("WARNING"):
        p2 = pairing(FockSpace.from_dim(2), 2)
    assert not np.any(p2.entries)
    assert "exceeds n_max" in caplog.text


def test_pairing_order_must_be_positive():
    with pytest.raises(DomainError) as err:
        pairing(FockSpace.from_dim(3), 0)
    assert err.value.code is ErrorCode.OUT_OF_RANGE


def test_pairing_matches_operator_powers():
    space = FockSpace.from_dim(8)
    a = annihilation(space).entries
    expected = np.linalg.matrix_power(a.conj().T, 3) + np.linalg.matrix_power(a, 3)
    assert np.allclose(pairing(space, 3).entries, expected)


def test_hs_inner():
    space = FockSpace.from_dim(5)
    assert hs_inner(identity(space), identity(space)) == pytest.approx(5)
    assert hs_inner(dyad(space, 0, 1), dyad(space, 0, 1)) == pytest.approx(1)
    assert hs_inner(dyad(space, 0, 1), dyad(space, 1, 0)) == 0


def test_hs_inner_dimension_mismatch():
    with pytest.raises(DomainError) as err:
        hs_inner(identity(FockSpace.from_dim(2)), identity(FockSpace.from_dim(3)))
    assert err.value.code is ErrorCode.DIMENSION_MISMATCH


def test_dyad_out_of_range():
    with pytest.raises(DomainError):
        dyad(FockSpace.from_dim(3), 3, 0)


def test_double_dagger(rng: np.random.Generator):
    space = FockSpace.from_dim(6)
    operator = OperatorMatrix.wrap(space, rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    assert np.array_equal(operator.dagger().dagger().entries, operator.entries)
    assert not operator.is_hermitian()
    assert (operator + operator.dagger()).is_hermitian()


def test_operator_validation():
    space = FockSpace.from_dim(2)
    with pytest.raises(ValidationError):
        OperatorMatrix.wrap(space, np.zeros((2, 3)))
    with pytest.raises(ValidationError):
        OperatorMatrix.wrap(space, np.zeros((3, 3)))
    with pytest.raises(ValidationError):
        OperatorMatrix.wrap(space, [[np.nan, 0], [0, 0]])


def test_operator_arithmetic_requires_same_space():
    with pytest.raises(DomainError) as err:
        identity(FockSpace.from_dim(2)) @ identity(FockSpace.from_dim(3))
    assert err.value.code is ErrorCode.DIMENSION_MISMATCH

    space = FockSpace.from_dim(3)
    doubled = 2 * identity(space) - identity(space)
    assert np.array_equal(doubled.entries, np.eye(3))
