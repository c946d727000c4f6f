import logging

import numpy as np
import pytest
from pydantic import ValidationError

from paraspec.base.exceptions import DomainError, ErrorCode
from paraspec.fock.schemas import FockSpace
from paraspec.liouville.superoperator import assemble
from paraspec.models.schemas import DissipationChannel, HamiltonianParams
from paraspec.quasispin.classification import classify_jm, enumerate_jm, is_accumulation, phase_two_labels
from paraspec.quasispin.constants import Branch
from paraspec.quasispin.oracles import (
    oracle_anharmonic_phase2,
    oracle_kerr,
    oracle_quadratic_dissipation,
    oracle_squeezed_harmonic,
    oracle_su2,
    oracle_u1,
    quasispin_energies,
    stability_boundary,
)
from paraspec.quasispin.schemas import JMLabel, QuasiSpinLabel
from paraspec.spectra.matching import match_spectra
from paraspec.spectra.solver import eigendecompose, multiplicities


@pytest.mark.parametrize(
    ("n", "m", "branch", "two_big_j", "two_big_m"),
    [
        (0, 0, Branch.RIGHT, 0, 0),
        (3, 1, Branch.RIGHT, 4, 2),
        (1, 3, Branch.RIGHT, 4, -2),
        (4, 1, Branch.LEFT, 3, -3),
        (4, 4, Branch.LEFT, 0, 0),
    ],
)
def test_classify_jm(n: int, m: int, branch: Branch, two_big_j: int, two_big_m: int):
    label = classify_jm(n, m, 2)
    assert label.branch is branch
    assert label.two_big_j == two_big_j
    assert label.two_big_m == two_big_m


def test_jm_eigenvalue_on_left_branch():
    assert classify_jm(4, 1, 2).eigenvalue(0.1) == pytest.approx(-0.25 - 3j)


def test_classify_outside_multiplet():
    with pytest.raises(DomainError) as err:
        classify_jm(5, 0, 2)
    assert err.value.code is ErrorCode.OUT_OF_RANGE


@pytest.mark.parametrize("j", [0, 0.5, 1, 1.5, 2, 3])
def test_jm_spectrum_equals_quasispin_spectrum(j: float):
    enumerated = enumerate_jm(j, 0.1)
    assert len(enumerated) == (2 * j + 1) ** 2
    assert match_spectra(enumerated, oracle_su2(j, 0.1)) < 1e-12


def test_quasispin_spectrum_equals_kerr_phase_two_block():
    assert match_spectra(oracle_su2(2, 0.1), oracle_kerr(4, 0.1, 5)) < 1e-12


@pytest.mark.parametrize("j", [0.5, 1, 1.5, 2, 2.5])
def test_accumulation_point(j: float):
    points = enumerate_jm(j, 0.1)
    members = [point for point in points if is_accumulation(point.labels["n"], point.labels["m"], j)]
    assert len(members) == 2 * j + 1
    for point in members:
        assert point.value == pytest.approx(-0.1 * j)
        assert point.multiplicity == 2 * j + 1
        assert point.labels["two_mj_prime"] == -point.labels["two_mj"]


def test_spin_one_half_points_are_real():
    points = oracle_su2(0.5, 0.1)
    assert len(points) == 4
    assert all(point.im == pytest.approx(0.0, abs=1e-12) for point in points)


def test_half_integer_spin_required():
    with pytest.raises(DomainError) as err:
        oracle_su2(1.25, 0.1)
    assert err.value.code is ErrorCode.OUT_OF_RANGE


def test_quasispin_label_from_dyad():
    label = QuasiSpinLabel.from_dyad(1, 3, 4)
    assert (label.two_mj, label.two_mj_prime) == (2, -2)
    assert (label.m_j, label.m_j_prime) == (1.0, -1.0)
    assert (label.n, label.m) == (1, 3)
    assert label.eigenvalue(0.1) == pytest.approx(-0.2)


def test_label_validation():
    with pytest.raises(ValidationError):
        QuasiSpinLabel(two_j=2, two_mj=1, two_mj_prime=0)
    with pytest.raises(ValidationError):
        QuasiSpinLabel(two_j=2, two_mj=4, two_mj_prime=0)
    with pytest.raises(ValidationError):
        JMLabel(branch=Branch.RIGHT, two_j=2, two_big_j=1, two_big_m=3)


@pytest.mark.parametrize("eta", [-1.0, 0.0, 1.0, 2.0, 3.0, 4.0])
def test_kerr_oracle_matches_numeric_spectrum(eta: float):
    params = HamiltonianParams.kerr_oscillator(eta)
    space = FockSpace.from_dim(10)
    spectrum = eigendecompose(assemble(params, [DissipationChannel.linear(0.1)], space))
    assert match_spectra(spectrum, oracle_kerr(params.eta_prime, 0.1, 10)) < 1e-8


def test_accumulation_point_is_six_fold_at_even_detuning():
    params = HamiltonianParams.kerr_oscillator(4.0)
    liouvillian = assemble(params, [DissipationChannel.linear(0.1)], FockSpace.from_dim(10))
    spectrum = eigendecompose(liouvillian)
    cluster = np.abs(spectrum.values + 0.25) < 1e-6
    assert np.count_nonzero(cluster) == 6
    assert np.all(multiplicities(spectrum.values)[cluster] == 6)


def test_thermal_noise_lifts_accumulation_degeneracy():
    space = FockSpace.from_dim(10)
    params = HamiltonianParams.kerr_oscillator(3.0)
    cold = eigendecompose(assemble(params, [DissipationChannel.linear(0.1)], space))
    warm = eigendecompose(assemble(params, [DissipationChannel.linear(0.1, n_th=0.2)], space))
    assert multiplicities(cold.values).max() == 5
    assert multiplicities(warm.values).max() < 5


def test_quadratic_dissipation_oracle_matches_numeric_spectrum():
    params = HamiltonianParams.kerr_oscillator(3.0)
    space = FockSpace.from_dim(6)
    spectrum = eigendecompose(assemble(params, [DissipationChannel.quadratic(0.1)], space))
    assert match_spectra(spectrum, oracle_quadratic_dissipation(params.eta_prime, 0.1, 6)) < 1e-8


def test_u1_oracle_labels_and_thermal_rejection():
    points = oracle_u1([0.0, 1.0, 4.0], [DissipationChannel.linear(0.2)], 3)
    assert points[5].labels == {"n": 1, "m": 2}
    assert points[5].value == pytest.approx(-0.3 + 3j)
    with pytest.raises(DomainError) as err:
        oracle_u1([0.0, 1.0], [DissipationChannel.linear(0.2, n_th=0.1)], 2)
    assert err.value.code is ErrorCode.RULE_INAPPLICABLE


def test_squeezed_harmonic_oracle():
    points = oracle_squeezed_harmonic(-1.0, 0.3, 0.1, 6)
    assert len(points) == 6
    assert [point.value for point in points[:3]] == pytest.approx([0, -0.05 - 0.8j, -0.05 + 0.8j])
    assert [(point.labels["n"], point.labels["m"]) for point in points[3:]] == [(0, 2), (1, 1), (2, 0)]


def test_squeezed_harmonic_oracle_unstable():
    with pytest.raises(DomainError) as err:
        oracle_squeezed_harmonic(-1.0, 0.6, 0.1, 6)
    assert err.value.code is ErrorCode.UNSTABLE_REGIME
    assert stability_boundary(1.0, 0.0) == pytest.approx(0.5)


def test_anharmonic_phase_two_oracle():
    points = oracle_anharmonic_phase2(1.0, 10.0, 0.1, 2)
    assert len(points) == 9
    assert all(point.multiplicity == 2 for point in points)
    assert points[1].value == pytest.approx(-0.05 + 3.6j)
    with pytest.raises(DomainError):
        oracle_anharmonic_phase2(1.0, 1.5, 0.1, 2)


def test_quasispin_energies():
    integer = quasispin_energies(1)
    assert [level.energy for level in integer] == [1.0, 0.0, 1.0]
    assert [level.total_energy for level in integer] == [0.0, -1.0, 0.0]
    half_integer = quasispin_energies(1.5)
    assert [level.m_j for level in half_integer] == [-1.5, -0.5, 0.5, 1.5]
    assert [level.energy for level in half_integer] == [2.0, 0.0, 0.0, 2.0]


def test_phase_two_labels(caplog: pytest.LogCaptureFixture):
    assert len(phase_two_labels(4, 10)) == 25
    with caplog.at_level(logging.WARNING):
        truncated = phase_two_labels(4, 3)
    assert truncated[-1] == (2, 2)
    assert "cuts" in caplog.text
    with pytest.raises(DomainError):
        phase_two_labels(2.5, 10)


def test_su2_labels_are_consistent():
    for point in oracle_su2(1.5, 0.2):
        label = QuasiSpinLabel(
            two_j=point.labels["two_j"], two_mj=point.labels["two_mj"], two_mj_prime=point.labels["two_mj_prime"]
        )
        assert (label.n, label.m) == (point.labels["n"], point.labels["m"])
        assert np.isclose(label.eigenvalue(0.2), point.value)
