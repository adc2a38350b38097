import math

import mpmath
import numpy as np
import pytest

from xychain.errors import DegenerateAngleWarning, InvalidSizeError, SizeLimitError, ValidationError
from xychain.oracle import full_spectrum, lowest_two
from xychain.spectrum import (
    ModelPoint,
    Sector,
    bogoliubov_angle,
    critical_gap,
    enumerate_levels,
    gap,
    ground_energy,
    momenta,
    quasiparticle_energy,
    sector_spectrum,
)


def test_sector_labels_and_parity():
    assert Sector.HALF.parity == 1
    assert Sector.ZERO.parity == -1
    assert Sector.from_parity(-1) is Sector.ZERO
    assert Sector.from_parity(1) is Sector.HALF
    assert Sector.HALF.label == "half"


def test_model_point_validation():
    with pytest.raises(ValidationError):
        ModelPoint(1.5, 0.5)
    with pytest.raises(ValidationError):
        ModelPoint(0.5, -0.1)
    with pytest.raises(ValidationError):
        ModelPoint(math.nan, 0.5)
    assert ModelPoint(1, 2).with_field(0.3) == ModelPoint(1.0, 0.3)


def test_momenta_examples():
    assert np.allclose(momenta(4, Sector.ZERO), [0, np.pi / 2, np.pi, 3 * np.pi / 2])
    assert np.allclose(momenta(4, Sector.HALF), [np.pi / 4, 3 * np.pi / 4, 5 * np.pi / 4, 7 * np.pi / 4])
    assert np.allclose(momenta(3, Sector.HALF), [np.pi / 3, np.pi, 5 * np.pi / 3])
    with pytest.raises(InvalidSizeError):
        momenta(1, Sector.HALF)


def test_bogoliubov_angle_examples():
    assert bogoliubov_angle(ModelPoint(1, 0), np.pi / 4) == pytest.approx(3 * np.pi / 8, abs=1e-14)

    k = np.pi / 3
    assert bogoliubov_angle(ModelPoint(0.4, math.cos(k)), k) == pytest.approx(np.pi / 4, abs=1e-14)

    k = 2 * math.pi * 0.3
    mpmath.mp.dps = 40
    kk = mpmath.mpf(k)
    expected = mpmath.atan2(mpmath.mpf(0.5) * mpmath.sin(kk), mpmath.mpf(0.7) - mpmath.cos(kk)) / 2
    assert bogoliubov_angle(ModelPoint(0.5, 0.7), k) == pytest.approx(float(expected), abs=1e-14)


def test_bogoliubov_angle_range_on_half_circle():
    ks = np.linspace(0.0, np.pi, 101)
    for r, h in [(1.0, 0.3), (0.2, 1.7), (0.6, 0.8)]:
        theta = bogoliubov_angle(ModelPoint(r, h), ks)
        assert np.all(theta >= 0.0)
        assert np.all(theta <= np.pi / 2 + 1e-15)


def test_bogoliubov_angle_warns_at_critical_zero_mode():
    with pytest.warns(DegenerateAngleWarning):
        theta = bogoliubov_angle(ModelPoint(1, 1), 0.0)
    assert theta == 0.0
    with pytest.warns(DegenerateAngleWarning):
        sector_spectrum(ModelPoint(1, 1), 4, Sector.ZERO)


def test_quasiparticle_energy_examples():
    assert np.allclose(quasiparticle_energy(ModelPoint(1, 0), np.linspace(0, 2 * np.pi, 9)), 2.0)
    assert quasiparticle_energy(ModelPoint(1, 1), 0.0) == 0.0
    expected = 2 * math.sqrt((0.9 - 0.5) ** 2 + 0.04 * 0.75)
    assert quasiparticle_energy(ModelPoint(0.2, 0.9), np.pi / 3) == pytest.approx(expected, rel=1e-14)


def test_zero_sector_keeps_signed_zero_mode():
    spec = sector_spectrum(ModelPoint(0.5, 0.3), 6, Sector.ZERO)
    assert spec.energies[0] == pytest.approx(2 * (0.3 - 1))
    assert spec.ground_energy == ground_energy(ModelPoint(0.5, 0.3), 6, Sector.ZERO)


@pytest.mark.parametrize("n", [3, 8, 17])
def test_ising_zero_field_ground_energy(n):
    assert ground_energy(ModelPoint(1, 0), n, Sector.HALF) == pytest.approx(-n, abs=1e-12)
    assert ground_energy(ModelPoint(1, 0), n, Sector.ZERO) == pytest.approx(-n, abs=1e-12)


def test_ground_energy_matches_oracle():
    p = ModelPoint(1, 0.5)
    levels = lowest_two(p, 4)
    for sector in Sector:
        assert ground_energy(p, 4, sector) == pytest.approx(levels.by_sector(sector).energy, abs=1e-10)


def test_paramagnetic_asymptote():
    h = 1e3
    assert ground_energy(ModelPoint(0.7, h), 6, Sector.HALF) == pytest.approx(-6 * h, rel=1e-5)


def test_gap_away_from_criticality():
    assert gap(ModelPoint(1, 2), 10_000) == pytest.approx(2.0, abs=1e-3)


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_gap_converges_above_critical_field(r):
    values = [gap(ModelPoint(r, 1.05), n) for n in (100, 1000, 10_000)]
    errors = [abs(v - 0.1) for v in values]
    assert errors[0] > max(errors[1], errors[2])
    assert errors[2] < 1e-8


def test_critical_gap():
    value = critical_gap(0.5, 1000)
    assert value > 0
    assert value == pytest.approx(np.pi * 0.5 / 2000, rel=0.05)


def test_gap_changes_sign_at_small_anisotropy():
    hs = np.linspace(0.01, 0.99, 400)
    gaps = np.array([gap(ModelPoint(0.2, h), 8) for h in hs])
    assert gaps.min() < 0
    assert gaps.max() > 0


def test_ising_ground_is_never_odd():
    for h in np.linspace(0.0, 2.0, 41):
        assert gap(ModelPoint(1, h), 9) >= -1e-12


def test_enumerate_two_sites():
    levels = enumerate_levels(ModelPoint(1, 0), 2)
    assert np.allclose(levels.energies, [-2, -2, 2, 2])
    assert sorted(levels.parities.tolist()) == [-1, -1, 1, 1]


def test_enumerate_ferromagnetic_degeneracy():
    levels = enumerate_levels(ModelPoint(1, 0), 4)
    assert len(levels) == 16
    assert levels.energies[0] == pytest.approx(-4)
    assert levels.energies[1] == pytest.approx(-4)
    assert levels.energies[2] > -4 + 1e-6
    assert {levels.parities[0], levels.parities[1]} == {1, -1}


@pytest.mark.parametrize("n", [2, 3, 4, 7, 10])
def test_enumerate_matches_dense_diagonalization(n):
    for r in np.linspace(0.0, 1.0, 5):
        for h in np.linspace(0.0, 2.0, 5):
            p = ModelPoint(r, h)
            levels = enumerate_levels(p, n)
            assert np.allclose(levels.energies, full_spectrum(p, n), atol=1e-9)


def test_enumerate_size_limit():
    with pytest.raises(SizeLimitError):
        enumerate_levels(ModelPoint(1, 0.5), 21)
