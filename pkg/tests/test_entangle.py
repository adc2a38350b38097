import math

import numpy as np
import pytest

import xychain.entangle
from xychain.entangle import (
    GROUND,
    FactorizedState,
    derivative_peak,
    derivative_step,
    disorder_factorized_state,
    disorder_field,
    entanglement,
    entanglement_curve,
    field_derivative,
    large_field_bound,
    maximize_lambda,
    parse_state,
    product_state_energy,
    select_ground,
    small_field_bound,
)
from xychain.errors import (
    AccuracyError,
    DegenerateLineError,
    DegenerateOverlapError,
    InvalidSizeError,
    ValidationError,
)
from xychain.optimize import central_difference
from xychain.oracle import bloch_product_state, expectation_energy, lowest_two, restricted_lambda
from xychain.overlap import Superposition, sector_kernel
from xychain.signedlog import SignedLogValue
from xychain.spectrum import ModelPoint, Sector, ground_energy


def test_parse_state():
    assert parse_state("ground") is GROUND
    assert parse_state(" Half ") is Sector.HALF
    assert parse_state("zero") is Sector.ZERO
    assert parse_state("mix:0.7854") == Superposition(0.7854)
    with pytest.raises(ValidationError):
        parse_state("excited")
    with pytest.raises(ValidationError):
        parse_state("mix:abc")


def test_ising_zero_field_is_ghz_like():
    for sector in Sector:
        record = entanglement(ModelPoint(1, 0), 10, sector)
        assert record.lambda_max == pytest.approx(2 ** -0.5, abs=1e-9)
        assert record.e_log2 == pytest.approx(1.0, abs=1e-8)
        assert record.density == pytest.approx(0.1, abs=1e-9)


def test_product_state_evaluator():
    best = maximize_lambda(lambda xi: SignedLogValue.from_float(math.cos(xi / 2) ** 6))
    assert best.xi_star == 0.0
    assert best.lambda_max == pytest.approx(1.0, abs=1e-15)
    assert best.stationary


def test_zero_evaluator_raises():
    with pytest.raises(DegenerateOverlapError):
        maximize_lambda(lambda xi: SignedLogValue.zero())


def test_xx_chain_against_dense_grid():
    p = ModelPoint(0, 0.5)
    record = entanglement(p, 100)
    kernel = sector_kernel(p, 100, record.sector)
    grid = max(kernel(xi).abs_log for xi in np.linspace(0.0, np.pi, 100_001))
    assert record.log_lambda_max >= grid - 1e-12
    assert record.log_lambda_max - grid < 1e-8


@pytest.mark.parametrize("h", [1.0, 1.2, 2.0])
def test_xx_chain_unentangled_above_saturation(h):
    assert abs(entanglement(ModelPoint(0, h), 100).density) < 1e-14


def test_xx_staircase_is_monotone():
    records = entanglement_curve(0.0, np.linspace(0.01, 1.2, 60), 100)
    totals = np.array([rec.e_log2 for rec in records])
    assert np.all(np.diff(totals) <= 1e-9)


def test_ground_selection():
    tie = select_ground(ModelPoint(1, 0), 10)
    assert tie.sector is Sector.HALF
    assert tie.degenerate

    on_line = select_ground(ModelPoint(0.6, 0.8), 6)
    assert on_line.degenerate

    for h in (0.3, 0.9, 1.4):
        assert select_ground(ModelPoint(1, h), 12).sector is Sector.HALF


def test_ground_record_follows_gap_sign():
    for h in np.linspace(0.05, 0.95, 19):
        p = ModelPoint(0.2, h)
        record = entanglement(p, 8)
        lower = Sector.ZERO if ground_energy(p, 8, Sector.ZERO) < ground_energy(p, 8, Sector.HALF) else Sector.HALF
        if not record.degenerate:
            assert record.sector is lower
            assert record.density == entanglement(p, 8, lower).density


def test_restricted_closed_form_matches_oracle():
    p = ModelPoint(1, 0.8)
    level = lowest_two(p, 10)[0]
    closed = entanglement(p, 10, level.sector)
    assert closed.lambda_max == pytest.approx(restricted_lambda(level.state).lambda_max, abs=1e-9)


def test_disorder_states():
    plus, minus = disorder_factorized_state(1.0)
    assert (plus.x, plus.y, plus.z) == pytest.approx((1.0, 0.0, 0.0))
    assert minus.x == pytest.approx(-1.0)

    plus, minus = disorder_factorized_state(0.6)
    assert plus.x == pytest.approx(math.sqrt(0.75))
    assert plus.z == pytest.approx(0.5)

    with pytest.raises(DegenerateLineError):
        disorder_factorized_state(0.0)
    with pytest.raises(ValidationError):
        FactorizedState(1.0, 1.0, 0.0)


def test_disorder_line_energy():
    p = ModelPoint(0.6, disorder_field(0.6))
    for state in disorder_factorized_state(0.6):
        assert product_state_energy(p, state, 8) == pytest.approx(-8.0, abs=1e-12)
        assert expectation_energy(p, bloch_product_state(8, state)) == pytest.approx(-8.0, abs=1e-10)


@pytest.mark.parametrize("r", np.linspace(0.05, 1.0, 20))
def test_disorder_states_have_unit_energy_per_site(r):
    p = ModelPoint(r, disorder_field(r))
    for state in disorder_factorized_state(r):
        assert product_state_energy(p, state, 1) == pytest.approx(-1.0, abs=1e-12)


def test_disorder_states_reject_energy_mismatch(monkeypatch):
    monkeypatch.setattr(xychain.entangle, "product_state_energy", lambda p, state, n: -0.9 * n)
    with pytest.raises(AccuracyError):
        disorder_factorized_state(0.6)


@pytest.mark.parametrize("r", np.linspace(0.1, 1.0, 10))
def test_disorder_line_spectrum_and_density(r):
    p = ModelPoint(r, disorder_field(r))
    n = 2000
    for sector in Sector:
        assert ground_energy(p, n, sector) == pytest.approx(-n, abs=1e-10)
    assert entanglement(p, n).density < 1.5 / n


@pytest.mark.parametrize("r, h", [(1.0, 1.0), (0.5, 1.0), (1.0, 1.5), (0.7, 1.3)])
def test_sector_densities_converge_in_the_bulk(r, h):
    p = ModelPoint(r, h)
    sizes = [50, 100, 200, 400]
    gaps = [abs(entanglement(p, n, Sector.ZERO).density - entanglement(p, n, Sector.HALF).density)
            for n in sizes]
    assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    scaled = [n * g for n, g in zip(sizes, gaps)]
    assert max(scaled) < 2 * min(scaled)


def test_perturbative_bounds():
    weak = entanglement(ModelPoint(1, 0.02), 10, Superposition(math.pi / 4))
    assert weak.e_log2 <= small_field_bound(10, 0.02) * 1.2

    strong = entanglement(ModelPoint(1, 50), 10)
    assert strong.e_log2 <= large_field_bound(10, 50) * 1.2
    assert strong.e_log2 >= large_field_bound(10, 50) * 0.5


def test_superpositions_differ_at_small_n():
    hs = np.linspace(0.1, 1.5, 8)
    curves = [np.array([rec.e_log2 for rec in entanglement_curve(1.0, hs, 10, Superposition(t))])
              for t in (0.0, math.pi / 4)]
    assert np.max(np.abs(curves[0] - curves[1])) > 1e-3


@pytest.mark.slow
def test_superposition_density_independent_at_large_n():
    for h in (0.5, 0.9, 1.3):
        densities = [entanglement(ModelPoint(1, h), 2000, Superposition(t)).density
                     for t in (0.0, math.pi / 8, math.pi / 4, math.pi / 2)]
        assert max(densities) - min(densities) < 5e-3


def test_derivative_step():
    assert derivative_step(ModelPoint(1, 1.0), 10_000) == pytest.approx(0.02 * math.pi / 10_000)
    assert derivative_step(ModelPoint(1, 0.5), 12) == pytest.approx(5e-4)


def test_field_derivative_matches_oracle():
    p = ModelPoint(1, 0.5)
    step = derivative_step(p, 12)

    def oracle_density(h):
        level = lowest_two(p.with_field(h), 12)[0]
        return -2 * math.log2(restricted_lambda(level.state).lambda_max) / 12

    expected = central_difference(oracle_density, p.h, step)
    assert field_derivative(p, 12) == pytest.approx(expected, abs=1e-4)


def test_field_derivative_flat_paramagnetic_tail():
    slope = field_derivative(ModelPoint(1, 2.0), 1000)
    assert slope < 0
    assert abs(slope) < 0.1


def test_field_derivative_needs_room_below():
    with pytest.raises(ValidationError):
        field_derivative(ModelPoint(1, 1e-6), 10)


def test_derivative_peak_validation():
    with pytest.raises(ValidationError):
        derivative_peak(0.0, 1000)
    with pytest.raises(InvalidSizeError):
        derivative_peak(1.0, 50)


@pytest.mark.slow
def test_derivative_peak_near_critical_field():
    peak = derivative_peak(1.0, 10_000)
    assert peak.h_max == pytest.approx(1.0, abs=0.01)
    assert peak.slope_max > derivative_peak(1.0, 1000).slope_max


@pytest.mark.slow
def test_derivative_peak_grows_with_size():
    assert derivative_peak(0.5, 10_000).slope_max > derivative_peak(0.5, 1000).slope_max


@pytest.mark.slow
def test_derivative_peak_log_scaling_value():
    peak = derivative_peak(0.1, 10_000)
    assert peak.slope_max == pytest.approx(2.30 * math.log(10_000) - 6.95, rel=0.02)
