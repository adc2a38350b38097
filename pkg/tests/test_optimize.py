import math

import numpy as np
import pytest

from xychain.optimize import central_difference, golden_section_max, maximize_on_interval


def test_golden_section_finds_parabola_top():
    x, fx = golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-7)
    assert fx == pytest.approx(0.0, abs=1e-14)


def test_golden_section_accepts_reversed_bracket():
    x, _ = golden_section_max(lambda x: math.sin(x), 3.0, 0.0)
    assert x == pytest.approx(math.pi / 2, abs=1e-7)


def test_golden_section_degenerate_bracket():
    x, fx = golden_section_max(lambda x: 2 * x, 1.0, 1.0)
    assert x == 1.0
    assert fx == 2.0


def test_grid_seed_picks_global_maximum():
    best = maximize_on_interval(lambda x: math.cos(5 * x) - 0.05 * (x - 2.5) ** 2, 0.0, 2 * math.pi)
    assert best.x == pytest.approx(2 * math.pi / 5 * 2, abs=0.05)
    grid = np.linspace(0.0, 2 * math.pi, 100_001)
    assert best.value >= np.max(np.cos(5 * grid) - 0.05 * (grid - 2.5) ** 2) - 1e-12


def test_endpoint_maximum():
    best = maximize_on_interval(lambda x: math.cos(5 * x) + 0.1 * x, 0.0, 2 * math.pi)
    assert best.value == pytest.approx(1 + 0.2 * math.pi, abs=1e-9)


def test_skips_minus_infinity():
    best = maximize_on_interval(lambda x: math.log(x) if x > 0.5 else -math.inf, 0.0, 1.0)
    assert best.x == pytest.approx(1.0, abs=1e-9)
    assert best.value == pytest.approx(0.0, abs=1e-9)

    empty = maximize_on_interval(lambda x: -math.inf, 0.0, 1.0)
    assert empty.value == -math.inf


def test_central_difference():
    assert central_difference(math.sin, 0.7, 1e-3) == pytest.approx(math.cos(0.7), abs=1e-11)
    assert central_difference(lambda x: x ** 3, 2.0, 0.1) == pytest.approx(12.0, abs=1e-12)
