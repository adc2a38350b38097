import math

import numpy as np
import pytest

from xychain.errors import QuadratureAccuracyError
from xychain.quadrature import (
    composite_rule,
    gauss_legendre_rule,
    graded_edges,
    integrate,
    mesh_edges,
    refine_until,
)


def test_gauss_legendre_rule():
    x, w = gauss_legendre_rule(16)
    assert len(x) == 16
    assert w.sum() == pytest.approx(2.0, abs=1e-14)
    assert np.dot(w, x ** 30) == pytest.approx(2 / 31, abs=1e-14)


def test_graded_edges():
    assert np.allclose(graded_edges(0.0, 1.0, levels=3, toward="left"), [0, 0.125, 0.25, 0.5, 1])
    assert np.allclose(graded_edges(0.0, 1.0, levels=3, toward="right"), [0, 0.5, 0.75, 0.875, 1])
    both = graded_edges(0.0, 1.0, levels=2, toward="both")
    assert np.allclose(both, [0, 0.125, 0.25, 0.5, 0.75, 0.875, 1])
    with pytest.raises(ValueError):
        graded_edges(0.0, 1.0, toward="middle")


def test_mesh_edges_grades_toward_breakpoint():
    edges = mesh_edges(0.0, 0.5, breakpoints=[0.2, 0.9], levels=10)
    assert edges[0] == 0.0
    assert edges[-1] == 0.5
    assert 0.2 in edges
    assert np.all(np.diff(edges) > 0)
    below = edges[edges < 0.2]
    above = edges[edges > 0.2]
    assert 0.2 - below.max() < 1e-3
    assert above.min() - 0.2 < 1e-3


def test_composite_rule_is_exact_for_polynomials():
    rule = composite_rule(np.array([0.0, 0.5, 1.0]), nodes=4, subdivisions=3)
    assert len(rule.nodes) == 2 * 3 * 4
    assert rule.integrate(rule.nodes ** 5) == pytest.approx(1 / 6, abs=1e-15)


def test_log_endpoint_singularity():
    result = integrate(np.log, 0.0, 1.0)
    assert result.value == pytest.approx(-1.0, abs=1e-11)
    assert result.error < 1e-12


def test_interior_kink():
    result = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, breakpoints=[0.3])
    assert result.value == pytest.approx((0.3 ** 2 + 0.7 ** 2) / 2, abs=1e-13)


def test_refinement_budget_exhausted():
    with pytest.raises(QuadratureAccuracyError) as info:
        refine_until(lambda rule: float(len(rule.nodes)), np.array([0.0, 1.0]), max_subdivisions=8)
    assert info.value.achieved_error > 0
    assert info.value.exit_code == 3


def test_catalan_integral():
    result = integrate(lambda mu: -np.log(np.tan(np.pi * mu)), 0.0, 0.25)
    assert math.pi * result.value == pytest.approx(0.915965594177219, abs=1e-11)
