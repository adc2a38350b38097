"""Entanglement density in the thermodynamic limit.

As n -> oo the log of the overlap product becomes an integral over the
momentum fraction mu = k / (2 pi) in (0, 1/2):

    density(r, h) = -(2 / ln 2) max_xi F(xi)
    F(xi) = int_0^1/2 ln[cos(theta) cos^2(xi/2) + sin(theta) sin^2(xi/2) cot(pi mu)] dmu

At r = 0 (XX chain) the angle is a step function at mu0 = arccos(h) / (2 pi)
and both the density and its field derivative have closed forms.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from .errors import (
    AsymmetryError,
    BranchError,
    NearCriticalError,
    OutsideDomainWarning,
    ValidationError,
)
from .optimize import maximize_on_interval
from .quadrature import QuadratureRule, integrate, mesh_edges, refine_until
from .spectrum import ModelPoint

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
DENSITY_SCALE = -2.0 / LN2

DENSITY_TOL = 1e-10
DERIVATIVE_TOL = 1e-10
NEAR_CRITICAL = 1e-8

# Divergence fit: |h - 1| = r^2 * 10^[-6, -3], log-spaced on both sides and
# never closer than DIVERGENCE_FLOOR.
DIVERGENCE_WINDOW = (1e-6, 1e-3)
DIVERGENCE_FLOOR = 1e-7
DIVERGENCE_POINTS = 7
ASYMMETRY_TOL = 0.05


# -----------------------------------------------------------------------------
# Continuum angle and integrand
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuumAngle:
    """theta(mu) with tan 2 theta = r sin(2 pi mu) / (h - cos(2 pi mu))."""

    mu: np.ndarray
    theta: np.ndarray


def _angle_components(mu: np.ndarray, p: ModelPoint) -> Tuple[np.ndarray, np.ndarray]:
    # h - cos(2 pi mu) written without cancellation near mu = 0, h = 1
    x = (p.h - 1.0) + 2.0 * np.sin(np.pi * mu) ** 2
    y = p.r * np.sin(2.0 * np.pi * mu) + 0.0
    return x, y


def continuum_angle(mu, p: ModelPoint) -> ContinuumAngle:
    mu = np.asarray(mu, dtype=float)
    x, y = _angle_components(mu, p)
    return ContinuumAngle(mu=mu, theta=0.5 * np.arctan2(y, x))


def _log_argument(cos_coef: np.ndarray, sin_coef: np.ndarray, xi: float,
                  allow_zero: bool = False) -> np.ndarray:
    # The XX step angle is exactly 0 or pi/2, so whole regions reach ln 0.
    arg = cos_coef * math.cos(xi / 2) ** 2 + sin_coef * math.sin(xi / 2) ** 2
    bad = arg < 0.0 if allow_zero else arg <= 0.0
    if np.any(bad):
        raise BranchError(f"nonpositive logarithm argument at xi={xi}")
    return arg


def density_integrand(mu, p: ModelPoint, xi: float):
    """ln[cos(theta) cos^2(xi/2) + sin(theta) sin^2(xi/2) cot(pi mu)]."""
    angle = continuum_angle(mu, p)
    with np.errstate(divide="ignore"):
        values = np.log(_log_argument(np.cos(angle.theta),
                                      np.sin(angle.theta) / np.tan(np.pi * angle.mu), xi,
                                      allow_zero=p.r == 0.0))
    if np.ndim(values) == 0:
        return float(values)
    return values


class ContinuumKernel:
    """F(xi) on a fixed quadrature rule, with per-node coefficients cached."""

    def __init__(self, p: ModelPoint, rule: QuadratureRule):
        self.p = p
        self.rule = rule
        angle = continuum_angle(rule.nodes, p)
        self.theta = angle.theta
        self.cos_theta = np.cos(angle.theta)
        self.sin_theta = np.sin(angle.theta)
        self.cot = 1.0 / np.tan(np.pi * rule.nodes)
        self.sin_coef = self.sin_theta * self.cot

    def __call__(self, xi: float) -> float:
        arg = _log_argument(self.cos_theta, self.sin_coef, xi, allow_zero=self.p.r == 0.0)
        with np.errstate(divide="ignore"):
            return self.rule.integrate(np.log(arg))

    def field_derivative(self, xi: float) -> float:
        """dF/dh at fixed xi."""
        c2 = math.cos(xi / 2) ** 2
        s2 = math.sin(xi / 2) ** 2
        x, y = _angle_components(self.rule.nodes, self.p)
        dtheta_dh = -0.5 * y / (x * x + y * y)
        denom = self.cos_theta * c2 + self.sin_coef * s2
        numer = -self.sin_theta * c2 + self.cos_theta * s2 * self.cot
        return self.rule.integrate(dtheta_dh * numer / denom)


def _edges(p: ModelPoint) -> np.ndarray:
    breakpoints = [math.acos(p.h) / (2 * math.pi)] if p.h < 1.0 else []
    return mesh_edges(0.0, 0.5, breakpoints)


# -----------------------------------------------------------------------------
# Density
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class InfiniteDensity:
    xi_star: float
    density: float
    error: float = 0.0
    subdivisions: int = 0


def density_infinite(p: ModelPoint, tol: float = DENSITY_TOL,
                     use_closed_form: bool = True) -> InfiniteDensity:
    """
    Thermodynamic-limit density and its maximizing ansatz angle.

    Args:
        p: Model point
        tol: Agreement required between successive mesh refinements
        use_closed_form: Dispatch r = 0 to the XX closed forms

    Returns:
        InfiniteDensity

    Raises:
        QuadratureAccuracyError: if the refinement budget runs out
    """
    if p.r == 0.0 and use_closed_form:
        xi = xx_geometry(p.h).xi if p.h < 1.0 else 0.0
        return InfiniteDensity(xi_star=xi, density=xx_density(p.h))

    best = {}

    def evaluate(rule: QuadratureRule) -> float:
        kernel = ContinuumKernel(p, rule)
        found = maximize_on_interval(kernel, 0.0, math.pi)
        best["xi"] = found.x
        return DENSITY_SCALE * found.value

    result = refine_until(evaluate, _edges(p), tol=tol)
    logger.debug("density(%s) = %.12g after %d subdivisions", p, result.value, result.subdivisions)
    return InfiniteDensity(xi_star=best["xi"], density=result.value,
                           error=result.error, subdivisions=result.subdivisions)


def dE_dh_infinite(p: ModelPoint, xi_star: Optional[float] = None,
                   tol: float = DERIVATIVE_TOL) -> float:
    """
    d(density)/dh from the envelope theorem: only the explicit h-dependence
    of the integrand at the maximizing xi contributes.

    Raises:
        NearCriticalError: if |h - 1| < 1e-8
    """
    if p.r <= 0.0:
        raise ValidationError("dE_dh_infinite needs r > 0; use xx_density_derivative at r = 0")
    if abs(p.h - 1.0) < NEAR_CRITICAL:
        raise NearCriticalError(p.h, NEAR_CRITICAL)
    if xi_star is None:
        xi_star = density_infinite(p).xi_star

    result = refine_until(lambda rule: DENSITY_SCALE * ContinuumKernel(p, rule).field_derivative(xi_star),
                          _edges(p), tol=tol)
    return result.value


# -----------------------------------------------------------------------------
# XX chain closed forms
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class XXGeometry:
    """Fermi point mu0 = arccos(h) / (2 pi) and the optimal angle, cos(xi) = 1 - 4 mu0."""

    mu0: float
    xi: float


def xx_geometry(h: float) -> XXGeometry:
    if not 0.0 <= h <= 1.0:
        raise ValidationError(f"XX Fermi point defined for h in [0, 1], got {h}")
    mu0 = math.acos(h) / (2 * math.pi)
    return XXGeometry(mu0=mu0, xi=math.acos(1.0 - 4.0 * mu0))


def _log_cot(mu: np.ndarray) -> np.ndarray:
    return -np.log(np.tan(np.pi * mu))


def xx_density(h: float) -> float:
    """Closed-form XX density; identically 0 for h >= 1."""
    if h < 0.0:
        raise ValidationError(f"transverse field h={h} is negative")
    if h >= 1.0:
        return 0.0
    mu0 = xx_geometry(h).mu0
    tail = integrate(_log_cot, 0.0, mu0, tol=1e-13).value
    bracket = mu0 * math.log(2 * mu0 / (1 - 2 * mu0)) + 0.5 * math.log(1 - 2 * mu0) + tail
    return DENSITY_SCALE * bracket


def xx_density_derivative(h: float) -> float:
    """d(xx_density)/dh; 0 with an OutsideDomainWarning for h >= 1."""
    if h < 0.0:
        raise ValidationError(f"transverse field h={h} is negative")
    if h >= 1.0:
        warnings.warn(f"XX density is flat for h={h} >= 1", OutsideDomainWarning, stacklevel=2)
        return 0.0
    a = math.acos(h)
    ratio = a / (math.pi - a) * math.sqrt((1 + h) / (1 - h))
    return math.log(ratio) / (math.pi * LN2 * math.sqrt(1 - h * h))


def catalan_constant() -> float:
    """pi * int_0^1/4 ln cot(pi mu) dmu."""
    return math.pi * integrate(_log_cot, 0.0, 0.25, tol=1e-13).value


# -----------------------------------------------------------------------------
# Critical behavior
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DivergenceFit:
    """Amplitude A of dE/dh ~ -A ln|h - 1| fitted on each side of h = 1."""

    r: float
    above: float
    below: float
    coefficient: float


def divergence_offsets(r: float, window: Tuple[float, float] = DIVERGENCE_WINDOW,
                       points: int = DIVERGENCE_POINTS) -> np.ndarray:
    """Log-spaced |h - 1| samples for the divergence fit at anisotropy r."""
    lo = max(r * r * window[0], DIVERGENCE_FLOOR)
    hi = r * r * window[1]
    if hi <= lo:
        raise ValidationError(f"divergence window r^2 * {window} collapses below {DIVERGENCE_FLOOR:g} for r={r}")
    return np.logspace(math.log10(lo), math.log10(hi), points)


def _side_amplitude(r: float, sign: int, window: Tuple[float, float], points: int) -> float:
    eps = divergence_offsets(r, window, points)
    slopes = [dE_dh_infinite(ModelPoint(r, 1.0 + sign * e)) for e in eps]
    fit = stats.linregress(-np.log(eps), slopes)
    return float(fit.slope)


def divergence_fit(r: float, window: Tuple[float, float] = DIVERGENCE_WINDOW,
                   points: int = DIVERGENCE_POINTS,
                   asymmetry_tol: float = ASYMMETRY_TOL) -> DivergenceFit:
    """
    Fit the logarithmic divergence of dE/dh on both sides of h = 1.

    The window scales with r^2, the crossover scale below which the Ising
    form holds.

    Raises:
        AsymmetryError: if the two amplitudes differ by more than asymmetry_tol
    """
    if not 0.0 < r <= 1.0:
        raise ValidationError(f"divergence fit needs r in (0, 1], got {r}")
    above = _side_amplitude(r, +1, window, points)
    below = _side_amplitude(r, -1, window, points)
    mean = 0.5 * (above + below)
    logger.info("divergence r=%g: above=%.6f below=%.6f", r, above, below)
    if abs(above - below) > asymmetry_tol * abs(mean):
        raise AsymmetryError(f"amplitudes {above:.6f} (h > 1) and {below:.6f} (h < 1) disagree")
    return DivergenceFit(r=r, above=above, below=below, coefficient=mean)


def divergence_coefficient(r: float, **kwargs) -> float:
    return divergence_fit(r, **kwargs).coefficient


def density_maximum(r: float, bracket: Tuple[float, float] = (1.0, 2.0),
                    grid_points: int = 21, tol: float = 1e-6) -> Tuple[float, float]:
    """Field of maximal thermodynamic density and the density there."""
    best = maximize_on_interval(lambda h: density_infinite(ModelPoint(r, h)).density,
                                bracket[0], bracket[1], grid_points=grid_points, tol=tol)
    return best.x, best.value


__all__ = [
    "LN2",
    "DENSITY_TOL",
    "NEAR_CRITICAL",
    "ContinuumAngle",
    "ContinuumKernel",
    "InfiniteDensity",
    "XXGeometry",
    "DivergenceFit",
    "continuum_angle",
    "density_integrand",
    "density_infinite",
    "dE_dh_infinite",
    "xx_geometry",
    "xx_density",
    "xx_density_derivative",
    "catalan_constant",
    "divergence_offsets",
    "divergence_fit",
    "divergence_coefficient",
    "density_maximum",
]
