"""Geometric entanglement of the two lowest levels and their superpositions.

Lambda_max is the largest overlap with the rotated product state Phi(xi),
E_log2 = -log2(Lambda_max^2) is the total entanglement and E_log2 / n the
density per spin.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np

from .errors import (
    AccuracyError,
    BracketError,
    DegenerateLineError,
    DegenerateOverlapError,
    ValidationError,
)
from .optimize import (
    DEFAULT_GRID_POINTS,
    DEFAULT_TOL,
    central_difference,
    golden_section_max,
    maximize_on_interval,
)
from .overlap import SectorOverlap, Superposition, SuperpositionOverlap
from .signedlog import SignedLogValue
from .spectrum import ModelPoint, Sector, check_size, ground_energy

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

# Sector energies closer than this count as degenerate.
DEGENERACY_TOL = 1e-12
DISORDER_ENERGY_TOL = 1e-12

# Relative threshold on d ln|overlap| / d xi at an interior maximizer.
STATIONARITY_TOL = 1e-6
STATIONARITY_STEP = 1e-6

PEAK_BRACKET = (0.8, 1.2)
PEAK_WIDE_BRACKET = (0.6, 1.4)
PEAK_SCAN_POINTS = 41


@dataclass(frozen=True)
class Ground:
    """Selector for whichever sector holds the lower level."""

    @property
    def label(self) -> str:
        return "ground"


GROUND = Ground()

StateSelector = Union[Sector, Superposition, Ground]


def state_label(state: StateSelector) -> str:
    return state.label


def parse_state(text: str) -> StateSelector:
    """Parse 'ground', 'half', 'zero' or a mix angle like 'mix:0.7854'."""
    key = text.strip().lower()
    if key == "ground":
        return GROUND
    if key in ("half", "1/2", "0.5"):
        return Sector.HALF
    if key in ("zero", "0"):
        return Sector.ZERO
    if key.startswith("mix:"):
        try:
            return Superposition(float(key[4:]))
        except ValueError as exc:
            raise ValidationError(f"bad mix angle in {text!r}") from exc
    raise ValidationError(f"unknown state {text!r}")


# -----------------------------------------------------------------------------
# Records
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaMaximum:
    """Result of the one-parameter overlap maximization."""

    xi_star: float
    log_lambda_max: float
    slope: float
    stationary: bool

    @property
    def lambda_max(self) -> float:
        return math.exp(self.log_lambda_max)


@dataclass(frozen=True)
class EntanglementRecord:
    """One entanglement evaluation.

    ``lambda_max`` underflows to 0 for large n; ``log_lambda_max`` does not.
    ``sector`` is the resolved sector (None for superpositions).
    """

    state: str
    r: float
    h: float
    n: int
    xi_star: float
    log_lambda_max: float
    e_log2: float
    density: float
    sector: Optional[Sector] = None
    degenerate: bool = False

    @property
    def lambda_max(self) -> float:
        return math.exp(self.log_lambda_max)


@dataclass(frozen=True)
class GroundSelection:
    sector: Sector
    degenerate: bool
    gap: float


@dataclass(frozen=True)
class DerivativePeak:
    h_max: float
    slope_max: float


@dataclass(frozen=True)
class FactorizedState:
    """Single-spin magnetization (x, y, z) of a translation-invariant product state."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"magnetization ({self.x}, {self.y}, {self.z}) is not a unit vector")


# -----------------------------------------------------------------------------
# Maximization
# -----------------------------------------------------------------------------

def maximize_lambda(evaluator: Callable[[float], SignedLogValue],
                    grid_points: int = DEFAULT_GRID_POINTS,
                    tol: float = DEFAULT_TOL) -> LambdaMaximum:
    """
    Maximize |overlap| over the ansatz angle xi in [0, pi].

    Args:
        evaluator: xi -> overlap as a SignedLogValue
        grid_points: Uniform seeds before golden refinement
        tol: Golden-section tolerance on xi

    Returns:
        LambdaMaximum with the maximizer, ln(Lambda_max) and the slope check

    Raises:
        DegenerateOverlapError: if the overlap vanishes at every seed
    """
    def log_abs(xi: float) -> float:
        return evaluator(xi).abs_log

    best = maximize_on_interval(log_abs, 0.0, math.pi, grid_points=grid_points, tol=tol)
    if not math.isfinite(best.value):
        raise DegenerateOverlapError("overlap is zero at every sampled angle")

    xi = best.x
    slope = 0.0
    stationary = True
    if STATIONARITY_STEP < xi < math.pi - STATIONARITY_STEP:
        slope = (log_abs(xi + STATIONARITY_STEP) - log_abs(xi - STATIONARITY_STEP)) / (2 * STATIONARITY_STEP)
        stationary = abs(slope) < STATIONARITY_TOL * max(1.0, abs(best.value))
        if not stationary:
            logger.warning("maximizer at xi=%.15g has slope %.3e", xi, slope)

    return LambdaMaximum(xi_star=xi, log_lambda_max=best.value, slope=slope, stationary=stationary)


# -----------------------------------------------------------------------------
# Ground sector
# -----------------------------------------------------------------------------

def select_ground(p: ModelPoint, n: int) -> GroundSelection:
    """Lower sector with its splitting; ties resolve to HALF and are flagged."""
    delta = ground_energy(p, n, Sector.ZERO) - ground_energy(p, n, Sector.HALF)
    if abs(delta) < DEGENERACY_TOL:
        return GroundSelection(Sector.HALF, True, delta)
    return GroundSelection(Sector.ZERO if delta < 0 else Sector.HALF, False, delta)


def ground_sector(p: ModelPoint, n: int) -> Sector:
    return select_ground(p, n).sector


# -----------------------------------------------------------------------------
# Entanglement
# -----------------------------------------------------------------------------

def _evaluator(p: ModelPoint, n: int, state: StateSelector):
    if isinstance(state, Superposition):
        return SuperpositionOverlap(p, n, state.theta_mix)
    return SectorOverlap(p, n, state)


def entanglement(p: ModelPoint, n: int, state: StateSelector = GROUND) -> EntanglementRecord:
    """Lambda_max, E_log2 and density of one state at (p, n)."""
    n = check_size(n)
    sector: Optional[Sector] = None
    degenerate = False
    target: StateSelector = state
    if isinstance(state, Ground):
        selection = select_ground(p, n)
        sector, degenerate = selection.sector, selection.degenerate
        target = sector
    elif isinstance(state, Sector):
        sector = state

    best = maximize_lambda(_evaluator(p, n, target))
    e_log2 = -2.0 * best.log_lambda_max / LN2
    return EntanglementRecord(
        state=state.label,
        r=p.r,
        h=p.h,
        n=n,
        xi_star=best.xi_star,
        log_lambda_max=best.log_lambda_max,
        e_log2=e_log2,
        density=e_log2 / n,
        sector=sector,
        degenerate=degenerate,
    )


def entanglement_curve(r: float, hs: Iterable[float], n: int,
                       state: StateSelector = GROUND) -> List[EntanglementRecord]:
    return [entanglement(ModelPoint(r, h), n, state) for h in hs]


# -----------------------------------------------------------------------------
# Field derivative and its peak
# -----------------------------------------------------------------------------

def derivative_step(p: ModelPoint, n: int) -> float:
    """Finite-difference step in h.

    Grows with |h - 1| away from the critical point and never exceeds a
    fraction of the finite-size peak width pi r / n.
    """
    min_step = min(1e-5, 0.02 * math.pi * max(p.r, 1e-3) / n)
    return max(min_step, 1e-3 * abs(p.h - 1.0))


def field_derivative(p: ModelPoint, n: int, state: StateSelector = GROUND,
                     step: Optional[float] = None) -> float:
    """d(density)/dh by a Richardson-extrapolated central difference."""
    n = check_size(n)
    if step is None:
        step = derivative_step(p, n)
    if p.h - step < 0.0:
        raise ValidationError(f"h={p.h} too close to 0 for step {step:.3e}")

    def density(h: float) -> float:
        return entanglement(p.with_field(h), n, state).density

    return central_difference(density, p.h, step)


def _coarse_scan(r: float, n: int, state: StateSelector, bracket: Tuple[float, float],
                 points: int) -> Tuple[np.ndarray, np.ndarray]:
    hs = np.linspace(bracket[0], bracket[1], points)
    slopes = np.array([field_derivative(ModelPoint(r, float(h)), n, state) for h in hs])
    return hs, slopes


def _is_unimodal(values: np.ndarray) -> bool:
    i = int(np.argmax(values))
    if i in (0, len(values) - 1):
        return False
    rises = np.diff(values)
    peaks = np.count_nonzero((rises[:-1] > 0) & (rises[1:] <= 0))
    return peaks == 1


def derivative_peak(r: float, n: int, state: StateSelector = Sector.HALF,
                    bracket: Tuple[float, float] = PEAK_BRACKET,
                    scan_points: int = PEAK_SCAN_POINTS) -> DerivativePeak:
    """
    Location and height of the maximum of d(density)/dh near h = 1.

    Args:
        r: Anisotropy, > 0
        n: Chain length, >= 100
        state: Which state's density to differentiate
        bracket: Initial field interval
        scan_points: Coarse scan resolution

    Returns:
        DerivativePeak

    Raises:
        BracketError: if the scan does not isolate one maximum after one widening
    """
    if not 0.0 < r <= 1.0:
        raise ValidationError(f"derivative peak needs r in (0, 1], got {r}")
    n = check_size(n, minimum=100)

    hs, slopes = _coarse_scan(r, n, state, bracket, scan_points)
    if not _is_unimodal(slopes):
        logger.info("derivative scan not unimodal on %s; widening to %s", bracket, PEAK_WIDE_BRACKET)
        hs, slopes = _coarse_scan(r, n, state, PEAK_WIDE_BRACKET, 2 * scan_points - 1)
        if not _is_unimodal(slopes):
            raise BracketError(f"no isolated derivative peak for r={r}, n={n}")

    i = int(np.argmax(slopes))
    tol = min(1e-7, derivative_step(ModelPoint(r, 1.0), n))
    h_max, slope_max = golden_section_max(
        lambda h: field_derivative(ModelPoint(r, h), n, state),
        float(hs[i - 1]), float(hs[i + 1]), tol=tol,
    )
    if slope_max < slopes[i]:
        h_max, slope_max = float(hs[i]), float(slopes[i])
    logger.debug("derivative peak r=%g n=%d: h=%.10f slope=%.6f", r, n, h_max, slope_max)
    return DerivativePeak(h_max=float(h_max), slope_max=float(slope_max))


# -----------------------------------------------------------------------------
# Disorder line and perturbative estimates
# -----------------------------------------------------------------------------

def disorder_field(r: float) -> float:
    return math.sqrt(1.0 - r * r)


def disorder_factorized_state(r: float) -> Tuple[FactorizedState, FactorizedState]:
    """The two product ground states on r^2 + h^2 = 1, x > 0 first."""
    if r == 0.0:
        raise DegenerateLineError("the disorder line meets the XX point at r = 0")
    if not 0.0 < r <= 1.0:
        raise ValidationError(f"anisotropy r={r} outside (0, 1]")
    x = math.sqrt(2.0 * r / (1.0 + r))
    z = math.sqrt((1.0 - r) / (1.0 + r))
    states = (FactorizedState(x, 0.0, z), FactorizedState(-x, 0.0, z))
    p = ModelPoint(r, disorder_field(r))
    for state in states:
        per_site = product_state_energy(p, state, 1)
        if abs(per_site + 1.0) > DISORDER_ENERGY_TOL:
            raise AccuracyError(f"factorized state at r={r} has energy {per_site:.15g} per site, expected -1")
    return states


def product_state_energy(p: ModelPoint, state: FactorizedState, n: int) -> float:
    """<H> of the product state with magnetization *state* on every site."""
    per_site = (1 + p.r) / 2 * state.x ** 2 + (1 - p.r) / 2 * state.y ** 2 + p.h * state.z
    return -n * per_site


def small_field_bound(n: int, h: float) -> float:
    """Leading-order E_log2 of the broken-symmetry state for h << 1."""
    return n * h * h / (16 * LN2)


def large_field_bound(n: int, h: float) -> float:
    """Leading-order E_log2 of the ground state for h >> 1."""
    return n / (16 * h * h * LN2)


__all__ = [
    "LN2",
    "DEGENERACY_TOL",
    "Ground",
    "GROUND",
    "StateSelector",
    "state_label",
    "parse_state",
    "LambdaMaximum",
    "EntanglementRecord",
    "GroundSelection",
    "DerivativePeak",
    "FactorizedState",
    "maximize_lambda",
    "select_ground",
    "ground_sector",
    "entanglement",
    "entanglement_curve",
    "derivative_step",
    "field_derivative",
    "derivative_peak",
    "disorder_field",
    "disorder_factorized_state",
    "product_state_energy",
    "small_field_bound",
    "large_field_bound",
]
