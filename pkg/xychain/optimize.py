"""One-dimensional maximization and differentiation helpers."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

DEFAULT_GRID_POINTS = 257
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Maximum:
    """Location and value of a maximum; ``grid_index`` is the best seed."""

    x: float
    value: float
    grid_index: int


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """
    Golden-section search for the maximum of a unimodal function.

    Args:
        f: Objective (may return -inf)
        a: Left end of the bracket
        b: Right end of the bracket
        tol: Final bracket width

    Returns:
        (x, f(x)) at the best point seen
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    # Required steps to achieve tolerance
    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(steps - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    return (c, yc) if yc > yd else (d, yd)


def maximize_on_interval(f: Callable[[float], float], a: float, b: float,
                         grid_points: int = DEFAULT_GRID_POINTS,
                         tol: float = DEFAULT_TOL) -> Maximum:
    """
    Global maximum on [a, b]: uniform seed grid, then golden refinement.

    Samples equal to -inf are skipped. When every sample is -inf the
    returned value is -inf and the caller decides what that means.

    Args:
        f: Objective
        a: Left end
        b: Right end
        grid_points: Number of uniform seeds (endpoints included)
        tol: Golden-section bracket tolerance

    Returns:
        Maximum at the refined location
    """
    xs = np.linspace(a, b, grid_points)
    ys = np.array([f(float(x)) for x in xs])
    finite = np.isfinite(ys)
    if not finite.any():
        return Maximum(x=float(xs[0]), value=-math.inf, grid_index=0)

    i = int(np.argmax(np.where(finite, ys, -np.inf)))
    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, grid_points - 1)])
    x, y = golden_section_max(f, lo, hi, tol=tol)
    if not (y >= ys[i]):
        x, y = float(xs[i]), float(ys[i])
    logger.debug("maximum %.15g at x=%.15g (seed %d)", y, x, i)
    return Maximum(x=float(x), value=float(y), grid_index=i)


def central_difference(f: Callable[[float], float], x: float, step: float) -> float:
    """Central difference with one Richardson step: (4 D(step/2) - D(step)) / 3."""
    d_full = (f(x + step) - f(x - step)) / (2 * step)
    half = step / 2
    d_half = (f(x + half) - f(x - half)) / (2 * half)
    return (4 * d_half - d_full) / 3


__all__ = [
    "INV_PHI",
    "INV_PHI_SQUARE",
    "DEFAULT_GRID_POINTS",
    "DEFAULT_TOL",
    "Maximum",
    "golden_section_max",
    "maximize_on_interval",
    "central_difference",
]
