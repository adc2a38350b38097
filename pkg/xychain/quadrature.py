"""Composite Gauss-Legendre quadrature on geometrically graded meshes.

Panels shrink by halves toward the segment ends, so integrable logarithmic
endpoint singularities such as ln cot(pi mu) at mu -> 0 are resolved
without special weights.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Tuple

import numpy as np

from .errors import QuadratureAccuracyError

logger = logging.getLogger(__name__)

GL_NODES = 16
GRADED_LEVELS = 40
DEFAULT_TOL = 1e-12
MAX_SUBDIVISIONS = 256


@lru_cache(maxsize=None)
def gauss_legendre_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def graded_edges(a: float, b: float, levels: int = GRADED_LEVELS,
                 toward: str = "left") -> np.ndarray:
    """Panel edges on [a, b] halving toward one or both ends.

    ``toward="left"`` gives a + (b - a) 2^-j for j = 0..levels plus a.
    """
    j = 2.0 ** -np.arange(levels + 1)
    if toward == "left":
        inner = a + (b - a) * j
        return np.unique(np.concatenate([[a], inner]))
    if toward == "right":
        inner = b - (b - a) * j
        return np.unique(np.concatenate([inner, [b]]))
    if toward == "both":
        mid = 0.5 * (a + b)
        return np.unique(np.concatenate([
            graded_edges(a, mid, levels, "left"),
            graded_edges(mid, b, levels, "right"),
        ]))
    raise ValueError(f"unknown grading direction {toward!r}")


def mesh_edges(a: float, b: float, breakpoints: Iterable[float] = (),
               levels: int = GRADED_LEVELS) -> np.ndarray:
    """Graded edges toward a and toward both sides of every interior breakpoint."""
    inner = sorted(float(x) for x in breakpoints if a < x < b)
    points = [a, *inner, b]
    pieces = []
    for i, (lo, hi) in enumerate(zip(points[:-1], points[1:])):
        last = i == len(points) - 2
        pieces.append(graded_edges(lo, hi, levels, "left" if last else "both"))
    return np.unique(np.concatenate(pieces))


@dataclass(frozen=True)
class QuadratureRule:
    """Global nodes and weights of a composite rule."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def composite_rule(edges: np.ndarray, nodes: int = GL_NODES,
                   subdivisions: int = 1) -> QuadratureRule:
    """Gauss-Legendre on every panel, each split into *subdivisions* equal parts."""
    edges = np.asarray(edges, dtype=float)
    if subdivisions > 1:
        frac = np.arange(subdivisions) / subdivisions
        left = edges[:-1, None] + np.diff(edges)[:, None] * frac[None, :]
        edges = np.append(left.ravel(), edges[-1])
    x, w = gauss_legendre_rule(nodes)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return QuadratureRule(nodes=pts, weights=wts)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    subdivisions: int


def refine_until(evaluate: Callable[[QuadratureRule], float], edges: np.ndarray,
                 tol: float = DEFAULT_TOL, max_subdivisions: int = MAX_SUBDIVISIONS,
                 nodes: int = GL_NODES) -> QuadratureResult:
    """
    Double the panel subdivision until two successive values agree.

    Args:
        evaluate: Maps a composite rule to a number (an integral or any
            functional built from one)
        edges: Base panel edges
        tol: Absolute agreement required between successive refinements
        max_subdivisions: Give up past this many sub-panels per panel
        nodes: Gauss-Legendre nodes per sub-panel

    Returns:
        QuadratureResult with the finer value

    Raises:
        QuadratureAccuracyError: if the refinement budget runs out
    """
    subdivisions = 1
    previous = evaluate(composite_rule(edges, nodes, subdivisions))
    while True:
        subdivisions *= 2
        current = evaluate(composite_rule(edges, nodes, subdivisions))
        error = abs(current - previous)
        logger.debug("refinement %d: value=%.16g diff=%.3e", subdivisions, current, error)
        if error < tol:
            return QuadratureResult(value=current, error=error, subdivisions=subdivisions)
        if subdivisions >= max_subdivisions:
            raise QuadratureAccuracyError(
                f"no convergence after {subdivisions} subdivisions per panel", error)
        previous = current


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              breakpoints: Iterable[float] = (), tol: float = DEFAULT_TOL,
              max_subdivisions: int = MAX_SUBDIVISIONS,
              levels: int = GRADED_LEVELS) -> QuadratureResult:
    """Integrate a vectorized *f* over [a, b] on the graded mesh."""
    edges = mesh_edges(a, b, breakpoints, levels)
    return refine_until(lambda rule: rule.integrate(f(rule.nodes)), edges,
                        tol=tol, max_subdivisions=max_subdivisions)


__all__ = [
    "GL_NODES",
    "GRADED_LEVELS",
    "DEFAULT_TOL",
    "MAX_SUBDIVISIONS",
    "gauss_legendre_rule",
    "graded_edges",
    "mesh_edges",
    "QuadratureRule",
    "composite_rule",
    "QuadratureResult",
    "refine_until",
    "integrate",
]
