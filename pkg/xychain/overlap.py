"""Exact overlaps between the sector ground states and the rotated product state.

Phi(xi) rotates every spin of the fully polarized state by the same polar
angle xi. Its overlap with the lowest level of sector b factorizes into a
size-dependent prefactor times one factor per momentum pair (k, 2 pi - k)
with 0 < k < pi:

    cos(theta_k) cos^2(xi/2) + sin(theta_k) sin^2(xi/2) cot(k/2)

With the angle branch of ``spectrum.bogoliubov_angle`` every factor is
nonnegative on xi in [0, pi], so the sign lives in the prefactor alone.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .signedlog import SignedLogValue
from .spectrum import ModelPoint, Sector, bogoliubov_angle, check_size

logger = logging.getLogger(__name__)

# Rounding slack accepted on the pi/2 end of a mix angle (e.g. "1.5708").
MIX_ANGLE_SLACK = 1e-4


def clamp_ansatz_angle(xi: float) -> float:
    """Clamp an ansatz angle to [0, pi]."""
    return min(max(float(xi), 0.0), math.pi)


@dataclass(frozen=True)
class Superposition:
    """cos(theta_mix) |Psi_1/2> + sin(theta_mix) |Psi_0>, theta_mix in [0, pi/2]."""

    theta_mix: float

    def __post_init__(self):
        theta = float(self.theta_mix)
        if not math.isfinite(theta) or theta < 0.0 or theta > math.pi / 2 + MIX_ANGLE_SLACK:
            raise ValidationError(f"mix angle {self.theta_mix} outside [0, pi/2]")
        object.__setattr__(self, "theta_mix", min(theta, math.pi / 2))

    @property
    def label(self) -> str:
        return f"mix:{self.theta_mix:.6g}"


# -----------------------------------------------------------------------------
# Prefactor
# -----------------------------------------------------------------------------

def prefactor(sector: Sector, n: int, xi: float) -> SignedLogValue:
    """Size-dependent overlap prefactor.

    even n: HALF -> 1,            ZERO -> sqrt(n) sin(xi/2) cos(xi/2)
    odd n:  HALF -> cos(xi/2),    ZERO -> sqrt(n) sin(xi/2)
    """
    n = check_size(n)
    xi = clamp_ansatz_angle(xi)
    c, s = math.cos(xi / 2), math.sin(xi / 2)
    if n % 2 == 0:
        value = 1.0 if sector is Sector.HALF else math.sqrt(n) * s * c
    else:
        value = c if sector is Sector.HALF else math.sqrt(n) * s
    return SignedLogValue.from_float(value)


# -----------------------------------------------------------------------------
# Kernels
# -----------------------------------------------------------------------------

def paired_modes(n: int, sector: Sector) -> np.ndarray:
    """Momenta of the sector lying strictly inside (0, pi)."""
    twice = 2 * np.arange(n) + (1 if sector is Sector.HALF else 0)
    inside = (twice > 0) & (twice < n)
    return np.pi * twice[inside] / n


class SectorOverlap:
    """Evaluator xi -> <Phi(xi)|Psi_b> for a fixed (p, n, sector).

    The per-mode coefficients are computed once; each call costs one pass
    over n/2 factors.
    """

    def __init__(self, p: ModelPoint, n: int, sector: Sector):
        self.p = p
        self.n = check_size(n)
        self.sector = sector
        ks = paired_modes(self.n, sector)
        theta = np.asarray(bogoliubov_angle(p, ks), dtype=float)
        self.cos_coef = np.cos(theta)
        self.sin_coef = np.sin(theta) / np.tan(ks / 2)

    def factors(self, xi: float) -> np.ndarray:
        c2 = math.cos(xi / 2) ** 2
        s2 = math.sin(xi / 2) ** 2
        return self.cos_coef * c2 + self.sin_coef * s2

    def __call__(self, xi: float) -> SignedLogValue:
        xi = clamp_ansatz_angle(xi)
        return prefactor(self.sector, self.n, xi) * SignedLogValue.from_factors(self.factors(xi))


class SuperpositionOverlap:
    """Evaluator xi -> cos(t) <Phi|Psi_1/2> + sin(t) <Phi|Psi_0>."""

    def __init__(self, p: ModelPoint, n: int, theta_mix: float):
        self.state = Superposition(theta_mix)
        self.half = SectorOverlap(p, n, Sector.HALF)
        self.zero = SectorOverlap(p, n, Sector.ZERO)
        self.n = self.half.n
        self.cos_weight = math.cos(self.state.theta_mix)
        self.sin_weight = math.sin(self.state.theta_mix)

    def __call__(self, xi: float) -> SignedLogValue:
        total = SignedLogValue.zero()
        if self.cos_weight > 0.0:
            total = total + self.half(xi).scale(self.cos_weight)
        if self.sin_weight > 0.0:
            total = total + self.zero(xi).scale(self.sin_weight)
        return total


def sector_kernel(p: ModelPoint, n: int, sector: Sector) -> SectorOverlap:
    return SectorOverlap(p, n, sector)


def superposition_kernel(p: ModelPoint, n: int, theta_mix: float) -> SuperpositionOverlap:
    return SuperpositionOverlap(p, n, theta_mix)


def overlap_value(p: ModelPoint, n: int, sector: Sector, xi: float) -> SignedLogValue:
    return SectorOverlap(p, n, sector)(xi)


def superposition_overlap(p: ModelPoint, n: int, theta_mix: float, xi: float) -> SignedLogValue:
    return SuperpositionOverlap(p, n, theta_mix)(xi)


__all__ = [
    "MIX_ANGLE_SLACK",
    "Superposition",
    "SectorOverlap",
    "SuperpositionOverlap",
    "clamp_ansatz_angle",
    "prefactor",
    "paired_modes",
    "sector_kernel",
    "superposition_kernel",
    "overlap_value",
    "superposition_overlap",
]
