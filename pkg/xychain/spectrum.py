"""Free-fermion spectrum of the periodic transverse-field XY ring.

H = -sum_j [(1+r)/2 sx_j sx_{j+1} + (1-r)/2 sy_j sy_{j+1} + h sz_j]

After the Jordan-Wigner map the Hilbert space splits into two parity
sectors. Periodic fermions (b = 0) carry odd fermion number, antiperiodic
fermions (b = 1/2) carry even fermion number. Each sector is a set of
independent Bogoliubov modes at momenta k_m = 2 pi (m + b) / n.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Tuple

import numpy as np

from .errors import (
    DegenerateAngleWarning,
    InvalidSizeError,
    SizeLimitError,
    ValidationError,
)

logger = logging.getLogger(__name__)

MAX_ENUMERATION_SITES = 20


# -----------------------------------------------------------------------------
# Model parameters
# -----------------------------------------------------------------------------

class Sector(Enum):
    """Fermion boundary-condition sector."""

    ZERO = 0.0
    HALF = 0.5

    @property
    def b(self) -> float:
        return self.value

    @property
    def parity(self) -> int:
        """Eigenvalue of prod_j sz_j on the sector: -1 odd, +1 even."""
        return -1 if self is Sector.ZERO else 1

    @property
    def label(self) -> str:
        return "zero" if self is Sector.ZERO else "half"

    @classmethod
    def from_parity(cls, parity: int) -> "Sector":
        return cls.ZERO if parity < 0 else cls.HALF


@dataclass(frozen=True)
class ModelPoint:
    """A point (r, h) of the phase diagram.

    r is the XX/YY anisotropy (0 = XX, 1 = Ising) and h the transverse field.
    """

    r: float
    h: float

    def __post_init__(self):
        r, h = float(self.r), float(self.h)
        if not (math.isfinite(r) and math.isfinite(h)):
            raise ValidationError(f"non-finite model point (r={self.r}, h={self.h})")
        if not 0.0 <= r <= 1.0:
            raise ValidationError(f"anisotropy r={r} outside [0, 1]")
        if h < 0.0:
            raise ValidationError(f"transverse field h={h} is negative")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "h", h)

    def with_field(self, h: float) -> "ModelPoint":
        return ModelPoint(self.r, h)


def check_size(n: int, minimum: int = 2) -> int:
    """Validate a chain length and return it as int."""
    if isinstance(n, bool) or int(n) != n:
        raise InvalidSizeError(f"chain length must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise InvalidSizeError(f"chain length {n} is below {minimum}")
    return n


# -----------------------------------------------------------------------------
# Single-mode quantities
# -----------------------------------------------------------------------------

def momenta(n: int, sector: Sector) -> np.ndarray:
    """Return k_m = 2 pi (m + b) / n for m = 0..n-1."""
    n = check_size(n)
    return 2.0 * np.pi * (np.arange(n) + sector.b) / n


def bogoliubov_angle(p: ModelPoint, k):
    """Bogoliubov angle with 2 theta = atan2(r sin k, h - cos k) in (-pi, pi].

    For k in [0, pi] the angle lies in [0, pi/2]. At the isolated points
    r sin k = 0 = h - cos k the angle is set to 0 and a
    DegenerateAngleWarning is raised.
    """
    k_arr = np.asarray(k, dtype=float)
    y = p.r * np.sin(k_arr) + 0.0  # no -0.0, keeps 2 theta off -pi
    x = p.h - np.cos(k_arr)
    degenerate = (y == 0.0) & (x == 0.0)
    if np.any(degenerate):
        warnings.warn(
            f"Bogoliubov angle undefined at r={p.r}, h={p.h}; using theta=0",
            DegenerateAngleWarning,
            stacklevel=2,
        )
    theta = 0.5 * np.arctan2(y, x)
    if np.ndim(theta) == 0:
        return float(theta)
    return theta


def quasiparticle_energy(p: ModelPoint, k):
    """Return 2 sqrt((h - cos k)^2 + r^2 sin^2 k)."""
    k_arr = np.asarray(k, dtype=float)
    eps = 2.0 * np.hypot(p.h - np.cos(k_arr), p.r * np.sin(k_arr))
    if np.ndim(eps) == 0:
        return float(eps)
    return eps


# -----------------------------------------------------------------------------
# Sector spectra
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SectorSpectrum:
    """Modes of one parity sector.

    ``energies[0]`` of the ZERO sector is the signed 2(h - 1).
    """

    n: int
    sector: Sector
    momenta: np.ndarray
    angles: np.ndarray
    energies: np.ndarray
    ground_energy: float


def _mode_energies(p: ModelPoint, n: int, sector: Sector) -> np.ndarray:
    energies = quasiparticle_energy(p, momenta(n, sector))
    if sector is Sector.ZERO:
        energies[0] = 2.0 * (p.h - 1.0)
    return energies


def ground_energy(p: ModelPoint, n: int, sector: Sector) -> float:
    """Lowest level of a sector.

    HALF: -sum_m sqrt((h - cos k_m)^2 + r^2 sin^2 k_m)
    ZERO: (h - 1) - sum_{m >= 1} sqrt(...)
    """
    energies = _mode_energies(p, n, sector)
    if sector is Sector.ZERO:
        return float(0.5 * energies[0] - 0.5 * math.fsum(energies[1:]))
    return float(-0.5 * math.fsum(energies))


def sector_spectrum(p: ModelPoint, n: int, sector: Sector) -> SectorSpectrum:
    ks = momenta(n, sector)
    return SectorSpectrum(
        n=n,
        sector=sector,
        momenta=ks,
        angles=bogoliubov_angle(p, ks),
        energies=_mode_energies(p, n, sector),
        ground_energy=ground_energy(p, n, sector),
    )


def gap(p: ModelPoint, n: int) -> float:
    """E0(ZERO) - E0(HALF); negative where the odd sector is lower."""
    return ground_energy(p, n, Sector.ZERO) - ground_energy(p, n, Sector.HALF)


def critical_gap(r: float, n: int) -> float:
    """Sector splitting at h = 1, approximately pi r / (2 n)."""
    return gap(ModelPoint(r, 1.0), n)


# -----------------------------------------------------------------------------
# Full level enumeration
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelSet:
    """All 2^n levels, ascending, with their sz-parity (+1 even, -1 odd)."""

    energies: np.ndarray
    parities: np.ndarray

    def __len__(self) -> int:
        return len(self.energies)

    def __iter__(self) -> Iterator[Tuple[float, int]]:
        for energy, parity in zip(self.energies, self.parities):
            yield float(energy), int(parity)


def _occupation_sums(energies: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Subset sums of *energies* and the parity of each subset size."""
    sums = np.zeros(1)
    odd = np.zeros(1, dtype=bool)
    for eps in energies:
        sums = np.concatenate([sums, sums + eps])
        odd = np.concatenate([odd, ~odd])
    return sums, odd


def enumerate_levels(p: ModelPoint, n: int) -> LevelSet:
    """Enumerate every admissible level E = sum_occ eps - sum_all eps / 2.

    Each sector keeps only occupations with its own fermion parity, so the
    two sectors together contribute exactly 2^n levels.
    """
    n = check_size(n)
    if n > MAX_ENUMERATION_SITES:
        raise SizeLimitError(
            f"level enumeration limited to n <= {MAX_ENUMERATION_SITES}, got {n}")

    energies = []
    parities = []
    for sector in (Sector.HALF, Sector.ZERO):
        eps = _mode_energies(p, n, sector)
        sums, odd = _occupation_sums(eps)
        keep = odd if sector is Sector.ZERO else ~odd
        energies.append(sums[keep] - 0.5 * math.fsum(eps))
        parities.append(np.full(int(keep.sum()), sector.parity, dtype=int))

    energies = np.concatenate(energies)
    parities = np.concatenate(parities)
    order = np.argsort(energies, kind="stable")
    logger.debug("enumerated %d levels for n=%d at %s", len(order), n, p)
    return LevelSet(energies=energies[order], parities=parities[order])


__all__ = [
    "MAX_ENUMERATION_SITES",
    "Sector",
    "ModelPoint",
    "SectorSpectrum",
    "LevelSet",
    "check_size",
    "momenta",
    "bogoliubov_angle",
    "quasiparticle_energy",
    "ground_energy",
    "sector_spectrum",
    "gap",
    "critical_gap",
    "enumerate_levels",
]
