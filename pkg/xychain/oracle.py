"""Brute-force ground truth on the full 2^n-dimensional Hilbert space.

Basis states are integers; bit i set means spin i points down (one fermion
at site i after Jordan-Wigner), so prod_j sz_j = (-1)^popcount.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .entangle import FactorizedState, LambdaMaximum, maximize_lambda
from .errors import SizeLimitError, ValidationError
from .output import write_csv
from .overlap import overlap_value
from .signedlog import SignedLogValue
from .spectrum import ModelPoint, Sector, check_size

logger = logging.getLogger(__name__)

MAX_ORACLE_SITES = 14
MAX_DENSE_SPECTRUM_SITES = 12
DENSE_BLOCK_SITES = 10
RESIDUAL_TOL = 1e-10

DEFAULT_RESTARTS = 64
MIN_RESTARTS = 32
ALTERNATING_TOL = 1e-12
MAX_SWEEPS = 500


def _check_oracle_size(n: int, limit: int = MAX_ORACLE_SITES) -> int:
    n = check_size(n)
    if n > limit:
        raise SizeLimitError(f"oracle limited to n <= {limit}, got {n}")
    return n


# -----------------------------------------------------------------------------
# States
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DenseState:
    """Normalized amplitudes on the 2^n computational basis."""

    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        if self.amplitudes.shape != (2 ** self.n,):
            raise ValidationError(f"expected {2 ** self.n} amplitudes, got {self.amplitudes.shape}")
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"state norm {norm} differs from 1")

    @classmethod
    def normalized(cls, amplitudes: np.ndarray, n: int) -> "DenseState":
        amplitudes = np.asarray(amplitudes)
        return cls(amplitudes / np.linalg.norm(amplitudes), n)

    def overlap(self, other: "DenseState") -> complex:
        """<other|self>."""
        return complex(np.vdot(other.amplitudes, self.amplitudes))


@dataclass(frozen=True)
class ProductAnsatzFull:
    """Per-site polar angles xi_i in [0, pi] and phases phi_i in [-pi, pi)."""

    xi: np.ndarray
    phi: np.ndarray

    @property
    def n(self) -> int:
        return len(self.xi)

    def spinors(self) -> List[np.ndarray]:
        return [np.array([math.cos(x / 2), np.exp(1j * f) * math.sin(x / 2)])
                for x, f in zip(self.xi, self.phi)]

    def vector(self) -> DenseState:
        return DenseState.normalized(product_vector(self.spinors()), self.n)


def product_vector(spinors: Sequence[np.ndarray]) -> np.ndarray:
    """Amplitudes of the product of per-site spinors (up, down), site 0 first."""
    return reduce(np.kron, list(reversed(spinors)))


def _popcount(n: int) -> np.ndarray:
    states = np.arange(2 ** n)
    counts = np.zeros(2 ** n, dtype=np.int64)
    for site in range(n):
        counts += (states >> site) & 1
    return counts


def parity_diagonal(n: int) -> np.ndarray:
    """Diagonal of prod_j sz_j: +1 for an even number of down spins."""
    return np.where(_popcount(n) % 2 == 0, 1, -1)


def ansatz_vector(n: int, xi: float) -> np.ndarray:
    """Phi(xi): every spin cos(xi/2)|up> + sin(xi/2)|down>."""
    down = _popcount(n)
    return math.cos(xi / 2) ** (n - down) * math.sin(xi / 2) ** down


def bloch_product_state(n: int, state: FactorizedState) -> DenseState:
    """Product state whose single-spin magnetization is (x, y, z)."""
    polar = math.acos(max(-1.0, min(1.0, state.z)))
    azimuth = math.atan2(state.y, state.x)
    down = math.sin(polar / 2) * (math.cos(azimuth) if state.y == 0.0 else np.exp(1j * azimuth))
    spinor = np.array([math.cos(polar / 2), down])
    return DenseState.normalized(product_vector([spinor] * n), n)


# -----------------------------------------------------------------------------
# Hamiltonian
# -----------------------------------------------------------------------------

def build_hamiltonian(p: ModelPoint, n: int, dense: bool = False):
    """
    Periodic XY Hamiltonian in the computational basis.

    Args:
        p: Model point
        n: Chain length, at most 14
        dense: Return a numpy array instead of a CSR matrix

    Returns:
        Real symmetric 2^n x 2^n matrix
    """
    n = _check_oracle_size(n)
    dim = 2 ** n
    states = np.arange(dim)

    rows = [states]
    cols = [states]
    diag = np.zeros(dim)
    for site in range(n):
        diag -= p.h * (1.0 - 2.0 * ((states >> site) & 1))
    data = [diag]

    # sx sx + sy sy terms flip both spins of a bond: -r on |uu>,|dd>, -1 on |ud>,|du>
    for site in range(n):
        other = (site + 1) % n
        same = ((states >> site) & 1) == ((states >> other) & 1)
        rows.append(states ^ ((1 << site) | (1 << other)))
        cols.append(states)
        data.append(np.where(same, -p.r, -1.0))

    matrix = scipy.sparse.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    matrix.eliminate_zeros()
    if dense:
        return matrix.toarray()
    return matrix


def full_spectrum(p: ModelPoint, n: int) -> np.ndarray:
    """All 2^n eigenvalues, ascending."""
    n = _check_oracle_size(n, MAX_DENSE_SPECTRUM_SITES)
    return scipy.linalg.eigvalsh(build_hamiltonian(p, n, dense=True))


def expectation_energy(p: ModelPoint, state: DenseState) -> float:
    matrix = build_hamiltonian(p, state.n)
    return float(np.vdot(state.amplitudes, matrix @ state.amplitudes).real)


# -----------------------------------------------------------------------------
# Lowest level per parity block
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Level:
    state: DenseState
    energy: float
    parity: int

    @property
    def sector(self) -> Sector:
        return Sector.from_parity(self.parity)


@dataclass(frozen=True)
class LowestTwo:
    """Lowest level of each parity block, ascending in energy."""

    levels: Tuple[Level, Level]
    degenerate: bool

    def __iter__(self):
        return iter(self.levels)

    def __getitem__(self, index: int) -> Level:
        return self.levels[index]

    def by_sector(self, sector: Sector) -> Level:
        return next(level for level in self.levels if level.parity == sector.parity)


def _block_ground(matrix, indices: np.ndarray, n: int) -> Tuple[float, np.ndarray]:
    block = matrix[indices][:, indices]
    if n <= DENSE_BLOCK_SITES:
        values, vectors = scipy.linalg.eigh(block.toarray(), subset_by_index=[0, 0])
        energy, vector = float(values[0]), vectors[:, 0]
    else:
        values, vectors = scipy.sparse.linalg.eigsh(
            block, k=1, which="SA", v0=np.ones(len(indices)), tol=0)
        energy, vector = float(values[0]), vectors[:, 0]

    residual = float(np.linalg.norm(block @ vector - energy * vector))
    if residual > RESIDUAL_TOL:
        logger.warning("eigenpair residual %.3e above %.0e", residual, RESIDUAL_TOL)
    return energy, vector


def sector_level(p: ModelPoint, n: int, sector: Sector, matrix=None) -> Level:
    """Lowest level within one parity block.

    The sign is fixed by <Phi(pi/2)|psi> > 0, the convention under which the
    closed-form overlaps are nonnegative.
    """
    n = _check_oracle_size(n)
    if matrix is None:
        matrix = build_hamiltonian(p, n)
    indices = np.flatnonzero(parity_diagonal(n) == sector.parity)
    energy, vector = _block_ground(matrix, indices, n)

    amplitudes = np.zeros(2 ** n)
    amplitudes[indices] = np.real(vector)
    if np.dot(ansatz_vector(n, math.pi / 2), amplitudes) < 0:
        amplitudes = -amplitudes
    return Level(DenseState.normalized(amplitudes, n), energy, sector.parity)


def lowest_two(p: ModelPoint, n: int) -> LowestTwo:
    """Ground states of the even (HALF) and odd (ZERO) parity blocks."""
    matrix = build_hamiltonian(p, n)
    half = sector_level(p, n, Sector.HALF, matrix)
    zero = sector_level(p, n, Sector.ZERO, matrix)
    levels = tuple(sorted((half, zero), key=lambda level: level.energy))
    degenerate = abs(half.energy - zero.energy) < 1e-12
    return LowestTwo(levels=levels, degenerate=degenerate)


def superposed_state(levels: LowestTwo, theta_mix: float) -> DenseState:
    """cos(t) |Psi_1/2> + sin(t) |Psi_0> from oracle eigenvectors."""
    half = levels.by_sector(Sector.HALF).state
    zero = levels.by_sector(Sector.ZERO).state
    return DenseState.normalized(
        math.cos(theta_mix) * half.amplitudes + math.sin(theta_mix) * zero.amplitudes, half.n)


# -----------------------------------------------------------------------------
# Product-state overlaps
# -----------------------------------------------------------------------------

def ansatz_overlap(state: DenseState, xi: float) -> float:
    """<Phi(xi)|psi> for a real state."""
    return float(np.dot(ansatz_vector(state.n, xi), np.real(state.amplitudes)))


def restricted_lambda(state: DenseState) -> LambdaMaximum:
    """Maximize |<Phi(xi)|psi>| over the single angle xi."""
    return maximize_lambda(lambda xi: SignedLogValue.from_float(ansatz_overlap(state, xi)))


def _environment(tensor: np.ndarray, spinors: List[np.ndarray], keep: int) -> np.ndarray:
    """Contract every axis but *keep* with the conjugated spinors."""
    t = tensor
    for axis in reversed(range(tensor.ndim)):
        if axis != keep:
            t = np.tensordot(t, spinors[axis].conj(), axes=([axis], [0]))
    return t


def _alternate(tensor: np.ndarray, spinors: List[np.ndarray],
               max_sweeps: int, tol: float) -> Tuple[List[np.ndarray], float]:
    value = 0.0
    for sweep in range(max_sweeps):
        previous = value
        for axis in range(tensor.ndim):
            env = _environment(tensor, spinors, axis)
            norm = float(np.linalg.norm(env))
            if norm == 0.0:
                continue
            spinors[axis] = env / norm
            if norm < value - 1e-14:
                logger.warning("alternating step decreased overlap %.16g -> %.16g", value, norm)
            value = norm
        if value - previous < tol:
            break
    return spinors, value


def _to_ansatz(spinors: List[np.ndarray]) -> ProductAnsatzFull:
    # axis a of the reshaped tensor is site n - 1 - a
    sites = list(reversed(spinors))
    xi = np.array([2 * math.atan2(abs(s[1]), abs(s[0])) for s in sites])
    phi = np.array([np.angle(s[1]) - np.angle(s[0]) for s in sites])
    phi = (phi + np.pi) % (2 * np.pi) - np.pi
    return ProductAnsatzFull(xi=xi, phi=phi)


def lambda_max_unrestricted(state: DenseState, restarts: int = DEFAULT_RESTARTS,
                            seed: int = 0, max_sweeps: int = MAX_SWEEPS,
                            tol: float = ALTERNATING_TOL) -> Tuple[ProductAnsatzFull, float]:
    """
    Largest overlap with any product state, over all 2n angles.

    Each restart alternates single-site updates; the optimal spinor at a site
    is the normalized partial overlap with the others held fixed.

    Args:
        state: Target state
        restarts: Number of starting points (>= 32)
        seed: Seed for the random starting points
        max_sweeps: Sweep cap per restart
        tol: Stop when a sweep gains less than this

    Returns:
        (best product ansatz, Lambda_max)
    """
    if restarts < MIN_RESTARTS:
        raise ValidationError(f"need at least {MIN_RESTARTS} restarts, got {restarts}")
    n = state.n
    tensor = np.asarray(state.amplitudes, dtype=complex).reshape([2] * n)
    rng = np.random.default_rng(seed)

    starts = [np.full(n, xi) for xi in (math.pi / 4, math.pi / 2, 3 * math.pi / 4)]
    best_spinors, best_value = None, -1.0
    for attempt in range(restarts):
        if attempt < len(starts):
            xi, phi = starts[attempt], np.zeros(n)
        else:
            xi, phi = rng.uniform(0.0, math.pi, n), rng.uniform(-math.pi, math.pi, n)
        spinors = [np.array([math.cos(x / 2), np.exp(1j * f) * math.sin(x / 2)])
                   for x, f in zip(xi, phi)]
        spinors, value = _alternate(tensor, spinors, max_sweeps, tol)
        if value > best_value:
            best_spinors, best_value = spinors, value

    logger.debug("unrestricted Lambda_max=%.15g over %d restarts", best_value, restarts)
    return _to_ansatz(best_spinors), best_value


# -----------------------------------------------------------------------------
# Regression fixtures
# -----------------------------------------------------------------------------

def write_fixtures(directory: Path, p: ModelPoint = ModelPoint(1.0, 0.8),
                   sizes: Sequence[int] = tuple(range(4, 14)),
                   xi_points: int = 64, spectrum_size: int = 10,
                   ghz_sizes: Sequence[int] = (4, 6, 8, 10)) -> List[Path]:
    """Write overlap, spectrum and GHZ fixtures as CSV; return the paths."""
    directory = Path(directory)
    xis = np.linspace(0.0, math.pi, xi_points)

    overlap_rows = []
    for n in sizes:
        levels = lowest_two(p, n)
        for level in levels:
            for xi in xis:
                formula = float(overlap_value(p, n, level.sector, xi))
                overlap_rows.append((p.r, p.h, n, level.sector.label, xi,
                                     ansatz_overlap(level.state, xi), formula))
    overlaps = write_csv(
        directory / "overlaps.csv",
        ["r", "h", "n", "sector", "xi", "oracle", "formula"],
        overlap_rows,
        units={"xi": "rad"},
    )

    spectrum = write_csv(
        directory / f"spectrum_n{spectrum_size}.csv",
        ["r", "h", "n", "index", "energy"],
        [(p.r, p.h, spectrum_size, i, e) for i, e in enumerate(full_spectrum(p, spectrum_size))],
        units={"energy": "J"},
    )

    ghz_rows = []
    for n in ghz_sizes:
        level = sector_level(ModelPoint(1.0, 0.0), n, Sector.HALF)
        _, value = lambda_max_unrestricted(level.state)
        ghz_rows.append((n, level.energy, value))
    ghz = write_csv(directory / "ghz.csv", ["n", "energy", "lambda_max"], ghz_rows,
                    units={"energy": "J"})
    return [overlaps, spectrum, ghz]


__all__ = [
    "MAX_ORACLE_SITES",
    "DEFAULT_RESTARTS",
    "DenseState",
    "ProductAnsatzFull",
    "Level",
    "LowestTwo",
    "product_vector",
    "parity_diagonal",
    "ansatz_vector",
    "bloch_product_state",
    "build_hamiltonian",
    "full_spectrum",
    "expectation_energy",
    "sector_level",
    "lowest_two",
    "superposed_state",
    "ansatz_overlap",
    "restricted_lambda",
    "lambda_max_unrestricted",
    "write_fixtures",
]
