"""Grid specifications and an order-preserving worker pool for sweeps."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from .entangle import StateSelector, entanglement, parse_state
from .errors import NearCriticalError, ValidationError
from .spectrum import ModelPoint, Sector, check_size, enumerate_levels, ground_energy
from .thermo import dE_dh_infinite, density_infinite, xx_density_derivative

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parse_range(text: str) -> np.ndarray:
    """Parse 'start:stop:count', a comma list, or a single number."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ValidationError(f"range {text!r} needs a positive count")
            return np.linspace(float(start), float(stop), count)
        return np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        raise ValidationError(f"cannot parse range {text!r}") from exc


def parse_sizes(text: str) -> Tuple[int, ...]:
    """Parse chain lengths such as '100', '13,16,19' or '100:1000:10'."""
    values = parse_range(text)
    sizes = tuple(check_size(int(round(v))) for v in values)
    return sizes


@dataclass(frozen=True)
class SweepSpec:
    """A validated (r, h, n, state) grid plus where its table goes."""

    r_values: Tuple[float, ...]
    h_values: Tuple[float, ...]
    sizes: Tuple[int, ...] = ()
    states: Tuple[StateSelector, ...] = ()
    output: Optional[Path] = None
    fmt: str = "csv"

    def __post_init__(self):
        if not self.r_values or not self.h_values:
            raise ValidationError("sweep ranges need at least one point")
        for r in self.r_values:
            for h in self.h_values:
                ModelPoint(r, h)
        for n in self.sizes:
            check_size(n)
        if self.fmt not in ("csv", "json"):
            raise ValidationError(f"unknown output format {self.fmt!r}")

    def points(self) -> List[Tuple[float, float, int, StateSelector]]:
        """Row-major (r, h, n, state) tasks; the order fixes the output order."""
        return [(float(r), float(h), n, state)
                for r in self.r_values
                for n in self.sizes
                for state in self.states
                for h in self.h_values]


def run_ordered(func: Callable[[T], R], tasks: Sequence[T], jobs: int = 1) -> List[R]:
    """Map *func* over *tasks*; results come back in task order for any *jobs*."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    chunksize = max(1, math.ceil(len(tasks) / (4 * jobs)))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, tasks, chunksize=chunksize))


# -----------------------------------------------------------------------------
# Row builders (top level so worker processes can import them)
# -----------------------------------------------------------------------------

def spectrum_rows(task: Tuple[float, float, int]) -> List[tuple]:
    r, h, n = task
    levels = enumerate_levels(ModelPoint(r, h), n)
    return [(h, i, energy, parity) for i, (energy, parity) in enumerate(levels)]


def gap_row(task: Tuple[float, float, int]) -> tuple:
    r, h, n = task
    p = ModelPoint(r, h)
    e_zero = ground_energy(p, n, Sector.ZERO)
    e_half = ground_energy(p, n, Sector.HALF)
    return (h, e_zero - e_half, e_zero, e_half)


def entangle_row(task: Tuple[float, float, int, StateSelector]) -> tuple:
    r, h, n, state = task
    record = entanglement(ModelPoint(r, h), n, state)
    resolved = record.sector.label if record.sector is not None else ""
    return (r, h, n, record.state, resolved, record.xi_star, record.lambda_max,
            record.log_lambda_max, record.e_log2, record.density, record.degenerate)


def thermo_row(task: Tuple[float, float]) -> tuple:
    r, h = task
    p = ModelPoint(r, h)
    result = density_infinite(p)
    if r == 0.0:
        slope = xx_density_derivative(h) if h < 1.0 else 0.0
    else:
        try:
            slope = dE_dh_infinite(p, xi_star=result.xi_star)
        except NearCriticalError:
            slope = math.nan
    return (r, h, result.xi_star, result.density, slope)


def states_from_text(state: str, superpositions: Optional[str]) -> Tuple[StateSelector, ...]:
    if superpositions:
        return tuple(parse_state(f"mix:{v}") for v in superpositions.split(",") if v.strip())
    return tuple(parse_state(s) for s in state.split(","))


__all__ = [
    "parse_range",
    "parse_sizes",
    "SweepSpec",
    "run_ordered",
    "spectrum_rows",
    "gap_row",
    "entangle_row",
    "thermo_row",
    "states_from_text",
]
