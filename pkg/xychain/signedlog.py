"""Real numbers carried as (sign, log magnitude).

Overlaps at n = 10^5 are products of ~n/2 factors below one; their
magnitude underflows any float long before the entanglement does.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.special import logsumexp

LOG_ZERO = -math.inf


@dataclass(frozen=True)
class SignedLogValue:
    """A real value ``sign * exp(log_magnitude)``.

    ``sign == 0`` represents an exact zero; ``log_magnitude`` is then -inf.
    """

    sign: int
    log_magnitude: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0 and self.log_magnitude != LOG_ZERO:
            object.__setattr__(self, "log_magnitude", LOG_ZERO)

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(0, LOG_ZERO)

    @classmethod
    def one(cls) -> "SignedLogValue":
        return cls(1, 0.0)

    @classmethod
    def from_float(cls, value: float) -> "SignedLogValue":
        if value == 0.0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    @classmethod
    def from_factors(cls, factors: Iterable[float] | np.ndarray) -> "SignedLogValue":
        """Product of *factors*, accumulated as a sum of logs."""
        arr = np.asarray(factors, dtype=float)
        if arr.size == 0:
            return cls.one()
        if np.any(arr == 0.0):
            return cls.zero()
        negatives = int(np.count_nonzero(arr < 0.0))
        sign = -1 if negatives % 2 else 1
        return cls(sign, float(np.sum(np.log(np.abs(arr)))))

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if not isinstance(other, SignedLogValue):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return SignedLogValue.zero()
        return SignedLogValue(self.sign * other.sign,
                              self.log_magnitude + other.log_magnitude)

    def __add__(self, other: "SignedLogValue") -> "SignedLogValue":
        if not isinstance(other, SignedLogValue):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        log_mag, sign = logsumexp(
            [self.log_magnitude, other.log_magnitude],
            b=[self.sign, other.sign],
            return_sign=True,
        )
        if sign == 0 or not np.isfinite(log_mag):
            return SignedLogValue.zero()
        return SignedLogValue(int(sign), float(log_mag))

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.log_magnitude)

    def scale(self, weight: float) -> "SignedLogValue":
        """Multiply by an ordinary float weight."""
        return self * SignedLogValue.from_float(weight)

    def __float__(self) -> float:
        if self.is_zero:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    @property
    def abs_log(self) -> float:
        """ln|value| (-inf for zero)."""
        return self.log_magnitude


__all__ = ["LOG_ZERO", "SignedLogValue"]
