"""Finite-size expansion coefficients of the critical entanglement density.

density_N(r, h=1) ~ e_inf + b / N + c / N^2, fitted over N = 100..1000.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from ..spectrum import Sector

TABLE1_FIELD = 1.0
TABLE1_SIZES = tuple(range(100, 1001, 100))


@dataclass(frozen=True)
class Table1Entry:
    """Published (e_inf, b, c) for one anisotropy and sector."""

    r: float
    sector: Sector
    e_inf: float
    b: float
    c: float


def _row(r: float, half: tuple, zero: tuple) -> Dict[Sector, Table1Entry]:
    return {
        Sector.HALF: Table1Entry(r, Sector.HALF, *half),
        Sector.ZERO: Table1Entry(r, Sector.ZERO, *zero),
    }


TABLE1: Dict[float, Dict[Sector, Table1Entry]] = {
    0.1: _row(0.1, (0.00426345, 1.00266, -10.6643), (0.00425344, 0.512785, 17.5478)),
    0.2: _row(0.2, (0.00817338, 1.00038, -5.39161), (0.00817141, 0.502356, 10.1401)),
    0.3: _row(0.3, (0.0117754, 1.00013, -3.73401), (0.0117747, 0.500874, 7.23486)),
    0.4: _row(0.4, (0.0151133, 1.00006, -2.91527), (0.0151129, 0.500444, 5.71366)),
    0.5: _row(0.5, (0.0182208, 1.00004, -2.42561), (0.0182206, 0.500268, 4.78119)),
    0.6: _row(0.6, (0.0211258, 1.00002, -2.09918), (0.0211256, 0.500181, 4.15147)),
    0.7: _row(0.7, (0.0238512, 1.00002, -1.86569), (0.0238511, 0.500131, 3.6975)),
    0.8: _row(0.8, (0.0264164, 1.00001, -1.69019), (0.0264163, 0.500101, 3.35452)),
    0.9: _row(0.9, (0.0288377, 1.00001, -1.55332), (0.0288376, 0.50008, 3.08608)),
    1.0: _row(1.0, (0.0311291, 1.00001, -1.44349), (0.031129, 0.500066, 2.87013)),
}


def get_entry(r: float, sector: Sector) -> Table1Entry:
    """Return the published entry for anisotropy *r* and *sector*.

    Raises:
        KeyError: if *r* is not a tabulated anisotropy.
    """

    try:
        return TABLE1[round(float(r), 10)][sector]
    except KeyError as exc:
        raise KeyError(f"No Table I row for r={r}") from exc


__all__ = ["TABLE1", "TABLE1_FIELD", "TABLE1_SIZES", "Table1Entry", "get_entry"]
