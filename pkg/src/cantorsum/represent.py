# cantorsum/represent.py
"""
gamma = c + mu + nu with mu, nu in a digit-restricted Cantor set.

    repr4   threshold <= gamma <= 10 - sqrt(21)   c = 4, digits <= 3            (F_3)
    repr5   10 - sqrt(21) < gamma <= 6            c = 5, digits <= 4, no 1,4 / 2,4 (FJ)
    repr6   gamma > 6                             c >= 5 largest with gamma - c in (sqrt2 - 1, 4 sqrt2 - 4]  (F_4)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

from cantorsum.decompose import SumDecomposer
from cantorsum.digits import F3, F4, FJ, DigitSystem, cylinder_interval, extremal_tails
from cfcore.exact import format_exact, to_decimal
from cfcore.interval import RationalInterval, format_fraction
from cfcore.mobius import periodic_value
from cfcore.surd import Exact, QuadraticSurd, compare, rational_bounds
from utils.errors import UnsupportedGammaError
from utils.logger import get_logger

logger = get_logger("cantorsum.represent")

STREAM_SLACK = 16


class Regime(str, Enum):
    REPR4 = "repr4"
    REPR5 = "repr5"
    REPR6 = "repr6"


REGIME_SYSTEMS: Dict[Regime, DigitSystem] = {Regime.REPR4: F3, Regime.REPR5: FJ, Regime.REPR6: F4}


@lru_cache(maxsize=None)
def threshold_two_sided() -> Exact:
    """4 + [0; overline{3,1}] + [0; 2, overline{1,3}]."""
    return 4 + periodic_value((), (3, 1)) + periodic_value((2,), (1, 3))


@lru_cache(maxsize=None)
def gap_point() -> Exact:
    """10 - sqrt(21)."""
    return 10 - QuadraticSurd.sqrt_of(21)


def regime_range(regime: Regime) -> Dict[str, Any]:
    if regime is Regime.REPR4:
        return {"lo": threshold_two_sided(), "hi": gap_point(), "lo_closed": True, "hi_closed": True}
    if regime is Regime.REPR5:
        return {"lo": gap_point(), "hi": Fraction(6), "lo_closed": False, "hi_closed": True}
    return {"lo": Fraction(6), "hi": None, "lo_closed": False, "hi_closed": False}


def regime_for(gamma: Exact) -> Regime:
    if compare(gamma, threshold_two_sided()) < 0:
        raise UnsupportedGammaError(
            f"gamma={format_exact(gamma)} is below 4+[0;overline{{3,1}}]+[0;2,overline{{1,3}}] "
            f"~ {to_decimal(threshold_two_sided(), 5)}, the lower bound of the two-sided theorem"
        )
    if compare(gamma, gap_point()) <= 0:
        return Regime.REPR4
    if compare(gamma, 6) <= 0:
        return Regime.REPR5
    return Regime.REPR6


def integer_part(gamma: Exact, regime: Regime) -> int:
    if regime is Regime.REPR4:
        return 4
    if regime is Regime.REPR5:
        return 5
    hall_lo, hall_hi = (2 * t for t in extremal_tails(F4))
    # largest c with gamma - c > sqrt2 - 1
    c = math.floor(rational_bounds(gamma)[0] - rational_bounds(hall_lo)[1]) - 1
    while compare(gamma - (c + 1), hall_lo) > 0:
        c += 1
    assert c >= 5 and compare(gamma - c, hall_hi) <= 0, f"no integer part for {format_exact(gamma)}"
    return c


class DigitStream:
    """One side (mu or nu) of a representation, extended on demand."""

    def __init__(self, decomposer: SumDecomposer, side: int, name: str):
        self._dec = decomposer
        self._side = side
        self.name = name

    @property
    def system(self) -> DigitSystem:
        return self._dec.system

    @property
    def digits(self) -> Tuple[int, ...]:
        return self._dec.digits(self._side)

    def take(self, n: int) -> Tuple[int, ...]:
        """First n digits, committed so later refinement never changes them."""
        self._dec.ensure(self._side, n, STREAM_SLACK)
        self._dec.commit(self._side, n)
        return self.digits[:n]

    def interval(self) -> RationalInterval:
        """Current cylinder; may still move if the search backtracks."""
        return self._dec.sides[self._side].interval

    def interval_at(self, depth: int) -> RationalInterval:
        """Cylinder of the first ``depth`` digits, committed first so it always contains the limit."""
        self.take(depth)
        s = self._dec.sides[self._side]
        return cylinder_interval(self.system, s.maps[depth], s.digits[depth - 1] if depth else None)


@dataclass
class GammaRepresentation:
    gamma: Exact
    regime: Regime
    c: int
    decomposer: SumDecomposer

    def __post_init__(self):
        self.mu = DigitStream(self.decomposer, 0, "mu")
        self.nu = DigitStream(self.decomposer, 1, "nu")

    @property
    def system(self) -> DigitSystem:
        return self.decomposer.system

    def sum_interval(self) -> RationalInterval:
        return self.decomposer.sum_interval() + self.c

    def refine(self, width_goal: Fraction) -> None:
        self.decomposer.refine(width_goal)

    def encloses_gamma(self) -> bool:
        return self.sum_interval().contains(self.gamma)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": format_exact(self.gamma),
            "regime": self.regime.value,
            "c": self.c,
            "system": self.system.name,
            "mu": list(self.mu.digits),
            "nu": list(self.nu.digits),
            "sum_width": format_fraction(self.decomposer.sum_interval().width()),
        }


def represent_gamma(gamma: Exact, depth_cap: int = 10_000, width_goal: Optional[Fraction] = None) -> GammaRepresentation:
    regime = regime_for(gamma)
    c = integer_part(gamma, regime)
    system = REGIME_SYSTEMS[regime]
    dec = SumDecomposer(gamma - c, system, depth_cap=depth_cap)
    rep = GammaRepresentation(gamma, regime, c, dec)
    if width_goal is not None:
        rep.refine(width_goal)
    logger.debug("gamma=%s regime=%s c=%d system=%s", format_exact(gamma), regime.value, c, system.name)
    return rep
