# cantorsum/digits.py
"""
Digit-restricted continued-fraction Cantor sets.

A DigitSystem is a set of allowed partial quotients plus forbidden ordered
adjacent pairs.  F_k allows 1..k freely; FJ is F_4 without the pairs (1, 4)
and (2, 4).  The extremal elements of every system used here are eventually
periodic, so their values are exact surds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from cfcore.interval import RationalInterval
from cfcore.mobius import Mobius, periodic_value
from cfcore.surd import Exact, rational_bounds
from utils.errors import DigitSystemError
from utils.logger import get_logger

logger = get_logger("cantorsum.digits")

MAX_EXTREMAL_PERIOD = 4
TAIL_BITS = 256


@dataclass(frozen=True)
class DigitSystem:
    name: str
    allowed: FrozenSet[int]
    forbidden: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "allowed", frozenset(self.allowed))
        object.__setattr__(self, "forbidden", frozenset(tuple(p) for p in self.forbidden))
        if not self.allowed:
            raise DigitSystemError(f"{self.name}: no allowed digits")
        if any(d < 1 for d in self.allowed):
            raise DigitSystemError(f"{self.name}: partial quotients must be positive")
        for d in self.allowed:
            if not self.successors(d):
                raise DigitSystemError(f"{self.name}: digit {d} has no allowed successor (dead end)")

    @property
    def max_digit(self) -> int:
        return max(self.allowed)

    def successors(self, prev: Optional[int]) -> Tuple[int, ...]:
        if prev is None:
            return tuple(sorted(self.allowed))
        return tuple(d for d in sorted(self.allowed) if (prev, d) not in self.forbidden)

    def first_violation(self, digits: Sequence[int], prev: Optional[int] = None) -> Optional[int]:
        """Index of the first digit that breaks the system, or None."""
        for i, d in enumerate(digits):
            if d not in self.successors(prev):
                return i
            prev = d
        return None

    def is_valid(self, digits: Sequence[int], prev: Optional[int] = None) -> bool:
        return self.first_violation(digits, prev) is None

    def __str__(self) -> str:
        return self.name


def bounded(k: int) -> DigitSystem:
    """F_k: all partial quotients in 1..k."""
    return DigitSystem(f"F_{k}", frozenset(range(1, k + 1)))


F1 = bounded(1)
F3 = bounded(3)
F4 = bounded(4)
FJ = DigitSystem("FJ", frozenset({1, 2, 3, 4}), frozenset({(1, 4), (2, 4)}))

_NAMED: Dict[str, DigitSystem] = {s.name: s for s in (F1, F3, F4, FJ)}
_BOUNDED_RE = re.compile(r"^F_?(\d+)$")


def system_by_name(name: str) -> DigitSystem:
    if name in _NAMED:
        return _NAMED[name]
    m = _BOUNDED_RE.match(name)
    if m and int(m.group(1)) >= 1:
        return bounded(int(m.group(1)))
    raise DigitSystemError(f"unknown digit system {name!r}")


# ----- extremal tails -----

@lru_cache(maxsize=None)
def extremal_digits(system: DigitSystem, prev: Optional[int], want_min: bool) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    (preperiod, period) of the least (want_min) or greatest admissible tail
    [0; d_1, d_2, ...] following ``prev``.

    Minimizing 1/(d_1 + t) takes the largest d_1 and then the largest tail
    after it; maximizing takes the smallest d_1 and the smallest tail.  The
    walk over (previous digit, direction) states is finite, so it cycles.
    """
    seen: Dict[Tuple[Optional[int], bool], int] = {}
    digits: List[int] = []
    state = (prev, want_min)
    while state not in seen:
        seen[state] = len(digits)
        options = system.successors(state[0])
        d = options[-1] if state[1] else options[0]
        digits.append(d)
        state = (d, not state[1])
    start = seen[state]
    return tuple(digits[:start]), tuple(digits[start:])


@lru_cache(maxsize=None)
def extremal_tails(system: DigitSystem, prev: Optional[int] = None) -> Tuple[Exact, Exact]:
    """Exact (min, max) of admissible tails after ``prev``."""
    lo = periodic_value(*extremal_digits(system, prev, True))
    hi = periodic_value(*extremal_digits(system, prev, False))
    return lo, hi


@lru_cache(maxsize=None)
def tail_bounds(system: DigitSystem, prev: Optional[int] = None, bits: int = TAIL_BITS) -> RationalInterval:
    """
    Outer rational enclosure of all admissible tails after ``prev``.

    Both ends carry the same slack of (max digit + 2) / 2^bits on top of the
    rounding, so every admissible digit map sends the enclosure after that
    digit into the enclosure after ``prev``.  Cylinder and lambda enclosures
    built from these bounds therefore nest exactly as the prefix grows.
    """
    lo, hi = extremal_tails(system, prev)
    slack = Fraction(system.max_digit + 2, 1 << bits)
    return RationalInterval(rational_bounds(lo, bits)[0] - slack, rational_bounds(hi, bits)[1] + slack)


def generic_tail_bounds(k: int, bits: int = TAIL_BITS) -> RationalInterval:
    """Enclosure of every tail with partial quotients at most k."""
    return tail_bounds(bounded(k), None, bits)


def validate_registry() -> Dict[str, Dict[str, Tuple[int, ...]]]:
    """Check extremal periods of the named systems stay within MAX_EXTREMAL_PERIOD."""
    report = {}
    for name, system in _NAMED.items():
        for prev in (None, *sorted(system.allowed)):
            for want_min in (True, False):
                pre, period = extremal_digits(system, prev, want_min)
                if len(period) > MAX_EXTREMAL_PERIOD:
                    raise DigitSystemError(
                        f"{name}: extremal tail after {prev} has period {period} longer than {MAX_EXTREMAL_PERIOD}"
                    )
        report[name] = {
            "min": sum(extremal_digits(system, None, True), ()),
            "max": sum(extremal_digits(system, None, False), ()),
        }
    logger.debug("digit registry validated: %s", report)
    return report


def guaranteed_sum_interval(system: DigitSystem) -> Tuple[Exact, Exact]:
    """Exact interval contained in system + system by the classical covering theorems."""
    if system == F4 or system == FJ:
        lo, hi = extremal_tails(system)
        return 2 * lo, 2 * hi
    if system == F3:
        lo = periodic_value((), (3, 1)) + periodic_value((2,), (1, 3))
        hi = periodic_value((), (1, 3)) + periodic_value((1, 2), (1, 3))
        return lo, hi
    raise DigitSystemError(f"no covering theorem is recorded for {system.name}")


# ----- cylinders -----

@dataclass(frozen=True)
class Cylinder:
    system: DigitSystem
    prefix: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        bad = self.system.first_violation(self.prefix)
        if bad is not None:
            raise DigitSystemError(f"prefix {self.prefix} breaks {self.system.name} at position {bad}")

    @property
    def last(self) -> Optional[int]:
        return self.prefix[-1] if self.prefix else None

    def mobius(self) -> Mobius:
        return Mobius.of(self.prefix)

    def exact_bounds(self) -> Tuple[Exact, Exact]:
        m = self.mobius()
        t_lo, t_hi = extremal_tails(self.system, self.last)
        a, b = m.apply(t_lo), m.apply(t_hi)
        return (a, b) if m.increasing else (b, a)

    def interval(self, bits: int = TAIL_BITS) -> RationalInterval:
        return cylinder_interval(self.system, self.mobius(), self.last, bits)


def cylinder_interval(system: DigitSystem, prefix_map: Mobius, last: Optional[int], bits: int = TAIL_BITS) -> RationalInterval:
    """Sound enclosure of {[0; prefix, tail]: tail admissible after ``last``}."""
    return prefix_map.apply_interval(tail_bounds(system, last, bits))
