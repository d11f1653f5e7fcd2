# cfcore/interval.py
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from cfcore.surd import Exact, QuadraticSurd, compare, rational_bounds

Number = Union[int, Fraction]


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "RationalInterval":
        return cls(x, x)

    @classmethod
    def around(cls, value: Exact, bits: int = 128) -> "RationalInterval":
        """Tight rational enclosure of an exact value (degenerate for rationals)."""
        lo, hi = rational_bounds(value, bits)
        return cls(lo, hi)

    @classmethod
    def hull(cls, values: Iterable[Number]) -> "RationalInterval":
        values = [Fraction(v) for v in values]
        return cls(min(values), max(values))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    # ----- arithmetic -----
    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        if isinstance(other, (int, Fraction)):
            return RationalInterval(self.lo + other, self.hi + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo - other.hi, self.hi - other.lo)
        if isinstance(other, (int, Fraction)):
            return RationalInterval(self.lo - other, self.hi - other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalInterval(other - self.hi, other - self.lo)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalInterval.point(other)
        if not isinstance(other, RationalInterval):
            return NotImplemented
        products = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"reciprocal of interval containing zero [{self.lo}, {self.hi}]")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def abs(self) -> "RationalInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(0, max(-self.lo, self.hi))

    # ----- set relations -----
    def contains(self, x: Union[Exact, "RationalInterval"]) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return compare(self.lo, x) <= 0 and compare(x, self.hi) <= 0

    __contains__ = contains

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "RationalInterval") -> "RationalInterval":
        if not self.intersects(other):
            raise ValueError("disjoint intervals")
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def below(self, x: Exact) -> bool:
        """Every point is strictly below x."""
        return compare(self.hi, x) < 0

    def above(self, x: Exact) -> bool:
        """Every point is strictly above x."""
        return compare(self.lo, x) > 0

    def as_strings(self):
        return {"lo": format_fraction(self.lo), "hi": format_fraction(self.hi)}

    def __str__(self) -> str:
        return f"[{format_fraction(self.lo)}, {format_fraction(self.hi)}]"


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def surd_interval(lo: Exact, hi: Exact, bits: int = 128) -> RationalInterval:
    """Outer rational enclosure of [lo, hi] for exact (possibly surd) endpoints."""
    if isinstance(lo, QuadraticSurd):
        lo = lo.rational_bounds(bits)[0]
    if isinstance(hi, QuadraticSurd):
        hi = hi.rational_bounds(bits)[1]
    return RationalInterval(lo, hi)
