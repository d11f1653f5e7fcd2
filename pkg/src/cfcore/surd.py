# cfcore/surd.py
"""
Exact quadratic surds.

A ``QuadraticSurd`` is the value (P + sqrt(D)) / Q with integers P, D, Q,
D a positive non-square and Q dividing D - P^2.  Every surd also knows the
small radicand ``base`` it was built over (D = R^2 * base), which keeps sums
and products inside one field cheap: two surds combine exactly whenever
their bases multiply to a perfect square.

Comparisons are exact and total against ints, Fractions and other surds.
Incommensurable surds are compared by refining rational bounds, which
terminates because such values are never equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Tuple, Union

from sympy import factorint

from utils.errors import IncommensurableSurdsError

Rational = Union[int, Fraction]
Exact = Union[int, Fraction, "QuadraticSurd"]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=256)
def _strip_squares(d: int) -> Tuple[int, int]:
    """Return (k, rest) with d == k*k*rest and rest squarefree."""
    k = 1
    for p, e in factorint(d).items():
        k *= p ** (e // 2)
    return k, d // (k * k)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True, eq=False)
class QuadraticSurd:
    P: int
    D: int
    Q: int
    base: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError("surd denominator Q must be nonzero")
        if self.D <= 0 or is_square(self.D):
            raise ValueError(f"radicand D={self.D} must be a positive non-square")
        if (self.D - self.P * self.P) % self.Q != 0:
            raise ValueError(f"({self.P}, {self.D}, {self.Q}) is not canonical: Q must divide D - P^2")
        if self.base == 0:
            object.__setattr__(self, "base", self.D)
        elif self.D % self.base or not is_square(self.D // self.base):
            raise ValueError(f"base {self.base} does not divide D={self.D} up to a square")

    # ----- construction -----
    @staticmethod
    def from_parts(x: Rational, y: Rational, d: int) -> "Exact":
        """Value x + y*sqrt(d); collapses to a Fraction when the irrational part vanishes."""
        x = Fraction(x)
        y = Fraction(y)
        if d < 0:
            raise ValueError("negative radicand")
        if y == 0 or d == 0:
            return x
        k, d = _strip_squares(d)
        y *= k
        if d == 1:
            return x + y
        den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
        a = x.numerator * (den // x.denominator)
        b = y.numerator * (den // y.denominator)
        s = 1 if b > 0 else -1
        P, R, Q = s * a, abs(b), s * den
        if (R * R * d - P * P) % Q:
            aq = abs(Q)
            P, R, Q = P * aq, R * aq, Q * aq
        return QuadraticSurd(P, R * R * d, Q, d)

    @staticmethod
    def sqrt_of(r: Rational) -> "Exact":
        """Exact square root of a non-negative rational."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("square root of a negative rational")
        return QuadraticSurd.from_parts(0, Fraction(1, r.denominator), r.numerator * r.denominator)

    # ----- parts -----
    def parts(self) -> Tuple[Fraction, Fraction, int]:
        R = isqrt(self.D // self.base)
        return Fraction(self.P, self.Q), Fraction(R, self.Q), self.base

    def conjugate(self) -> "Exact":
        x, y, d = self.parts()
        return QuadraticSurd.from_parts(x, -y, d)

    def norm(self) -> Fraction:
        x, y, d = self.parts()
        return x * x - y * y * d

    def _aligned(self, other: "QuadraticSurd") -> Tuple[Fraction, Fraction]:
        """Other's (x, y) rewritten over self.base, or raise when incommensurable."""
        x2, y2, d2 = other.parts()
        d1 = self.base
        if d1 == d2:
            return x2, y2
        r = isqrt(d1 * d2)
        if r * r != d1 * d2:
            raise IncommensurableSurdsError(f"sqrt({d1}) and sqrt({d2}) are incommensurable")
        return x2, y2 * Fraction(r, d1)

    # ----- arithmetic -----
    def __neg__(self):
        x, y, d = self.parts()
        return QuadraticSurd.from_parts(-x, -y, d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        x, y, d = self.parts()
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd.from_parts(x + other, y, d)
        if isinstance(other, QuadraticSurd):
            x2, y2 = self._aligned(other)
            return QuadraticSurd.from_parts(x + x2, y + y2, d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        x, y, d = self.parts()
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd.from_parts(x * other, y * other, d)
        if isinstance(other, QuadraticSurd):
            x2, y2 = self._aligned(other)
            return QuadraticSurd.from_parts(x * x2 + y * y2 * d, x * y2 + x2 * y, d)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self):
        x, y, d = self.parts()
        n = x * x - y * y * d
        return QuadraticSurd.from_parts(x / n, -y / n, d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("surd divided by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, QuadraticSurd):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    # ----- sign, comparison, hashing -----
    def sign(self) -> int:
        x, y, d = self.parts()
        sx, sy = _sign(x), _sign(y)
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare x^2 against y^2 d (never equal, d is not a square)
        return sx if x * x > y * y * d else sy

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False
        if isinstance(other, QuadraticSurd):
            return compare(self, other) == 0
        return NotImplemented

    def __hash__(self):
        x, y, d = self.parts()
        return hash((x, y * y * d, y > 0))

    def __lt__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return compare(self, other) >= 0

    # ----- rounding and bounds -----
    def __floor__(self) -> int:
        s = isqrt(self.D)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return (-self.P - s - 1) // (-self.Q)

    def __ceil__(self) -> int:
        return self.__floor__() + 1

    def rational_bounds(self, bits: int = 128) -> Tuple[Fraction, Fraction]:
        """Rationals lo < value < hi with hi - lo <= 2**-bits."""
        x, y, d = self.parts()
        k = bits + max(0, y.numerator.bit_length() - y.denominator.bit_length() + 1)
        s = isqrt(d << (2 * k))
        lo = x + y * Fraction(s, 1 << k)
        hi = x + y * Fraction(s + 1, 1 << k)
        return (lo, hi) if y > 0 else (hi, lo)

    def __float__(self) -> float:
        lo, hi = self.rational_bounds(64)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        return f"({self.P}+sqrt({self.D}))/{self.Q}"


def sign(v: Exact) -> int:
    if isinstance(v, QuadraticSurd):
        return v.sign()
    return _sign(v)


def compare(a: Exact, b: Exact) -> int:
    """Exact three-way comparison of ints, Fractions and surds."""
    if not isinstance(a, QuadraticSurd) and not isinstance(b, QuadraticSurd):
        return _sign(Fraction(a) - Fraction(b))
    try:
        return sign(a - b)
    except IncommensurableSurdsError:
        pass
    bits = 64
    while True:
        alo, ahi = a.rational_bounds(bits)
        blo, bhi = b.rational_bounds(bits)
        if ahi < blo:
            return -1
        if bhi < alo:
            return 1
        bits *= 2


def rational_bounds(v: Exact, bits: int = 128) -> Tuple[Fraction, Fraction]:
    if isinstance(v, QuadraticSurd):
        return v.rational_bounds(bits)
    v = Fraction(v)
    return v, v
