# cfcore/mobius.py
"""
Prefix maps of continued fractions.

A prefix a_1..a_k acts on a tail t = [0; a_{k+1}, ...] by

    [a0; a_1, ..., a_k, <tail t>] = (p_k + t p_{k-1}) / (q_k + t q_{k-1})

which is increasing in t for even k and decreasing for odd k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from cfcore.interval import RationalInterval
from cfcore.surd import Exact, QuadraticSurd


@dataclass(frozen=True)
class Mobius:
    p: int = 0
    p_prev: int = 1
    q: int = 1
    q_prev: int = 0
    length: int = 0

    @classmethod
    def start(cls, a0: int = 0) -> "Mobius":
        return cls(a0, 1, 1, 0, 0)

    @classmethod
    def of(cls, digits: Iterable[int], a0: int = 0) -> "Mobius":
        m = cls.start(a0)
        for d in digits:
            m = m.push(d)
        return m

    def push(self, digit: int) -> "Mobius":
        return Mobius(
            digit * self.p + self.p_prev,
            self.p,
            digit * self.q + self.q_prev,
            self.q,
            self.length + 1,
        )

    def then(self, other: "Mobius") -> "Mobius":
        """Prefix self followed by prefix other (other must start from a0 = 0)."""
        P, P_prev, Q, Q_prev = other.p, other.p_prev, other.q, other.q_prev
        return Mobius(
            self.p * Q + self.p_prev * P,
            self.p * Q_prev + self.p_prev * P_prev,
            self.q * Q + self.q_prev * P,
            self.q * Q_prev + self.q_prev * P_prev,
            self.length + other.length,
        )

    @property
    def increasing(self) -> bool:
        return self.length % 2 == 0

    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def apply(self, t: Exact) -> Exact:
        return (self.p + t * self.p_prev) / (self.q + t * self.q_prev)

    def apply_interval(self, tail: RationalInterval) -> RationalInterval:
        a = self.apply(tail.lo)
        b = self.apply(tail.hi)
        return RationalInterval(a, b) if self.increasing else RationalInterval(b, a)


def purely_periodic(period: Sequence[int]) -> QuadraticSurd:
    """theta = [0; period, period, ...], the positive root of its fixed-point quadratic."""
    if not period:
        raise ValueError("period must be nonempty")
    m = Mobius.of(period)
    # theta = (p + theta p') / (q + theta q')  =>  q' theta^2 + (q - p') theta - p = 0
    a, b, c = m.q_prev, m.q - m.p_prev, -m.p
    disc = b * b - 4 * a * c
    return QuadraticSurd.from_parts(Fraction(-b, 2 * a), Fraction(1, 2 * a), disc)


def periodic_value(preperiod: Sequence[int], period: Sequence[int], a0: int = 0) -> Exact:
    """[a0; preperiod, overline{period}] exactly."""
    theta = purely_periodic(period)
    return Mobius.of(preperiod, a0).apply(theta)


def finite_value(digits: Sequence[int], a0: int = 0) -> Fraction:
    return Mobius.of(digits, a0).value()
