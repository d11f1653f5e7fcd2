# cfcore/contfrac.py
"""
Continued-fraction expansions and the quantities built on them.

Notation (1-based digits a_1, a_2, ...):
    p_n / q_n     = [a0; a_1, ..., a_n]
    alpha*_n      = q_{n-1} / q_n = [0; a_n, ..., a_1]
    alpha_n       = [a_n; a_{n+1}, ...]
    lambda_n      = alpha*_{n-1} + alpha_n
    Perron        |x - p_n/q_n| * lambda_{n+1} * q_n^2 = 1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from cantorsum.digits import DigitSystem, system_by_name, tail_bounds
from cfcore.interval import RationalInterval
from cfcore.mobius import Mobius, finite_value, periodic_value
from cfcore.surd import Exact, QuadraticSurd
from utils.errors import CannotEncloseError, InsufficientDigitsError

ENCLOSURE_BITS = 128

Enclosure = Union[Fraction, QuadraticSurd, RationalInterval]


@dataclass(frozen=True)
class CFTail:
    kind: str = "terminated"
    period: Tuple[int, ...] = ()
    system: Optional[DigitSystem] = None

    def __post_init__(self):
        object.__setattr__(self, "period", tuple(self.period))
        if self.kind not in ("periodic", "system", "terminated"):
            raise ValueError(f"unknown tail kind {self.kind!r}")
        if self.kind == "periodic" and (not self.period or min(self.period) < 1):
            raise ValueError("a periodic tail needs a nonempty period of positive digits")

    @classmethod
    def periodic(cls, period: Sequence[int]) -> "CFTail":
        return cls("periodic", tuple(period))

    @classmethod
    def within(cls, system: Optional[DigitSystem]) -> "CFTail":
        return cls("system", (), system)

    @classmethod
    def terminated(cls) -> "CFTail":
        return cls("terminated")

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind}
        if self.kind == "periodic":
            out["period"] = list(self.period)
        if self.kind == "system":
            out["system"] = self.system.name if self.system else None
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CFTail":
        kind = data.get("kind", "terminated")
        if kind == "periodic":
            return cls.periodic(data["period"])
        if kind == "system":
            name = data.get("system")
            return cls.within(system_by_name(name) if name else None)
        return cls.terminated()


@dataclass(frozen=True)
class CFExpansion:
    a0: int = 0
    digits: Tuple[int, ...] = ()
    tail: CFTail = field(default_factory=CFTail.terminated)

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(d < 1 for d in self.digits):
            raise ValueError("partial quotients a_1, a_2, ... must be positive")

    @property
    def is_periodic(self) -> bool:
        return self.tail.kind == "periodic"

    def available(self) -> Optional[int]:
        """Number of known digits, or None when the periodic tail supplies them without end."""
        return None if self.is_periodic else len(self.digits)

    def require(self, n: int) -> None:
        avail = self.available()
        if avail is not None and n > avail:
            raise InsufficientDigitsError(n, avail)

    def digit(self, i: int) -> int:
        self.require(i)
        if i <= len(self.digits):
            return self.digits[i - 1]
        period = self.tail.period
        return period[(i - len(self.digits) - 1) % len(period)]

    def prefix(self, n: int) -> Tuple[int, ...]:
        self.require(n)
        if n <= len(self.digits):
            return self.digits[:n]
        return self.digits + tuple(self.digit(i) for i in range(len(self.digits) + 1, n + 1))

    def unrolled(self, n: int) -> "CFExpansion":
        """Same number with at least n explicit digits (periodic tails rotate accordingly)."""
        if not self.is_periodic or n <= len(self.digits):
            return self
        extra = n - len(self.digits)
        L = len(self.tail.period)
        shift = extra % L
        rotated = self.tail.period[shift:] + self.tail.period[:shift]
        return CFExpansion(self.a0, self.prefix(n), CFTail.periodic(rotated))

    def with_digits(self, more: Sequence[int]) -> "CFExpansion":
        return CFExpansion(self.a0, self.digits + tuple(more), self.tail)

    def to_dict(self) -> Dict[str, Any]:
        return {"a0": self.a0, "digits": list(self.digits), "tail": self.tail.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CFExpansion":
        return cls(int(data.get("a0", 0)), tuple(data.get("digits", ())), CFTail.from_dict(data.get("tail", {})))


# ----- convergents -----

def convergents(cf: CFExpansion, n: int) -> List[Tuple[int, int]]:
    """[(p_1, q_1), ..., (p_n, q_n)] by the two-term recurrence."""
    cf.require(n)
    out = []
    m = Mobius.start(cf.a0)
    for d in cf.prefix(n):
        m = m.push(d)
        out.append((m.p, m.q))
    return out


def denominators(digits: Sequence[int]) -> List[int]:
    """[q_0, q_1, ..., q_N] for the given digits."""
    qs = [1]
    q_prev, q = 0, 1
    for d in digits:
        q_prev, q = q, d * q + q_prev
        qs.append(q)
    return qs


def alpha_star(cf: CFExpansion, n: int) -> Fraction:
    if n < 1:
        raise ValueError("alpha_star needs n >= 1")
    m = Mobius.of(cf.prefix(n))
    return Fraction(m.q_prev, m.q)


def surd_from_periodic(cf: CFExpansion) -> QuadraticSurd:
    if not cf.is_periodic:
        raise ValueError("surd_from_periodic needs a periodic tail")
    return periodic_value(cf.digits, cf.tail.period, cf.a0)


# ----- tails and values -----

def tail_after(cf: CFExpansion, n: int) -> Enclosure:
    """[0; a_{n+1}, a_{n+2}, ...]: exact when the tail is known, else an enclosure."""
    N = len(cf.digits)
    if cf.is_periodic:
        if n >= N:
            shift = (n - N) % len(cf.tail.period)
            period = cf.tail.period
            return periodic_value((), period[shift:] + period[:shift])
        return periodic_value(cf.digits[n:], cf.tail.period)
    cf.require(n)
    if cf.tail.kind == "terminated":
        return finite_value(cf.digits[n:])
    if cf.tail.system is None:
        raise CannotEncloseError("tail is unknown and not restricted to a digit system")
    last = cf.digits[-1] if N else None
    return Mobius.of(cf.digits[n:]).apply_interval(tail_bounds(cf.tail.system, last))


def value_of(cf: CFExpansion) -> Enclosure:
    return tail_after(cf, 0) + cf.a0


def _as_interval(x: Enclosure, bits: int) -> RationalInterval:
    if isinstance(x, RationalInterval):
        return x
    return RationalInterval.around(x, bits)


def lambda_exact(cf: CFExpansion, n: int) -> Exact:
    """Exact lambda_n for periodic or terminated tails."""
    if cf.tail.kind == "system":
        raise CannotEncloseError("lambda_n is only exact for periodic or terminated tails")
    t = tail_after(cf, n)
    return alpha_star(cf, n - 1) + cf.digit(n) + t if n > 1 else cf.digit(n) + t


def lambda_n(cf: CFExpansion, n: int, bits: int = ENCLOSURE_BITS) -> RationalInterval:
    """Enclosure of alpha*_{n-1} + alpha_n."""
    if n < 1:
        raise ValueError("lambda_n needs n >= 1")
    cf.require(n)
    if cf.tail.kind != "system":
        return _as_interval(lambda_exact(cf, n), bits)
    star = alpha_star(cf, n - 1) if n > 1 else Fraction(0)
    return tail_after(cf, n) + (star + cf.digit(n))


def perron_residual(cf: CFExpansion, n: int, bits: int = ENCLOSURE_BITS) -> RationalInterval:
    """Enclosure of |x - p_n/q_n| * lambda_{n+1} * q_n^2 (equal to 1)."""
    if n < 0:
        raise ValueError("perron_residual needs n >= 0")
    cf.require(n + 1)
    m = Mobius.of(cf.prefix(n), cf.a0)
    conv = Fraction(m.p, m.q)
    if cf.tail.kind != "system":
        x = value_of(cf)
        lam = lambda_exact(cf, n + 1)
        return _as_interval(abs(x - conv) * lam * (m.q * m.q), bits)
    x = value_of(cf)
    lam = lambda_n(cf, n + 1, bits)
    return (x - conv).abs() * lam * (m.q * m.q)


def lambda_enclosures(cf: CFExpansion, upto: Optional[int] = None, bits: int = ENCLOSURE_BITS) -> List[RationalInterval]:
    """[lambda_1, ..., lambda_upto] in one backward pass over the tails."""
    N = len(cf.digits) if upto is None else upto
    cf.require(N)
    digits = cf.prefix(N)
    tail = _as_interval(tail_after(cf.unrolled(N), N), bits)
    tails: List[RationalInterval] = [tail] * (N + 1)
    for n in range(N, 0, -1):
        tails[n] = tail
        tail = (tail + digits[n - 1]).reciprocal()
    qs = denominators(digits)
    out = []
    for n in range(1, N + 1):
        star = Fraction(qs[n - 2], qs[n - 1]) if n > 1 else Fraction(0)
        out.append(tails[n] + (star + digits[n - 1]))
    return out


def recurrence_holds(cf: CFExpansion, n: int) -> bool:
    """p_i q_{i-1} - p_{i-1} q_i = (-1)^{i-1} for i = 1..n."""
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    for i, d in enumerate(cf.prefix(n), start=1):
        p_prev, p = p, d * p + p_prev
        q_prev, q = q, d * q + q_prev
        if p * q_prev - p_prev * q != (-1) ** (i - 1):
            return False
    return True


def denominator_split_bound(digits: Sequence[int], m: int) -> bool:
    """q_n(a_1..a_n) <= 2 q_m(a_1..a_m) q_{n-m}(a_{m+1}..a_n)."""
    return Mobius.of(digits).q <= 2 * Mobius.of(digits[:m]).q * Mobius.of(digits[m:]).q
