# construction/pad.py
"""
Padding functions varpi(q): non-decreasing, unbounded, evaluated exactly.

    log[:s]        s * l(q + 2), l a certified rational lower bound of ln
    power:a/b      floor(q^(a/b)) for 0 < a/b < 2
    table:<path>   step function read from JSON {"breakpoints": [[q, value], ...], "max_q": N}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import ujson

from utils.errors import PadOutOfTableError, PadSpecError

# 0.6931471805599453 < ln 2 = 0.69314718055994530941...
LN2_LO = Fraction(6931471805599453, 10**16)
LADDER_BITS = 64


def log_lower_bound(n: int) -> Fraction:
    """Rational l(n) <= ln(n) for n >= 1, non-decreasing and unbounded."""
    if n < 1:
        raise ValueError("log_lower_bound needs n >= 1")
    L = n.bit_length() - 1
    r = Fraction(n, 1 << L)
    # ln r >= 2(r - 1)/(r + 1) on [1, 2)
    return L * LN2_LO + 2 * (r - 1) / (r + 1)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


@dataclass(frozen=True)
class PadFunction:
    kind: str
    spec: str
    scale: Fraction = Fraction(1)
    exponent: Optional[Fraction] = None
    table: Tuple[Tuple[int, Fraction], ...] = field(default_factory=tuple)
    max_q: int = 0

    def __call__(self, q: int) -> Fraction:
        if q < 1:
            raise ValueError("pad is defined on positive integers")
        if self.kind == "log":
            return self.scale * log_lower_bound(q + 2)
        if self.kind == "power":
            e = self.exponent
            if e.denominator == 1:
                return Fraction(q ** e.numerator)
            return Fraction(iroot(q ** e.numerator, e.denominator))
        if q > self.max_q or q < self.table[0][0]:
            raise PadOutOfTableError(
                f"pad table {self.spec!r} covers q in [{self.table[0][0]}, {self.max_q}] but q={q} was requested"
            )
        value = self.table[0][1]
        for start, v in self.table:
            if start > q:
                break
            value = v
        return value

    def ladder(self):
        top = LADDER_BITS if self.kind != "table" else min(LADDER_BITS, self.max_q.bit_length() - 1)
        return [1 << j for j in range(top + 1) if self.kind != "table" or (1 << j) >= self.table[0][0]]

    def validate(self) -> "PadFunction":
        values = [self(q) for q in self.ladder()]
        if any(b < a for a, b in zip(values, values[1:])):
            raise PadSpecError(f"pad {self.spec!r} decreases on the sample ladder", 0)
        if len(values) < 2 or values[-1] <= values[0]:
            raise PadSpecError(f"pad {self.spec!r} does not grow on the sample ladder", 0)
        return self

    def __str__(self) -> str:
        return self.spec


def _parse_fraction(text: str, position: int, what: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise PadSpecError(f"malformed {what} {text!r}", position) from None
    if value <= 0:
        raise PadSpecError(f"{what} must be positive", position)
    return value


def _load_table(path: str, position: int) -> Tuple[Tuple[Tuple[int, Fraction], ...], int]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = ujson.load(f)
    except (OSError, ValueError) as e:
        raise PadSpecError(f"cannot read pad table {path!r}: {e}", position) from None
    try:
        rows = tuple(sorted((int(q), Fraction(str(v))) for q, v in data["breakpoints"]))
        max_q = int(data["max_q"])
    except (KeyError, TypeError, ValueError) as e:
        raise PadSpecError(f"malformed pad table {path!r}: {e}", position) from None
    if not rows or rows[0][0] < 1 or max_q < rows[-1][0]:
        raise PadSpecError(f"pad table {path!r} needs breakpoints >= 1 and max_q >= the last breakpoint", position)
    return rows, max_q


def parse_pad(spec: str) -> PadFunction:
    spec = (spec or "").strip()
    kind, sep, param = spec.partition(":")
    offset = len(kind) + len(sep)
    if kind == "log":
        scale = _parse_fraction(param, offset, "log scale") if sep else Fraction(1)
        return PadFunction("log", spec, scale=scale).validate()
    if kind == "power":
        if not sep:
            raise PadSpecError("power pad needs an exponent, e.g. power:1", len(spec))
        e = _parse_fraction(param, offset, "power exponent")
        if e >= 2:
            raise PadSpecError("power exponent must lie in (0, 2)", offset)
        return PadFunction("power", spec, exponent=e).validate()
    if kind == "table":
        if not param:
            raise PadSpecError("table pad needs a file path", len(spec))
        rows, max_q = _load_table(param, offset)
        return PadFunction("table", spec, table=rows, max_q=max_q).validate()
    raise PadSpecError(f"unknown pad kind {kind!r}; expected log, power or table", 0)
