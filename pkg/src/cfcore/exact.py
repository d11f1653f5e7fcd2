# cfcore/exact.py
"""
Parsing and formatting of exact values.

Accepted spellings: integers and decimals ("5.2" is the literal 26/5),
"p/q", surd triples "P,D,Q", "(P+sqrt(D))/Q", "sqrt(D)", and the names of
catalog constants such as "threshold_thm3".
"""

import math
import re
from fractions import Fraction

from cfcore.surd import Exact, QuadraticSurd
from utils.errors import ConfigError

DISPLAY_DIGITS = 30

_SURD_RE = re.compile(r"^\(\s*([+-]?\d+)\s*\+\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*([+-]?\d+)$")
_SQRT_RE = re.compile(r"^sqrt\(\s*(\d+)\s*\)$")
_TRIPLE_RE = re.compile(r"^([+-]?\d+)\s*,\s*(\d+)\s*,\s*([+-]?\d+)$")
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def surd_from_triple(P: int, D: int, Q: int) -> Exact:
    if Q == 0:
        raise ConfigError("surd denominator must be nonzero")
    return QuadraticSurd.from_parts(Fraction(P, Q), Fraction(1, Q), D)


def parse_exact(text) -> Exact:
    try:
        return _parse_exact(text)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(f"cannot parse exact value {str(text).strip()!r}: {e}") from e


def _parse_exact(text) -> Exact:
    if isinstance(text, (int, Fraction, QuadraticSurd)):
        return text
    s = str(text).strip()
    if not s:
        raise ConfigError("empty exact value")
    m = _SURD_RE.match(s)
    if m:
        return surd_from_triple(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    m = _SQRT_RE.match(s)
    if m:
        return QuadraticSurd.sqrt_of(int(m.group(1)))
    m = _TRIPLE_RE.match(s)
    if m:
        return surd_from_triple(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    if _NAME_RE.match(s):
        from spectrum.constants import constant_value

        return constant_value(s)
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"cannot parse exact value {s!r}: {e}") from e


def format_exact(value: Exact) -> str:
    if isinstance(value, QuadraticSurd):
        return str(value)
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def to_decimal(value: Exact, digits: int = DISPLAY_DIGITS) -> str:
    """Round-to-nearest decimal string with a fixed number of fractional digits."""
    scale = 10 ** digits
    n = math.floor(value * scale + Fraction(1, 2))
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def exact_record(value: Exact) -> dict:
    return {"exact": format_exact(value), "decimal": to_decimal(value)}
