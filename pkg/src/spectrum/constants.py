# spectrum/constants.py
"""
Named constants: Hurwitz and Markoff values, Hall/Freiman endpoints, the
regime thresholds of the constructions and a non-admissible reference value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List

from cantorsum.digits import F3, F4, FJ, guaranteed_sum_interval
from cantorsum.represent import gap_point, threshold_two_sided
from cfcore.exact import format_exact, to_decimal
from cfcore.mobius import periodic_value
from cfcore.surd import Exact, QuadraticSurd, compare, rational_bounds
from construction.blocks import two_sided_bound
from utils.errors import ConfigError


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: Exact
    provenance: str
    approximate: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "exact": format_exact(self.value),
            "decimal": to_decimal(self.value),
            "provenance": self.provenance,
            "approximate": self.approximate,
        }


def non_admissible_example() -> Exact:
    """[3; 3, 3, 2, 1, overline{1, 2}] + [0; 2, 1, overline{1, 2}]."""
    return periodic_value((3, 3, 2, 1), (1, 2), 3) + periodic_value((2, 1), (1, 2))


@lru_cache(maxsize=None)
def _catalog() -> Dict[str, NamedConstant]:
    sqrt = QuadraticSurd.sqrt_of
    hall_lo, hall_hi = guaranteed_sum_interval(F4)
    f3_lo, f3_hi = guaranteed_sum_interval(F3)
    fj_lo, fj_hi = guaranteed_sum_interval(FJ)
    entries = [
        NamedConstant("sqrt5", sqrt(5), "Hurwitz constant, L(1)"),
        NamedConstant("sqrt8", sqrt(8), "L(2)"),
        NamedConstant("L3", sqrt(221) / 5, "L(5) = sqrt(221)/5"),
        NamedConstant("three", Fraction(3), "accumulation point of the discrete spectrum"),
        NamedConstant("mu0_reference", Fraction(45278, 10000), "origin of Hall's ray, 4.5278 as a decimal only", approximate=True),
        NamedConstant("threshold_thm3", threshold_two_sided(), "4 + [0;overline{3,1}] + [0;2,overline{1,3}]"),
        NamedConstant("two_sided_bound", two_sided_bound(), "3 + [0;1,4,overline{1,3}] + [0;overline{1,3}] = 2 + 4 sqrt(21)/7"),
        NamedConstant("one_sided_bound", Fraction(5), "4 + [0;4,overline{1,3}] + [0;overline{1,3}]"),
        NamedConstant("hall_gap_point", gap_point(), "10 - sqrt(21)"),
        NamedConstant("six", Fraction(6), "5 + [0;5,overline{1,4}] + [0;overline{1,4}]"),
        NamedConstant("hall_lo", hall_lo, "F_4 + F_4 left endpoint, sqrt2 - 1"),
        NamedConstant("hall_hi", hall_hi, "F_4 + F_4 right endpoint, 4 sqrt2 - 4"),
        NamedConstant("freiman_lo", f3_lo, "F_3 + F_3 covered interval, left endpoint"),
        NamedConstant("freiman_hi", f3_hi, "F_3 + F_3 covered interval, right endpoint"),
        NamedConstant("fj_lo", fj_lo, "FJ + FJ left endpoint"),
        NamedConstant("fj_hi", fj_hi, "FJ + FJ right endpoint"),
        NamedConstant("non_admissible_example", non_admissible_example(), "[3;3,3,2,1,overline{1,2}] + [0;2,1,overline{1,2}]"),
    ]
    return {c.name: c for c in entries}


def constants() -> List[NamedConstant]:
    return list(_catalog().values())


def constant_value(name: str) -> Exact:
    try:
        return _catalog()[name].value
    except KeyError:
        raise ConfigError(f"unknown constant {name!r}; known: {', '.join(sorted(_catalog()))}") from None


def bw_omega(gamma: Exact) -> Exact:
    """180 / gamma^2."""
    return Fraction(180) / (gamma * gamma)


ORDERING_CHAIN = ("sqrt5", "sqrt8", "L3", "three", "threshold_thm3", "hall_gap_point", "six")


def ordering_holds() -> bool:
    values = [constant_value(n) for n in ORDERING_CHAIN]
    return all(compare(a, b) < 0 for a, b in zip(values, values[1:]))


def mu0_between() -> bool:
    """3 < mu0 (decimal reference) < threshold_thm3, checked on rational bounds only."""
    mu0 = constant_value("mu0_reference")
    return 3 < mu0 < rational_bounds(threshold_two_sided(), 64)[0]
