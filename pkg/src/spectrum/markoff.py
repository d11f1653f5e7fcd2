# spectrum/markoff.py
"""Markoff numbers and the discrete part of the Lagrange spectrum below 3."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Set, Tuple

import numpy as np

from cfcore.exact import format_exact, to_decimal
from cfcore.surd import Exact, QuadraticSurd

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class MarkoffTriple:
    m: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.m * self.m + self.m1 * self.m1 + self.m2 * self.m2 != 3 * self.m * self.m1 * self.m2:
            raise ValueError(f"({self.m}, {self.m1}, {self.m2}) does not solve the Markoff equation")
        if not (1 <= self.m1 <= self.m and 1 <= self.m2 <= self.m):
            raise ValueError("Markoff triples are stored with m the largest entry")

    @classmethod
    def of(cls, values: Triple) -> "MarkoffTriple":
        a, b, c = sorted(values)
        return cls(c, b, a)

    def neighbors(self) -> List["MarkoffTriple"]:
        x, y, z = self.m, self.m1, self.m2
        return [
            MarkoffTriple.of((3 * y * z - x, y, z)),
            MarkoffTriple.of((x, 3 * x * z - y, z)),
            MarkoffTriple.of((x, y, 3 * x * y - z)),
        ]


def markoff_triples(limit: int) -> List[MarkoffTriple]:
    """Every triple with largest entry <= limit, by breadth-first walk of the tree from (1, 1, 1)."""
    if limit < 1:
        return []
    root = MarkoffTriple(1, 1, 1)
    seen: Set[MarkoffTriple] = {root}
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for nb in t.neighbors():
            if nb.m <= limit and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return sorted(seen, key=lambda t: (t.m, t.m1, t.m2))


def markoff_numbers(limit: int) -> List[int]:
    return sorted({t.m for t in markoff_triples(limit)})


def brute_force_markoff(limit: int) -> List[int]:
    """
    Markoff numbers <= limit straight from the equation: m qualifies when some
    m1 <= m makes 9 m^2 m1^2 - 4 (m^2 + m1^2) a square with an admissible root m2.
    """
    found = []
    for m in range(1, limit + 1):
        m1 = np.arange(1, m + 1, dtype=np.int64)
        disc = 9 * m * m * m1 * m1 - 4 * (m * m + m1 * m1)
        s = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
        s = np.where((s + 1) * (s + 1) <= disc, s + 1, s)
        s = np.where(s * s > disc, s - 1, s)
        square = s * s == disc
        b = 3 * m * m1
        hit = False
        for root in (b - s, b + s):
            ok = square & (root % 2 == 0) & (root >= 2) & (root <= 2 * m)
            hit = hit or bool(ok.any())
        if hit:
            found.append(m)
    return found


def _lagrange(m: int) -> Exact:
    return QuadraticSurd.from_parts(Fraction(0), Fraction(1, m), 9 * m * m - 4)


def lagrange_value(m: int) -> Exact:
    """L(m) = sqrt(9 m^2 - 4) / m."""
    if m < 1 or m not in markoff_numbers(m):
        raise ValueError(f"{m} is not a Markoff number")
    return _lagrange(m)


def spectrum_rows(limit: int, digits: int = 30) -> List[Dict[str, Any]]:
    rows = []
    for m in markoff_numbers(limit):
        value = _lagrange(m)
        rows.append({"m": m, "L_exact": format_exact(value), "L_decimal": to_decimal(value, digits)})
    return rows
