# verification/solutions.py
"""
Brute-force solution enumeration for

    |alpha - p/q| < (1 / (gamma q^2)) * (1 + s * pad(q) / q^2),   s in {+1, -1, 0}

over reduced p/q with q <= Q, and the convergent-only predicate obtained
from Perron's formula |alpha - p_n/q_n| = 1 / (lambda_{n+1} q_n^2).
"""

from __future__ import annotations

import asyncio
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from cfcore.contfrac import CFExpansion, lambda_exact, lambda_n, value_of
from cfcore.mobius import Mobius
from cfcore.exact import format_exact
from cfcore.interval import RationalInterval, format_fraction
from cfcore.surd import Exact, compare, rational_bounds
from construction.pad import PadFunction
from utils.errors import ConfigError
from utils.logger import get_logger

logger = get_logger("verification.solutions")

SIGNS = {"plus": 1, "minus": -1, "none": 0}
DEFAULT_Q = 5000
DEFAULT_WORKERS = 4


def sign_value(sign: str) -> int:
    try:
        return SIGNS[sign]
    except KeyError:
        raise ConfigError(f"sign must be one of {sorted(SIGNS)}, got {sign!r}") from None


def pad_shift(pad: Optional[PadFunction], sign: str, q: int) -> Fraction:
    """1 + s * pad(q) / q^2."""
    s = sign_value(sign)
    if s == 0:
        return Fraction(1)
    if pad is None:
        raise ConfigError(f"sign {sign!r} needs a pad function")
    return 1 + s * pad(q) / (q * q)


@dataclass(frozen=True)
class Solution:
    p: int
    q: int
    lhs: RationalInterval
    rhs_lo: Fraction
    verdict: str = "solution"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "lhs_hi": format_fraction(self.lhs.hi),
            "rhs_lo": format_fraction(self.rhs_lo),
            "verdict": self.verdict,
        }


@dataclass
class SolutionReport:
    gamma: Exact
    pad: Optional[str]
    sign: str
    Q: int
    solutions: List[Solution] = field(default_factory=list)
    undecided: List[int] = field(default_factory=list)

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return [(s.p, s.q) for s in self.solutions]

    @property
    def denominators(self) -> List[int]:
        return [s.q for s in self.solutions]

    def rows(self) -> List[Dict[str, Any]]:
        rows = [{"q": s.q, "p": s.p, "lhs_hi": format_fraction(s.lhs.hi), "rhs_lo": format_fraction(s.rhs_lo), "verdict": s.verdict} for s in self.solutions]
        rows += [{"q": q, "p": None, "lhs_hi": None, "rhs_lo": None, "verdict": "undecided"} for q in self.undecided]
        return sorted(rows, key=lambda r: (r["q"], r["p"] is None, r["p"] or 0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": format_exact(self.gamma),
            "pad": self.pad,
            "sign": self.sign,
            "Q": self.Q,
            "count": len(self.solutions),
            "solutions": [s.to_dict() for s in self.solutions],
            "undecided": self.undecided,
        }


def _outward(iv: RationalInterval, bits: int) -> RationalInterval:
    scale = 1 << bits
    return RationalInterval(Fraction(math.floor(iv.lo * scale), scale), Fraction(math.ceil(iv.hi * scale), scale))


@dataclass(frozen=True)
class _AlphaView:
    exact: Optional[Exact]
    box: RationalInterval


def _alpha_view(alpha: CFExpansion, Q: int) -> _AlphaView:
    bits = 256 + 8 * Q.bit_length()
    value = value_of(alpha)
    if isinstance(value, RationalInterval):
        return _AlphaView(None, _outward(value, bits))
    return _AlphaView(value, RationalInterval.around(value, bits))


def _scan(view: _AlphaView, gamma: Exact, pad: Optional[PadFunction], sign: str, qs: Sequence[int]) -> Tuple[List[Solution], List[int]]:
    inv_gamma = Fraction(1) / gamma
    g_lo, g_hi = rational_bounds(inv_gamma, 256)
    found: List[Solution] = []
    undecided: List[int] = []
    for q in qs:
        q = int(q)
        shift = pad_shift(pad, sign, q)
        if shift <= 0:
            continue
        rhs_box = RationalInterval(g_lo * shift / (q * q), g_hi * shift / (q * q))
        open_q = False
        for p in range(math.floor(q * view.box.lo), math.floor(q * view.box.hi) + 2):
            if math.gcd(p, q) != 1:
                continue
            lhs = (view.box - Fraction(p, q)).abs()
            if lhs.lo >= rhs_box.hi:
                continue
            if lhs.hi < rhs_box.lo:
                found.append(Solution(p, q, lhs, rhs_box.lo))
                continue
            if view.exact is not None:
                rhs = inv_gamma * shift / (q * q)
                if compare(abs(view.exact - Fraction(p, q)), rhs) < 0:
                    found.append(Solution(p, q, lhs, rhs_box.lo))
                continue
            open_q = True
        if open_q:
            undecided.append(q)
    return found, undecided


async def enumerate_solutions_async(
    alpha: CFExpansion,
    gamma: Exact,
    pad: Optional[PadFunction],
    sign: str,
    Q: int,
    workers: int = DEFAULT_WORKERS,
) -> SolutionReport:
    if Q < 1:
        raise ConfigError(f"Q must be at least 1, got {Q}")
    sign_value(sign)
    view = _alpha_view(alpha, Q)
    chunks = [c for c in np.array_split(np.arange(1, Q + 1, dtype=np.int64), max(1, workers)) if len(c)]
    parts = await asyncio.gather(*(asyncio.to_thread(_scan, view, gamma, pad, sign, chunk.tolist()) for chunk in chunks))
    report = SolutionReport(gamma, str(pad) if pad is not None else None, sign, Q)
    for found, undecided in parts:
        report.solutions.extend(found)
        report.undecided.extend(undecided)
    logger.debug("scanned q <= %d in %d chunks: %d solutions, %d undecided", Q, len(chunks), len(report.solutions), len(report.undecided))
    return report


def enumerate_solutions(
    alpha: CFExpansion,
    gamma: Exact,
    pad: Optional[PadFunction],
    sign: str,
    Q: int,
    workers: int = DEFAULT_WORKERS,
) -> SolutionReport:
    return asyncio.run(enumerate_solutions_async(alpha, gamma, pad, sign, Q, workers))


def convergent_predicate(alpha: CFExpansion, gamma: Exact, pad: Optional[PadFunction], sign: str, n: int) -> Optional[bool]:
    """
    Verdict of the inequality at p_n/q_n via lambda_{n+1} > gamma / (1 + s pad(q_n)/q_n^2).
    None when the lambda enclosure straddles the threshold.
    """
    q = Mobius.of(alpha.prefix(n)).q
    shift = pad_shift(pad, sign, q)
    if shift <= 0:
        return False
    avail = alpha.available()
    if avail is not None and n >= avail:
        if alpha.tail.kind == "terminated":
            # p_n/q_n is alpha itself
            return True
        return None
    threshold = gamma / shift
    if alpha.tail.kind != "system":
        return compare(lambda_exact(alpha, n + 1), threshold) > 0
    lam = lambda_n(alpha, n + 1)
    if lam.above(threshold):
        return True
    if compare(lam.hi, threshold) <= 0:
        return False
    return None


def _convergents_upto(alpha: CFExpansion, Q: int) -> List[Tuple[int, int, int]]:
    """(n, p_n, q_n) for every convergent with q_n <= Q, n >= 0."""
    n_max = alpha.available()
    m = Mobius.start(alpha.a0)
    out = []
    n = 0
    while m.q <= Q:
        out.append((n, m.p, m.q))
        if n_max is not None and n >= n_max:
            break
        n += 1
        m = m.push(alpha.digit(n))
    return out


def convergent_solutions(alpha: CFExpansion, gamma: Exact, pad: Optional[PadFunction], sign: str, Q: int) -> Tuple[Set[Tuple[int, int]], List[int]]:
    """Convergents p_n/q_n with q_n <= Q satisfying the inequality, plus undecided q_n."""
    out: Set[Tuple[int, int]] = set()
    undecided: List[int] = []
    for n, p, q in _convergents_upto(alpha, Q):
        verdict = convergent_predicate(alpha, gamma, pad, sign, n)
        if verdict:
            out.add((p, q))
        elif verdict is None:
            undecided.append(q)
    return out, undecided


def nonconvergent_solutions(alpha: CFExpansion, gamma: Exact, pad: Optional[PadFunction], sign: str, Q: int) -> Set[Tuple[int, int]]:
    """Solutions of the inequality that are not convergents of the given expansion."""
    conv = {(p, q) for _, p, q in _convergents_upto(alpha, Q)}
    report = enumerate_solutions(alpha, gamma, pad, sign, Q, workers=1)
    return {pq for pq in report.pairs if pq not in conv}
