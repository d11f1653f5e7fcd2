# verification/lagrange.py
"""Lagrange-constant estimates, Hurwitz reference checks and the strengthened-inequality witness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from cfcore.contfrac import CFExpansion, lambda_enclosures
from cfcore.exact import to_decimal
from cfcore.interval import RationalInterval
from cfcore.mobius import Mobius
from cfcore.surd import Exact, QuadraticSurd
from construction.certificate import Certificate
from construction.pad import parse_pad
from verification.solutions import SolutionReport, convergent_predicate, enumerate_solutions

TOP_COUNT = 5


@dataclass
class LagrangeEstimate:
    N: int
    running_sup: List[Fraction]
    top: List[Tuple[int, RationalInterval]]
    tail: RationalInterval

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "top": [{"n": n, "lambda": iv.as_strings(), "decimal": to_decimal(iv.mid(), 12)} for n, iv in self.top],
            "tail_estimate": self.tail.as_strings(),
            "tail_decimal": to_decimal(self.tail.mid(), 12),
        }


def lagrange_estimate(alpha: CFExpansion, N: int, top: int = TOP_COUNT) -> LagrangeEstimate:
    """
    running_sup[i] is max lambda_n.lo over n <= i + 1; ``tail`` hulls the sup of lambda_n
    over the second half of the range, the finite stand-in for the limsup.
    """
    lams = lambda_enclosures(alpha.unrolled(N), N)
    running: List[Fraction] = []
    best = None
    for lam in lams:
        best = lam.lo if best is None or lam.lo > best else best
        running.append(best)
    ranked = sorted(enumerate(lams, start=1), key=lambda item: (-item[1].hi, item[0]))[:top]
    second_half = lams[N // 2:] or lams
    tail = RationalInterval(max(iv.lo for iv in second_half), max(iv.hi for iv in second_half))
    return LagrangeEstimate(N, running, ranked, tail)


def hurwitz_constant() -> Exact:
    return QuadraticSurd.sqrt_of(5)


def hurwitz_check(alpha: CFExpansion, Q: int) -> SolutionReport:
    """Solutions of |alpha - p/q| < 1/(sqrt5 q^2) with q <= Q."""
    return enumerate_solutions(alpha, hurwitz_constant(), None, "none", Q)


def hurwitz_strengthened(alpha: CFExpansion, eps: Fraction, Q: int) -> SolutionReport:
    """Same with sqrt5 + eps; for badly approximable alpha only small q survive."""
    return enumerate_solutions(alpha, hurwitz_constant() + Fraction(eps), None, "none", Q)


def strengthened_check(certificate: Certificate, alpha: CFExpansion) -> Dict[str, Any]:
    """
    At every marked convergent q_{k-1}: the plain inequality holds and the
    pad-strengthened one fails.
    """
    pad = parse_pad(certificate.pad)
    gamma = certificate.gamma
    rows = []
    ok = True
    for k in certificate.marked:
        q = Mobius.of(alpha.prefix(k - 1)).q
        plain = convergent_predicate(alpha, gamma, None, "none", k - 1)
        strong: Optional[bool] = convergent_predicate(alpha, gamma, pad, "minus", k - 1)
        holds = plain is True and strong is False
        ok = ok and holds
        rows.append({"k": k, "q": str(q), "plain": plain, "strengthened": strong, "ok": holds})
    return {"ok": ok, "marked": rows}
