# cantorsum/decompose.py
"""
Constructive Hall-type decomposition: target = [0; b_1, ...] + [0; c_1, ...].

Two cylinders of the same digit system are refined one digit at a time.
Each step refines whichever cylinder is wider and keeps the smallest child
digit for which the target stays inside the sum of the two cylinder
intervals.  When no child covers the target the search backtracks to the
last choice with untried alternatives.  Digits already handed out to a
consumer (committed) are never revisited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from cantorsum.digits import Cylinder, DigitSystem, cylinder_interval, guaranteed_sum_interval
from cfcore.exact import format_exact
from cfcore.interval import RationalInterval
from cfcore.mobius import Mobius
from cfcore.surd import Exact, QuadraticSurd, compare
from utils.errors import DepthExceededError, OutOfRangeError, StreamExhaustedError
from utils.logger import get_logger

logger = get_logger("cantorsum.decompose")

DEFAULT_DEPTH_CAP = 500
TARGET_BITS = 512


class _Side:
    def __init__(self, system: DigitSystem):
        self.system = system
        self.digits: List[int] = []
        self.maps: List[Mobius] = [Mobius.start()]
        self.intervals: List[RationalInterval] = [cylinder_interval(system, self.maps[0], None)]
        self.committed = 0

    @property
    def last(self) -> Optional[int]:
        return self.digits[-1] if self.digits else None

    @property
    def interval(self) -> RationalInterval:
        return self.intervals[-1]

    def push(self, d: int) -> None:
        m = self.maps[-1].push(d)
        self.digits.append(d)
        self.maps.append(m)
        self.intervals.append(cylinder_interval(self.system, m, d))

    def pop(self) -> None:
        self.digits.pop()
        self.maps.pop()
        self.intervals.pop()


@dataclass
class _Choice:
    side: int
    remaining: List[int]


class SumDecomposer:
    """Lazily refinable pair of cylinders whose interval sum covers ``target``."""

    def __init__(
        self,
        target: Exact,
        system: DigitSystem,
        depth_cap: int = DEFAULT_DEPTH_CAP,
        node_budget: Optional[int] = None,
    ):
        lo, hi = guaranteed_sum_interval(system)
        if compare(target, lo) < 0 or compare(target, hi) > 0:
            raise OutOfRangeError(
                f"target {format_exact(target)} lies outside the covered interval of {system.name}",
                interval=f"[{format_exact(lo)}, {format_exact(hi)}]",
            )
        self.target = target
        self.system = system
        self.depth_cap = depth_cap
        self.node_budget = node_budget if node_budget is not None else 64 * depth_cap
        self.sides = (_Side(system), _Side(system))
        self._stack: List[_Choice] = []
        self.nodes = 0
        self.backtracks = 0
        if isinstance(target, QuadraticSurd):
            self._tlo, self._thi = target.rational_bounds(TARGET_BITS)
        else:
            self._tlo = self._thi = Fraction(target)
        self.width_history: List[Fraction] = [self.sum_interval().width()]
        if not self.covers():
            raise OutOfRangeError(f"target {format_exact(target)} is not covered by {system.name} + {system.name}")

    # ----- views -----
    def sum_interval(self) -> RationalInterval:
        return self.sides[0].interval + self.sides[1].interval

    def covers(self) -> bool:
        iv = self.sum_interval()
        if iv.lo <= self._tlo and self._thi <= iv.hi:
            return True
        if iv.hi < self._tlo or self._thi < iv.lo:
            return False
        return iv.contains(self.target)

    @property
    def depth(self) -> int:
        return len(self.sides[0].digits) + len(self.sides[1].digits)

    def digits(self, side: int) -> Tuple[int, ...]:
        return tuple(self.sides[side].digits)

    # ----- refinement -----
    def step(self) -> None:
        s0, s1 = self.sides
        side = 0 if s0.interval.width() >= s1.interval.width() else 1
        self._descend(side, list(self.system.successors(self.sides[side].last)))

    def _descend(self, side: int, options: List[int]) -> None:
        while True:
            while options:
                d = options.pop(0)
                if self.depth >= self.depth_cap:
                    raise DepthExceededError(
                        f"decomposition of {format_exact(self.target)} in {self.system.name} exceeded {self.depth_cap} digits",
                        blocking="sum-interval width above goal at the depth cap",
                        depth=self.depth,
                    )
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise DepthExceededError(
                        f"decomposition search exhausted its node budget of {self.node_budget}",
                        blocking="no covering child found within the node budget",
                    )
                target_side = self.sides[side]
                target_side.push(d)
                if self.covers():
                    self._stack.append(_Choice(side, options))
                    self.width_history.append(self.sum_interval().width())
                    return
                target_side.pop()
            if not self._stack:
                raise OutOfRangeError(f"{format_exact(self.target)} admits no decomposition in {self.system.name}")
            choice = self._stack.pop()
            back = self.sides[choice.side]
            if len(back.digits) <= back.committed:
                raise StreamExhaustedError(
                    f"backtracking would change committed digit {len(back.digits)} of stream {'mu' if choice.side == 0 else 'nu'}"
                )
            back.pop()
            self.width_history.pop()
            self.backtracks += 1
            logger.debug("backtrack at depth %d (side %d)", self.depth, choice.side)
            side, options = choice.side, choice.remaining

    def refine(self, width_goal: Fraction) -> None:
        while self.sum_interval().width() > width_goal:
            self.step()

    def ensure(self, side: int, n: int, slack: int = 0) -> None:
        while len(self.sides[side].digits) < n + slack:
            self.step()

    def commit(self, side: int, n: int) -> None:
        s = self.sides[side]
        if len(s.digits) < n:
            raise StreamExhaustedError(f"cannot commit {n} digits, only {len(s.digits)} emitted")
        s.committed = max(s.committed, n)

    def check_invariants(self) -> None:
        assert self.covers(), "covering invariant broken"
        for s in self.sides:
            assert self.system.is_valid(s.digits), f"digit legality broken in {s.digits}"
        widths = self.width_history
        assert all(a >= b for a, b in zip(widths, widths[1:])), "sum width grew along the current path"


@dataclass
class Decomposition:
    b: Tuple[int, ...]
    c: Tuple[int, ...]
    sum_interval: RationalInterval
    steps: int
    width_history: List[Fraction] = field(default_factory=list)

    def verify(self, target: Exact, system: DigitSystem) -> bool:
        """Independent re-check of containment via fresh cylinder intervals."""
        iv = Cylinder(system, self.b).interval() + Cylinder(system, self.c).interval()
        return iv.contains(target)


def decompose(
    target: Exact,
    system: DigitSystem,
    width_goal: Fraction,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> Decomposition:
    dec = SumDecomposer(target, system, depth_cap=depth_cap)
    dec.refine(Fraction(width_goal))
    logger.debug(
        "decomposed %s in %s: %d digits, %d nodes, %d backtracks",
        format_exact(target), system.name, dec.depth, dec.nodes, dec.backtracks,
    )
    return Decomposition(dec.digits(0), dec.digits(1), dec.sum_interval(), len(dec.width_history) - 1, list(dec.width_history))
