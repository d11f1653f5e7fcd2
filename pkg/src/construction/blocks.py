# construction/blocks.py
"""
Blocks of the witness and the search for their sizes.

    one-sided   alpha = [0; C, B_1, C, B_2, ..., C, B_N, C]
    two-sided   alpha = [0; B_1, B_2, ..., B_N]

A block B^n_m = b_m, ..., b_1, sep, c_1, ..., c_n copies digits of
mu = [0; b_1, b_2, ...] and nu = [0; c_1, c_2, ...] around the separator
sep = c.  The separator sits at the marked index k of the block, where

    lambda_k - gamma = (alpha*_{k-1} - mu) - (nu + sep - alpha_k).

m is the least admissible size with alpha*_{k-1} - mu inside (0, pad(q_k)/(2 q_k^2))
(absolute value in two-sided mode); n is the least admissible size with
|nu + sep - alpha_k| below that difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from cantorsum.digits import generic_tail_bounds
from cantorsum.represent import GammaRepresentation, Regime, regime_for, threshold_two_sided
from cfcore.exact import format_exact, to_decimal
from cfcore.interval import RationalInterval
from cfcore.mobius import Mobius
from cfcore.surd import Exact, QuadraticSurd, compare, rational_bounds
from construction.pad import PadFunction
from utils.errors import ConstructionError, DepthExceededError, IncommensurableSurdsError, UnsupportedGammaError
from utils.logger import get_logger

logger = get_logger("construction.blocks")

ONE_SIDED = "one"
TWO_SIDED = "two"

WITH_C = "with_c"
PLAIN = "plain"

PATTERN_LIMITS: Dict[Regime, Fraction] = {
    Regime.REPR4: Fraction(5),
    Regime.REPR5: Fraction(16, 3),
    Regime.REPR6: Fraction(6),
}
TWO_SIDED_MIN_SIZE = 21
TWO_SIDED_MARGIN_FLOOR = Fraction(1, 1000)
N0_CAP = 200
INITIAL_EXTRA = 8
GAP_BITS = 128


def two_sided_bound() -> Exact:
    """2 + 4 sqrt(21)/7, the largest unmarked lambda around an F_3 block."""
    return 2 + 4 * QuadraticSurd.sqrt_of(21) / 7


def half_gap(upper: Exact, lower: Exact) -> Exact:
    """(upper - lower)/2, or a rational lower bound of it when the radicands differ."""
    try:
        gap = upper - lower
    except IncommensurableSurdsError:
        gap = rational_bounds(upper, GAP_BITS)[0] - rational_bounds(lower, GAP_BITS)[1]
    return gap / 2


def two_sided_margin(gamma: Exact) -> Exact:
    gap = half_gap(gamma, two_sided_bound())
    return gap if compare(gap, TWO_SIDED_MARGIN_FLOOR) > 0 else TWO_SIDED_MARGIN_FLOOR


def c_block(regime: Regime, n0: int) -> Tuple[int, ...]:
    if regime is Regime.REPR4:
        return (3, 1) * n0 + (4, 4) + (1, 3) * n0
    if regime is Regime.REPR5:
        return (1, 4, 4, 1)
    return (4, 1) * n0 + (5, 5) + (1, 4) * n0


def pattern_lambdas(pattern: Sequence[int], left: RationalInterval, right: RationalInterval) -> List[RationalInterval]:
    """lambda enclosures at every position of ``pattern`` for any left tail in ``left`` and right tail in ``right``."""
    out = []
    for j, d in enumerate(pattern):
        forward = Mobius.of(pattern[j + 1:]).apply_interval(right) + d
        backward = Mobius.of(reversed(pattern[:j])).apply_interval(left)
        out.append(forward + backward)
    return out


def find_n0(gamma: Exact, regime: Regime, tail_digit_bound: int) -> Tuple[int, Exact]:
    """Least n0 whose C block keeps every lambda below gamma - epsilon in any context."""
    epsilon = half_gap(gamma, PATTERN_LIMITS[regime])
    if compare(epsilon, 0) <= 0:
        raise UnsupportedGammaError(f"gamma={format_exact(gamma)} does not exceed {PATTERN_LIMITS[regime]}")
    right = generic_tail_bounds(tail_digit_bound)
    left = RationalInterval(0, right.hi)
    ceiling = gamma - epsilon
    for n0 in range(0 if regime is Regime.REPR5 else 1, N0_CAP + 1):
        if all(lam.below(ceiling) for lam in pattern_lambdas(c_block(regime, n0), left, right)):
            logger.debug("n0=%d epsilon=%s for gamma=%s", n0, format_exact(epsilon), format_exact(gamma))
            return n0, epsilon
        if regime is Regime.REPR5:
            break
    raise ConstructionError(
        f"no C block keeps lambda below gamma - epsilon for gamma={format_exact(gamma)}",
        {"regime": regime.value},
    )


@dataclass(frozen=True)
class BlockSpec:
    regime: Regime
    layout: str
    separator: int
    c_block: Tuple[int, ...]
    parity: Optional[int]
    min_size: int
    tail_digit_bound: int

    def admissible(self, size: int) -> bool:
        return size >= self.min_size and (self.parity is None or size % 2 == self.parity)

    def next_size(self, after: int) -> int:
        size = max(after + 1, self.min_size)
        while not self.admissible(size):
            size += 1
        return size

    def lookahead_tail(self) -> RationalInterval:
        """Enclosure of [0; digits after c_n] before the next block is known."""
        generic = generic_tail_bounds(self.tail_digit_bound)
        if self.layout == WITH_C:
            return Mobius.of(self.c_block).apply_interval(generic)
        return generic

    def block(self, b: Sequence[int], c: Sequence[int], m: int, n: int) -> Tuple[int, ...]:
        return tuple(reversed(b[:m])) + (self.separator,) + tuple(c[:n])

    def to_dict(self) -> Dict:
        return {
            "regime": self.regime.value,
            "layout": self.layout,
            "separator": self.separator,
            "c_block": list(self.c_block),
            "parity": {None: "any", 0: "even", 1: "odd"}[self.parity],
            "min_size": self.min_size,
            "tail_digit_bound": self.tail_digit_bound,
        }


@dataclass(frozen=True)
class ConstructionParams:
    gamma: Exact
    pad: PadFunction
    mode: str
    n0: int
    epsilon: Exact
    spec: BlockSpec
    c: int
    lookahead: int = 10_000

    @property
    def regime(self) -> Regime:
        return self.spec.regime

    @property
    def marked_class(self) -> str:
        return "marked_above" if self.spec.layout == WITH_C else "marked_band"

    @classmethod
    def prepare(cls, gamma: Exact, pad: PadFunction, mode: str, c: int, lookahead: int = 10_000) -> "ConstructionParams":
        if mode not in (ONE_SIDED, TWO_SIDED):
            raise ValueError(f"mode must be {ONE_SIDED!r} or {TWO_SIDED!r}, got {mode!r}")
        if mode == ONE_SIDED and compare(gamma, 5) <= 0:
            raise UnsupportedGammaError(
                f"the one-sided construction needs gamma > 5, got {format_exact(gamma)}; use --mode two for "
                f"{to_decimal(threshold_two_sided(), 5)} <= gamma <= 5"
            )
        regime = regime_for(gamma)
        layout = WITH_C if compare(gamma, 5) > 0 else PLAIN
        if layout == PLAIN:
            spec = BlockSpec(regime, PLAIN, 4, (), None, TWO_SIDED_MIN_SIZE, 4)
            return cls(gamma, pad, mode, 0, two_sided_margin(gamma), spec, c, lookahead)
        bound = {Regime.REPR4: 4, Regime.REPR5: 5, Regime.REPR6: max(c, 5)}[regime]
        n0, epsilon = find_n0(gamma, regime, bound)
        parity = 0 if regime is Regime.REPR5 else 1
        spec = BlockSpec(regime, WITH_C, c, c_block(regime, n0), parity, 1, bound)
        if mode == TWO_SIDED:
            logger.info("two-sided mode with gamma > 5 uses the one-sided layout")
        return cls(gamma, pad, mode, n0, epsilon, spec, c, lookahead)


@dataclass
class BlockRecord:
    index: int
    m: int
    n: int
    k: int
    start: int
    q_k: int
    q_before_b: int
    q_b: int
    gap: RationalInterval
    nu_gap: RationalInterval
    lambda_k: RationalInterval

    def to_dict(self) -> Dict:
        return {
            "block": self.index,
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "start": self.start,
            "q_k": str(self.q_k),
            "alpha_star_minus_mu": self.gap.as_strings(),
            "nu_plus_sep_minus_alpha_k": self.nu_gap.as_strings(),
            "lambda_k": self.lambda_k.as_strings(),
        }


@dataclass
class ConstructionState:
    digits: List[int] = field(default_factory=list)
    mobius: Mobius = field(default_factory=Mobius.start)
    blocks: List[BlockRecord] = field(default_factory=list)
    block_of: List[int] = field(default_factory=list)

    @property
    def marked(self) -> List[int]:
        return [b.k for b in self.blocks]

    @property
    def last_m(self) -> int:
        return self.blocks[-1].m if self.blocks else 0

    @property
    def last_n(self) -> int:
        return self.blocks[-1].n if self.blocks else 0

    def extend(self, digits: Sequence[int], block: int) -> None:
        m = self.mobius
        for d in digits:
            m = m.push(d)
        self.mobius = m
        self.digits.extend(digits)
        self.block_of.extend([block] * len(digits))


def _decide_gap(gap: RationalInterval, bound: Fraction, mode_abs: bool) -> Optional[bool]:
    """True / False once the enclosure settles the m-condition, None while it straddles."""
    if mode_abs:
        a = gap.abs()
        if a.lo >= bound:
            return False
        # the n-condition needs a positive lower bound on |gap|
        if a.hi < bound and a.lo > 0:
            return True
        return None
    if gap.lo > 0 and gap.hi < bound:
        return True
    if gap.hi <= 0 or gap.lo >= bound:
        return False
    return None


def _choose_m(state: ConstructionState, params: ConstructionParams, rep: GammaRepresentation) -> Tuple[int, RationalInterval]:
    spec = params.spec
    two_sided_band = spec.layout == PLAIN
    base = state.mobius
    b_map = Mobius.start()
    built = 0
    m = spec.next_size(state.last_m)
    while True:
        if m > params.lookahead:
            raise DepthExceededError(
                f"no admissible m <= {params.lookahead} for block {len(state.blocks) + 1}",
                blocking="alpha*_(k-1) - mu < pad(q_k) / (2 q_k^2)",
                pad=str(params.pad),
            )
        b = rep.mu.take(m)
        # prepend b_m, ..., b_{built+1} in front of the part already built
        for j in range(built, m):
            b_map = Mobius.start().push(b[j]).then(b_map)
        built = m
        before_sep = base.then(b_map)
        q_k = spec.separator * before_sep.q + before_sep.q_prev
        star = Fraction(before_sep.q_prev, before_sep.q)
        bound = params.pad(q_k) / (2 * q_k * q_k)
        extra = INITIAL_EXTRA
        while True:
            gap = star - rep.mu.interval_at(m + extra)
            verdict = _decide_gap(gap, bound, two_sided_band)
            if verdict is not None:
                break
            extra *= 2
            if extra > params.lookahead:
                raise DepthExceededError(
                    f"m-condition undecidable at m={m} within {params.lookahead} digits of mu",
                    blocking="alpha*_(k-1) - mu < pad(q_k) / (2 q_k^2)",
                )
        if verdict:
            return m, gap
        logger.debug("m=%d rejected: q_k^2 gap in %s", m, gap * (q_k * q_k))
        m = spec.next_size(m)


def _choose_n(
    state: ConstructionState, params: ConstructionParams, rep: GammaRepresentation, gap: RationalInterval
) -> Tuple[int, RationalInterval, RationalInterval]:
    spec = params.spec
    gamma = params.gamma
    k = len(state.digits)
    q_k, q_k1 = state.mobius.q, state.mobius.q_prev
    # alpha*_{k-1} = q_{k-2} / q_{k-1}, q_{k-2} = q_k - sep q_{k-1}
    star = Fraction(q_k - spec.separator * q_k1, q_k1)
    pad_band = params.pad(q_k) / (q_k * q_k)
    target = gap.abs().lo if spec.layout == PLAIN else gap.lo
    after = spec.lookahead_tail()
    c_map = Mobius.start()
    built = 0
    n = spec.next_size(state.last_n)
    while True:
        if n > params.lookahead:
            raise DepthExceededError(
                f"no admissible n <= {params.lookahead} for block {len(state.blocks) + 1} at k={k}",
                blocking="|nu + sep - alpha_k| < alpha*_(k-1) - mu",
            )
        c = rep.nu.take(n)
        for j in range(built, n):
            c_map = c_map.push(c[j])
        built = n
        alpha_k = c_map.apply_interval(after) + spec.separator
        nu_gap = rep.nu.interval_at(n + INITIAL_EXTRA) + spec.separator - alpha_k
        lam = alpha_k + star
        if spec.layout == WITH_C:
            direct = lam.above(gamma) and lam.below(gamma + pad_band)
        else:
            direct = lam.above(gamma - pad_band) and lam.below(gamma + pad_band)
        if nu_gap.abs().hi < target and direct:
            return n, nu_gap, lam
        n = spec.next_size(n)


def next_block(state: ConstructionState, params: ConstructionParams, rep: GammaRepresentation) -> ConstructionState:
    spec = params.spec
    index = len(state.blocks) + 1
    start = len(state.digits) + 1
    if spec.layout == WITH_C:
        state.extend(spec.c_block, index)
    q_before_b = state.mobius.q
    m, gap = _choose_m(state, params, rep)
    b = rep.mu.take(m)
    state.extend(tuple(reversed(b[:m])), index)
    q_b = Mobius.of(b[:m]).q
    state.extend((spec.separator,), index)
    k = len(state.digits)
    q_k = state.mobius.q
    n, nu_gap, lam = _choose_n(state, params, rep, gap)
    state.extend(rep.nu.take(n), index)
    record = BlockRecord(index, m, n, k, start, q_k, q_before_b, q_b, gap, nu_gap, lam)
    state.blocks.append(record)
    logger.info("block %d: m=%d n=%d k=%d (q_k has %d digits)", index, m, n, k, len(str(q_k)))
    return state


def bounding_chain_holds(state: ConstructionState, i: int) -> bool:
    """
    |alpha*_{k-1} - mu| < 1/q_m(b)^2 and |alpha*_{k-1} - mu| < 4 (sep + 1)^2 q_{k-m-1}^2 / q_k^2
    for block i (1-based).
    """
    block = state.blocks[i - 1]
    sep = state.digits[block.k - 1]
    upper = block.gap.abs().hi
    return upper < Fraction(1, block.q_b ** 2) and upper < Fraction(4 * (sep + 1) ** 2 * block.q_before_b ** 2, block.q_k ** 2)
