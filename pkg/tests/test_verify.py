import asyncio
from fractions import Fraction

import numpy as np
import pytest

from cantorsum.digits import F4, bounded
from cfcore.contfrac import CFExpansion, CFTail, lambda_enclosures
from cfcore.surd import QuadraticSurd, compare
from construction.builder import construct
from construction.pad import parse_pad
from utils.errors import ConfigError
from verification.lagrange import hurwitz_check, hurwitz_strengthened, lagrange_estimate
from verification.recheck import certificate_conflicts
from verification.solutions import (
    convergent_predicate,
    convergent_solutions,
    enumerate_solutions,
    enumerate_solutions_async,
    nonconvergent_solutions,
    pad_shift,
    sign_value,
)

GOLDEN = CFExpansion(1, (), CFTail.periodic((1,)))
POWER = parse_pad("power:1")


def test_golden_ratio_against_a_strengthened_hurwitz_constant():
    report = hurwitz_strengthened(GOLDEN, Fraction(1, 100), 10_000)
    assert set(report.pairs) == {(2, 1), (5, 3)}
    assert report.undecided == []


def test_hurwitz_solutions_are_convergents():
    report = hurwitz_check(GOLDEN, 1000)
    conv, undecided = convergent_solutions(GOLDEN, QuadraticSurd.sqrt_of(5), None, "none", 1000)
    assert set(report.pairs) == conv
    assert undecided == []
    assert len(conv) >= 5


def test_oracle_equivalence_on_random_pairs():
    rng = np.random.default_rng(99)
    for _ in range(20):
        digits = tuple(int(d) for d in rng.integers(1, 10, size=40))
        alpha = CFExpansion(int(rng.integers(0, 3)), digits)
        gamma = Fraction(int(rng.integers(201, 800)), 100)
        for sign in ("none", "minus"):
            pad = POWER if sign == "minus" else None
            brute = enumerate_solutions(alpha, gamma, pad, sign, 2000, workers=2)
            conv, undecided = convergent_solutions(alpha, gamma, pad, sign, 2000)
            assert set(brute.pairs) == conv
            assert brute.undecided == [] and undecided == []


@pytest.mark.parametrize("system", [F4, bounded(9)])
def test_lambda_enclosures_nest_as_digits_are_added(system):
    rng = np.random.default_rng(7)
    digits = tuple(int(d) for d in rng.integers(1, system.max_digit + 1, size=40))
    previous = None
    for N in (5, 12, 25, 40):
        lams = lambda_enclosures(CFExpansion(0, digits[:N], CFTail.within(system)))
        if previous is not None:
            for wide, narrow in zip(previous, lams):
                assert wide.contains(narrow)
        previous = lams


def test_verdicts_grow_with_the_sign():
    rng = np.random.default_rng(31)
    for _ in range(6):
        pre = tuple(int(d) for d in rng.integers(1, 10, size=int(rng.integers(0, 6))))
        period = tuple(int(d) for d in rng.integers(1, 10, size=int(rng.integers(1, 4))))
        alpha = CFExpansion(int(rng.integers(0, 3)), pre, CFTail.periodic(period))
        gamma = Fraction(int(rng.integers(150, 800)), 100)
        reports = {sign: enumerate_solutions(alpha, gamma, POWER, sign, 1500, workers=2) for sign in ("minus", "none", "plus")}
        assert all(r.undecided == [] for r in reports.values())
        minus, none, plus = (set(reports[s].pairs) for s in ("minus", "none", "plus"))
        assert minus <= none <= plus


def test_truncated_digits_never_give_a_false_verdict():
    rng = np.random.default_rng(21)
    system = bounded(9)
    for _ in range(4):
        digits = tuple(int(d) for d in rng.integers(1, 10, size=60))
        full = CFExpansion(0, digits, CFTail.within(system))
        gamma = Fraction(int(rng.integers(201, 800)), 100)
        full_report = enumerate_solutions(full, gamma, POWER, "minus", 1500, workers=2)
        for N in (6, 12, 30):
            short = CFExpansion(0, digits[:N], CFTail.within(system))
            for n in range(N):
                verdict = convergent_predicate(short, gamma, None, "none", n)
                assert verdict is None or verdict == convergent_predicate(full, gamma, None, "none", n)
            report = enumerate_solutions(short, gamma, POWER, "minus", 1500, workers=2)
            open_qs = set(report.undecided) | set(full_report.undecided)
            assert {pq for pq in report.pairs if pq[1] not in open_qs} == {
                pq for pq in full_report.pairs if pq[1] not in open_qs
            }


def test_worker_count_does_not_change_the_report():
    alpha = CFExpansion(0, (2, 1, 3), CFTail.periodic((1, 2)))
    gamma = Fraction(5, 2)
    single = enumerate_solutions(alpha, gamma, None, "none", 3000, workers=1)
    many = enumerate_solutions(alpha, gamma, None, "none", 3000, workers=5)
    assert single.pairs == many.pairs
    assert single.rows() == many.rows()


def test_async_entry_point_inside_a_running_loop():
    async def scan():
        return await enumerate_solutions_async(GOLDEN, Fraction(3), None, "none", 500)

    report = asyncio.run(scan())
    assert report.Q == 500
    assert all(q <= 500 for q in report.denominators)


def test_no_nonconvergent_solutions_above_two():
    assert nonconvergent_solutions(GOLDEN, Fraction(3), None, "none", 2000) == set()


def test_predicate_at_a_terminated_end():
    alpha = CFExpansion(0, (2, 3))
    assert convergent_predicate(alpha, Fraction(3), None, "none", 2) is True
    assert convergent_predicate(alpha, Fraction(3), POWER, "minus", 0) is False


def test_sign_and_pad_validation():
    assert sign_value("plus") == 1
    with pytest.raises(ConfigError):
        sign_value("sideways")
    with pytest.raises(ConfigError):
        pad_shift(None, "minus", 5)
    assert pad_shift(POWER, "minus", 4) == Fraction(3, 4)
    with pytest.raises(ConfigError):
        enumerate_solutions(GOLDEN, Fraction(3), None, "none", 0)


def test_csv_rows_have_fixed_columns():
    report = hurwitz_check(GOLDEN, 50)
    rows = report.rows()
    assert rows and set(rows[0]) == {"q", "p", "lhs_hi", "rhs_lo", "verdict"}
    assert [r["q"] for r in rows] == sorted(r["q"] for r in rows)


def test_lagrange_estimate_of_the_golden_ratio():
    estimate = lagrange_estimate(GOLDEN, 40)
    assert abs(float(estimate.tail.mid()) - 5 ** 0.5) < 1e-6
    assert estimate.running_sup == sorted(estimate.running_sup)
    assert len(estimate.top) == 5


@pytest.mark.slow
def test_finite_range_exactness_for_the_one_sided_construction():
    gamma = Fraction(21, 4)
    result = construct(gamma, POWER, "one", 3)
    alpha, cert = result.alpha, result.certificate

    minus = enumerate_solutions(alpha, gamma, POWER, "minus", 5000)
    assert certificate_conflicts(cert, alpha, minus) == []
    assert minus.undecided == []
    assert [q for q in minus.denominators if q > 1] == []

    plain = enumerate_solutions(alpha, gamma, None, "none", 5000)
    assert certificate_conflicts(cert, alpha, plain) == []
    conv, _ = convergent_solutions(alpha, gamma, None, "none", 5000)
    assert set(plain.pairs) == conv

    for k in cert.marked:
        assert convergent_predicate(alpha, gamma, None, "none", k - 1) is True
        assert convergent_predicate(alpha, gamma, POWER, "minus", k - 1) is False
    assert compare(cert.gamma, gamma) == 0
