import numpy as np
import pytest

from cantorsum.digits import (
    F3,
    F4,
    FJ,
    Cylinder,
    DigitSystem,
    extremal_digits,
    extremal_tails,
    guaranteed_sum_interval,
    system_by_name,
    tail_bounds,
    validate_registry,
)
from cantorsum.represent import threshold_two_sided
from cfcore.surd import QuadraticSurd, compare
from utils.errors import DigitSystemError

sqrt2 = QuadraticSurd.sqrt_of(2)


def test_forbidden_pairs_of_fj():
    assert FJ.is_valid((3, 4, 1, 3, 4))
    assert not FJ.is_valid((1, 4))
    assert FJ.first_violation((3, 1, 4)) == 2
    assert FJ.successors(2) == (1, 2, 3)
    assert F4.is_valid((1, 4, 2, 4))


def test_extremal_tails_of_f4():
    lo, hi = extremal_tails(F4)
    assert 2 * lo == sqrt2 - 1
    assert 2 * hi == 4 * sqrt2 - 4
    assert extremal_digits(F4, None, True) == ((4,), (1, 4))


def test_tail_bounds_enclose_the_extremes():
    for system in (F3, F4, FJ):
        for prev in (None, *sorted(system.allowed)):
            lo, hi = extremal_tails(system, prev)
            iv = tail_bounds(system, prev)
            assert iv.contains(lo) and iv.contains(hi)
            assert compare(lo, hi) < 0


def test_guaranteed_intervals():
    assert guaranteed_sum_interval(F4) == (sqrt2 - 1, 4 * sqrt2 - 4)
    f3_lo, f3_hi = guaranteed_sum_interval(F3)
    assert 4 + f3_lo == threshold_two_sided()
    assert compare(f3_lo, f3_hi) < 0
    fj_lo, fj_hi = guaranteed_sum_interval(FJ)
    assert compare(fj_lo, fj_hi) < 0
    with pytest.raises(DigitSystemError):
        guaranteed_sum_interval(system_by_name("F_7"))


def _children(parent):
    return [Cylinder(parent.system, parent.prefix + (d,)) for d in parent.system.successors(parent.last)]


def test_child_cylinders_nest_exactly():
    parent = Cylinder(F4, (2, 3))
    p_lo, p_hi = parent.exact_bounds()
    for child in _children(parent):
        c_lo, c_hi = child.exact_bounds()
        assert compare(p_lo, c_lo) <= 0 and compare(c_hi, p_hi) <= 0


@pytest.mark.parametrize("system", [F3, F4, FJ, system_by_name("F_9")])
def test_rational_cylinder_enclosures_nest(system):
    rng = np.random.default_rng(5)
    prefix = ()
    for _ in range(30):
        parent = Cylinder(system, prefix)
        outer = parent.interval()
        for child in _children(parent):
            assert outer.contains(child.interval())
        options = system.successors(parent.last)
        prefix += (options[int(rng.integers(0, len(options)))],)


def test_cylinder_rejects_illegal_prefix():
    with pytest.raises(DigitSystemError):
        Cylinder(FJ, (2, 4))


def test_system_lookup_and_dead_ends():
    assert system_by_name("F_7").max_digit == 7
    assert system_by_name("FJ") is FJ
    with pytest.raises(DigitSystemError):
        system_by_name("G_2")
    with pytest.raises(DigitSystemError):
        DigitSystem("dead", frozenset({1, 2}), frozenset({(1, 1), (1, 2)}))


def test_registry_periods_are_short():
    report = validate_registry()
    assert set(report) >= {"F_3", "F_4", "FJ"}
