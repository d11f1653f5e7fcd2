from fractions import Fraction

import pytest

from cantorsum.digits import F3, F4, FJ
from cantorsum.represent import (
    Regime,
    gap_point,
    integer_part,
    regime_for,
    regime_range,
    represent_gamma,
    threshold_two_sided,
)
from utils.errors import UnsupportedGammaError


@pytest.mark.parametrize(
    "gamma, regime",
    [
        (Fraction(21, 4), Regime.REPR4),
        (Fraction(24, 5), Regime.REPR4),
        (Fraction(28, 5), Regime.REPR5),
        (Fraction(6), Regime.REPR5),
        (Fraction(7), Regime.REPR6),
    ],
)
def test_regime_selection(gamma, regime):
    assert regime_for(gamma) is regime


def test_regime_boundaries_are_closed_where_stated():
    assert regime_for(threshold_two_sided()) is Regime.REPR4
    assert regime_for(gap_point()) is Regime.REPR4
    assert regime_range(Regime.REPR5)["hi"] == 6
    assert regime_range(Regime.REPR5)["lo_closed"] is False


def test_below_threshold_cites_the_bound():
    with pytest.raises(UnsupportedGammaError) as err:
        regime_for(Fraction(9, 2))
    assert "two-sided" in str(err.value)


def test_integer_parts():
    assert integer_part(Fraction(21, 4), Regime.REPR4) == 4
    assert integer_part(Fraction(28, 5), Regime.REPR5) == 5
    assert integer_part(Fraction(7), Regime.REPR6) == 6
    assert integer_part(Fraction(13, 2), Regime.REPR6) == 6
    assert integer_part(Fraction(100), Regime.REPR6) == 99


@pytest.mark.parametrize(
    "gamma, system, c",
    [(Fraction(21, 4), F3, 4), (Fraction(28, 5), FJ, 5), (Fraction(7), F4, 6)],
)
def test_representation_encloses_gamma(gamma, system, c):
    rep = represent_gamma(gamma, depth_cap=2000, width_goal=Fraction(1, 10**20))
    assert rep.system == system
    assert rep.c == c
    assert rep.encloses_gamma()
    assert rep.sum_interval().width() < Fraction(1, 10**20)


def test_streams_are_stable_once_taken():
    rep = represent_gamma(Fraction(28, 5), depth_cap=2000)
    head = rep.mu.take(6)
    rep.refine(Fraction(1, 10**40))
    assert rep.mu.take(6) == head
    assert rep.mu.interval_at(30).width() < rep.mu.interval_at(10).width()
    assert FJ.is_valid(rep.nu.take(12))


def test_threshold_itself_is_representable():
    rep = represent_gamma(threshold_two_sided(), depth_cap=2000, width_goal=Fraction(1, 10**15))
    assert rep.encloses_gamma()
