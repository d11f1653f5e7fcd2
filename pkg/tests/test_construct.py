from fractions import Fraction

import pytest

import construction.builder as builder
from cantorsum.digits import bounded, generic_tail_bounds
from cantorsum.represent import Regime, threshold_two_sided
from cfcore.contfrac import CFExpansion, CFTail
from cfcore.interval import RationalInterval
from cfcore.surd import compare
from construction.blocks import (
    PLAIN,
    TWO_SIDED_MARGIN_FLOOR,
    WITH_C,
    ConstructionParams,
    bounding_chain_holds,
    c_block,
    find_n0,
    pattern_lambdas,
    two_sided_margin,
)
from construction.builder import construct
from construction.certificate import Certificate, EntryClass
from construction.pad import parse_pad
from utils.errors import ConstructionError, DepthExceededError, UnsupportedGammaError
from verification.lagrange import strengthened_check
from verification.recheck import recheck_certificate

POWER = parse_pad("power:1")


def test_c_blocks():
    assert c_block(Regime.REPR4, 2) == (3, 1, 3, 1, 4, 4, 1, 3, 1, 3)
    assert c_block(Regime.REPR5, 0) == (1, 4, 4, 1)
    assert c_block(Regime.REPR6, 1) == (4, 1, 5, 5, 1, 4)


def test_find_n0_keeps_the_pattern_below_the_margin():
    gamma = Fraction(21, 4)
    n0, epsilon = find_n0(gamma, Regime.REPR4, 4)
    assert epsilon == Fraction(1, 8)
    assert 1 <= n0 <= 20
    right = generic_tail_bounds(4)
    left = RationalInterval(0, right.hi)
    assert all(lam.below(gamma - epsilon) for lam in pattern_lambdas(c_block(Regime.REPR4, n0), left, right))


def test_two_sided_margin():
    assert compare(two_sided_margin(Fraction(24, 5)), Fraction(9, 100)) > 0
    assert compare(two_sided_margin(threshold_two_sided()), TWO_SIDED_MARGIN_FLOOR) > 0


def test_prepare_picks_the_layout():
    one = ConstructionParams.prepare(Fraction(21, 4), POWER, "one", 4)
    assert one.spec.layout == WITH_C and one.spec.separator == 4 and one.spec.parity == 1
    two = ConstructionParams.prepare(Fraction(24, 5), POWER, "two", 4)
    assert two.spec.layout == PLAIN and two.spec.min_size == 21
    assert two.spec.next_size(0) == 21
    assert ConstructionParams.prepare(Fraction(28, 5), POWER, "two", 5).spec.layout == WITH_C


def test_one_sided_below_five_is_rejected():
    with pytest.raises(UnsupportedGammaError) as err:
        ConstructionParams.prepare(Fraction(24, 5), POWER, "one", 4)
    assert "--mode two" in str(err.value)
    with pytest.raises(UnsupportedGammaError):
        construct(Fraction(9, 2), POWER, "two", 1)


def test_log_pad_reports_the_blocking_inequality():
    with pytest.raises(DepthExceededError) as err:
        construct(Fraction(21, 4), parse_pad("log"), "one", 1, lookahead=40)
    assert "pad(q_k)" in err.value.blocking
    assert err.value.details["blocking"] == err.value.blocking


def _assert_one_sided(result, gamma, blocks):
    cert = result.certificate
    assert len(cert.marked) >= blocks
    assert cert.undecided == []
    for entry in cert.entries:
        if entry.cls is EntryClass.MARKED_ABOVE:
            assert entry.lam.above(gamma)
        else:
            assert entry.cls is EntryClass.BELOW_MARGIN
            assert entry.lam.below(gamma - cert.epsilon)
    assert recheck_certificate(cert, result.alpha).ok
    assert strengthened_check(cert, result.alpha)["ok"]
    assert all(bounding_chain_holds(result.state, i) for i in range(1, blocks + 1))


@pytest.mark.slow
@pytest.mark.parametrize("gamma", [Fraction(21, 4), Fraction(28, 5), Fraction(7)])
def test_one_sided_construction(gamma):
    result = construct(gamma, POWER, "one", 3)
    _assert_one_sided(result, gamma, 3)
    ms = [b.m for b in result.state.blocks]
    assert ms == sorted(ms)


@pytest.mark.slow
@pytest.mark.parametrize("gamma", [Fraction(24, 5), threshold_two_sided()])
def test_two_sided_construction(gamma):
    result = construct(gamma, POWER, "two", 2)
    assert result.params.spec.layout == PLAIN
    cert = result.certificate
    assert len(cert.marked) == 2
    for block in result.state.blocks:
        assert block.m > 20 and block.n > 20
    for k in cert.marked:
        entry = cert.entry(k)
        assert entry.cls is EntryClass.MARKED_BAND
        band = POWER(entry.q_n) / (entry.q_n * entry.q_n)
        assert entry.lam.above(gamma - band) and entry.lam.below(gamma + band)
    assert recheck_certificate(cert, result.alpha).ok


@pytest.mark.slow
def test_construction_is_deterministic():
    first = construct(Fraction(21, 4), POWER, "one", 3)
    second = construct(Fraction(21, 4), POWER, "one", 3)
    assert first.alpha.to_dict() == second.alpha.to_dict()
    assert first.certificate.to_dict() == second.certificate.to_dict()


@pytest.mark.slow
def test_certificate_survives_serialization():
    result = construct(Fraction(7), POWER, "one", 1)
    restored = Certificate.from_dict(result.certificate.to_dict())
    assert restored.marked == result.certificate.marked
    assert recheck_certificate(restored, result.alpha).ok


@pytest.mark.slow
def test_tampered_certificate_is_caught():
    result = construct(Fraction(7), POWER, "one", 1)
    data = result.certificate.to_dict()
    k = result.certificate.marked[0]
    for entry in data["entries"]:
        if entry["n"] == k:
            entry["class"] = "below_margin"
    outcome = recheck_certificate(Certificate.from_dict(data), result.alpha)
    assert not outcome.ok
    assert outcome.first_failure["n"] == k


def _bare_certificate(**overrides):
    fields = dict(
        gamma=Fraction(7), mode="one", pad="power:1", epsilon=Fraction(1, 10), n0=0, c=4,
        layout={}, blocks=[], entries=[],
    )
    fields.update(overrides)
    return Certificate(**fields)


def test_undecided_indices_must_be_a_suffix():
    assert _bare_certificate(digit_count=4).undecided_is_suffix()
    assert _bare_certificate(undecided=[3, 4], digit_count=4).undecided_is_suffix()
    assert not _bare_certificate(undecided=[2, 4], digit_count=4).undecided_is_suffix()
    assert not _bare_certificate(undecided=[3], digit_count=4).undecided_is_suffix()


def test_empty_certificate_does_not_pass_recheck():
    alpha = CFExpansion(0, (1, 2, 3), CFTail.within(bounded(4)))
    outcome = recheck_certificate(_bare_certificate(), alpha)
    assert not outcome.ok
    assert "covers no digits" in outcome.first_failure["reason"]
    outcome = recheck_certificate(_bare_certificate(digit_count=3), alpha)
    assert not outcome.ok
    assert outcome.first_failure["n"] == 1


@pytest.mark.slow
def test_recheck_requires_every_index_and_one_mark_per_block():
    result = construct(Fraction(7), POWER, "one", 1)
    data = result.certificate.to_dict()
    k = result.certificate.marked[0]
    data["entries"] = [e for e in data["entries"] if e["n"] != k]
    outcome = recheck_certificate(Certificate.from_dict(data), result.alpha)
    assert not outcome.ok
    reasons = " | ".join(f["reason"] for f in outcome.failures)
    assert "not each classified once" in reasons
    assert "0 marked indices for 1 blocks" in reasons


@pytest.mark.slow
def test_recheck_rejects_a_gap_in_the_decided_prefix():
    result = construct(Fraction(7), POWER, "one", 1)
    data = result.certificate.to_dict()
    data["entries"] = [e for e in data["entries"] if e["n"] != 2]
    data["undecided"] = [2]
    outcome = recheck_certificate(Certificate.from_dict(data), result.alpha)
    assert not outcome.ok
    assert any("do not form a suffix" in f["reason"] for f in outcome.failures)
    assert any("q_cover" in f["reason"] for f in outcome.failures)


@pytest.mark.slow
def test_recheck_catches_a_tiny_lambda_shift():
    result = construct(Fraction(7), POWER, "one", 1)
    data = result.certificate.to_dict()
    last = data["entries"][-1]
    last["lambda_lo"] = str(Fraction(last["lambda_lo"]) + Fraction(1, 10**30))
    outcome = recheck_certificate(Certificate.from_dict(data), result.alpha)
    assert not outcome.ok
    assert outcome.first_failure["n"] == last["n"]
    assert "does not contain" in outcome.first_failure["reason"]


@pytest.mark.slow
def test_finish_rejects_undecided_indices_before_the_end(monkeypatch):
    certify = builder.certify

    def gappy(state, params, alpha):
        certificate = certify(state, params, alpha)
        certificate.undecided = [1]
        return certificate

    monkeypatch.setattr(builder, "certify", gappy)
    with pytest.raises(ConstructionError) as err:
        construct(Fraction(24, 5), POWER, "two", 1)
    assert "suffix" in str(err.value)
