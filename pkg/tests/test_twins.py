import pytest
from hypothesis import given, strategies as st

from oracles import td_isprime
from primeplets.errors import InvariantBreach, NotApplicableError, ValidationError
from primeplets.twins import (
    ClassLabel,
    ResidueSignature,
    TwinPair,
    classify_twin,
    enumerate_twins,
    residue_exclusions_hold,
    residue_signature,
    sixm_form,
)

I, II, III, SP = ClassLabel.I, ClassLabel.II, ClassLabel.III, ClassLabel.SPECIAL


def test_examples():
    assert classify_twin(5, 7) == TwinPair(5, 7, 1, I, 3, 6)
    assert classify_twin(7, 11) == TwinPair(7, 11, 2, II, 2, 9)
    assert classify_twin(5, 17) == TwinPair(5, 17, 6, III, 5, 11)
    assert classify_twin(3, 5).a == 2


@pytest.mark.parametrize("pair", [(3, 7), (3, 11), (3, 19)])
def test_special_pairs(pair):
    t = classify_twin(*pair)
    assert t.label is SP and t.a is None
    with pytest.raises(NotApplicableError):
        residue_signature(t)


def test_odd_distance_with_three_is_class_one():
    t = classify_twin(3, 13)
    assert t.label is I and t.a == 4


@pytest.mark.parametrize("pair", [(2, 3), (2, 5), (7, 5), (5, 8), (5, 9), (9, 11)])
def test_rejected(pair):
    with pytest.raises(ValidationError):
        classify_twin(*pair)


def test_enumerate_validation():
    with pytest.raises(ValidationError):
        enumerate_twins(0, 100)
    with pytest.raises(ValidationError):
        enumerate_twins(1, 6)
    assert enumerate_twins(60, 100) == []


@pytest.mark.parametrize("D", range(1, 19))
def test_roundtrip_and_completeness(D):
    pairs = enumerate_twins(D, 20_000)
    brute = [(p, p + 2 * D) for p in range(3, 20_001 - 2 * D) if td_isprime(p) and td_isprime(p + 2 * D)]
    assert [(t.p_i, t.p_f) for t in pairs] == brute
    for t in pairs:
        assert classify_twin(t.p_i, t.p_f) == t


@pytest.mark.parametrize("D", [1, 3, 5, 7, 9, 11])
def test_class_one_never_special(D):
    assert {t.label for t in enumerate_twins(D, 50_000)} == {I}


@pytest.mark.parametrize("D", range(1, 31))
def test_residues_and_exclusions(D):
    for t in enumerate_twins(D, 50_000):
        if t.label is SP:
            continue
        sig = residue_signature(t)
        assert (sig.predicted_pi_mod6, sig.predicted_pf_mod6) == (t.p_i % 6, t.p_f % 6)
        assert residue_exclusions_hold(sig)


def test_exclusion_only_broken_by_three():
    # (3, 5): D = 1, r = 0, a = 2 so a0 = -1, which the rule excludes
    sig = residue_signature(classify_twin(3, 5))
    assert sig.exceptional and (sig.r, sig.a0) == (0, -1)
    assert not residue_exclusions_hold(ResidueSignature(I, 0, -1, 3, 5, False))


def test_class_three_guard():
    with pytest.raises(InvariantBreach):
        residue_signature(TwinPair(7, 19, 6, III, 7, 13))


def test_sixm_forms():
    f = sixm_form(classify_twin(5, 7))
    assert f.evaluate() == (5, 7) and f.render() == "6m-1, 6m+1 (m=1)"
    f = sixm_form(classify_twin(7, 19))
    assert f.evaluate() == (7, 19) and f.render() == "6m+1, 6(m+2)+1 (m=1)"
    with pytest.raises(NotApplicableError):
        sixm_form(classify_twin(3, 5))


@given(st.integers(1, 40), st.integers(5, 5000))
def test_witness_reconstructs_members(D, start):
    pairs = [t for t in enumerate_twins(D, start + 2 * D + 400) if t.p_i >= start]
    for t in pairs[:3]:
        med = {I: 2 * t.a, II: 3 * (2 * t.a - 1), III: 2 * t.a + 1}[t.label] if t.a else t.median
        assert (med - D, med + D) == (t.p_i, t.p_f)
