import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_regular, td_isprime
from primeplets.errors import InvariantBreach, ValidationError
from primeplets.multiplets import (
    E_PRIMES,
    LISTED_RUN_EXCLUSIONS,
    LISTED_RUN_STARTS,
    FamilyKind,
    FamilyTag,
    all_family_tags,
    extend_regular,
    family_multiplet,
    find_almost_regular,
    find_regular,
)


@pytest.mark.parametrize("p", [p for p in E_PRIMES if p > 2])
def test_euler_cap(p):
    m = extend_regular(p)
    assert m.length == p - 1
    assert not td_isprime(p + (p - 1) * p)


def test_forty():
    m = extend_regular(41)
    assert m.members[-2:] == (1523, 1601)
    assert m.differences == [2 * (j + 1) for j in range(39)]


def test_start_validation():
    for bad in (1, 2, 9):
        with pytest.raises(ValidationError):
            extend_regular(bad)
    with pytest.raises(ValidationError):
        find_regular(1, 100)


def test_decuplets():
    assert [m.start for m in find_regular(10, 600)] == [11, 17, 41]
    assert [m.start for m in find_regular(16, 100)] == [17, 41]


@pytest.mark.parametrize("k", [2, 4, 6])
def test_oracle_small(k):
    assert [m.to_record() for m in find_regular(k, 5000)] == naive_regular(k, 5000)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(3, 20000))
def test_nesting(k, limit):
    a = {m.start for m in find_regular(k, limit)}
    b = {m.start for m in find_regular(k + 1, limit)}
    assert b <= a


def test_listed_run_starts():
    for k, starts in LISTED_RUN_STARTS.items():
        for s in starts:
            if s in LISTED_RUN_EXCLUSIONS:
                assert not td_isprime(s)
            else:
                assert extend_regular(s).length >= k, s


def test_printed_lengths():
    assert extend_regular(21557).length == 8
    assert extend_regular(1277).length >= 7
    assert extend_regular(128981).length >= 8


def test_almost_regular():
    found = find_almost_regular(5, 50, 1)
    by_start = {m.start: m for m in found}
    assert all(len(m.missing_indices) <= 1 for m in found)
    assert all(td_isprime(m.members[-1]) for m in found)
    for m in found:
        for i, v in enumerate(m.members):
            assert td_isprime(v) == (i not in m.missing_indices)
    # 11 + 110 = 121 and 11 + 132 = 143 are both composite, so one miss does not extend it
    assert by_start[11].length == 10 and by_start[47].missing_indices == (1,)
    with pytest.raises(ValidationError):
        find_almost_regular(5, 50, 3)


def test_almost_zero_is_regular():
    assert [m.start for m in find_almost_regular(6, 2000, 0)] == [m.start for m in find_regular(6, 2000)]


def test_start_thirteen_flag_mechanics():
    found = {m.start: m for m in find_almost_regular(2, 13, 2)}
    m = found[13]
    assert m.missing_indices[0] == 1 and m.members[:2] == (13, 15)


@pytest.mark.parametrize("tag", all_family_tags(), ids=lambda t: t.label())
def test_families(tag):
    m = family_multiplet(tag)
    assert all(td_isprime(v) for v in m.members)
    for x, (u, v) in zip(tag.domain, zip(m.members, m.members[1:])):
        assert v - u == tag.distance(x)


def test_family_specifics():
    g = family_multiplet(FamilyTag(FamilyKind.g, d=677))
    assert g.members[0] == 167 and g.members[-1] == 37 and g.length == 11
    assert family_multiplet(FamilyTag(FamilyKind.G, 3, 5)).members == (2,)
    assert family_multiplet(FamilyTag(FamilyKind.f, 29)).length == 29
    assert family_multiplet(FamilyTag(FamilyKind.F, 37)).length == 18


def test_family_validation():
    with pytest.raises(ValidationError):
        FamilyTag(FamilyKind.E, 7)
    with pytest.raises(ValidationError):
        FamilyTag(FamilyKind.G, 3, 7)
    with pytest.raises(ValidationError):
        FamilyTag(FamilyKind.g, d=45)


def test_family_breach_detected(monkeypatch):
    tag = FamilyTag(FamilyKind.g, d=677)
    monkeypatch.setattr(FamilyTag, "distance", lambda self, x: 2 * self.d * (x + 1))
    with pytest.raises(InvariantBreach):
        family_multiplet(tag)
