import pytest

from oracles import td_isprime
from primeplets.errors import CapacityError, ValidationError
from primeplets.special_forms import (
    EXAMPLE_FAMILIES,
    GUARDS,
    UNIQUENESS_CLAIMS,
    BaseKind,
    anchor_value,
    check_consistency,
    exclusion_comparison,
    fermat_scan,
    guard_conflicts,
    mersenne_exponents,
    mersenne_scan,
    normalize_offsets,
    odd_power_identity_holds,
    scan_family,
    uniqueness_audit,
    verify_all,
    verify_guard,
)


def test_anchor_values():
    assert anchor_value(BaseKind.MERSENNE, 7) == 127
    assert anchor_value(BaseKind.FERMAT, 3) == 257


def test_offsets():
    assert normalize_offsets([10, 4]) == (4, 10)
    for bad in ([4, 4], [0], [3]):
        with pytest.raises(ValidationError):
            normalize_offsets(bad)


def test_plus_four():
    recs = mersenne_scan([4], 31)
    assert [r.exponent for r in recs] == [2, 3, 7]
    assert [r.class_label for r in recs] == ["Special", "II", "II"]
    assert recs[-1].members == (127, 131)


def test_triplet_scan():
    recs = mersenne_scan([-18, -14], 127)
    assert [r.members for r in recs] == [(13, 17, 31), (109, 113, 127)]
    assert recs[0].class_label == "II,I"


def test_fermat_minus_six():
    assert [r.members for r in fermat_scan([-6], 4)] == [(11, 17), (251, 257)]


def test_negative_companions_skipped():
    assert [r.exponent for r in mersenne_scan([-24], 7)] == [5, 7]


def test_probable_marker():
    recs = mersenne_scan([4], 127)
    assert all(r.probable == (r.members[-1] >= 2**64) for r in recs)


def test_capacity():
    with pytest.raises(CapacityError):
        mersenne_exponents(5000)


def test_parallel_scan_matches_serial():
    assert mersenne_scan([4, 10], 200, workers=2) == mersenne_scan([4, 10], 200)


@pytest.mark.parametrize("guard", GUARDS, ids=lambda g: g.guard_id)
def test_each_guard(guard):
    rng = mersenne_exponents(1000) if guard.kind is BaseKind.MERSENNE else range(9)
    rep = verify_guard(guard, rng)
    assert rep.ok and rep.checked


def test_guard_counterexample_detected():
    # the +8 Fermat guard fails at n = 1 (2^2 + 9 = 13), which is why it starts at n = 2
    from dataclasses import replace

    g = next(g for g in GUARDS if g.guard_id == "C35ii")
    loose = replace(g, condition=lambda n: True)
    assert verify_guard(loose, range(5)).counterexamples == [0, 1]


def test_verify_all_shape():
    reps = verify_all(200, 6)
    assert len(reps) == len(GUARDS) and all(r.ok for r in reps)


def test_scan_never_contradicts_guards():
    for fam in EXAMPLE_FAMILIES:
        recs = scan_family(fam)
        check_consistency(recs)
        assert all(not guard_conflicts(r) for r in recs)


@pytest.mark.parametrize("cid", sorted(UNIQUENESS_CLAIMS))
def test_uniqueness(cid):
    bound = 127 if UNIQUENESS_CLAIMS[cid].kind is BaseKind.MERSENNE else 6
    rep = uniqueness_audit(cid, bound)
    assert rep.ok, rep.to_record()


def test_unknown_audit():
    with pytest.raises(ValidationError):
        uniqueness_audit("nope", 10)


@pytest.mark.parametrize("fam", EXAMPLE_FAMILIES, ids=lambda f: f.example_id)
def test_printed_witnesses_found(fam):
    got = [r.exponent for r in scan_family(fam)]
    assert set(fam.listed) <= set(got)
    for r in scan_family(fam):
        assert all(td_isprime(m) for m in r.members if m < 10**12)


def test_wider_scans_recorded():
    # witnesses beyond the printed lists
    assert [r.exponent for r in fermat_scan([6], 4)] == [1, 2, 3, 4]
    assert [r.exponent for r in mersenne_scan([12], 127)] == [3, 5, 7, 31]


def test_odd_power_identity():
    assert all(odd_power_identity_holds(a, p) for a in range(2, 11) for p in range(1, 51, 2))


def test_exclusion_forms_agree():
    cmp = exclusion_comparison(8)
    values = list(cmp.values())
    assert values[0] == values[1]
