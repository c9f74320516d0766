import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import bytearray_sieve, td_isprime
from primeplets.errors import CapacityError, ValidationError
from primeplets.prime_engine import (
    DETERMINISTIC_LIMIT,
    MAX_SIEVE_LIMIT,
    Status,
    is_prime,
    isprime,
    lucas_lehmer,
    pepin,
    prime_mask,
    primes_up_to,
)


def test_small_cases():
    assert is_prime(1).status is Status.COMPOSITE
    assert is_prime(1).witness is None
    assert is_prime(0).status is Status.COMPOSITE
    assert is_prime(-7).status is Status.COMPOSITE
    assert is_prime(2).status is Status.PRIME
    assert is_prime(7919).status is Status.PRIME
    assert is_prime(2**13 - 1).status is Status.PRIME


def test_primes_up_to_examples():
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**6)) == 78498


def test_primes_up_to_bounds():
    with pytest.raises(ValidationError):
        primes_up_to(1)
    with pytest.raises(CapacityError):
        primes_up_to(MAX_SIEVE_LIMIT + 1)


def test_segmented_matches_plain():
    plain = primes_up_to(300_000).tolist()
    seg = primes_up_to(300_000, segment_threshold=0, segment_size=4097).tolist()
    assert seg == plain


def test_table_membership():
    t = primes_up_to(100)
    assert 97 in t and 91 not in t and 1 not in t
    assert list(t)[:3] == [2, 3, 5]
    assert np.array_equal(np.flatnonzero(t.mask()), t.primes)


def test_mask_is_read_only():
    m = prime_mask(1000)
    with pytest.raises(ValueError):
        m[5] = False


def test_agrees_with_independent_sieve_below_1e5():
    flags = bytearray_sieve(100_000)
    assert all(isprime(n) == bool(flags[n]) for n in range(100_001))


# strong pseudoprimes to several small bases; all must be caught
@pytest.mark.parametrize("n", [
    2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
    341550071728321, 3825123056546413051, 318665857834031151167461,
    561, 1105, 1729, 41041, 825265,
])
def test_pseudoprimes_composite(n):
    assert is_prime(n).status is Status.COMPOSITE


def test_deterministic_range_never_probable():
    for n in (2**61 - 1, 2**64 - 59, 18446744073709551557):
        assert is_prime(n).status is Status.PRIME


def test_beyond_threshold_probable():
    v = is_prime(2**127 - 1)
    assert v.status is Status.PROBABLE_PRIME
    assert v and not v.certain
    assert is_prime((2**61 - 1) * (2**89 - 1)).status is Status.COMPOSITE


def test_special_certificates():
    assert lucas_lehmer(127).status is Status.PRIME
    assert lucas_lehmer(11).status is Status.COMPOSITE
    assert lucas_lehmer(9).witness == 7
    assert [pepin(n).status for n in range(7)] == [Status.PRIME] * 5 + [Status.COMPOSITE] * 2


@settings(max_examples=400)
@given(st.integers(min_value=-10, max_value=10**7))
def test_matches_trial_division(n):
    assert isprime(n) == td_isprime(n)


@given(st.integers(min_value=2, max_value=DETERMINISTIC_LIMIT - 1))
def test_witness_divides(n):
    v = is_prime(n)
    assert v.status is not Status.PROBABLE_PRIME
    if v.witness is not None:
        assert n % v.witness == 0 and 1 < v.witness < n
