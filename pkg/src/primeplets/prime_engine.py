"""Primality testing and prime enumeration.

Verdicts are deterministic below ``DETERMINISTIC_LIMIT`` (2**64): a strong
Miller-Rabin test to the first twelve prime bases is exact there (it is in
fact exact below 3.3e24).  Above the limit the battery is

* trial division by the primes below ``TRIAL_LIMIT``,
* strong Miller-Rabin to the bases 2, 3, 5, ..., 37,
* a strong Lucas test with Selfridge's parameter choice,

and a survivor is reported as ``ProbablePrime``.  Mersenne and Fermat
anchors have dedicated deterministic tests (Lucas-Lehmer, Pepin) so scans
can certify them regardless of size.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, ValidationError

DETERMINISTIC_LIMIT = 1 << 64
TRIAL_LIMIT = 1000
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Sieve memory policy.
SEGMENT_THRESHOLD = 10**8
SEGMENT_SIZE = 1 << 24
MAX_SIEVE_LIMIT = 10**11


class Status(enum.Enum):
    PRIME = "Prime"
    COMPOSITE = "Composite"
    PROBABLE_PRIME = "ProbablePrime"


@dataclass(frozen=True)
class PrimalityVerdict:
    status: Status
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.status is not Status.COMPOSITE

    @property
    def certain(self) -> bool:
        return self.status is not Status.PROBABLE_PRIME


COMPOSITE = PrimalityVerdict(Status.COMPOSITE)
PRIME = PrimalityVerdict(Status.PRIME)
PROBABLE = PrimalityVerdict(Status.PROBABLE_PRIME)


def _small_primes(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


_TRIAL_PRIMES = _small_primes(TRIAL_LIMIT)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    if n <= 0 or not n & 1:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test, Selfridge method A. ``n`` odd > 2."""
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = P * U + V, D * U + P * V
            if U & 1:
                U += n
            if V & 1:
                V += n
            U = (U >> 1) % n
            V = (V >> 1) % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> PrimalityVerdict:
    """Classify ``n``; anything below 2 is Composite without a witness."""
    n = int(n)
    if n < 2:
        return COMPOSITE
    for p in _TRIAL_PRIMES:
        if n == p:
            return PRIME
        if n % p == 0:
            return PrimalityVerdict(Status.COMPOSITE, p)
    if n < TRIAL_LIMIT * TRIAL_LIMIT:
        return PRIME
    for base in MR_BASES:
        if not _strong_probable_prime(n, base):
            return COMPOSITE
    if n < DETERMINISTIC_LIMIT:
        return PRIME
    if not _strong_lucas(n):
        return COMPOSITE
    return PROBABLE


def isprime(n: int) -> bool:
    """Boolean shorthand: True for Prime and ProbablePrime."""
    return bool(is_prime(n))


def lucas_lehmer(p: int) -> PrimalityVerdict:
    """Deterministic verdict for the Mersenne number 2**p - 1."""
    if p < 2:
        return COMPOSITE
    if p == 2:
        return PRIME
    if not isprime(p):
        # a proper divisor of p gives a proper divisor of 2**p - 1
        q = next(d for d in range(2, math.isqrt(p) + 1) if p % d == 0)
        return PrimalityVerdict(Status.COMPOSITE, (1 << q) - 1)
    m = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = (s * s - 2) % m
    return PRIME if s == 0 else COMPOSITE


def pepin(n: int) -> PrimalityVerdict:
    """Deterministic verdict for the Fermat number 2**(2**n) + 1."""
    if n < 0:
        raise ValidationError("Fermat index must be non-negative")
    if n == 0:
        return PRIME
    f = (1 << (1 << n)) + 1
    return PRIME if pow(3, (f - 1) // 2, f) == f - 1 else COMPOSITE


def _simple_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = False
    return flags


def _segmented_primes(limit: int, segment_size: int) -> np.ndarray:
    root = math.isqrt(limit)
    base = np.flatnonzero(_simple_sieve(root))
    chunks = [base]
    low = root + 1
    while low <= limit:
        high = min(low + segment_size - 1, limit)
        seg = np.ones(high - low + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > high:
                break
            start = max(p * p, -(-low // p) * p)
            seg[start - low :: p] = False
        chunks.append(np.flatnonzero(seg) + low)
        low = high + 1
    return np.concatenate(chunks).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable ascending table of all primes ``<= limit``."""

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __contains__(self, n: int) -> bool:
        i = bisect_right(self.primes, n)
        return i > 0 and int(self.primes[i - 1]) == n

    def tolist(self) -> list[int]:
        return [int(p) for p in self.primes]

    def mask(self) -> np.ndarray:
        """Boolean primality flags for 0..limit."""
        flags = np.zeros(self.limit + 1, dtype=bool)
        flags[self.primes] = True
        return flags


def primes_up_to(
    limit: int,
    *,
    segment_threshold: int = SEGMENT_THRESHOLD,
    segment_size: int = SEGMENT_SIZE,
) -> PrimeTable:
    if limit < 2:
        raise ValidationError("limit must be at least 2")
    if limit > MAX_SIEVE_LIMIT:
        raise CapacityError(f"sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}")
    if limit > segment_threshold:
        primes = _segmented_primes(limit, segment_size)
    else:
        primes = np.flatnonzero(_simple_sieve(limit)).astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit, primes)


@lru_cache(maxsize=8)
def prime_mask(limit: int) -> np.ndarray:
    """Cached read-only primality flags for 0..limit (used by searches)."""
    if limit > SEGMENT_THRESHOLD:
        flags = primes_up_to(limit).mask()
    else:
        flags = _simple_sieve(max(limit, 2))
    flags.setflags(write=False)
    return flags
