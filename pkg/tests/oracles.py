"""Deliberately naive reference implementations.

Nothing here imports the package's arithmetic; each oracle is the most
direct reading of the definition so it can be trusted without review.
"""

from __future__ import annotations

import itertools
from math import isqrt


def td_isprime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def bytearray_sieve(limit: int) -> bytearray:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return flags


def naive_regular(min_length: int, limit: int) -> list[dict]:
    out = []
    for s in range(3, limit + 1):
        if not td_isprime(s):
            continue
        members = [s]
        n = 1
        while td_isprime(s + n * (n + 1)):
            members.append(s + n * (n + 1))
            n += 1
        if len(members) >= min_length:
            out.append({"start": s, "length": len(members), "members": members,
                        "maximal": True, "family": None})
    return out


def _evaluate(coeffs, x):
    return sum(c * x ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))


def naive_run(coeffs) -> int:
    j = 0
    while td_isprime(abs(_evaluate(coeffs, j))):
        j += 1
    return j


def naive_poly_search(p0, degree, leading, middle, *, min_run=None):
    """All (coeffs, run) with constant +-p0 and run >= min_run (default p0)."""
    need = p0 if min_run is None else min_run
    found = []
    lo, hi = middle
    mids = range(lo, hi + 1)
    for a in leading:
        if a == 0:
            continue
        for rest in itertools.product(mids, repeat=degree - 1):
            for c in (p0, -p0):
                coeffs = (a, *rest, c)
                run = naive_run(coeffs)
                if run >= need:
                    found.append((list(coeffs), run))
    found.sort(key=lambda t: (-t[1], t[0]))
    return found
