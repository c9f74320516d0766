"""Regular prime multiplets p, p + 2, p + 6, ..., p + n(n + 1).

Consecutive differences grow as 2, 4, 6, ...; the members are the values
of the Euler-type quadratic x**2 + x + p.  Related quadratic families with
their own distance laws are evaluated by :func:`family_multiplet`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvariantBreach, ValidationError
from .prime_engine import isprime, prime_mask


class FamilyKind(str, enum.Enum):
    E = "E"
    f = "f"
    F = "F"
    G = "G"
    g = "g"


E_PRIMES = (2, 3, 5, 11, 17, 41)
F_LOWER_PRIMES = (3, 5, 11, 29)  # 2x^2 + p
F_UPPER_PRIMES = (5, 13, 37)  # 2x^2 + 2x + (p + 1)/2
G_PAIRS = (
    (3, 5), (3, 17), (3, 41), (3, 89), (5, 7), (5, 23), (5, 47),
    (7, 13), (7, 61), (11, 17), (13, 31),
)
G_D_VALUES = (37, 53, 77, 101, 173, 197, 293, 437, 677)


@dataclass(frozen=True)
class FamilyTag:
    kind: FamilyKind
    p: int | None = None
    q: int | None = None
    d: int | None = None

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is FamilyKind.E and self.p not in E_PRIMES:
            raise ValidationError(f"E_p needs p in {E_PRIMES}")
        if kind is FamilyKind.f and self.p not in F_LOWER_PRIMES:
            raise ValidationError(f"f_p needs p in {F_LOWER_PRIMES}")
        if kind is FamilyKind.F and self.p not in F_UPPER_PRIMES:
            raise ValidationError(f"F_p needs p in {F_UPPER_PRIMES}")
        if kind is FamilyKind.G:
            if (self.p, self.q) not in G_PAIRS:
                raise ValidationError(f"G needs (p, q) in {G_PAIRS}")
            if self.p * self.q % 4 != 3:
                raise ValidationError("G needs pq = 3 mod 4")
        if kind is FamilyKind.g:
            if self.d not in G_D_VALUES:
                raise ValidationError(f"g_d needs d in {G_D_VALUES}")
            if self.d % 4 != 1 or any(self.d % (k * k) == 0 for k in range(2, math.isqrt(self.d) + 1)):
                raise ValidationError("g_d needs square-free d = 1 mod 4")

    @property
    def coeffs(self) -> tuple[int, int, int]:
        """Quadratic coefficients, highest degree first."""
        p, q, d = self.p, self.q, self.d
        return {
            FamilyKind.E: lambda: (1, 1, p),
            FamilyKind.f: lambda: (2, 0, p),
            FamilyKind.F: lambda: (2, 2, (p + 1) // 2),
            FamilyKind.G: lambda: (p, p, (p + q) // 4),
            FamilyKind.g: lambda: (-1, 1, (d - 1) // 4),
        }[self.kind]()

    @property
    def domain(self) -> range:
        p, q, d = self.p, self.q, self.d
        if self.kind is FamilyKind.E:
            return range(0, p - 1)
        if self.kind is FamilyKind.f:
            return range(0, p)
        if self.kind is FamilyKind.F:
            return range(0, (p - 3) // 2 + 1)
        if self.kind is FamilyKind.G:
            return range(0, (p + q) // 4 - 1)
        # x = 2, 3, ... strictly below sqrt(d - 1) / 2
        hi = 2
        while 4 * hi * hi < d - 1:
            hi += 1
        return range(2, hi)

    def distance(self, x: int) -> int:
        """value(x + 1) - value(x)."""
        return {
            FamilyKind.E: lambda: 2 * (x + 1),
            FamilyKind.f: lambda: 2 * (2 * x + 1),
            FamilyKind.F: lambda: 4 * (x + 1),
            FamilyKind.G: lambda: 2 * self.p * (x + 1),
            FamilyKind.g: lambda: -2 * x,
        }[self.kind]()

    def value(self, x: int) -> int:
        a, b, c = self.coeffs
        return (a * x + b) * x + c

    def label(self) -> str:
        if self.kind is FamilyKind.G:
            return f"G_{self.p},{self.q}"
        if self.kind is FamilyKind.g:
            return f"g_{self.d}"
        return f"{self.kind.value}_{self.p}"


def all_family_tags() -> list[FamilyTag]:
    tags = [FamilyTag(FamilyKind.E, p) for p in E_PRIMES]
    tags += [FamilyTag(FamilyKind.f, p) for p in F_LOWER_PRIMES]
    tags += [FamilyTag(FamilyKind.F, p) for p in F_UPPER_PRIMES]
    tags += [FamilyTag(FamilyKind.G, p, q) for p, q in G_PAIRS]
    tags += [FamilyTag(FamilyKind.g, d=d) for d in G_D_VALUES]
    return tags


@dataclass(frozen=True)
class RegularMultiplet:
    start: int
    length: int
    members: tuple[int, ...]
    maximal: bool
    family: FamilyTag | None = None

    @property
    def differences(self) -> list[int]:
        return [b - a for a, b in zip(self.members, self.members[1:])]

    def to_record(self) -> dict:
        return {
            "start": self.start,
            "length": self.length,
            "members": list(self.members),
            "maximal": self.maximal,
            "family": self.family.label() if self.family else None,
        }


@dataclass(frozen=True)
class AlmostRegularMultiplet(RegularMultiplet):
    missing_indices: tuple[int, ...] = field(default=())

    def to_record(self) -> dict:
        rec = super().to_record()
        rec["missing_indices"] = list(self.missing_indices)
        return rec


def _checker(limit: int) -> Callable[[int], bool]:
    flags = prime_mask(limit)

    def check(n: int) -> bool:
        if n <= limit:
            return bool(flags[n])
        return isprime(n)

    return check


def extend_regular(start: int, *, _check: Callable[[int], bool] | None = None) -> RegularMultiplet:
    check = _check or isprime
    if start < 3 or not check(start):
        raise ValidationError("start must be an odd prime")
    members = [start]
    n = 1
    while check(start + n * (n + 1)):
        members.append(start + n * (n + 1))
        n += 1
    return RegularMultiplet(start, len(members), tuple(members), True)


def _candidate_starts(min_length: int, limit: int, flags: np.ndarray) -> np.ndarray:
    # flags must reach limit + (min_length - 1) * min_length
    hits = flags[3 : limit + 1].copy()
    for n in range(1, min_length):
        off = n * (n + 1)
        hits &= flags[3 + off : limit + 1 + off]
    return np.flatnonzero(hits) + 3


def find_regular(min_length: int, limit: int) -> list[RegularMultiplet]:
    """Maximal regular multiplets of length >= min_length starting <= limit."""
    if min_length < 2:
        raise ValidationError("min_length must be >= 2")
    if limit < 3:
        return []
    table_top = limit + (min_length - 1) * min_length + 4096
    flags = prime_mask(table_top)
    check = _checker(table_top)
    starts = _candidate_starts(min_length, limit, flags)
    return [extend_regular(int(s), _check=check) for s in starts]


def find_almost_regular(min_length: int, limit: int, max_missing: int) -> list[AlmostRegularMultiplet]:
    """Runs s + n(n + 1), n = 0..L-1, with at most ``max_missing`` composite
    positions.

    The start may itself be missing (odd s, not necessarily prime); the run
    is trimmed so its last member is prime.  With ``max_missing=0`` this is
    exactly :func:`find_regular`.
    """
    if max_missing > 2 or max_missing < 0:
        raise ValidationError("max_missing must be 0, 1 or 2")
    if min_length < 2:
        raise ValidationError("min_length must be >= 2")
    if max_missing == 0:
        return [AlmostRegularMultiplet(**vars(m)) for m in find_regular(min_length, limit)]
    table_top = limit + 4 * min_length * min_length + 4096
    check = _checker(table_top)
    out = []
    for s in range(3, limit + 1, 2):
        missing: list[int] = []
        n, last_prime = 0, -1
        while True:
            v = s + n * (n + 1)
            if check(v):
                last_prime = n
            else:
                if len(missing) == max_missing:
                    break
                missing.append(n)
            n += 1
        length = last_prime + 1
        if length < min_length:
            continue
        missing = [i for i in missing if i < length]
        members = tuple(s + i * (i + 1) for i in range(length))
        out.append(AlmostRegularMultiplet(s, length, members, True, None, tuple(missing)))
    return out


def family_multiplet(tag: FamilyTag) -> RegularMultiplet:
    xs = tag.domain
    values = [tag.value(x) for x in xs]
    for x, v in zip(xs, values):
        if not isprime(abs(v)) or v < 2:
            raise InvariantBreach(f"{tag.label()}({x}) = {v} is not prime")
    for x, (u, v) in zip(xs, zip(values, values[1:])):
        if v - u != tag.distance(x):
            raise InvariantBreach(f"{tag.label()} breaks its distance law at x = {x}")
    after = tag.value(xs[-1] + 1) if len(xs) else None
    maximal = after is None or not isprime(after)
    return RegularMultiplet(values[0], len(values), tuple(values), maximal, tag)


# Regular-multiplet lists printed for the Euler-type quadratic, keyed by the
# minimum run length they claim.  23471 is composite (7**2 * 479) and is kept
# only so the discrepancy stays visible; see LISTED_RUN_EXCLUSIONS.
LISTED_RUN_STARTS: dict[int, tuple[int, ...]] = {
    5: (11, 17, 41, 347, 641, 1427, 4001, 4637, 4931, 19421, 22271, 23471,
        26711, 27941, 28277, 31247, 32057, 33617, 113147),
    6: (11, 17, 41, 1277, 1607, 3527, 28277, 31247, 33617, 55661, 113147,
        128981, 548831, 566537),
    7: (11, 17, 41, 1277, 28277, 113147, 128981),
    8: (11, 17, 41, 128981),
    9: (11, 17, 41),
    10: (11, 17, 41),
}
LISTED_RUN_EXCLUSIONS = frozenset({23471})

# Starts printed as at-least-sextets (21557 appears under the longer runs).
PRINTED_SEXTET_STARTS = (
    11, 17, 41, 1277, 1607, 3527, 21557, 28277, 31247, 33617, 55661, 113147,
    128981, 548831, 566537,
)
