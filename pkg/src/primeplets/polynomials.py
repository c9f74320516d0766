"""Prime runs of integer polynomials of degree 1 to 3.

With p0 = |P(0)| prime, p0 divides P(p0), so the run |P(0)|, |P(1)|, ...
of primes has length at most p0 unless |P(p0)| = p0.  A polynomial whose
run reaches p0 is *optimal*; one prime on the symmetric window
1 - p0 <= j <= p0 - 1 is *bi-optimal*.  Values may be negative or repeat;
runs are judged on absolute values.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import CapacityError, ValidationError
from .prime_engine import isprime

RUN_CAP = 100_000
DEFAULT_MAX_BOX = 5_000_000


@dataclass(frozen=True)
class PolySpec:
    """Integer polynomial, coefficients highest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not 2 <= len(coeffs) <= 4:
            raise ValidationError("degree must be 1, 2 or 3")
        if coeffs[0] == 0:
            raise ValidationError("leading coefficient must be non-zero")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs: int) -> "PolySpec":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def p0(self) -> int:
        return abs(self.coeffs[-1])

    def __call__(self, x: int) -> int:
        v = 0
        for c in self.coeffs:
            v = v * x + c
        return v

    def __str__(self) -> str:
        terms = []
        for power, c in zip(range(self.degree, -1, -1), self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "x", 2: "x^2", 3: "x^3"}[power]
            if power and mag != 1:
                body = f"{mag}{body}"
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {body}" if terms else f"{'-' if c < 0 else ''}{body}")
        return " ".join(terms)


@dataclass(frozen=True)
class PrimeRunReport:
    poly: PolySpec
    run_length: int
    values: tuple[int, ...]
    optimal: bool
    bioptimal: bool
    repeating: bool
    ascending: bool
    negative_hit: bool

    @property
    def near_optimal(self) -> bool:
        return self.run_length == self.poly.p0 - 1

    def to_record(self) -> dict:
        return {
            "coeffs": list(self.poly.coeffs),
            "poly": str(self.poly),
            "p0": self.poly.p0,
            "run_length": self.run_length,
            "optimal": self.optimal,
            "near_optimal": self.near_optimal,
            "bioptimal": self.bioptimal,
            "repeating": self.repeating,
            "ascending": self.ascending,
            "negative_hit": self.negative_hit,
            "values": list(self.values),
        }


def _check_p0(poly: PolySpec) -> None:
    if poly.p0 < 2:
        raise ValidationError("|P(0)| must be at least 2")


def _window_prime(poly: PolySpec, lo: int, hi: int) -> bool:
    return all(isprime(abs(poly(j))) for j in range(lo, hi + 1))


def prime_run(poly: PolySpec) -> PrimeRunReport:
    _check_p0(poly)
    values = []
    j = 0
    while j < RUN_CAP:
        v = poly(j)
        if not isprime(abs(v)):
            break
        values.append(v)
        j += 1
    L = len(values)
    mags = [abs(v) for v in values]
    bi = L >= poly.p0 and _window_prime(poly, 1 - poly.p0, -1)
    return PrimeRunReport(
        poly,
        L,
        tuple(values),
        L >= poly.p0,
        bi,
        len(set(mags)) < len(mags),
        all(a < b for a, b in zip(values, values[1:])),
        any(v < 0 for v in values),
    )


def is_bioptimal(poly: PolySpec) -> PrimeRunReport:
    """Same report as :func:`prime_run`; exists for call-site readability."""
    return prime_run(poly)


def symmetric_window(poly: PolySpec) -> tuple[int, int]:
    """Widest interval [lo, hi] containing 0 on which every |P(j)| is prime.

    Returns (0, -1) when |P(0)| is not prime.
    """
    if not isprime(abs(poly(0))):
        return 0, -1
    hi = 0
    while hi < RUN_CAP and isprime(abs(poly(hi + 1))):
        hi += 1
    lo = 0
    while -lo < RUN_CAP and isprime(abs(poly(lo - 1))):
        lo -= 1
    return lo, hi


def shift_poly(poly: PolySpec, n: int) -> PolySpec:
    """P(x - n), expanded."""
    d = poly.degree
    # coefficients lowest degree first
    low = list(reversed(poly.coeffs))
    out = [0] * (d + 1)
    for k, c in enumerate(low):
        for i in range(k + 1):
            out[i] += c * comb(k, i) * (-n) ** (k - i)
    return PolySpec(tuple(reversed(out)))


class PolyFamily(str, enum.Enum):
    Q1 = "Q1"
    C1 = "C1"
    C2 = "C2"


def construct_family(kind: PolyFamily | str, *, p1: int, p2: int | None = None, m: int = 0) -> PolySpec:
    """Q1: x^2 + (p1-3)x + 2;  C1: x^3 + m x^2 + (p1-3-m)x + 2;
    C2: the cubic with constant 3 taking p1 at 1 and p2 at 2."""
    kind = PolyFamily(kind)
    if not isprime(p1):
        raise ValidationError(f"p1 = {p1} is not prime")
    if kind is PolyFamily.Q1:
        poly, conds = PolySpec.of(1, p1 - 3, 2), {0: 2, 1: p1}
    elif kind is PolyFamily.C1:
        poly, conds = PolySpec.of(1, m, p1 - 3 - m, 2), {0: 2, 1: p1}
    else:
        if p2 is None or not isprime(p2):
            raise ValidationError("C2 needs a prime p2")
        if p2 % 2 == 0:
            raise ValidationError("C2 needs p2 odd for integer coefficients")
        poly = PolySpec.of(1, (p2 - 3) // 2 - p1, 2 * p1 - (p2 + 5) // 2, 3)
        conds = {0: 3, 1: p1, 2: p2}
    for x, want in conds.items():
        if poly(x) != want:
            raise AssertionError(f"{kind.value}({x}) = {poly(x)}, expected {want}")
    return poly


# Named polynomials, highest degree first.
NAMED: dict[str, tuple[int, ...]] = {
    "E_41": (1, 1, 41),
    "E_17": (1, 1, 17),
    "E_11": (1, 1, 11),
    "f_29": (2, 0, 29),
    "Q_2": (2, -2, 7),
    "Q_3": (1, 27, 13),
    "Q_3(x-1)": (1, 25, -13),
    "Q_4": (1, -3, 13),
    "Q_5": (2, -4, 13),
    "Q_6": (2, 26, 13),
    "Q_7": (2, -2, 19),
    "Q_8": (3, -3, 23),
    "Q_9": (1, 3, 19),
    "Q_10": (1, -1, 11),
    "Q_11": (2, 22, -11),
    "Q_12": (2, -4, 31),
    "Q_13": (1, -3, 43),
    "C_3": (1, -1, 2, 5),
    "C_4": (2, 4, -4, 5),
    "C_5": (1, -1, 6, 7),
    "C_6": (1, 5, 2, 11),
    "C_7": (1, -4, 5, 11),
    "C_8": (1, -5, 8, 13),
}


def named(name: str) -> PolySpec:
    try:
        return PolySpec(NAMED[name])
    except KeyError:
        raise ValidationError(f"unknown polynomial {name!r}") from None


class Requirement(str, enum.Enum):
    OPTIMAL = "optimal"
    BIOPTIMAL = "bioptimal"
    RUN_AT_LEAST = "run"


@dataclass(frozen=True)
class SearchConstraint:
    p0: int
    degree: int
    leading_range: tuple[int, int]
    middle_range: tuple[int, int]
    require: Requirement = Requirement.OPTIMAL
    min_run: int = 0
    signs: tuple[int, ...] = (1, -1)

    def __post_init__(self):
        if self.degree not in (2, 3):
            raise ValidationError("search degree must be 2 or 3")
        if not isprime(self.p0):
            raise ValidationError("p0 must be prime")
        for lo, hi in (self.leading_range, self.middle_range):
            if lo > hi:
                raise ValidationError("empty coefficient range")
        object.__setattr__(self, "require", Requirement(self.require))

    def leading_values(self) -> list[int]:
        lo, hi = self.leading_range
        return [a for a in range(lo, hi + 1) if a != 0]

    def middle_values(self) -> range:
        lo, hi = self.middle_range
        return range(lo, hi + 1)

    def box_size(self) -> int:
        return len(self.leading_values()) * len(self.middle_values()) ** (self.degree - 1) * len(self.signs)


def max_box() -> int:
    return int(os.environ.get("PRIMEPLET_MAX_BOX", DEFAULT_MAX_BOX))


def iter_box(c: SearchConstraint) -> Iterable[PolySpec]:
    mids = c.middle_values()
    for a in c.leading_values():
        if c.degree == 2:
            for b in mids:
                for s in c.signs:
                    yield PolySpec.of(a, b, s * c.p0)
        else:
            for b in mids:
                for cc in mids:
                    for s in c.signs:
                        yield PolySpec.of(a, b, cc, s * c.p0)


def _accept(c: SearchConstraint, poly: PolySpec) -> PrimeRunReport | None:
    # cheap rejection before building a full report
    need = c.min_run if c.require is Requirement.RUN_AT_LEAST else c.p0
    for j in range(need):
        if not isprime(abs(poly(j))):
            return None
    rep = prime_run(poly)
    if c.require is Requirement.BIOPTIMAL and not rep.bioptimal:
        return None
    return rep


def search_polys(c: SearchConstraint) -> list[tuple[PolySpec, PrimeRunReport]]:
    """Exhaustive search of the coefficient box; deterministic order."""
    size = c.box_size()
    if size > max_box():
        raise CapacityError(f"search box of {size} polynomials exceeds budget {max_box()}")
    found = []
    for poly in iter_box(c):
        rep = _accept(c, poly)
        if rep is not None:
            found.append((poly, rep))
    found.sort(key=lambda pr: (-pr[1].run_length, pr[0].coeffs))
    return found


def pattern(poly: PolySpec, xs: Sequence[int]) -> list[bool]:
    return [isprime(abs(poly(x))) for x in xs]
