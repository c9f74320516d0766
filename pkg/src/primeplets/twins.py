"""Generalized twin primes: pairs of odd primes at even distance 2D.

Every pair falls in exactly one class, fixed by the arithmetic of D and
described by the pair's median (the midpoint p_i + D):

    I    D odd             median 2a
    II   D even, 3 !| D    median 3(2a - 1)      (p_i != 3)
    III  6 | D             median 2a + 1

Pairs (3, 3 + 2D) with D even and 3 !| D cannot be written in form II and
are labelled ``Special``.  A pair (3, 3 + 6k) never occurs since 3 divides
its second member.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvariantBreach, NotApplicableError, ValidationError
from .prime_engine import isprime, prime_mask


class ClassLabel(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    SPECIAL = "Special"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TwinPair:
    p_i: int
    p_f: int
    D: int
    label: ClassLabel
    a: int | None
    median: int

    def to_record(self) -> dict:
        return {
            "p_i": self.p_i,
            "p_f": self.p_f,
            "D": self.D,
            "class": self.label.value,
            "a": self.a,
            "median": self.median,
        }


def label_for(D: int, p_i: int) -> ClassLabel:
    """Class of a pair at half-distance ``D`` whose smaller member is ``p_i``."""
    if D % 2:
        return ClassLabel.I
    if D % 3:
        return ClassLabel.SPECIAL if p_i == 3 else ClassLabel.II
    return ClassLabel.III


def _build(p_i: int, p_f: int) -> TwinPair:
    D = (p_f - p_i) // 2
    median = p_i + D
    label = label_for(D, p_i)
    if label is ClassLabel.I:
        a = median // 2
    elif label is ClassLabel.II:
        # one of three odd numbers spaced by D is a multiple of 3
        if median % 3:
            raise ValidationError(f"({p_i}, {p_f}) cannot both be prime")
        a = (median // 3 + 1) // 2
    elif label is ClassLabel.III:
        a = (median - 1) // 2
    else:
        a = None
    return TwinPair(p_i, p_f, D, label, a, median)


def classify_twin(p_i: int, p_f: int) -> TwinPair:
    if p_i == 2 or p_f == 2:
        raise ValidationError("pairs containing 2 are trivial and not classified")
    if not p_i < p_f:
        raise ValidationError("need p_i < p_f")
    if (p_f - p_i) % 2:
        raise ValidationError("distance must be even")
    for p in (p_i, p_f):
        if not isprime(p):
            raise ValidationError(f"{p} is not prime")
    return _build(p_i, p_f)


def enumerate_twins(D: int, limit: int) -> list[TwinPair]:
    """All classified pairs (p, p + 2D) with 3 <= p and p + 2D <= limit."""
    if D < 1:
        raise ValidationError("D must be >= 1")
    if limit < 7:
        raise ValidationError("limit must be >= 7")
    flags = prime_mask(limit)
    gap = 2 * D
    if gap >= limit:
        return []
    lo = flags[3 : limit + 1 - gap]
    hi = flags[3 + gap : limit + 1]
    starts = np.flatnonzero(lo & hi) + 3
    return [_build(int(p), int(p) + gap) for p in starts]


@dataclass(frozen=True)
class ResidueSignature:
    """Mod-6 prediction for a classified pair.

    ``r`` encodes D mod 6 (class I: D = 1 + 2r, class II: D = 2r), ``a0``
    is the witness a reduced to {-1, 0, 1} mod 3 (classes I and III).
    ``exceptional`` marks pairs with the member 3, the only ones allowed to
    break the residue exclusions.
    """

    label: ClassLabel
    r: int | None
    a0: int | None
    predicted_pi_mod6: int
    predicted_pf_mod6: int
    exceptional: bool = False


def _centered(x: int, m: int) -> int:
    x %= m
    return x - m if x > m // 2 else x


def residue_signature(pair: TwinPair) -> ResidueSignature:
    label = pair.label
    if label is ClassLabel.SPECIAL:
        raise NotApplicableError("residue signature undefined for special pairs")
    exceptional = 3 in (pair.p_i, pair.p_f)
    if label is ClassLabel.III:
        a0 = _centered(pair.a, 3)
        res = (2 * a0 + 1) % 6
        if a0 == 1:
            raise InvariantBreach("class III witness a = 1 (mod 3) puts 3 in the pair")
        return ResidueSignature(label, None, a0, res, res, exceptional)
    if label is ClassLabel.II:
        r = 1 if pair.D % 6 == 2 else -1
        # r = +-1  ->  (p_i, p_f) = (+-1, -+1) mod 6
        return ResidueSignature(label, r, None, r % 6, -r % 6, exceptional)
    r = {1: 0, 3: 1, 5: -1}[pair.D % 6]
    a0 = _centered(pair.a, 3)
    # p_f = 2a + D and p_i = 2a - D
    pf = (1 + 2 * r + 2 * a0) % 6
    pi = (2 * a0 - 1 - 2 * r) % 6
    return ResidueSignature(label, r, a0, pi, pf, exceptional)


def residue_exclusions_hold(sig: ResidueSignature) -> bool:
    """Check the parameter restrictions a non-exceptional pair must obey."""
    if sig.exceptional:
        return True
    if sig.label is ClassLabel.III:
        return sig.a0 != 1
    if sig.label is ClassLabel.I:
        if sig.r in (0, -1):
            return sig.a0 == 0
        return sig.a0 != 0
    return sig.predicted_pi_mod6 in (1, 5) and sig.predicted_pf_mod6 in (1, 5)


@dataclass(frozen=True)
class SixmTerm:
    """The number 6(m + offset) + sign."""

    offset: int
    sign: int

    def evaluate(self, m: int) -> int:
        return 6 * (m + self.offset) + self.sign

    def render(self) -> str:
        core = "6m" if self.offset == 0 else f"6(m{self.offset:+d})"
        return f"{core}{'+' if self.sign > 0 else '-'}1"


@dataclass(frozen=True)
class SixmForm:
    m: int
    form_i: SixmTerm
    form_f: SixmTerm

    def evaluate(self) -> tuple[int, int]:
        return self.form_i.evaluate(self.m), self.form_f.evaluate(self.m)

    def render(self) -> str:
        return f"{self.form_i.render()}, {self.form_f.render()} (m={self.m})"


def _split6(p: int) -> tuple[int, int]:
    if p % 6 == 1:
        return (p - 1) // 6, 1
    if p % 6 == 5:
        return (p + 1) // 6, -1
    raise NotApplicableError(f"{p} is not of the form 6m+-1")


def sixm_form(pair: TwinPair) -> SixmForm:
    if 3 in (pair.p_i, pair.p_f):
        raise NotApplicableError("3 has no 6m+-1 representation")
    m, si = _split6(pair.p_i)
    mf, sf = _split6(pair.p_f)
    return SixmForm(m, SixmTerm(0, si), SixmTerm(mf - m, sf))
