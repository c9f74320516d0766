"""Generalized prime triplets p_i < p_m < p_f with gaps (2*d1, 2*d2).

A triplet is classified by classifying its two inner pairs independently.
The relations tying the two witnesses together, and the class of the outer
pair (p_i, p_f), are then checked rather than used to build anything.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvariantBreach, ValidationError
from .prime_engine import isprime, prime_mask
from .twins import ClassLabel, TwinPair, _build, classify_twin, residue_signature

I, II, III, SP = ClassLabel.I, ClassLabel.II, ClassLabel.III, ClassLabel.SPECIAL

# class pair -> admissible classes of the outer pair
OUTER_ADMISSIBLE: dict[tuple[ClassLabel, ClassLabel], frozenset[ClassLabel]] = {
    (I, I): frozenset({II, SP, III}),
    (I, II): frozenset({I}),
    (II, I): frozenset({I}),
    (II, II): frozenset({III}),
    (I, III): frozenset({I}),
    (III, I): frozenset({I}),
    (II, III): frozenset({II}),
    (III, II): frozenset({II}),
    (III, III): frozenset({III}),
    # first member 3 with an even, non-multiple-of-3 first gap
    (SP, I): frozenset({I}),
    (SP, II): frozenset({SP}),
    (SP, III): frozenset({SP}),
}

# Witness relation for each class pair: f(a, b, d1, d2) must be True.
WITNESS_RELATIONS = {
    (I, I): lambda a, b, d1, d2: 2 * (b - a) == d1 + d2,
    (I, II): lambda a, b, d1, d2: 2 * a == 6 * b - (d1 + d2 + 3),
    (II, I): lambda a, b, d1, d2: 2 * b == 3 * (2 * a - 1) + d1 + d2,
    (II, II): lambda a, b, d1, d2: 6 * (b - a) == d1 + d2,
    (I, III): lambda a, b, d1, d2: 2 * b + 1 == 2 * a + d1 + d2,
    (III, I): lambda a, b, d1, d2: 2 * b == 2 * a + 1 + d1 + d2,
    (II, III): lambda a, b, d1, d2: 2 * b + 1 == 3 * (2 * a - 1) + d1 + d2,
    (III, II): lambda a, b, d1, d2: 3 * (2 * b - 1) == 2 * a + 1 + d1 + d2,
    (III, III): lambda a, b, d1, d2: 2 * (b - a) == d1 + d2,
}


@dataclass(frozen=True)
class Triplet:
    p_i: int
    p_m: int
    p_f: int
    d1: int
    d2: int
    class_pair: tuple[ClassLabel, ClassLabel]
    outer_class: ClassLabel
    singlet: bool
    a: int | None
    b: int | None

    @property
    def members(self) -> tuple[int, int, int]:
        return self.p_i, self.p_m, self.p_f

    def to_record(self) -> dict:
        return {
            "p_i": self.p_i,
            "p_m": self.p_m,
            "p_f": self.p_f,
            "gaps": [2 * self.d1, 2 * self.d2],
            "class_pair": [c.value for c in self.class_pair],
            "outer_class": self.outer_class.value,
            "singlet": self.singlet,
            "a": self.a,
            "b": self.b,
        }


def singlet_rule_applies(d1: int, d2: int) -> bool:
    """True when one member of every (p, p+2d1, p+2d1+2d2) is divisible by 3.

    Covers equal gaps d1 = d2 with 3 !| d1 as the special case d2 - d1 = 0.
    """
    return (d2 - d1) % 3 == 0 and d1 % 3 != 0


def _compose(first: TwinPair, second: TwinPair, outer: TwinPair) -> Triplet:
    d1, d2 = first.D, second.D
    class_pair = (first.label, second.label)
    relation = WITNESS_RELATIONS.get(class_pair)
    if relation is not None and not relation(first.a, second.a, d1, d2):
        raise InvariantBreach(f"witness relation fails for {class_pair}")
    if second.median - first.median != d1 + d2:
        raise InvariantBreach("inner medians are not d1 + d2 apart")
    return Triplet(
        first.p_i,
        first.p_f,
        second.p_f,
        d1,
        d2,
        class_pair,
        outer.label,
        first.p_i == 3 and singlet_rule_applies(d1, d2),
        first.a,
        second.a,
    )


def classify_triplet(p_i: int, p_m: int, p_f: int) -> Triplet:
    if not p_i < p_m < p_f:
        raise ValidationError("need p_i < p_m < p_f")
    for p in (p_i, p_m, p_f):
        if p == 2 or not isprime(p):
            raise ValidationError(f"{p} is not an odd prime")
    return _compose(
        classify_twin(p_i, p_m), classify_twin(p_m, p_f), classify_twin(p_i, p_f)
    )


def _from_table(p_i: int, p_m: int, p_f: int) -> Triplet:
    return _compose(_build(p_i, p_m), _build(p_m, p_f), _build(p_i, p_f))


def outer_pair_class(t: Triplet) -> ClassLabel:
    label = classify_twin(t.p_i, t.p_f).label
    if label not in OUTER_ADMISSIBLE[t.class_pair]:
        raise InvariantBreach(
            f"outer pair ({t.p_i}, {t.p_f}) is {label}, "
            f"not admissible for {t.class_pair}"
        )
    return label


def enumerate_triplets(d1: int, d2: int, limit: int) -> list[Triplet]:
    """All triplets (p, p + 2d1, p + 2d1 + 2d2) with odd members <= limit."""
    if d1 < 1 or d2 < 1:
        raise ValidationError("gaps must be positive")
    span = 2 * (d1 + d2)
    if limit < 3 + span:
        return []
    flags = prime_mask(limit)
    n = limit + 1 - span - 3
    hits = flags[3 : 3 + n] & flags[3 + 2 * d1 : 3 + 2 * d1 + n] & flags[3 + span : 3 + span + n]
    return [
        _from_table(p, p + 2 * d1, p + span)
        for p in (int(x) + 3 for x in np.flatnonzero(hits))
    ]


class _NotApplicable(enum.Enum):
    NOT_APPLICABLE = "not-applicable"

    def __bool__(self) -> bool:
        return False


NOT_APPLICABLE = _NotApplicable.NOT_APPLICABLE


def singlet_check(d1: int, d2: int) -> Triplet | None | _NotApplicable:
    """The unique candidate (3, 3 + 2d1, 3 + 2d1 + 2d2), when the rule applies."""
    if d1 < 1 or d2 < 1:
        raise ValidationError("gaps must be positive")
    if not singlet_rule_applies(d1, d2):
        return NOT_APPLICABLE
    members = (3, 3 + 2 * d1, 3 + 2 * (d1 + d2))
    if all(isprime(p) for p in members):
        return classify_triplet(*members)
    return None


def residue_relations_hold(t: Triplet) -> bool:
    """Mod-6 relations between the members implied by the class pair."""
    pi, pm, pf = (p % 6 for p in t.members)
    first, second = _build(t.p_i, t.p_m), _build(t.p_m, t.p_f)
    for pair in (first, second):
        if pair.label is SP:
            continue
        sig = residue_signature(pair)
        if (sig.predicted_pi_mod6, sig.predicted_pf_mod6) != (pair.p_i % 6, pair.p_f % 6):
            return False
    cp = t.class_pair
    if cp == (II, II):
        return pf == pi
    if cp == (III, III):
        return pi == pm == pf
    if cp in ((I, III), (II, III)):
        return pf == pm
    if cp in ((III, I), (III, II)):
        return pm == pi
    if cp == (I, II):
        r2 = 1 if t.d2 % 6 == 2 else -1
        return pm == (-3 - 2 * r2) % 6 and pf == (-3 + 2 * r2) % 6
    if cp == (I, I):
        r1 = {1: 0, 3: 1, 5: -1}[t.d1 % 6]
        r2 = {1: 0, 3: 1, 5: -1}[t.d2 % 6]
        a0 = (t.a + 1) % 3 - 1
        return (
            pi == (-2 * r1 - 1 + 2 * a0) % 6
            and pm == (2 * r1 + 1 + 2 * a0) % 6
            and pf == (2 * a0 + 3 + 2 * r1 + 4 * r2) % 6
        )
    return True
