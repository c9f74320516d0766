"""Mersenne and Fermat twins and triplets, and the divisibility guards that
rule most of them out.

A record is anchored at a Mersenne prime 2**p - 1 (p prime) or a Fermat
prime 2**(2**n) + 1 and carries companions ``anchor + k`` for even offsets
``k``.  Guards are rows of a table: under a residue condition on the
exponent, a fixed small prime divides ``anchor + k``.  One generic verifier
runs them all.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, InvariantBreach, ValidationError
from .prime_engine import PrimalityVerdict, Status, is_prime, isprime, lucas_lehmer, pepin
from .triplets import _from_table
from .twins import ClassLabel, _build

log = logging.getLogger(__name__)

MAX_MERSENNE_EXPONENT = 1024
MAX_FERMAT_INDEX = 10


class BaseKind(str, enum.Enum):
    MERSENNE = "Mersenne"
    FERMAT = "Fermat"


def anchor_value(kind: BaseKind, e: int) -> int:
    if kind is BaseKind.MERSENNE:
        return (1 << e) - 1
    return (1 << (1 << e)) + 1


def anchor_verdict(kind: BaseKind, e: int) -> PrimalityVerdict:
    return lucas_lehmer(e) if kind is BaseKind.MERSENNE else pepin(e)


def normalize_offsets(offsets: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(int(k) for k in offsets))
    if not out:
        raise ValidationError("at least one offset is required")
    if len(set(out)) != len(out):
        raise ValidationError("offsets must be distinct")
    for k in out:
        if k == 0 or k % 2:
            raise ValidationError(f"offset {k} must be non-zero and even")
    return out


@dataclass(frozen=True)
class SpecialFormPair:
    kind: BaseKind
    exponent: int
    anchor: int
    offsets: tuple[int, ...]
    members: tuple[int, ...]
    verdicts: tuple[PrimalityVerdict, ...]
    class_label: str | None

    @property
    def probable(self) -> bool:
        return any(v.status is Status.PROBABLE_PRIME for v in self.verdicts)

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value,
            "exponent": self.exponent,
            "offsets": list(self.offsets),
            "members": list(self.members),
            "class": self.class_label,
            "probable": self.probable,
        }


def _label(members: Sequence[int]) -> str | None:
    if len(members) == 2:
        return _build(*members).label.value
    if len(members) == 3:
        t = _from_table(*members)
        return ",".join(c.value for c in t.class_pair)
    return None


def _probe(kind: BaseKind, e: int, offsets: tuple[int, ...]) -> SpecialFormPair | None:
    anchor = anchor_value(kind, e)
    if any(anchor + k <= 1 for k in offsets):
        log.debug("skip %s exponent %d: non-positive companion", kind.value, e)
        return None
    av = anchor_verdict(kind, e)
    if not av:
        return None
    values = {anchor: av}
    for k in offsets:
        v = is_prime(anchor + k)
        if not v:
            return None
        values[anchor + k] = v
    members = tuple(sorted(values))
    return SpecialFormPair(
        kind, e, anchor, offsets, members, tuple(values[m] for m in members), _label(members)
    )


def _scan(kind: BaseKind, offsets, exponents: list[int], workers: int) -> list[SpecialFormPair]:
    offsets = normalize_offsets(offsets)
    if workers > 1 and len(exponents) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = pool.map(_probe, [kind] * len(exponents), exponents, [offsets] * len(exponents))
            found = list(found)
    else:
        found = [_probe(kind, e, offsets) for e in exponents]
    return [r for r in found if r is not None]


def mersenne_exponents(p_max: int) -> list[int]:
    if p_max > MAX_MERSENNE_EXPONENT:
        raise CapacityError(f"Mersenne exponent bound {p_max} exceeds {MAX_MERSENNE_EXPONENT}")
    return [p for p in range(2, p_max + 1) if isprime(p)]


def fermat_indices(n_max: int) -> list[int]:
    if n_max > MAX_FERMAT_INDEX:
        raise CapacityError(f"Fermat index bound {n_max} exceeds {MAX_FERMAT_INDEX}")
    return list(range(0, n_max + 1))


def mersenne_scan(offsets: Iterable[int], p_max: int, *, workers: int = 1) -> list[SpecialFormPair]:
    """Exponents p <= p_max with 2**p - 1 and every 2**p - 1 + k prime."""
    return _scan(BaseKind.MERSENNE, offsets, mersenne_exponents(p_max), workers)


def fermat_scan(offsets: Iterable[int], n_max: int, *, workers: int = 1) -> list[SpecialFormPair]:
    """Indices n <= n_max with 2**(2**n) + 1 and every companion prime."""
    return _scan(BaseKind.FERMAT, offsets, fermat_indices(n_max), workers)


# ---------------------------------------------------------------- guards


@dataclass(frozen=True)
class DivisibilityGuard:
    """``divisor`` divides the product of ``anchor + k`` over ``offsets``
    whenever ``condition(exponent)`` holds.  Single-offset rows are the
    plain statement ``divisor | anchor + k``."""

    guard_id: str
    kind: BaseKind
    divisor: int
    offsets: tuple[int, ...]
    condition: Callable[[int], bool] = field(compare=False)
    condition_text: str

    @property
    def target_offset(self) -> int:
        return self.offsets[0]

    def holds_at(self, e: int) -> bool:
        a = anchor_value(self.kind, e)
        prod = 1
        for k in self.offsets:
            prod = prod * ((a + k) % self.divisor) % self.divisor
        return prod == 0


M, F = BaseKind.MERSENNE, BaseKind.FERMAT

# Offsets are relative to the anchor: 2**p - 1 or 2**(2**n) + 1.
GUARDS: tuple[DivisibilityGuard, ...] = (
    DivisibilityGuard("C31", M, 3, (2,), lambda p: p % 2 == 1, "p odd"),
    DivisibilityGuard("L32", M, 7, (6,), lambda p: p % 3 == 1 and p >= 7, "p = 1 mod 3, p >= 7"),
    DivisibilityGuard("L33", M, 5, (4,), lambda p: p % 4 == 1, "p = 1 mod 4"),
    DivisibilityGuard("P34i", M, 3, (-4,), lambda p: p >= 3 and p % 2 == 1, "p odd, p >= 3"),
    DivisibilityGuard("P34i-n1", M, 3, (-10,), lambda p: p >= 5 and p % 2 == 1, "p odd, p >= 5"),
    DivisibilityGuard("P34i-n2", M, 3, (-34,), lambda p: p >= 7 and p % 2 == 1, "p odd, p >= 7"),
    DivisibilityGuard("P34i-n3", M, 3, (-130,), lambda p: p >= 9 and p % 2 == 1, "p odd, p >= 9"),
    DivisibilityGuard("P34ii", M, 5, (-2,), lambda p: p % 4 == 3, "p = -1 mod 4"),
    DivisibilityGuard("P34iii", M, 5, (-6,), lambda p: p % 4 == 1, "p = 1 mod 4"),
    DivisibilityGuard("C38", M, 3, (8,), lambda p: p > 2 and p % 2 == 1, "p odd"),
    DivisibilityGuard("C38iii", M, 7, (4,), lambda p: p % 3 == 2, "p = -1 mod 3"),
    DivisibilityGuard("C39", M, 3, (-4,), lambda p: p % 2 == 1, "p odd"),
    DivisibilityGuard("C310", M, 5, (-2, 4), lambda p: p % 2 == 1, "p odd"),
    DivisibilityGuard("C35i", F, 3, (4,), lambda n: n > 0, "n > 0"),
    DivisibilityGuard("C35ii", F, 5, (8,), lambda n: n >= 2, "n >= 2"),
    DivisibilityGuard("L36i", F, 7, (2,), lambda n: n > 1 and pow(2, n, 3) == 2, "2^n = 2 mod 3, n > 1"),
    DivisibilityGuard("L36ii", F, 7, (4,), lambda n: pow(2, n, 3) == 1, "2^n = 1 mod 3"),
    DivisibilityGuard("P37a", F, 5, (-2,), lambda n: n > 1, "n > 1"),
    DivisibilityGuard("P37b", F, 3, (-8,), lambda n: n >= 1, "n >= 1"),
    DivisibilityGuard("P37c", F, 3, (-20,), lambda n: n >= 1, "n >= 1"),
    DivisibilityGuard("P37d", F, 5, (-22,), lambda n: n >= 2, "n >= 2"),
)

GUARDS_BY_ID = {g.guard_id: g for g in GUARDS}


@dataclass
class GuardReport:
    guard_id: str
    divisor: int
    offsets: tuple[int, ...]
    checked: list[int]
    skipped: int
    counterexamples: list[int]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_record(self) -> dict:
        return {
            "guard": self.guard_id,
            "divisor": self.divisor,
            "offsets": list(self.offsets),
            "checked": len(self.checked),
            "skipped": self.skipped,
            "counterexamples": self.counterexamples,
            "ok": self.ok,
        }


def verify_guard(guard: DivisibilityGuard | str, exponent_range: Iterable[int]) -> GuardReport:
    if isinstance(guard, str):
        guard = GUARDS_BY_ID[guard]
    checked, bad, skipped = [], [], 0
    for e in exponent_range:
        if e > (MAX_MERSENNE_EXPONENT if guard.kind is M else MAX_FERMAT_INDEX):
            raise CapacityError(f"exponent {e} out of range for {guard.guard_id}")
        if not guard.condition(e):
            skipped += 1
            continue
        checked.append(e)
        if not guard.holds_at(e):
            bad.append(e)
    return GuardReport(guard.guard_id, guard.divisor, guard.offsets, checked, skipped, bad)


def verify_all(max_p: int = 1000, max_n: int = 8) -> list[GuardReport]:
    ps = mersenne_exponents(max_p)
    ns = fermat_indices(max_n)
    return [verify_guard(g, ps if g.kind is M else ns) for g in GUARDS]


def guard_conflicts(record: SpecialFormPair) -> list[str]:
    """Guards that prove some member composite; empty for a genuine record."""
    offs = set(record.offsets) | {0}
    bad = []
    for g in GUARDS:
        if g.kind is not record.kind or not set(g.offsets) <= offs:
            continue
        if not g.condition(record.exponent):
            continue
        hit = [record.anchor + k for k in g.offsets if (record.anchor + k) % g.divisor == 0]
        if hit and all(m != g.divisor for m in hit):
            bad.append(g.guard_id)
    return bad


def odd_power_identity_holds(a: int, p: int) -> bool:
    """(a + 1) | a**p + 1 for odd p."""
    return (a**p + 1) % (a + 1) == 0


def exclusion_comparison(n_max: int) -> dict[str, list[int]]:
    """Fermat indices excluded by the two stated forms of the +2 condition.

    One form excludes n > 1 with 2**(n-1) = 1 (mod 3), the other n > 1 with
    2**n = 2 (mod 3).
    """
    return {
        "pow2_n_minus_1_is_1": [n for n in range(2, n_max + 1) if pow(2, n - 1, 3) == 1],
        "pow2_n_is_2": [n for n in range(2, n_max + 1) if pow(2, n, 3) == 2],
    }


# ------------------------------------------------------- uniqueness audits


@dataclass(frozen=True)
class UniquenessClaim:
    claim_id: str
    kind: BaseKind
    offsets: tuple[int, ...]
    expected: frozenset[int]
    exponent_filter: Callable[[int], bool] = field(compare=False, default=lambda e: True)
    note: str = ""


UNIQUENESS_CLAIMS: dict[str, UniquenessClaim] = {
    c.claim_id: c
    for c in (
        UniquenessClaim("Cor3.1", M, (2,), frozenset(), lambda p: p % 2 == 1, "odd p only"),
        UniquenessClaim("Prop3.4i", M, (-4,), frozenset({3})),
        UniquenessClaim("Prop3.4ii", M, (-2,), frozenset({3}), lambda p: p % 4 == 3, "p = -1 mod 4"),
        UniquenessClaim("Prop3.4iii", M, (-6,), frozenset(), lambda p: p % 4 == 1, "p = 1 mod 4"),
        UniquenessClaim("Cor3.5i", F, (4,), frozenset({0})),
        UniquenessClaim("Cor3.5ii", F, (8,), frozenset({0, 1})),
        UniquenessClaim("Cor3.8i", M, (4, 8), frozenset({2})),
        UniquenessClaim("Cor3.8ii", M, (6, 8), frozenset()),
        UniquenessClaim(
            "Cor3.8iii", M, (4, 6), frozenset({3}),
            note="the restated version with witness p = 2 does not hold: 9 is composite",
        ),
        UniquenessClaim("Cor3.9", M, (-6, -4), frozenset()),
        UniquenessClaim("Cor3.10", M, (-2, 4), frozenset({3})),
        UniquenessClaim("Cor3.11i", F, (2, 4), frozenset({0})),
        UniquenessClaim("Cor3.11ii", F, (4, 8), frozenset({0})),
    )
}


@dataclass
class AuditReport:
    claim_id: str
    bound: int
    witnesses: list[int]
    expected: list[int]
    records: list[SpecialFormPair]

    @property
    def extra(self) -> list[int]:
        return sorted(set(self.witnesses) - set(self.expected))

    @property
    def missing(self) -> list[int]:
        return sorted(set(self.expected) - set(self.witnesses))

    @property
    def ok(self) -> bool:
        # expected witnesses must be certified, not merely probable
        certain = all(not r.probable for r in self.records if r.exponent in self.expected)
        return not self.extra and not self.missing and certain

    def to_record(self) -> dict:
        return {
            "claim": self.claim_id,
            "bound": self.bound,
            "witnesses": self.witnesses,
            "expected": self.expected,
            "members": [list(r.members) for r in self.records],
            "ok": self.ok,
        }


def uniqueness_audit(claim_id: str, search_bound: int) -> AuditReport:
    try:
        claim = UNIQUENESS_CLAIMS[claim_id]
    except KeyError:
        raise ValidationError(f"unknown uniqueness claim {claim_id!r}") from None
    if claim.kind is M:
        exps = [p for p in mersenne_exponents(search_bound) if claim.exponent_filter(p)]
    else:
        exps = [n for n in fermat_indices(search_bound) if claim.exponent_filter(n)]
    records = _scan(claim.kind, claim.offsets, exps, 1)
    return AuditReport(
        claim_id, search_bound, [r.exponent for r in records], sorted(claim.expected), records
    )


# ------------------------------------------------------ example families


@dataclass(frozen=True)
class ExampleFamily:
    """A printed family of Mersenne/Fermat pairs or triplets.

    ``listed`` are the exponents printed as witnesses (not claimed to be
    exhaustive); ``stated_class`` is the printed class, which may disagree
    with the class the classifier derives.  ``printed_offsets`` records the
    literal form when it was corrected to match the printed members.
    """

    example_id: str
    kind: BaseKind
    offsets: tuple[int, ...]
    listed: tuple[int, ...]
    bound: int
    stated_class: str | None = None
    printed_offsets: tuple[int, ...] | None = None
    printed_members: tuple[tuple[int, ...], ...] = ()


EXAMPLE_FAMILIES: tuple[ExampleFamily, ...] = (
    ExampleFamily("Ex4a", M, (6,), (3, 5), 127, "I"),
    ExampleFamily("Ex4b", M, (10,), (2, 3, 5, 7), 127, "I"),
    ExampleFamily("Ex4c", M, (4,), (2, 3, 7), 31, "II"),
    ExampleFamily("Ex4d", M, (12,), (3, 5, 7), 127, "III"),
    ExampleFamily("Ex5a", M, (-14,), (5, 7), 31, "I"),
    ExampleFamily("Ex5b", M, (-18,), (5, 7), 127, "I"),
    ExampleFamily("Ex5c", M, (-12,), (5, 13), 127, "III"),
    ExampleFamily("Ex5d", M, (-24,), (5, 7, 13), 127, "III"),
    ExampleFamily("Ex6a", F, (2,), (0, 1, 2, 4), 6, "I"),
    ExampleFamily("Ex6b", F, (6,), (1, 2, 3), 4, "I"),
    ExampleFamily("Ex6c", F, (12,), (1, 2, 3), 6, "II"),
    ExampleFamily("Ex7a", F, (-6,), (2, 3), 4, "I"),
    ExampleFamily("Ex7b", F, (-4,), (2,), 6, "II"),
    ExampleFamily("Ex7c", F, (-12,), (2,), 6, "III"),
    ExampleFamily("Ex8a", M, (4, 10), (2, 3), 31, None, None, ((3, 7, 13), (7, 11, 13))),
    ExampleFamily("Ex8b", M, (6, 10), (3, 5), 127, None, None, ((7, 13, 17), (31, 37, 41))),
    ExampleFamily("Ex8c", M, (6, 12), (3, 5), 127, None, None, ((7, 13, 19), (31, 37, 43))),
    ExampleFamily("Ex8d", M, (4, 12), (3, 7), 127, None, None, ((7, 11, 19), (127, 131, 139))),
    ExampleFamily("Ex9a", M, (-4, -2), (3,), 127, None, None, ((3, 5, 7),)),
    ExampleFamily("Ex9b", M, (-8, -2), (5,), 127, None, (-6, -2), ((23, 29, 31),)),
    ExampleFamily("Ex9c", M, (-12, -2), (5,), 127, None, None, ((19, 29, 31),)),
    ExampleFamily("Ex9d", M, (-18, -14), (5, 7), 31, None, None, ((13, 17, 31), (109, 113, 127))),
    ExampleFamily("Ex10a", F, (2, 8), (0, 1), 6, None, None, ((3, 5, 11), (5, 7, 13))),
    ExampleFamily("Ex10b", F, (4, 10), (0,), 6, None, None, ((3, 7, 13),)),
    ExampleFamily("Ex11a", F, (-6, -4), (2,), 6, None, None, ((11, 13, 17),)),
    ExampleFamily("Ex11b", F, (-10, -4), (2,), 6, None, None, ((7, 13, 17),)),
    ExampleFamily("Ex11c", F, (-12, -4), (2,), 6, None, None, ((5, 13, 17),)),
    ExampleFamily("Ex11d", F, (-14, -4), (2,), 6, None, None, ((5, 13, 17),)),
)


def scan_family(fam: ExampleFamily) -> list[SpecialFormPair]:
    if fam.kind is M:
        return mersenne_scan(fam.offsets, fam.bound)
    return fermat_scan(fam.offsets, fam.bound)


def check_consistency(records: Iterable[SpecialFormPair]) -> None:
    for r in records:
        bad = guard_conflicts(r)
        if bad:
            raise InvariantBreach(f"record at exponent {r.exponent} contradicts {bad}")
