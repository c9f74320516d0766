"""Command-line front end.

Every subcommand builds a list of records, which are written to stdout in
one format; a one-line JSON manifest follows on stderr.  Exit codes:
0 success, 1 claim failure, 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import __version__
from .errors import InvariantBreach, NotApplicableError, PrimepletError, ValidationError
from .report import Format, RunManifest, emit

log = logging.getLogger("primeplets")

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

# options whose values may start with "-"
_SIGNED_VALUE_OPTS = ("--offsets", "--coeffs", "--middle-range", "--leading-range", "--by")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


@dataclass
class Outcome:
    records: list
    probable: bool = False
    failed: bool = False
    figure: Callable[[str], Any] | None = field(default=None, repr=False)


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")


def _join_signed(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SIGNED_VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


# ---------------------------------------------------------------- handlers


def _twins(args) -> Outcome:
    from .twins import enumerate_twins, residue_signature

    if args.distance < 2 or args.distance % 2:
        raise ValidationError("--distance is the full gap 2D and must be even and >= 2")
    pairs = enumerate_twins(args.distance // 2, args.limit or 1000)
    recs = []
    for t in pairs:
        r = t.to_record()
        try:
            sig = residue_signature(t)
            predicted = [sig.predicted_pi_mod6, sig.predicted_pf_mod6]
        except NotApplicableError:
            predicted = None
        r["residues"] = {"actual": [t.p_i % 6, t.p_f % 6], "predicted": predicted}
        recs.append(r)

    def fig(path):
        from .figures import twin_witnesses
        twin_witnesses(pairs, path)

    return Outcome(recs, figure=fig)


def _triplets(args) -> Outcome:
    from .triplets import NOT_APPLICABLE, enumerate_triplets, singlet_check

    gaps = args.gaps
    if len(gaps) != 2 or any(g < 2 or g % 2 for g in gaps):
        raise ValidationError("--gaps takes two even gaps, e.g. 2,4")
    d1, d2 = gaps[0] // 2, gaps[1] // 2
    if args.singlets_only:
        t = singlet_check(d1, d2)
        if t is NOT_APPLICABLE:
            log.info("singlet rule does not apply to gaps %s", gaps)
        return Outcome([t] if t else [])
    return Outcome(enumerate_triplets(d1, d2, args.limit or 1000))


def _mersenne(args) -> Outcome:
    from .special_forms import check_consistency, mersenne_scan

    recs = mersenne_scan(args.offsets, args.max_p, workers=args.threads)
    check_consistency(recs)
    return Outcome(recs, probable=any(r.probable for r in recs))


def _fermat(args) -> Outcome:
    from .special_forms import check_consistency, fermat_scan

    recs = fermat_scan(args.offsets, args.max_n, workers=args.threads)
    check_consistency(recs)
    return Outcome(recs, probable=any(r.probable for r in recs))


def _guards(args) -> Outcome:
    from .special_forms import GUARDS_BY_ID, M, mersenne_exponents, uniqueness_audit, verify_all, verify_guard

    if args.audit:
        rep = uniqueness_audit(args.audit, args.bound)
        return Outcome([rep], probable=any(r.probable for r in rep.records), failed=not rep.ok)
    if args.id:
        if args.id not in GUARDS_BY_ID:
            raise ValidationError(f"unknown guard {args.id!r}")
        g = GUARDS_BY_ID[args.id]
        rng = mersenne_exponents(args.max_p) if g.kind is M else range(args.max_n + 1)
        reports = [verify_guard(g, rng)]
    else:
        reports = verify_all(args.max_p, args.max_n)
    return Outcome(reports, failed=not all(r.ok for r in reports))


def _multiplets(args) -> Outcome:
    from .multiplets import find_almost_regular, find_regular

    limit = args.limit or 1000
    if args.almost:
        found = find_almost_regular(args.min_length, limit, args.almost)
    else:
        found = find_regular(args.min_length, limit)

    def fig(path):
        from .figures import multiplet_lengths
        multiplet_lengths(found, path)

    return Outcome(found, figure=fig)


def _family(args) -> Outcome:
    from .multiplets import FamilyTag, all_family_tags, family_multiplet

    if args.all:
        tags = all_family_tags()
    else:
        if not args.kind:
            raise ValidationError("family needs --kind or --all")
        tags = [FamilyTag(args.kind, args.p, args.q, args.d)]
    return Outcome([family_multiplet(t) for t in tags])


def _poly_spec(args):
    from .polynomials import PolySpec, named

    if args.name:
        return named(args.name)
    if not args.coeffs:
        raise ValidationError("give --coeffs or --name")
    return PolySpec(tuple(args.coeffs))


def _poly(args) -> Outcome:
    from . import polynomials as pl

    if args.poly_cmd == "run":
        poly = _poly_spec(args)
        rep = pl.prime_run(poly)
        rec = rep.to_record()
        lo, hi = pl.symmetric_window(poly)
        rec["window"] = [lo, hi]

        def fig(path):
            from .figures import poly_values
            poly_values(poly, path)

        return Outcome([rec], figure=fig)
    if args.poly_cmd == "shift":
        poly = pl.shift_poly(_poly_spec(args), args.by)
        return Outcome([pl.prime_run(poly)])
    if args.poly_cmd == "family":
        poly = pl.construct_family(args.kind, p1=args.p1, p2=args.p2, m=args.m)
        return Outcome([pl.prime_run(poly)])
    c = pl.SearchConstraint(
        p0=args.p0,
        degree=args.degree,
        leading_range=args.leading_range,
        middle_range=args.middle_range,
        require=args.require,
        min_run=args.min_run,
    )
    return Outcome([rep for _, rep in pl.search_polys(c)])


def _claims(args) -> Outcome:
    from .claims import run_claims

    recs = run_claims(prefix=args.prefix, claim_id=args.id)
    return Outcome(recs, failed=any(r.status == "Fail" for r in recs))


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by
    # the subparser's copy of the same option
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const=Format.JSON.value)
    fmt.add_argument("--csv", dest="format", action="store_const", const=Format.CSV.value)
    fmt.add_argument("--table", dest="format", action="store_const", const=Format.TABLE.value)
    common.add_argument("--threads", type=int, help="worker processes for scans")
    common.add_argument("--limit", type=int, help="upper bound on searched values")
    common.add_argument("--seedless", action="store_true", help="reserved; nothing is randomized")
    common.add_argument("--figure", metavar="PATH", help="also write a figure (where supported)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="primeplets", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("twins", parents=[common], help="classify prime pairs at a fixed gap")
    s.add_argument("--distance", type=int, required=True, help="the gap 2D")
    s.set_defaults(func=_twins)

    s = sub.add_parser("triplets", parents=[common], help="classify triplets with gaps 2d1,2d2")
    s.add_argument("--gaps", type=int_list, required=True)
    s.add_argument("--singlets-only", action="store_true")
    s.set_defaults(func=_triplets)

    s = sub.add_parser("mersenne", parents=[common], help="scan 2^p - 1 with companion offsets")
    s.add_argument("--offsets", type=int_list, required=True)
    s.add_argument("--max-p", type=int, default=131)
    s.set_defaults(func=_mersenne)

    s = sub.add_parser("fermat", parents=[common], help="scan 2^(2^n) + 1 with companion offsets")
    s.add_argument("--offsets", type=int_list, required=True)
    s.add_argument("--max-n", type=int, default=4)
    s.set_defaults(func=_fermat)

    s = sub.add_parser("guards", parents=[common], help="verify divisibility guards or audit uniqueness")
    s.add_argument("--verify-all", action="store_true", help="default when no --id/--audit is given")
    s.add_argument("--id")
    s.add_argument("--audit", metavar="CLAIM")
    s.add_argument("--bound", type=int, default=127, help="exponent bound for --audit")
    s.add_argument("--max-p", type=int, default=1000)
    s.add_argument("--max-n", type=int, default=8)
    s.set_defaults(func=_guards)

    s = sub.add_parser("multiplets", parents=[common], help="regular runs p + n(n+1)")
    s.add_argument("--min-length", type=int, required=True)
    s.add_argument("--almost", type=int, default=0, help="allow up to k composite positions")
    s.set_defaults(func=_multiplets)

    s = sub.add_parser("family", parents=[common], help="evaluate a quadratic family")
    s.add_argument("--kind", choices=["E", "f", "F", "G", "g"])
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=_family)

    s = sub.add_parser("poly", parents=[common], help="prime runs of polynomials")
    psub = s.add_subparsers(dest="poly_cmd", required=True, parser_class=_Parser)
    for name in ("run", "shift"):
        r = psub.add_parser(name, parents=[common])
        r.add_argument("--coeffs", type=int_list, help="highest degree first")
        r.add_argument("--name")
        if name == "shift":
            r.add_argument("--by", type=int, required=True, help="n in P(x - n)")
        r.set_defaults(func=_poly)
    r = psub.add_parser("family", parents=[common])
    r.add_argument("--kind", choices=["Q1", "C1", "C2"], required=True)
    r.add_argument("--p1", type=int, required=True)
    r.add_argument("--p2", type=int)
    r.add_argument("--m", type=int, default=0)
    r.set_defaults(func=_poly)
    r = psub.add_parser("search", parents=[common])
    r.add_argument("--degree", type=int, required=True)
    r.add_argument("--p0", type=int, required=True)
    r.add_argument("--leading-range", type=int_range, default=(1, 1))
    r.add_argument("--middle-range", type=int_range, required=True)
    r.add_argument("--require", choices=["optimal", "bioptimal", "run"], default="optimal")
    r.add_argument("--min-run", type=int, default=0)
    r.set_defaults(func=_poly)

    s = sub.add_parser("claims", parents=[common], help="re-run the shipped claim table")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--prefix", default="")
    g.add_argument("--id")
    s.set_defaults(func=_claims)
    return p


COMMON_DEFAULTS = {
    "format": None, "threads": 1, "limit": None, "seedless": False, "figure": None, "verbose": False,
}


def parse(argv: Sequence[str]) -> argparse.Namespace:
    args = build_parser().parse_args(_join_signed(argv))
    for k, v in COMMON_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    return args


def collect(argv: Sequence[str]) -> Outcome:
    """Run a command line in-process and return its records unserialized."""
    args = parse(argv)
    if args.threads < 1:
        raise ValidationError("--threads must be >= 1")
    return args.func(args)


def _config(args: argparse.Namespace) -> dict:
    skip = {"func", "format", "figure", "verbose", "threads"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    manifest = RunManifest(" ".join(["primeplets", *argv]), _config(args))
    try:
        if args.threads < 1:
            raise ValidationError("--threads must be >= 1")
        out = args.func(args)
        data = emit(out.records, args.format or Format.JSON.value)
        if args.figure and out.figure:
            out.figure(args.figure)
        elif args.figure:
            log.warning("no figure for this subcommand")
    except PrimepletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = exc.exit_code
        if isinstance(exc, InvariantBreach):
            code = EXIT_CLAIM
        return code
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    manifest.finish(len(out.records), out.probable).write()
    return EXIT_CLAIM if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
