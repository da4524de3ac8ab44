"""
Command-line front end.

JSON goes to stdout with sorted keys and no timestamps, DOT only when
``--dot`` is passed, diagnostics go to stderr.  Exit status is 0 on success,
1 when a verification finds a mismatch and 2 on bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import covering as cv
from . import hall_lie as hl
from . import orbit_atlas as oa
from . import orbit_cat as oc
from .exactfield import is_prime
from .orbit_cat import Variant

DEFAULT_BOUND = 8


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _prime_list(text: str) -> list[int]:
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    for p in primes:
        if p < 3 or not is_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return primes


def _odd_prime(text: str) -> int:
    p = int(text)
    if p < 3 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"q must be an odd prime, got {p}")
    return p


def _scalar(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _field(text: str) -> oa.ScalarField:
    try:
        return oa.ScalarField.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _basis(text: str) -> hl.Basis:
    if text == "z":
        return hl.Z
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'z' or a nonzero integer, got {text!r}")
    if m == 0:
        raise argparse.ArgumentTypeError("<0> is not an indecomposable")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tubehall", description="Hall Lie algebras of 2-periodic tube categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    def variant_flag(p: argparse.ArgumentParser, required: bool = True) -> None:
        kw = {"required": True} if required else {"default": "cluster"}
        p.add_argument("--variant", choices=[v.value for v in Variant], **kw)

    def bound_flag(p: argparse.ArgumentParser) -> None:
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="largest admissible object length")

    p = sub.add_parser("hall", help="Hall number F^L_{YX} and its S1/S2/S3 split")
    variant_flag(p)
    p.add_argument("--q", type=_odd_prime, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    bound_flag(p)

    p = sub.add_parser("bracket", help="brute-force bracket of two basis symbols")
    variant_flag(p, required=False)
    p.add_argument("--q", type=_odd_prime, required=True)
    p.add_argument("--x", type=_basis)
    p.add_argument("--y", type=_basis)
    p.add_argument("--table", action="store_true", help="print every bracket with indices up to --max")
    p.add_argument("--max", type=int, default=None)
    bound_flag(p)

    p = sub.add_parser("verify-constants", help="compare brute force with the closed forms")
    variant_flag(p)
    p.add_argument("--q", type=_odd_prime, required=True)
    p.add_argument("--max", type=int, default=DEFAULT_BOUND)

    p = sub.add_parser("quotient", help="constants of the quotient by the center")
    p.add_argument("--max", type=int, default=DEFAULT_BOUND)
    p.add_argument("--primes", type=_prime_list, default=None,
                   help="lift brute-force tables at these primes instead of using the closed form")

    p = sub.add_parser("heisenberg", help="Chevalley basis check for the root category")
    p.add_argument("--max", type=int, default=DEFAULT_BOUND)
    p.add_argument("--primes", type=_prime_list, default=None)

    p = sub.add_parser("classify", help="orbit-category classification data")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_scalar, default=Fraction(1))
    p.add_argument("--b", type=_scalar, default=Fraction(1))
    p.add_argument("--field", type=_field, default=oa.QQ)

    p = sub.add_parser("ar-quiver", help="AR quiver shape")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int, default=DEFAULT_BOUND)
    p.add_argument("--dot", action="store_true")

    p = sub.add_parser("cover", help="covering-map diagram checks")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, default=50)
    p.add_argument("--dot", action="store_true")
    return parser


def _check_bound(parser: argparse.ArgumentParser, bound: int, *values) -> None:
    if bound < 1:
        parser.error("--bound must be positive")
    for v in values:
        if v != hl.Z and (v == 0 or abs(v) > bound):
            parser.error(f"index {v} is zero or exceeds --bound {bound}")


def _cmd_hall(args, parser) -> int:
    _check_bound(parser, args.bound, args.x, args.l, args.y)
    variant = Variant(args.variant)
    s1, s2, s3 = oc.orbit_partition(variant, args.x, args.l, args.y, args.q)
    total = s1 + s2 + s3
    _emit({
        "variant": variant.value, "q": args.q, "x": args.x, "l": args.l, "y": args.y,
        "count": total, "F": total % (args.q - 1), "S1": s1, "S2": s2, "S3": s3,
        "meta": {"bound": args.bound, "modulus": args.q - 1},
    })
    return 0


def _cmd_bracket(args, parser) -> int:
    variant = Variant(args.variant)
    if args.table:
        top = args.bound if args.max is None else args.max
        _check_bound(parser, args.bound, top)
        out = hl.table_to_json(variant, args.q, top, hl.bracket_table(variant, args.q, top))
        _emit({**out, "meta": {"bound": args.bound, "max": top, "modulus": args.q - 1}})
        return 0
    if args.x is None or args.y is None:
        parser.error("bracket needs --x and --y, or --table")
    _check_bound(parser, args.bound, args.x, args.y)
    val = hl.bracket_basis(variant, args.x, args.y, args.q)
    _emit({
        "variant": variant.value, "q": args.q, "x": str(args.x), "y": str(args.y),
        "bracket": val.to_json(),
        "meta": {"bound": args.bound, "modulus": args.q - 1},
    })
    return 0


def _cmd_verify(args, parser) -> int:
    if args.max < 1:
        parser.error("--max must be positive")
    rep = hl.verify_constants(Variant(args.variant), args.max, args.q)
    _emit({**rep.to_json(), "ok": rep.ok, "meta": {"max": args.max, "modulus": args.q - 1}})
    if not rep.ok:
        print(f"{len(rep.mismatches)} mismatching pairs", file=sys.stderr)
    return 0 if rep.ok else 1


def _fraction_map(d) -> dict:
    return {s: str(c) for s, c in sorted(d.items())}


def _cmd_quotient(args, parser) -> int:
    if args.max < 1:
        parser.error("--max must be positive")
    table = None
    if args.primes:
        table = hl.lift_integral(Variant.CLUSTER, args.primes, 2 * args.max)
    consts = hl.quotient_by_center(args.max, table)
    bad = hl.quotient_mismatches(args.max, table)
    _emit({
        "constants": {f"[{a},{b}]": _fraction_map(v) for (a, b), v in consts.items() if v},
        "mismatches": bad,
        "ok": not bad,
        "meta": {"max": args.max, "source": "lifted" if table else "closed-form",
                 "primes": args.primes or []},
    })
    return 0 if not bad else 1


def _cmd_heisenberg(args, parser) -> int:
    if args.max < 1:
        parser.error("--max must be positive")
    table = hl.lift_integral(Variant.ROOT, args.primes, args.max) if args.primes else None
    rep = hl.heisenberg_check(args.max, table)
    _emit({**rep.to_json(), "ok": rep.ok,
           "meta": {"max": args.max, "source": "lifted" if table else "closed-form", "primes": args.primes or []}})
    return 0 if rep.ok else 1


def _cmd_classify(args, parser) -> int:
    if args.n < 1:
        parser.error("--n must be positive")
    try:
        out = oa.classify(args.w, args.n, args.a, args.b, args.field)
    except ValueError as exc:
        parser.error(str(exc))
    _emit({**out, "meta": {"a": str(args.a), "b": str(args.b)}})
    return 0


def _cmd_ar_quiver(args, parser) -> int:
    if args.n < 1 or args.height < 1:
        parser.error("--n and --height must be positive")
    if args.dot:
        sys.stdout.write(oa.ar_quiver_dot(args.w, args.n, args.height))
        return 0
    tubes, rank = oa.ar_shape(oa.derive_params(args.w, args.n))
    _emit({"w": args.w, "n": args.n, "tubes": tubes, "rank": rank, "meta": {"height": args.height}})
    return 0


def _cmd_cover(args, parser) -> int:
    if args.d == 0 or args.n < 1 or args.window < 0:
        parser.error("need --d != 0, --n >= 1 and --window >= 0")
    ctx = cv.CoverContext(args.d, args.n)
    if args.dot:
        sys.stdout.write(cv.cover_dot(ctx, min(args.window, 3 * args.n)))
        return 0
    out = cv.cover_report(ctx, args.window)
    _emit({**out, "meta": {"window": args.window}})
    return 0 if out["diagrams"]["ok"] else 1


_COMMANDS = {
    "hall": _cmd_hall,
    "bracket": _cmd_bracket,
    "verify-constants": _cmd_verify,
    "quotient": _cmd_quotient,
    "heisenberg": _cmd_heisenberg,
    "classify": _cmd_classify,
    "ar-quiver": _cmd_ar_quiver,
    "cover": _cmd_cover,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
