"""Command-line front end: iteration, closed-form evaluation, phi
polynomials, combinatorial orbits, and the verification suite.

Output is JSON by default; --plain renders human-readable text.  Exit
codes: 0 success, 1 verification failure, 2 usage error, 3 arithmetic
fault.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .bounce import plucker_check
from .closed_form import IterateQuery, rho_closed
from .dynamics import (Labeling, OrderIdeal, all_order_ideals, generic_labeling,
                       iterate_birational, orbit, random_labeling)
from .errors import BirowError, DivisionByZero, PoleEncountered
from .exactnum import RatFn, ratfn_equal, xvar
from .grid_poset import RectPoset
from .nilp import enum_nilp, phi
from .verify import (check_antipodal_product, check_combinatorial_homomesy,
                     check_file_homomesy, check_file_ledger, check_main_formula,
                     check_periodicity, check_reciprocity)

USAGE_ERROR, ARITHMETIC_FAULT = 2, 3


def _emit(payload: dict, plain: bool, plain_text: str):
    if plain:
        print(plain_text)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _reduce_k(k: int, r: int, s: int, notices: list) -> int:
    period = r + s + 2
    if k > r + s + 1:
        notices.append(f"k={k} reduced to {k % period} modulo the period {period}")
        return k % period
    return k


def _cmd_iterate(args) -> int:
    poset = RectPoset(args.r, args.s)
    notices: list = []
    k = _reduce_k(args.k, args.r, args.s, notices)
    if args.labels:
        with open(args.labels) as fh:
            f = Labeling.from_json(json.load(fh))
        if (f.poset.r, f.poset.s) != (args.r, args.s):
            raise BirowError("--labels grid does not match --r/--s")
    elif args.mode == "rational":
        f = random_labeling(poset, random.Random(args.seed))
    else:
        f = generic_labeling(poset)
    g = iterate_birational(f, k)
    payload = g.to_json()
    if notices:
        payload["notices"] = notices
    plain = "\n".join(f"({p}) = {v}" for p, v in sorted(payload["labels"].items()))
    _emit(payload, args.plain, plain)
    return 0


def _simple_x_form(fn: RatFn, poset: RectPoset) -> RatFn:
    """Replace an unreduced x-frame result by a bare variable or reciprocal
    when it equals one (no general reduction is attempted)."""
    for p in poset.members():
        v = RatFn.var(xvar(*p))
        if ratfn_equal(fn, v):
            return v
        if ratfn_equal(fn, v.inv()):
            return v.inv()
    return fn


def _check_range(name: str, value: int, lo: int, hi: int):
    if not lo <= value <= hi:
        raise BirowError(f"--{name} value {value} outside [{lo}, {hi}]")


def _cmd_formula(args) -> int:
    poset = RectPoset(args.r, args.s)
    _check_range("i", args.i, 0, args.r)
    _check_range("j", args.j, 0, args.s)
    notices: list = []
    k = _reduce_k(args.k, args.r, args.s, notices)
    cf = rho_closed(IterateQuery(poset, args.i, args.j, k))
    fn, frame = cf.fn, cf.frame
    if args.frame == "x" and frame == "A":
        from .avar import a_to_x
        fn, frame = a_to_x(fn, poset), "x"
    elif args.frame == "a" and frame == "x":
        raise BirowError("no A-variable form exists for this query (M > k)")
    if frame == "x":
        fn = _simple_x_form(fn, poset)
    payload = {"r": args.r, "s": args.s, "i": args.i, "j": args.j, "k": k,
               "frame": frame, "value": fn.render()}
    if notices:
        payload["notices"] = notices
    _emit(payload, args.plain, fn.render())
    return 0


def _cmd_phi(args) -> int:
    poset = RectPoset(args.r, args.s)
    _check_range("m", args.m, 0, args.r)
    _check_range("n", args.n, 0, args.s)
    _check_range("k", args.k, 0, min(args.r - args.m, args.s - args.n) + 1)
    region = poset.hexagon(args.m, args.n, args.k)
    value = phi(region).value
    payload = {"r": args.r, "s": args.s, "m": args.m, "n": args.n, "k": args.k,
               "phi": value.render()}
    if args.list_families:
        payload["families"] = [fam.to_json() for fam in enum_nilp(region)]
    _emit(payload, args.plain, value.render())
    return 0


def _parse_ideal(text: str, poset: RectPoset) -> OrderIdeal:
    pts = set()
    if text.strip():
        for part in text.split(";"):
            i, j = part.split(",")
            pts.add((int(i), int(j)))
    return OrderIdeal(poset, frozenset(pts))


def _orbit_json(orb) -> dict:
    from fractions import Fraction
    sizes = [o.size() for o in orb]
    return {
        "length": len(orb),
        "ideals": [sorted(map(list, sorted(o.members))) for o in orb],
        "sizes": sizes,
        "size_average": str(Fraction(sum(sizes), len(orb))),
    }


def _cmd_orbit(args) -> int:
    poset = RectPoset(args.r, args.s)
    if args.ideal is not None:
        orbits = [orbit(_parse_ideal(args.ideal, poset))]
    else:
        orbits, seen = [], set()
        for ideal in all_order_ideals(poset):
            if ideal.members in seen:
                continue
            orb = orbit(ideal)
            orbits.append(orb)
            seen.update(o.members for o in orb)
    payload = {"r": args.r, "s": args.s, "orbits": [_orbit_json(o) for o in orbits]}
    plain = "\n".join(
        f"orbit of length {o['length']}, size average {o['size_average']}"
        for o in payload["orbits"])
    _emit(payload, args.plain, plain)
    return 0


def _cmd_verify(args) -> int:
    r, s = args.r, args.s
    if args.check == "periodicity":
        rep = check_periodicity(r, s, mode=args.mode, trials=args.trials, seed=args.seed)
    elif args.check == "reciprocity":
        rep = check_reciprocity(r, s, mode=args.mode, trials=args.trials, seed=args.seed)
    elif args.check == "main-formula":
        rep = check_main_formula(r, s, points=args.trials, seed=args.seed)
    elif args.check == "file-homomesy":
        if args.d is not None:
            reps = [check_file_homomesy(r, s, args.d, mode=args.mode, seed=args.seed)]
        else:
            reps = [check_file_homomesy(r, s, t, mode=args.mode, seed=args.seed)
                    for t in range(-r, s + 1)]
        return _emit_reports(reps, args.plain)
    elif args.check == "antipodal":
        rep = check_antipodal_product(r, s, seed=args.seed)
    elif args.check == "combinatorial":
        rep = check_combinatorial_homomesy(r, s)
    elif args.check == "ledger":
        if args.d is None:
            raise BirowError("--d is required for the ledger check")
        rep = check_file_ledger(r, s, args.d)
    elif args.check == "plucker":
        if args.i is None or args.j is None or args.k is None:
            raise BirowError("--i, --j and --k are required for the plucker check")
        rep = plucker_check(RectPoset(r, s), args.i, args.j, args.k)
    else:  # pragma: no cover - argparse restricts choices
        raise BirowError(f"unknown check {args.check}")
    return _emit_reports([rep], args.plain)


def _emit_reports(reps, plain: bool) -> int:
    reps = sorted(reps, key=lambda rp: rp.name)
    payload = {"reports": [rp.to_json() for rp in reps]}
    text = "\n".join(f"{rp.name}: {'PASS' if rp.passed else 'FAIL'}" for rp in reps)
    _emit(payload, plain, text)
    return 0 if all(rp.passed for rp in reps) else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="birow",
                                  description="Exact birational rowmotion toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    def grid_flags(p):
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--plain", action="store_true")

    p = sub.add_parser("iterate", help="apply rowmotion k times")
    grid_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["symbolic", "rational"], default="symbolic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", help="JSON labeling file (iterate output format)")
    p.set_defaults(fn=_cmd_iterate)

    p = sub.add_parser("formula", help="closed form for one iterate value")
    grid_flags(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--frame", choices=["a", "x"])
    p.set_defaults(fn=_cmd_formula)

    p = sub.add_parser("phi", help="path-family polynomial of a hexagon region")
    grid_flags(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--list-families", action="store_true")
    p.set_defaults(fn=_cmd_phi)

    p = sub.add_parser("orbit", help="combinatorial rowmotion orbits")
    grid_flags(p)
    p.add_argument("--ideal", help='order ideal as "i,j;i,j;..." (empty for the empty ideal)')
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("verify", help="run a verification check")
    p.add_argument("check", choices=["periodicity", "reciprocity", "main-formula",
                                     "file-homomesy", "plucker", "ledger",
                                     "combinatorial", "antipodal"])
    grid_flags(p)
    p.add_argument("--d", type=int, help="file offset / ledger parameter")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=["symbolic", "rational"])
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (PoleEncountered, DivisionByZero, ZeroDivisionError) as e:
        print(f"arithmetic fault: {e}", file=sys.stderr)
        return ARITHMETIC_FAULT
    except BirowError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
