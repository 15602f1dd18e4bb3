"""Command-line front end: ``lsk hfun | classify | surgery | region | cable | catalog``.

Links are given as a catalog name (``whitehead``, ``T(2,4)``, ...) or a path
to a JSON link file.  Exit codes: 0 on success, 1 when a validation or
consistency check fails, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .cable import CableParams, cable_link
from .catalog import catalog_get, catalog_names, descriptor_to_dict, dumps, load_link
from .complex import SurgeryMatrix, surgery_homology
from .errors import (
    InconsistencyError,
    InvalidParameters,
    LatticeMismatch,
    LSpaceKitError,
    NotLSpaceKnot,
    NotLSpaceLink,
    NotRationalHomologySphere,
    UnknownLink,
)
from .invariants import link_invariants
from .oracle import COMPUTATION, LSPACE, NOT_LSPACE, THEOREMS, UNKNOWN, link_context, region_map, theorem_verdict
from .poly import fmt_doubled, to_doubled

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2

NOT_RHS_MESSAGE = "not a rational homology sphere"

# argparse only treats "-3" and "-1.5" as values; window bounds may also be "-3/2"
_NEGATIVE_VALUE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$")


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=1))


def _point(a: int, b: int) -> str:
    return f"({fmt_doubled(a)},{fmt_doubled(b)})"


def _half(text: str) -> int:
    try:
        return to_doubled(text)
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        raise InvalidParameters(f"{text!r} is not a half-integer: {exc}") from None


# subcommands ------------------------------------------------------------------


def cmd_hfun(args) -> int:
    desc = load_link(args.link)
    h = desc.h_function()
    if args.window:
        lo, hi = (_half(x) for x in args.window)
    else:
        lo, hi = (-4, 4) if h.l % 2 == 0 else (-3, 3)
    if lo > hi:
        raise InvalidParameters("window lower bound exceeds upper bound")
    h.check_point(lo, hi)
    cols = range(lo, hi + 1, 2)
    if args.json:
        _emit_json([{"s1": a, "s2": b, "h": h.at(a, b)} for b in cols for a in cols])
        return EXIT_OK
    labels = [fmt_doubled(a) for a in cols]
    width = max(max(len(x) for x in labels), max(len(str(h.at(a, b))) for a in cols for b in cols))
    print(f"H of {desc.name} (s1 rightward, s2 upward)")
    for b in reversed(cols):
        row = " ".join(f"{h.at(a, b):>{width}}" for a in cols)
        print(f"{fmt_doubled(b):>{width}} | {row}")
    print(" " * width + " +" + "-" * ((width + 1) * len(labels)))
    print(" " * (width + 3) + " ".join(f"{x:>{width}}" for x in labels))
    return EXIT_OK


def cmd_classify(args) -> int:
    desc = load_link(args.link)
    inv = link_invariants(desc.h_function())
    if args.json:
        _emit_json({"name": desc.name, **inv.to_dict()})
        return EXIT_OK
    points = ",".join(_point(a, b) for a, b in sorted(inv.maximal_points))
    maximal = "{" + points + "}" if points else "∅"
    print(f"type {inv.link_type}, b=({inv.b1},{inv.b2}), maximal={maximal}")
    print(f"g1={inv.g1} g2={inv.g2} linking={inv.linking}")
    print(f"split_with_unknot={str(inv.split_with_unknot).lower()}")
    return EXIT_OK


def cmd_surgery(args) -> int:
    desc = load_link(args.link)
    h = desc.h_function()
    lam = SurgeryMatrix(args.d1, args.d2, h.l)
    mode = args.mode
    report: dict = {"name": desc.name, "d1": args.d1, "d2": args.d2, "det": lam.det, "mode": mode}
    if lam.det == 0:
        if mode != "theorems":
            raise NotRationalHomologySphere(
                f"{desc.name} ({args.d1}, {args.d2}): det = 0, {NOT_RHS_MESSAGE}"
            )
    verdict = None
    if mode in ("theorems", "both"):
        inv, flags = link_context(h, desc.alexander2)
        verdict = theorem_verdict(inv, flags, args.d1, args.d2)
        report["theorems"] = {**verdict.to_dict(), "explained": verdict.describe_rules()}
    direct = None
    if mode in ("direct", "both"):
        classes = surgery_homology(h, lam)
        direct = all(r.hat_dim == 1 for r in classes)
        report["direct"] = {
            "status": LSPACE if direct else NOT_LSPACE,
            "dims": [r.hat_dim for r in classes],
            "classes": [
                {
                    "index": r.index,
                    "representative": list(r.representative),
                    "case": r.case_id,
                    "i0": r.i0,
                    "j0": r.j0,
                    "hat_dim": r.hat_dim,
                    "free_rank": r.free_rank,
                    "generator": r.generator,
                }
                for r in classes
            ],
        }
    agree = True
    if verdict is not None and direct is not None and verdict.status != UNKNOWN:
        agree = (verdict.status == LSPACE) == direct
    report["agree"] = agree
    if args.json:
        _emit_json(report)
    else:
        print(f"{desc.name} ({args.d1}, {args.d2}): det {lam.det}")
        if lam.det == 0:
            print(NOT_RHS_MESSAGE)
        if verdict is not None:
            print(f"theorems: {verdict.status}")
            for line in verdict.describe_rules():
                print(f"  {line}")
        if direct is not None:
            dims = report["direct"]["dims"]
            print(f"direct: {report['direct']['status']}, dims {dims}")
    if not agree:
        raise InconsistencyError(
            f"theorems say {verdict.status} but direct computation says {'L-space' if direct else 'not an L-space'}",
            report,
        )
    return EXIT_OK


def cmd_region(args) -> int:
    desc = load_link(args.link)
    h = desc.h_function()
    box = tuple(args.box)
    mode = THEOREMS if args.mode == "theorems" else COMPUTATION
    rm = region_map(h, box, mode, delta2=desc.alexander2)
    if args.svg:
        Path(args.svg).write_text(rm.svg(), encoding="utf-8")
    if args.json:
        _emit_json({"name": desc.name, **rm.to_dict()})
    else:
        print(f"{desc.name}: L = L-space, n = not, ? = undecided, 0 = det 0 ({mode})")
        print(rm.ascii())
    return EXIT_OK


def cmd_cable(args) -> int:
    desc = load_link(args.link)
    c = CableParams(args.p, args.q, args.component)
    rep = cable_link(desc, c, q_large=True)
    text = dumps(rep.descriptor)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    summary = {
        "name": rep.descriptor.name,
        "linking": rep.descriptor.linking,
        "b_formula": list(rep.formula_b),
        "b_derived": list(rep.derived_b),
        "maximal_points": [list(p) for p in sorted(rep.invariants.maximal_points)],
        "iff_persists": rep.iff_persists,
    }
    if args.json:
        _emit_json({"report": summary, "link": descriptor_to_dict(rep.descriptor)})
        return EXIT_OK
    out = sys.stdout if args.output else sys.stderr
    print(f"{rep.descriptor.name}: linking {rep.descriptor.linking}", file=out)
    for i in (0, 1):
        print(f"b{i + 1}: formula {rep.formula_b[i]}, derived {rep.derived_b[i]}", file=out)
    points = ", ".join(_point(a, b) for a, b in sorted(rep.invariants.maximal_points)) or "none"
    print(f"maximal points: {points}", file=out)
    if args.output:
        print(f"wrote {args.output}")
    else:
        print(text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.name:
        desc = catalog_get(args.name)
        if args.json:
            print(dumps(desc))
            return EXIT_OK
        inv = link_invariants(desc.h_function())
        print(f"{desc.name}: linking {desc.linking}, type {inv.link_type}, b=({inv.b1},{inv.b2})")
        return EXIT_OK
    if args.json:
        _emit_json(list(catalog_names()))
        return EXIT_OK
    for name in catalog_names():
        print(name)
    return EXIT_OK


# parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lsk", description="L-space surgeries on two-component L-space links")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p._negative_number_matcher = _NEGATIVE_VALUE
        p.set_defaults(func=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("hfun", cmd_hfun, "print the H-function on a square window")
    p.add_argument("link", help="catalog name or link file")
    p.add_argument("--window", nargs=2, metavar=("A", "B"), help="bounds such as -2 2 or -3/2 3/2")

    p = add("classify", cmd_classify, "genera, b-constants, type and maximal points")
    p.add_argument("link")

    p = add("surgery", cmd_surgery, "decide one integral surgery")
    p.add_argument("link")
    p.add_argument("d1", type=int)
    p.add_argument("d2", type=int)
    p.add_argument("--mode", choices=("direct", "theorems", "both"), default="both")
    for m in ("direct", "theorems", "both"):
        p.add_argument(f"--{m}", dest="mode", action="store_const", const=m, help=f"same as --mode {m}")

    p = add("region", cmd_region, "map every surgery in a box")
    p.add_argument("link")
    p.add_argument("--box", nargs=4, type=int, default=[-3, 3, -3, 3], metavar=("D1MIN", "D1MAX", "D2MIN", "D2MAX"))
    p.add_argument(
        "--mode",
        choices=("direct", "theorems", "both"),
        default="both",
        help="theorems: rules only; direct/both: also compute every point and check the rules",
    )
    p.add_argument("--svg", metavar="PATH", help="also write an SVG picture")

    p = add(
        "cable",
        cmd_cable,
        "cable one component; running it asserts q/p is large enough (the result is still validated)",
    )
    p.add_argument("link")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("component", type=int, choices=(1, 2))
    p.add_argument("-o", "--output", metavar="PATH", help="write the cabled link file here instead of stdout")

    p = add("catalog", cmd_catalog, "list built-in links or dump one as a link file")
    p.add_argument("name", nargs="?")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"parse error: line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except NotLSpaceLink as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_CHECK
    except NotLSpaceKnot as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        if exc.witness:
            print(json.dumps(exc.witness, indent=1, default=str), file=sys.stderr)
        return EXIT_CHECK
    except NotRationalHomologySphere as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidParameters, LatticeMismatch, UnknownLink) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownLink) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except LSpaceKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
