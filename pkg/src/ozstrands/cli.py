"""Command-line interface: `ozstrands <command> [options]`.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .combinatorics import check_istate, enumerate_istates, is_far
from .errors import DomainError
from .notation import format_element, parse_element, to_json_obj
from .osz import OSElement, enumerate_os_basis, grade_os
from .phi import phi_elem
from .render import render_ascii
from .splitting import build_piece, homology_dims, predicted_dims, weight_vectors
from .strands import Element, Gen, doubled_caps, enumerate_basis, grade, make_context
from .verify import SUITES, run_suites

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class _Usage(Exception):
    pass


# ---------------------------------------------------------------- argument helpers

def _int_list(text: str) -> tuple:
    text = text.strip().strip("{}")
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def _cap(text: str):
    parts = [t.strip() for t in text.split(",") if t.strip()]
    try:
        vals = [Fraction(t) for t in parts]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad cap {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty cap")
    return vals[0] if len(vals) == 1 else vals


def _half(v2: int) -> str:
    return str(Fraction(v2, 2))


def _fmt_state(x) -> str:
    return "{" + ",".join(map(str, x)) + "}"


def _table(header, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def _context(args):
    return make_context(args.n, args.k, args.s)


def _states(args, ctx, which):
    given = getattr(args, which)
    if given is None:
        return enumerate_istates(ctx.n, ctx.k)
    return [check_istate(ctx.n, given, ctx.k)]


def _element(args, ctx, text):
    return parse_element(text, ctx, x=args.x, algebra=args.algebra)


def _grading(ctx, g):
    return grade(ctx, g) if isinstance(g, Gen) else grade_os(ctx, g)


def _emit_element(args, e):
    if args.json:
        return json.dumps(to_json_obj(e), sort_keys=True)
    return format_element(e)


# ---------------------------------------------------------------- commands

def cmd_basis(args) -> str:
    ctx = _context(args)
    doubled_caps(ctx.n, args.cap)
    rows = []
    for x in _states(args, ctx, "x"):
        for y in _states(args, ctx, "y"):
            if args.algebra == "A":
                gens = enumerate_basis(ctx, x, y, args.cap)
            else:
                gens = enumerate_os_basis(ctx, x, y, args.cap)
            cls = OSElement if args.algebra == "B" else Element
            for g in gens:
                rows.append((x, y, format_element(cls(ctx, {g})), _grading(ctx, g)))
    if args.json:
        return json.dumps([{"x": list(x), "y": list(y), "element": t, "maslov": gr.maslov,
                            "weight": [_half(v) for v in gr.refined2]}
                           for x, y, t, gr in rows], sort_keys=True)
    return _table(["x", "y", "element", "maslov", "weight"],
                  [(_fmt_state(x), _fmt_state(y), t, gr.maslov,
                    "(" + ",".join(_half(v) for v in gr.refined2) + ")")
                   for x, y, t, gr in rows])


def cmd_mul(args) -> str:
    ctx = _context(args)
    if len(args.element) != 2:
        raise _Usage("mul needs exactly two elements")
    a, b = (_element(args, ctx, t) for t in args.element)
    return _emit_element(args, a * b)


def cmd_diff(args) -> str:
    ctx = _context(args)
    if len(args.element) != 1:
        raise _Usage("diff needs exactly one element")
    return _emit_element(args, _element(args, ctx, args.element[0]).boundary())


def _single(args, ctx):
    if len(args.element) != 1:
        raise _Usage(f"{args.command} needs exactly one generator")
    e = _element(args, ctx, args.element[0])
    if len(e) != 1:
        raise DomainError(f"{args.command} needs a single generator, got {len(e)} terms")
    return next(iter(e))


def cmd_grade(args) -> str:
    ctx = _context(args)
    g = _single(args, ctx)
    gr = _grading(ctx, g)
    obj = {
        "maslov": gr.maslov,
        "alexander": _half(gr.alexander2),
        "refined": [_half(v) for v in gr.refined2],
        "unrefined": list(gr.unrefined),
    }
    if args.json:
        return json.dumps(obj, sort_keys=True)
    return _table(["maslov", "alexander", "refined", "unrefined"],
                  [(obj["maslov"], obj["alexander"], "(" + ",".join(obj["refined"]) + ")",
                    "(" + ",".join(map(str, obj["unrefined"])) + ")")])


def cmd_homology(args) -> str:
    ctx = _context(args)
    cap2 = doubled_caps(ctx.n, args.cap)
    rows = []
    for x in _states(args, ctx, "x"):
        for y in _states(args, ctx, "y"):
            if is_far(x, y):
                continue
            for w2 in weight_vectors(ctx, x, y, cap2):
                piece = build_piece(args.algebra, ctx, x, y, w2)
                dims = homology_dims(piece)
                w = [Fraction(v, 2) for v in w2]
                pred = predicted_dims(ctx, x, y, w)
                rows.append((x, y, w2, dims, pred))
    if args.json:
        return json.dumps({str((list(x), list(y), [_half(v) for v in w2])):
                           {"dims": {str(m): d for m, d in sorted(dims.items())},
                            "predicted": {str(m): d for m, d in sorted(pred.items())}}
                           for x, y, w2, dims, pred in rows}, sort_keys=True)

    def fmt(d):
        return ",".join(f"{m}:{v}" for m, v in sorted(d.items())) or "0"

    return _table(["x", "y", "w", "H (maslov:dim)", "predicted", "match"],
                  [(_fmt_state(x), _fmt_state(y), "(" + ",".join(_half(v) for v in w2) + ")",
                    fmt(dims), fmt(pred), "yes" if dims == pred else "NO")
                   for x, y, w2, dims, pred in rows])


def cmd_phi(args) -> str:
    ctx = _context(args)
    if len(args.element) != 1:
        raise _Usage("phi needs exactly one element")
    e = parse_element(args.element[0], ctx, x=args.x, algebra="B")
    return _emit_element(args, phi_elem(e))


def cmd_render(args) -> str:
    ctx = _context(args)
    if args.algebra != "A":
        raise _Usage("render draws strands generators; use --algebra A")
    return render_ascii(ctx, _single(args, ctx))


COMMANDS = {
    "basis": cmd_basis,
    "mul": cmd_mul,
    "diff": cmd_diff,
    "grade": cmd_grade,
    "homology": cmd_homology,
    "phi": cmd_phi,
    "render": cmd_render,
}


def cmd_verify(args, out) -> int:
    names = "all" if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    if names != "all":
        unknown = [s for s in names if s not in SUITES]
        if unknown:
            raise _Usage(f"unknown suite(s): {', '.join(unknown)}")
    params = {"n": args.n, "seed": args.seed, "jobs": args.jobs}
    if args.samples is not None:
        params["samples"] = args.samples
    if args.cap is not None:
        params["cap"] = args.cap
    results = []
    for name in (list(SUITES) if names == "all" else names):
        r = run_suites([name], **params)[0]
        results.append(r)
        if args.json:
            continue
        print(r.line(), file=out, flush=True)
        for f in r.failures:
            print(f"  {f}", file=out)
    if args.json:
        print(json.dumps([{"suite": r.name, "checked": r.checked, "failures": list(r.failures)}
                          for r in results], sort_keys=True), file=out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", choices=("A", "B"), default="A")
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--s", type=_int_list, default=(), help="comma list; empty for S = {}")
    common.add_argument("--x", type=_int_list, default=None, help="left I-state, comma list")
    common.add_argument("--y", type=_int_list, default=None, help="right I-state, comma list")
    common.add_argument("--cap", type=_cap, default=None,
                        help="per-line refined-weight cap: one value or a comma list, '3/2' allowed")
    common.add_argument("--json", action="store_true")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="ozstrands", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "basis": "list basis generators with Maslov and refined weights",
        "mul": "multiply two elements",
        "diff": "differentiate an element",
        "grade": "gradings of one generator",
        "homology": "homology of every graded piece within the cap",
        "phi": "image of a B element in the strands algebra",
        "render": "ASCII picture of a strands generator",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        if name not in ("basis", "homology"):
            p.add_argument("element", nargs="*", help="element text, e.g. '[1/0]_1 @ {0}'")
    v = sub.add_parser("verify", parents=[common], help="run the property suites")
    v.add_argument("--suite", default="all", help="'all' or a comma list of: " + ", ".join(SUITES))
    v.add_argument("--samples", type=int, default=None, help="random triples for n >= 3")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.cap is None:
            args.cap = 2
        print(COMMANDS[args.command](args), file=out)
        return EXIT_OK
    except _Usage as exc:
        print(f"ozstrands: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"ozstrands: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
