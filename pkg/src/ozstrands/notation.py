"""Text and JSON forms of algebra elements.

Strands generators are written in column notation anchored at their left
I-state, e.g. ``C2 [1/9]_1 [0/2]_3 @ {0,1,2,3}``; ``J{0,2}`` is an
idempotent.  B generators are written ``C2 U1^2 {0}->{1}``, ``I{0}``, or as
a quiver word ``R1 L1 @ {0}``.  Sums are joined by `` + `` and ``0`` is zero.
"""

from __future__ import annotations

import json
import re

from .combinatorics import GeneratorLabel, check_istate
from .errors import NotationError, ParameterError
from .osz import OSElement, OSGen, evaluate_path, validate_os
from .strands import Context, Element, Gen, make_context, sort_key, validate_generator

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<col>\[(?P<p>\d+)/(?P<q>\d+)\]_(?P<line>\d+))
  | (?P<letter>(?P<kind>[CURL])(?P<idx>\d+)(\^(?P<exp>\d+))?)
  | (?P<idem>[JI])(?=\{)
  | (?P<set>\{[\d,\s]*\})
  | (?P<arrow>->)
  | (?P<at>@)
  | (?P<plus>\+)
  | (?P<zero>0)(?![\d/])
""", re.VERBOSE)


def _fmt_set(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def _parse_set(text: str, pos: int) -> tuple:
    body = text[1:-1].strip()
    if not body:
        return ()
    try:
        vals = [int(v) for v in body.split(",")]
    except ValueError:
        raise NotationError(f"bad state {text!r}", pos) from None
    return tuple(vals)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise NotationError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append((m, pos))
        pos = m.end()
    return out


def _split_terms(tokens, text):
    terms, cur = [], []
    for tok in tokens:
        if tok[0].lastgroup == "plus":
            if not cur:
                raise NotationError("empty summand", tok[1])
            terms.append(cur)
            cur = []
        else:
            cur.append(tok)
    if not cur:
        raise NotationError("expression ends with '+' or is empty", len(text))
    terms.append(cur)
    return terms


# ---------------------------------------------------------------- strands algebra

def format_gen(g: Gen) -> str:
    parts = [f"C{i}" for i in g.c]
    parts += [f"[{p}/{q}]_{i}" for i, (p, q) in enumerate(g.pq, 1) if p or q]
    if not parts:
        return "J" + _fmt_set(g.x)
    return " ".join(parts) + " @ " + _fmt_set(g.x)


def format_os_gen(g: OSGen) -> str:
    parts = [f"C{i}" for i in g.c]
    parts += [f"U{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(g.r, 1) if e]
    if not parts and g.x == g.y:
        return "I" + _fmt_set(g.x)
    return " ".join(parts + [_fmt_set(g.x) + "->" + _fmt_set(g.y)])


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    fmt = format_os_gen if isinstance(e, OSElement) else format_gen
    return " + ".join(fmt(g) for g in sorted(e.terms, key=sort_key))


def _parse_strands_term(ctx: Context, toks, x_default, text):
    first, pos0 = toks[0]
    if first.lastgroup == "idem":
        if first.group("idem") != "J" or len(toks) != 2 or toks[1][0].lastgroup != "set":
            raise NotationError("expected J{...}", pos0)
        x = _parse_set(toks[1][0].group(), toks[1][1])
        return Gen(check_istate(ctx.n, x, ctx.k), (), ((0, 0),) * ctx.n)
    if first.lastgroup == "zero" and len(toks) == 1:
        return None
    loops, cols = [], [(0, 0)] * ctx.n
    x = x_default
    seen_lines = set()
    i = 0
    while i < len(toks):
        m, pos = toks[i]
        kind = m.lastgroup
        if kind == "letter" and m.group("kind") == "C" and m.group("exp") is None:
            loops.append(int(m.group("idx")))
        elif kind == "col":
            line = int(m.group("line"))
            if not 1 <= line <= ctx.n:
                raise NotationError(f"line {line} outside 1..{ctx.n}", pos)
            if line in seen_lines:
                raise NotationError(f"column {line} given twice", pos)
            seen_lines.add(line)
            cols[line - 1] = (int(m.group("p")), int(m.group("q")))
        elif kind == "at":
            if i + 1 >= len(toks) or toks[i + 1][0].lastgroup != "set" or i + 2 != len(toks):
                raise NotationError("'@' must be followed by a final state", pos)
            x = _parse_set(toks[i + 1][0].group(), toks[i + 1][1])
            break
        else:
            raise NotationError(f"unexpected token {m.group()!r}", pos)
        i += 1
    if x is None:
        raise NotationError("missing left state ('@ {...}')", toks[-1][1] + len(toks[-1][0].group()))
    if len(set(loops)) != len(loops):
        raise NotationError("repeated loop", pos0)
    g = Gen(check_istate(ctx.n, x, ctx.k), tuple(sorted(loops)), tuple(cols))
    validate_generator(ctx, g)
    return g


def _parse_os_term(ctx: Context, toks, x_default, text):
    first, pos0 = toks[0]
    if first.lastgroup == "zero" and len(toks) == 1:
        return set()
    if first.lastgroup == "idem":
        if first.group("idem") != "I" or len(toks) != 2 or toks[1][0].lastgroup != "set":
            raise NotationError("expected I{...}", pos0)
        x = check_istate(ctx.n, _parse_set(toks[1][0].group(), toks[1][1]), ctx.k)
        return {OSGen(x, x, (), (0,) * ctx.n)}
    letters = []
    i = 0
    while i < len(toks) and toks[i][0].lastgroup == "letter":
        m = toks[i][0]
        letters.append((m.group("kind"), int(m.group("idx")), int(m.group("exp") or 1), toks[i][1]))
        i += 1
    rest = toks[i:]
    kinds = [t[0].lastgroup for t in rest]
    if kinds == ["set", "arrow", "set"]:
        x = check_istate(ctx.n, _parse_set(rest[0][0].group(), rest[0][1]), ctx.k)
        y = check_istate(ctx.n, _parse_set(rest[2][0].group(), rest[2][1]), ctx.k)
        r = [0] * ctx.n
        c = []
        for kind, idx, exp, pos in letters:
            if not 1 <= idx <= ctx.n:
                raise NotationError(f"index {idx} outside 1..{ctx.n}", pos)
            if kind == "U":
                r[idx - 1] += exp
            elif kind == "C" and exp == 1 and idx not in c:
                c.append(idx)
            else:
                raise NotationError(f"normal forms only take U and C letters, got {kind}{idx}", pos)
        g = OSGen(x, y, tuple(sorted(c)), tuple(r))
        validate_os(ctx, g)
        return {g}
    if kinds in (["at", "set"], []):
        if kinds:
            x = _parse_set(rest[1][0].group(), rest[1][1])
        elif x_default is not None:
            x = x_default
        else:
            raise NotationError("missing start state ('@ {...}')", len(text))
        word = []
        for kind, idx, exp, _ in letters:
            word += [GeneratorLabel(kind, idx)] * exp
        return set(evaluate_path(ctx, x, word).terms)
    pos = rest[0][1] if rest else len(text)
    raise NotationError("expected '{x}->{y}', '@ {x}' or a bare word", pos)


def parse_element(text: str, ctx: Context, x=None, algebra: str = "A") -> Element:
    """Parse a sum of generators; `x` is the left state for terms without '@'."""
    if algebra not in ("A", "B"):
        raise ParameterError(f"algebra must be 'A' or 'B', not {algebra!r}")
    x_default = tuple(x) if x is not None else None
    tokens = _tokens(text)
    acc = set()
    for term in _split_terms(tokens, text):
        if algebra == "A":
            g = _parse_strands_term(ctx, term, x_default, text)
            if g is not None:
                acc ^= {g}
        else:
            acc ^= _parse_os_term(ctx, term, x_default, text)
    return (Element if algebra == "A" else OSElement)(ctx, acc)


# ---------------------------------------------------------------- JSON

def to_json_obj(e: Element) -> dict:
    ctx = e.ctx
    obj = {"ctx": {"n": ctx.n, "k": ctx.k, "s": list(ctx.S)}}
    terms = sorted(e.terms, key=sort_key)
    if isinstance(e, OSElement):
        obj["algebra"] = "B"
        obj["terms"] = [{"x": list(g.x), "y": list(g.y), "c": list(g.c), "r": list(g.r)} for g in terms]
    else:
        obj["terms"] = [{"x": list(g.x), "c": list(g.c), "pq": [list(col) for col in g.pq]}
                        for g in terms]
    return obj


def from_json_obj(obj: dict) -> Element:
    try:
        c = obj["ctx"]
        ctx = make_context(int(c["n"]), int(c["k"]), c.get("s", ()))
        acc = set()
        if obj.get("algebra", "A") == "B":
            for t in obj["terms"]:
                g = OSGen(tuple(t["x"]), tuple(t["y"]), tuple(t["c"]), tuple(t["r"]))
                validate_os(ctx, g)
                acc ^= {g}
            return OSElement(ctx, acc)
        for t in obj["terms"]:
            g = Gen(tuple(t["x"]), tuple(t["c"]), tuple(tuple(col) for col in t["pq"]))
            validate_generator(ctx, g)
            acc ^= {g}
        return Element(ctx, acc)
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed element JSON: {exc}") from exc


def dumps(e: Element) -> str:
    return json.dumps(to_json_obj(e), sort_keys=True)


def loads(text: str) -> Element:
    return from_json_obj(json.loads(text))


__all__ = [
    "format_gen", "format_os_gen", "format_element", "parse_element",
    "to_json_obj", "from_json_obj", "dumps", "loads",
]
