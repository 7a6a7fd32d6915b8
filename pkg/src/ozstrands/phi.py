"""The dg homomorphism Phi: B(n, k, S) -> A(n, k, S)."""

from __future__ import annotations

from itertools import product as cartesian
from typing import NamedTuple

from .combinatorics import GeneratorLabel, enumerate_istates, gamma_path, move_target, weight_v
from .errors import DomainError, ParameterError
from .osz import OSElement, OSGen, evaluate_path
from .strands import Context, Element, Gen, idempotent, is_valid, right_idempotent


def _column_gen(ctx: Context, x, i: int, col, c=()) -> Gen:
    pq = [(0, 0)] * ctx.n
    pq[i - 1] = col
    return Gen(tuple(x), tuple(c), tuple(pq))


def phi_label(ctx: Context, x, label: GeneratorLabel) -> Element:
    """Image of the quiver edge `label` leaving x."""
    x = tuple(x)
    i = label.index
    if not 1 <= i <= ctx.n:
        raise ParameterError(f"label {label} outside lines 1..{ctx.n}")
    if label.kind in ("R", "L"):
        if move_target(x, label) is None:
            raise DomainError(f"{label} is not an edge out of {x}")
        col = (1, 0) if label.kind == "R" else (0, 1)
        return Element(ctx, {_column_gen(ctx, x, i, col)})
    if label.kind == "U":
        terms = set()
        if i - 1 in x:
            terms.add(_column_gen(ctx, x, i, (2, 0)))
        if i in x:
            terms.add(_column_gen(ctx, x, i, (0, 2)))
        return Element(ctx, terms)
    if label.kind == "C":
        if i not in ctx.S:
            raise ParameterError(f"C{i} needs {i} in S={ctx.S}")
        return Element(ctx, {_column_gen(ctx, x, i, (0, 0), (i,))})
    raise ParameterError(f"unknown label kind {label.kind!r}")


def phi_word(ctx: Context, x, labels) -> Element:
    """Product of the images of the letters of a path starting at x."""
    state = tuple(x)
    out = Element(ctx, {idempotent(ctx, state)})
    for label in labels:
        out = out * phi_label(ctx, state, label)
        state = move_target(state, label)
    return out


def phi_basis(ctx: Context, g: OSGen, side: str = "left") -> Element:
    """Phi of a normal form: U and C loops placed at x (or at y), times the canonical path."""
    loops = []
    for i, e in enumerate(g.r, 1):
        loops += [GeneratorLabel("U", i)] * e
    loops += [GeneratorLabel("C", i) for i in g.c]
    path = gamma_path(g.x, g.y)
    if side == "left":
        return phi_word(ctx, g.x, loops + path)
    if side == "right":
        return phi_word(ctx, g.x, path + loops)
    raise ParameterError(f"side must be 'left' or 'right', not {side!r}")


def phi_closed_form(ctx: Context, g: OSGen) -> Element:
    """Phi of a normal form, read off directly as a sum of strands generators."""
    options = []
    for i in range(1, ctx.n + 1):
        v, r = weight_v(g.x, g.y, i), g.r[i - 1]
        if v == 1:
            options.append([(1 + 2 * r, 0)])
        elif v == -1:
            options.append([(0, 1 + 2 * r)])
        elif r:
            options.append([(2 * r, 0), (0, 2 * r)])
        else:
            options.append([(0, 0)])
    terms = set()
    for cols in cartesian(*options):
        cand = Gen(g.x, g.c, cols)
        if is_valid(ctx, cand) and right_idempotent(cand) == g.y:
            terms ^= {cand}
    return Element(ctx, terms)


def phi_elem(e: OSElement) -> Element:
    out = set()
    for g in e.terms:
        out ^= phi_closed_form(e.ctx, g).terms
    return Element(e.ctx, out)


# ---------------------------------------------------------------- relations

class RelationInstance(NamedTuple):
    name: str
    x: tuple
    lhs: tuple
    rhs: tuple | None  # None means the word on the left must vanish


class PhiReport(NamedTuple):
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def _legal(x, word) -> bool:
    state = x
    for label in word:
        state = move_target(state, label)
        if state is None:
            return False
    return True


def relation_instances(ctx: Context):
    """Every instance of the defining relations of B at every state."""
    n = ctx.n
    lab = GeneratorLabel
    R = [lab("R", i) for i in range(1, n + 1)]
    L = [lab("L", i) for i in range(1, n + 1)]
    U = [lab("U", i) for i in range(1, n + 1)]
    C = [lab("C", i) for i in ctx.S]
    moves = R + L
    for x in enumerate_istates(n, ctx.k):
        pairs = []
        for a in moves:
            for u in U:
                pairs.append(("U central", (a, u), (u, a)))
        for u in U:
            for u2 in U:
                if u != u2:
                    pairs.append(("U central", (u, u2), (u2, u)))
        for i in range(1, n + 1):
            pairs.append(("loop", (lab("R", i), lab("L", i)), (lab("U", i),)))
            pairs.append(("loop", (lab("L", i), lab("R", i)), (lab("U", i),)))
        for a in moves:
            for b in moves:
                if abs(a.index - b.index) > 1 and (a.kind, b.kind) != ("L", "R"):
                    pairs.append(("distant commutation", (a, b), (b, a)))
        for i in range(1, n):
            pairs.append(("two-line pass", (lab("R", i), lab("R", i + 1)), None))
            pairs.append(("two-line pass", (lab("L", i + 1), lab("L", i)), None))
        for i in range(1, n + 1):
            if i - 1 not in x and i not in x:
                pairs.append(("U vanishing", (lab("U", i),), None))
        for c in C:
            pairs.append(("C vanishing", (c, c), None))
            for a in moves + U + C:
                if a != c:
                    pairs.append(("C central", (c, a), (a, c)))
        for name, lhs, rhs in pairs:
            if _legal(x, lhs) and (rhs is None or _legal(x, rhs)):
                yield RelationInstance(name, x, lhs, rhs)


def _words(labels):
    return " ".join(map(str, labels))


def relation_check(n: int, k: int, S=(), ctx: Context | None = None) -> PhiReport:
    """Evaluate every relation instance through Phi and in B itself."""
    from .strands import make_context
    ctx = ctx or make_context(n, k, S)
    checked, failures = 0, []
    for rel in relation_instances(ctx):
        checked += 1
        a_lhs = phi_word(ctx, rel.x, rel.lhs)
        b_lhs = evaluate_path(ctx, rel.x, rel.lhs)
        if rel.rhs is None:
            a_rhs, b_rhs = Element(ctx), OSElement(ctx)
        else:
            a_rhs = phi_word(ctx, rel.x, rel.rhs)
            b_rhs = evaluate_path(ctx, rel.x, rel.rhs)
        rhs_text = _words(rel.rhs) if rel.rhs else "0"
        if a_lhs != a_rhs:
            failures.append(f"{rel.name} at {set(rel.x) or '{}'}: Phi({_words(rel.lhs)}) != Phi({rhs_text})")
        if b_lhs != b_rhs:
            failures.append(f"{rel.name} at {set(rel.x) or '{}'}: {_words(rel.lhs)} != {rhs_text} in B")
    return PhiReport(checked, failures)


__all__ = [
    "phi_label", "phi_word", "phi_basis", "phi_closed_form", "phi_elem",
    "RelationInstance", "PhiReport", "relation_instances", "relation_check",
]
