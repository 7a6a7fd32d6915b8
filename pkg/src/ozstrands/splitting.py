"""Tensor splitting of J_x A J_y, maximal-Maslov cycles and piecewise homology.

Homology is computed one (x, y, w) piece at a time: the differential keeps
both idempotents and the refined weight w, so each piece is a small finite
complex graded by Maslov degree.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product as cartesian
from typing import NamedTuple

from .combinatorics import classify_lines, enumerate_istates, is_far, weight_v
from .errors import ConsistencyError, DomainError, ParameterError
from .f2linalg import F2Matrix, check_composable, homology_representatives, rank, reduce_basis
from .osz import OSElement, OSGen, diff_gen_os, enumerate_os_basis, grade_os
from .strands import (
    Context, Element, Gen, diff_gen, generators_from, grade, is_valid, make_context,
    refined2, right_idempotent, sort_key, validate_generator,
)

KINDS = ("generating", "left", "right", "two_faced")


# ---------------------------------------------------------------- interval algebras

def interval_context(kind: str, l: int) -> tuple[Context, tuple]:
    """Context and distinguished state of the interval algebra of length l."""
    if kind == "generating":
        return make_context(l, l - 1), tuple(range(1, l))
    if kind == "left":
        return make_context(l, l), tuple(range(0, l))
    if kind == "right":
        return make_context(l, l), tuple(range(1, l + 1))
    if kind == "two_faced":
        return make_context(l, l + 1), tuple(range(0, l + 1))
    raise ParameterError(f"unknown interval kind {kind!r}")


class Factor(NamedTuple):
    interval: tuple  # (lo, hi), 1-based closed
    kind: str
    local: Gen


class Factorization(NamedTuple):
    n: int
    x: tuple
    y: tuple
    crossed_exponents: tuple  # sorted (line, exponent) pairs
    factors: tuple


def _pieces(n, x, y):
    cl = classify_lines(n, x, y)
    if cl.two_faced:
        return cl, [((1, n), "two_faced")] if n else []
    return cl, cl.intervals()


def restrict(g: Gen, interval, kind: str) -> Gen:
    """Columns of g on an interval, reindexed as a generator of the interval algebra."""
    lo, hi = interval
    l = hi - lo + 1
    n = len(g.pq)
    if not 1 <= lo <= hi <= n:
        raise ParameterError(f"interval {interval} outside [1,{n}]")
    lctx, lx = interval_context(kind, l)
    inside = {a - (lo - 1) for a in g.x if lo - 1 <= a <= hi}
    if not set(range(1, l)) <= inside:
        raise DomainError(f"interval {interval} is not fully used by {g.x}")
    if kind == "two_faced" and set(g.x) != set(range(n + 1)):
        raise DomainError("two-faced restriction needs x = [0,n]")
    local = Gen(lx, tuple(i - (lo - 1) for i in g.c if lo <= i <= hi), g.pq[lo - 1:hi])
    try:
        y = validate_generator(lctx, local)
    except DomainError as exc:
        raise DomainError(f"restriction of {g} to {interval} ({kind}) is invalid: {exc}") from exc
    if y != lx:
        raise DomainError(f"restriction of {g} to {interval} does not return to {lx}")
    return local


def _require_plain(ctx: Context):
    if ctx.S:
        raise ParameterError("the tensor splitting is only available for S = {}")


def split_psi(ctx: Context, g: Gen) -> Factorization:
    _require_plain(ctx)
    n = ctx.n
    y = validate_generator(ctx, g)
    cl, pieces = _pieces(n, g.x, y)
    crossed = []
    for i in sorted(cl.crossed):
        p, q = g.pq[i - 1]
        if (p + q) % 2 == 0:
            raise ConsistencyError(f"crossed line {i} of {g} has even total speed")
        crossed.append((i, (p + q - 1) // 2))
    factors = tuple(Factor(iv, kind, restrict(g, iv, kind)) for iv, kind in pieces)
    return Factorization(n, g.x, y, tuple(crossed), factors)


def unsplit_phi(f: Factorization) -> Gen:
    n = f.n
    cols = [(0, 0)] * n
    c = []
    if is_far(f.x, f.y):
        raise DomainError(f"{f.x} and {f.y} are far")
    cl, pieces = _pieces(n, f.x, f.y)
    if sorted(cl.crossed) != [i for i, _ in f.crossed_exponents]:
        raise ParameterError("crossed exponents do not match the crossed lines")
    if [(iv, kind) for iv, kind in pieces] != [(fa.interval, fa.kind) for fa in f.factors]:
        raise ParameterError("factors do not match the interval decomposition")
    for i, r in f.crossed_exponents:
        cols[i - 1] = (1 + 2 * r, 0) if weight_v(f.x, f.y, i) > 0 else (0, 1 + 2 * r)
    for fa in f.factors:
        lo, hi = fa.interval
        cols[lo - 1:hi] = fa.local.pq
        c += [i + lo - 1 for i in fa.local.c]
    g = Gen(f.x, tuple(sorted(c)), tuple(cols))
    if not is_valid(make_context(n, len(f.x)), g) or right_idempotent(g) != f.y:
        raise ConsistencyError(f"{f} does not assemble to a generator from {f.x} to {f.y}")
    return g


def diff_factorization(f: Factorization) -> frozenset:
    """Differential on the tensor product: crossed lines are cycles, factors differentiate."""
    out = set()
    for idx, fa in enumerate(f.factors):
        for term in diff_gen(fa.local):
            factors = list(f.factors)
            factors[idx] = Factor(fa.interval, fa.kind, term)
            out ^= {f._replace(factors=tuple(factors))}
    return frozenset(out)


def max_maslov_cycle(kind: str, l: int, r) -> tuple[Context, Element]:
    """a^r in the interval algebra: prod_i ([2r_i/0]_i + [0/2r_i]_i), idempotent-framed."""
    r = tuple(r)
    if len(r) != l or any(v < 0 for v in r):
        raise ParameterError(f"need {l} nonnegative exponents, got {r}")
    lctx, lx = interval_context(kind, l)
    options = [[(2 * v, 0), (0, 2 * v)] if v else [(0, 0)] for v in r]
    terms = set()
    for cols in cartesian(*options):
        g = Gen(lx, (), cols)
        if is_valid(lctx, g) and right_idempotent(g) == lx:
            terms ^= {g}
    return lctx, Element(lctx, terms)


# ---------------------------------------------------------------- graded pieces

class GradedPiece(NamedTuple):
    algebra: str
    ctx: Context
    x: tuple
    y: tuple
    w2: tuple
    levels: dict       # maslov -> list of generators
    boundaries: dict   # maslov m -> F2Matrix from level m to level m-1

    def index(self, m):
        return {g: i for i, g in enumerate(self.levels.get(m, []))}

    def vector(self, m, terms) -> int:
        idx = self.index(m)
        v = 0
        for t in terms:
            if t not in idx:
                raise ConsistencyError(f"{t} is not in Maslov level {m} of this piece")
            v ^= 1 << idx[t]
        return v

    def element(self, m, vec: int):
        gens = self.levels.get(m, [])
        terms = {gens[i] for i in range(len(gens)) if vec >> i & 1}
        return (Element if self.algebra == "A" else OSElement)(self.ctx, terms)


def _piece_generators(algebra, ctx, x, y, w2):
    if algebra == "A":
        gens = [g for g in generators_from(ctx, x, tuple(w2)) if right_idempotent(g) == y]
        return [g for g in gens if refined2(g) == tuple(w2)], lambda g: grade(ctx, g).maslov, diff_gen
    if algebra == "B":
        gens = enumerate_os_basis(ctx, x, y, [Fraction(v, 2) for v in w2])
        gens = [g for g in gens if grade_os(ctx, g).refined2 == tuple(w2)]
        return gens, lambda g: grade_os(ctx, g).maslov, diff_gen_os
    raise ParameterError(f"algebra must be 'A' or 'B', not {algebra!r}")


def build_piece(algebra, ctx, x, y, w2, gens=None) -> GradedPiece:
    w2 = tuple(w2)
    found, maslov, d = _piece_generators(algebra, ctx, tuple(x), tuple(y), w2)
    if gens is None:
        gens = found
    levels = {}
    for g in sorted(gens, key=sort_key):
        levels.setdefault(maslov(g), []).append(g)
    piece = GradedPiece(algebra, ctx, tuple(x), tuple(y), w2, levels, {})
    for m in levels:
        target = piece.index(m - 1)
        cols = []
        for g in levels[m]:
            v = 0
            for t in d(g):
                if t not in target:
                    raise ConsistencyError(f"boundary of {g} leaves the piece")
                v ^= 1 << target[t]
            cols.append(v)
        piece.boundaries[m] = F2Matrix.from_columns(cols, len(levels.get(m - 1, [])))
    for m in levels:
        if m - 1 in levels:
            check_composable(piece.boundaries[m - 1], piece.boundaries[m])
    return piece


def graded_piece(algebra: str, ctx: Context, x, y, w) -> GradedPiece:
    """The (x, y, w) slice of A or B; w is a per-line refined weight (half-integers allowed)."""
    w2 = []
    for v in w:
        f = 2 * Fraction(v)
        if f < 0 or f.denominator != 1:
            raise ParameterError(f"weight {v} is not a nonnegative half-integer")
        w2.append(int(f))
    if len(w2) != ctx.n:
        raise ParameterError(f"need {ctx.n} weights, got {len(w2)}")
    return build_piece(algebra, ctx, x, y, w2)


def _d_in(piece, m):
    """Matrix from level m+1 into level m (zero matrix if level m+1 is empty)."""
    if m + 1 in piece.levels:
        return piece.boundaries[m + 1]
    return F2Matrix(len(piece.levels[m]), 0)


def _d_out(piece, m):
    return piece.boundaries[m]


def homology_dims(piece: GradedPiece) -> dict:
    out = {}
    for m in sorted(piece.levels, reverse=True):
        d_out, d_in = _d_out(piece, m), _d_in(piece, m)
        dim = d_out.ncols - rank(d_out) - rank(d_in)
        if dim:
            out[m] = dim
    return out


def homology_basis(piece: GradedPiece) -> dict:
    """Maslov level -> cycles (as elements) whose classes form a basis of homology."""
    out = {}
    for m in sorted(piece.levels, reverse=True):
        reps = homology_representatives(_d_out(piece, m), _d_in(piece, m))
        if reps:
            out[m] = [piece.element(m, v) for v in reps]
    return out


# ---------------------------------------------------------------- closed-form counts

def predicted_dims(ctx: Context, x, y, w) -> dict:
    """Homology dimensions of the (x, y, w) piece predicted from the basis of H(B).

    Basis elements are p * prod_a (C_{i_a} p_a / U_{i_a})^{eps_a}, with p a
    monomial in the U_i for i outside S that is not divisible by any p_a.
    """
    n = ctx.n
    x, y = tuple(x), tuple(y)
    if is_far(x, y):
        return {}
    w2 = [int(2 * Fraction(v)) for v in w]
    if len(w2) != n:
        raise ParameterError(f"need {n} weights, got {len(w2)}")
    S = set(ctx.S)
    cl = classify_lines(n, x, y)
    gens = list(cl.generating)
    meets = [bool(S & set(range(lo, hi + 1))) for lo, hi in gens]
    out = {}
    for eps in cartesian(*[(0, 1) if m else (0,) for m in meets]):
        e2 = []
        ok = True
        for i in range(1, n + 1):
            v = abs(weight_v(x, y, i))
            bump = sum(2 for (lo, hi), ea in zip(gens, eps) if ea and lo <= i <= hi)
            rest = w2[i - 1] - v - bump
            if rest < 0 or rest % 2 or (i in S and rest):
                ok = False
                break
            e2.append(rest // 2)
        if not ok:
            continue
        if any(min(e2[lo - 1:hi]) > 0 for lo, hi in gens):
            continue
        m = sum(eps) - sum(w2[i - 1] for i in S)
        out[m] = out.get(m, 0) + 1
    return out


# ---------------------------------------------------------------- quasi-isomorphism

class QIReport(NamedTuple):
    pieces: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def weight_vectors(ctx: Context, x, y, cap2) -> list:
    """Refined weights (doubled) of all A-generators from x to y within the caps."""
    seen = {refined2(g) for g in generators_from(ctx, x, cap2) if right_idempotent(g) == y}
    return sorted(seen)


def check_pair(args):
    """Quasi-isomorphism check for every weight of one idempotent pair."""
    from .phi import phi_closed_form
    ctx, x, y, cap2 = args
    failures, pieces = [], 0
    if is_far(x, y):
        return 1, []
    for w2 in weight_vectors(ctx, x, y, cap2):
        pieces += 1
        pa = build_piece("A", ctx, x, y, w2)
        pb = build_piece("B", ctx, x, y, w2)
        ha, hb = homology_dims(pa), homology_dims(pb)
        where = f"x={list(x)} y={list(y)} w2={list(w2)}"
        if ha != hb:
            failures.append(f"{where}: dim H(A)={ha} but dim H(B)={hb}")
            continue
        predicted = predicted_dims(ctx, x, y, [Fraction(v, 2) for v in w2])
        if ha != predicted:
            failures.append(f"{where}: dim H={ha} but the closed form predicts {predicted}")
        for m, reps in homology_basis(pb).items():
            images = []
            for z in reps:
                img = Element(ctx, set())
                for g in z.terms:
                    img = img + phi_closed_form(ctx, g)
                images.append(pa.vector(m, img.terms))
            d_out = pa.boundaries[m]
            if any(d_out.apply(v) for v in images):
                failures.append(f"{where}: image of a cycle at Maslov {m} is not a cycle")
                continue
            bounds = _d_in(pa, m).columns()
            if len(reduce_basis(bounds + images)) != len(reduce_basis(bounds)) + len(images):
                failures.append(f"{where}: Phi_* is not injective at Maslov {m}")
    return pieces, failures


def quasi_iso_check(n: int, k: int, S, cap, jobs: int = 1) -> QIReport:
    from .strands import doubled_caps
    ctx = make_context(n, k, S)
    cap2 = doubled_caps(n, cap)
    states = enumerate_istates(n, k)
    tasks = [(ctx, x, y, cap2) for x in states for y in states]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_pair, tasks))
    else:
        results = [check_pair(t) for t in tasks]
    return QIReport(sum(p for p, _ in results), [f for _, fs in results for f in fs])


__all__ = [
    "KINDS", "interval_context", "Factor", "Factorization", "restrict", "split_psi",
    "unsplit_phi", "diff_factorization", "max_maslov_cycle", "GradedPiece",
    "build_piece", "graded_piece", "homology_dims", "homology_basis",
    "predicted_dims", "QIReport", "weight_vectors", "check_pair", "quasi_iso_check",
]
