"""The algebra B(n, k, S) in normal form.

Every nonzero basis element is U^r * gamma_{x,y} * C^c, where gamma_{x,y} is
the canonical path between two states that are not far and U^r is not
divisible by the product of U_i over any generating interval.  Products only
need weight bookkeeping plus two vanishing tests.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple

from .combinatorics import (
    GeneratorLabel,
    check_istate,
    classify_lines,
    gamma_path,
    is_far,
    move_target,
    weight_v,
)
from .errors import DomainError, ParameterError
from .strands import Context, Element, Grading, doubled_caps


class OSGen(NamedTuple):
    x: tuple
    y: tuple
    c: tuple
    r: tuple

    def sort_key(self):
        return (sum(1 << i for i in self.c), self.x, self.y, self.r)


class OSElement(Element):
    __slots__ = ()

    @staticmethod
    def _product(left, right):
        return mul_terms_os(left, right)

    @staticmethod
    def _boundary(terms):
        return diff_terms_os(terms)


@lru_cache(maxsize=1 << 16)
def _abs_v(n, x, y):
    return tuple(abs(weight_v(x, y, i)) for i in range(1, n + 1))


@lru_cache(maxsize=1 << 16)
def _generating(n, x, y):
    return classify_lines(n, x, y).generating


def divisor_interval(n: int, x, y, r) -> tuple | None:
    """A generating interval G with U^r divisible by p_G, if one exists."""
    for lo, hi in _generating(n, tuple(x), tuple(y)):
        if min(r[lo - 1:hi]) > 0:
            return (lo, hi)
    return None


def validate_os(ctx: Context, g: OSGen) -> None:
    n = ctx.n
    x = check_istate(n, g.x, ctx.k)
    y = check_istate(n, g.y, ctx.k)
    if len(g.r) != n or any((not isinstance(v, int)) or v < 0 for v in g.r):
        raise ParameterError(f"exponent vector {g.r} must have {n} nonnegative entries")
    if list(g.c) != sorted(set(g.c)) or not set(g.c) <= set(ctx.S):
        raise ParameterError(f"loops {g.c} must be an increasing subset of S={ctx.S}")
    if is_far(x, y):
        raise DomainError(f"{x} and {y} are far")
    bad = divisor_interval(n, x, y, g.r)
    if bad is not None:
        raise DomainError(f"U^{g.r} is divisible by p_G for G = [{bad[0]},{bad[1]}]")


def is_valid_os(ctx: Context, g: OSGen) -> bool:
    try:
        validate_os(ctx, g)
    except DomainError:
        return False
    return True


def gamma_generator(ctx: Context, x, y) -> OSGen:
    x = check_istate(ctx.n, x, ctx.k)
    y = check_istate(ctx.n, y, ctx.k)
    if is_far(x, y):
        raise DomainError(f"{x} and {y} are far")
    return OSGen(x, y, (), (0,) * ctx.n)


def os_idempotent(ctx: Context, x) -> OSGen:
    return gamma_generator(ctx, x, x)


@lru_cache(maxsize=1 << 20)
def mul_os(a: OSGen, b: OSGen) -> frozenset:
    if a.y != b.x or set(a.c) & set(b.c) or is_far(a.x, b.y):
        return frozenset()
    n = len(a.r)
    va, vb, vab = _abs_v(n, a.x, a.y), _abs_v(n, b.x, b.y), _abs_v(n, a.x, b.y)
    r = []
    for i in range(n):
        t = va[i] + vb[i] - vab[i]
        assert t >= 0 and t % 2 == 0, "weight transfer must be a nonnegative integer"
        r.append(a.r[i] + b.r[i] + t // 2)
    if divisor_interval(n, a.x, b.y, r) is not None:
        return frozenset()
    return frozenset({OSGen(a.x, b.y, tuple(sorted(set(a.c) | set(b.c))), tuple(r))})


def mul_terms_os(left, right) -> frozenset:
    by_x = {}
    for b in right:
        by_x.setdefault(b.x, []).append(b)
    acc = set()
    for a in left:
        for b in by_x.get(a.y, ()):
            acc ^= mul_os(a, b)
    return frozenset(acc)


def diff_gen_os(g: OSGen) -> frozenset:
    n = len(g.r)
    out = set()
    for i in g.c:
        r = list(g.r)
        r[i - 1] += 1
        if divisor_interval(n, g.x, g.y, r) is None:
            out ^= {OSGen(g.x, g.y, tuple(j for j in g.c if j != i), tuple(r))}
    return frozenset(out)


def diff_terms_os(terms) -> frozenset:
    acc = set()
    for g in terms:
        acc ^= diff_gen_os(g)
    return frozenset(acc)


def diff_os(e: OSElement) -> OSElement:
    return e.boundary()


# ---------------------------------------------------------------- paths

def letter_generator(ctx: Context, state, label: GeneratorLabel) -> OSGen | None:
    """Normal form of the single quiver edge `label` leaving `state` (None if it is zero)."""
    n = ctx.n
    state = check_istate(n, state, ctx.k)
    if not 1 <= label.index <= n:
        raise ParameterError(f"label {label} outside lines 1..{n}")
    zero_r = (0,) * n
    if label.kind in ("R", "L"):
        target = move_target(state, label)
        if target is None:
            raise DomainError(f"{label} is not an edge out of {set(state) or '{}'}")
        return OSGen(state, target, (), zero_r)
    if label.kind == "U":
        r = tuple(int(j == label.index) for j in range(1, n + 1))
        if divisor_interval(n, state, state, r) is not None:
            return None
        return OSGen(state, state, (), r)
    if label.kind == "C":
        if label.index not in ctx.S:
            raise ParameterError(f"C{label.index} needs {label.index} in S={ctx.S}")
        return OSGen(state, state, (label.index,), zero_r)
    raise ParameterError(f"unknown label kind {label.kind!r}")


def apply_letter(e: OSElement, label: GeneratorLabel) -> OSElement:
    acc = set()
    for g in e.terms:
        step = letter_generator(e.ctx, g.y, label)
        if step is not None:
            acc ^= mul_os(g, step)
    return OSElement(e.ctx, acc)


def evaluate_path(ctx: Context, x, labels: Iterable[GeneratorLabel]) -> OSElement:
    """Product of the letters read left to right, starting at the idempotent of x.

    The word must be legal as a path in the quiver even where the running
    product has already vanished.
    """
    state = check_istate(ctx.n, x, ctx.k)
    e = OSElement(ctx, {os_idempotent(ctx, state)})
    for label in labels:
        step = letter_generator(ctx, state, label)  # raises on illegal moves
        e = OSElement(ctx, mul_terms_os(e.terms, {step} if step else ()))
        state = move_target(state, label)
    return e


def gamma_word(g: OSGen) -> list[GeneratorLabel]:
    """A word whose evaluation is g: U and C letters first, then the canonical path."""
    word = []
    for i, e in enumerate(g.r, 1):
        word += [GeneratorLabel("U", i)] * e
    word += [GeneratorLabel("C", i) for i in g.c]
    return word + gamma_path(g.x, g.y)


# ---------------------------------------------------------------- gradings

def grade_os(ctx: Context, g: OSGen) -> Grading:
    S, cs = set(ctx.S), set(g.c)
    un, w2 = [], []
    alex2 = 0
    s_weight2 = 0
    for i in range(1, ctx.n + 1):
        v = weight_v(g.x, g.y, i)
        ci = int(i in cs)
        ri = g.r[i - 1]
        wi2 = 2 * ri + 2 * ci + abs(v)
        un += [ri + ci + max(v, 0), ri + ci + max(-v, 0)]
        w2.append(wi2)
        alex2 += -wi2 if i in S else wi2
        if i in S:
            s_weight2 += wi2
    return Grading(len(g.c) - s_weight2, tuple(un), tuple(w2), alex2)


# ---------------------------------------------------------------- symmetries

def rho_os(ctx: Context, g: OSGen) -> OSGen:
    n = ctx.n
    flip = lambda st: tuple(sorted(n - a for a in st))  # noqa: E731
    return OSGen(flip(g.x), flip(g.y), tuple(sorted(n + 1 - i for i in g.c)), tuple(reversed(g.r)))


def o_os(g: OSGen) -> OSGen:
    return OSGen(g.y, g.x, g.c, g.r)


# ---------------------------------------------------------------- enumeration

def enumerate_os_basis(ctx: Context, x, y, cap) -> list[OSGen]:
    n = ctx.n
    x = check_istate(n, x, ctx.k)
    y = check_istate(n, y, ctx.k)
    if is_far(x, y):
        return []
    cap2 = doubled_caps(n, cap)
    av = _abs_v(n, x, y)
    lines = []
    for i in range(1, n + 1):
        opts = []
        for ci in ((0, 1) if i in ctx.S else (0,)):
            room = cap2[i - 1] - 2 * ci - av[i - 1]
            opts.extend((ci, r) for r in range(0, room // 2 + 1) if room >= 0)
        lines.append(opts)
    out = []

    def extend(i, prefix):
        if i > n:
            c = tuple(j for j, (ci, _) in enumerate(prefix, 1) if ci)
            r = tuple(ri for _, ri in prefix)
            if divisor_interval(n, x, y, r) is None:
                out.append(OSGen(x, y, c, r))
            return
        for opt in lines[i - 1]:
            extend(i + 1, prefix + [opt])

    extend(1, [])
    out.sort(key=OSGen.sort_key)
    return out


def all_os_generators(ctx: Context, cap) -> list[OSGen]:
    from .combinatorics import enumerate_istates
    states = enumerate_istates(ctx.n, ctx.k)
    return [g for x in states for y in states for g in enumerate_os_basis(ctx, x, y, cap)]


__all__ = [
    "all_os_generators", "OSGen", "OSElement", "divisor_interval", "validate_os", "is_valid_os",
    "gamma_generator", "os_idempotent", "mul_os", "mul_terms_os", "diff_gen_os",
    "diff_terms_os", "diff_os", "letter_generator", "apply_letter", "evaluate_path",
    "gamma_word", "grade_os", "rho_os", "o_os", "enumerate_os_basis",
]
