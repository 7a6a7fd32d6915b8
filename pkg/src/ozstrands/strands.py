"""The strands algebra A(n, k, S) on its standard basis.

A basis element is keyed by its left I-state x, the set c of closed loops
(a subset of S), and one column (p_i, q_i) per circle: p_i is the speed of
the strand leaving z_i^-, q_i the speed of the strand leaving z_i^+.
The right I-state is always derived, never stored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, NamedTuple

from .combinatorics import check_istate, enumerate_istates, is_far, weight_v
from .errors import DomainError, InvalidGenerator, ParameterError


class Context(NamedTuple):
    n: int
    k: int
    S: tuple = ()


def make_context(n: int, k: int, S: Iterable[int] = ()) -> Context:
    S = tuple(sorted(set(S)))
    if n < 0 or not 0 <= k <= n + 1:
        raise ParameterError(f"need 0 <= k <= n+1, got n={n}, k={k}")
    if any(i < 1 or i > n for i in S):
        raise ParameterError(f"S={S} is not a subset of [1,{n}]")
    return Context(n, k, S)


class Gen(NamedTuple):
    x: tuple
    c: tuple
    pq: tuple  # n pairs (p_i, q_i), line i at position i-1

    def col(self, i: int) -> tuple[int, int]:
        """Column of line i with the conventions q_0 = p_{n+1} = 0."""
        if 1 <= i <= len(self.pq):
            return self.pq[i - 1]
        return (0, 0)

    def sort_key(self):
        return (sum(1 << i for i in self.c), self.x, self.pq)


class Grading(NamedTuple):
    maslov: int
    unrefined: tuple  # (tau_1, beta_1, ..., tau_n, beta_n)
    refined2: tuple   # doubled refined Alexander multi-degree
    alexander2: int   # doubled single Alexander degree


# ---------------------------------------------------------------- validity

def _structural(ctx: Context, g: Gen):
    n = ctx.n
    check_istate(n, g.x, ctx.k)
    if len(g.pq) != n:
        raise ParameterError(f"expected {n} columns, got {len(g.pq)}")
    for col in g.pq:
        if len(col) != 2 or any((not isinstance(v, int)) or v < 0 for v in col):
            raise ParameterError(f"bad column {col}")
    if list(g.c) != sorted(set(g.c)):
        raise ParameterError(f"loop set {g.c} must be strictly increasing")


def validate_generator(ctx: Context, g: Gen) -> tuple:
    """Return the right I-state of g, or raise InvalidGenerator naming the condition."""
    _structural(ctx, g)
    n, xs = ctx.n, set(g.x)
    if not set(g.c) <= set(ctx.S):
        raise InvalidGenerator("i", f"loops {g.c} not contained in S={ctx.S}")
    P = [0] + [p for p, _ in g.pq] + [0]   # P[i] = p_i, P[n+1] = 0
    Q = [0] + [q for _, q in g.pq] + [0]   # Q[0] = 0
    for i in range(1, n):
        if Q[i] * P[i + 1]:
            raise InvalidGenerator("ii", f"q_{i} p_{i + 1} != 0")
    for i in range(0, n + 1):
        if i not in xs and (Q[i] or P[i + 1]):
            raise InvalidGenerator("iii", f"{i} not in x but q_{i} or p_{i + 1} nonzero")
    for i in range(1, n):
        if (P[i] * Q[i + 1]) % 2:
            raise InvalidGenerator("iv", f"p_{i} q_{i + 1} is odd")
    for i in range(1, n + 1):
        if P[i] and Q[i] and (P[i] - Q[i]) % 2:
            raise InvalidGenerator("v", f"p_{i}, q_{i} nonzero of different parity")
    for i in range(1, n + 1):
        if i - 1 in xs and i in xs:
            if P[i] % 2 and Q[i] == 0 and P[i + 1] % 2 == 0:
                raise InvalidGenerator("vi", f"p_{i} odd, q_{i} = 0 but p_{i + 1} even")
            if P[i] == 0 and Q[i] % 2 and Q[i - 1] % 2 == 0:
                raise InvalidGenerator("vi", f"q_{i} odd, p_{i} = 0 but q_{i - 1} even")
    return right_idempotent(g)


def is_valid(ctx: Context, g: Gen) -> bool:
    try:
        validate_generator(ctx, g)
    except InvalidGenerator:
        return False
    return True


@lru_cache(maxsize=None)
def right_idempotent(g: Gen) -> tuple:
    """Right I-state of a valid generator."""
    y = []
    for i in g.x:
        q = g.col(i)[1]
        p_next = g.col(i + 1)[0]
        if q % 2:
            y.append(i - 1)
        elif p_next % 2:
            y.append(i + 1)
        else:
            y.append(i)
    return tuple(sorted(y))


def idempotent(ctx: Context, x) -> Gen:
    x = check_istate(ctx.n, x, ctx.k)
    return Gen(x, (), ((0, 0),) * ctx.n)


# ---------------------------------------------------------------- elements

class Element:
    """A formal F2 sum of basis elements of one algebra."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=()):
        self.ctx = ctx
        self.terms = frozenset(terms)

    def _check(self, other):
        if type(other) is not type(self):
            raise ParameterError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ParameterError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return True

    def __add__(self, other):
        self._check(other)
        return type(self)(self.ctx, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return type(self)(self.ctx, self._product(self.terms, other.terms))

    @staticmethod
    def _product(left, right):
        return mul_terms(left, right)

    @staticmethod
    def _boundary(terms):
        return diff_terms(terms)

    def boundary(self):
        return type(self)(self.ctx, self._boundary(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms, key=sort_key))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.terms))

    def __repr__(self):
        from .notation import format_element
        return f"{type(self).__name__}({format_element(self)!r})"


def sort_key(g):
    return g.sort_key()


def element(ctx, *gens, cls=None) -> Element:
    """F2 sum of the given generators; repeated generators cancel."""
    out = frozenset()
    for g in gens:
        out ^= {g}
    return (cls or Element)(ctx, out)


# ---------------------------------------------------------------- product

@lru_cache(maxsize=1 << 20)
def mul_gen(a: Gen, b: Gen) -> frozenset:
    """Product of two basis elements: empty or a single basis element."""
    if right_idempotent(a) != b.x or set(a.c) & set(b.c):
        return frozenset()
    n = len(a.pq)
    cols = []
    for i in range(1, n + 1):
        p, q = a.pq[i - 1]
        p2, q2 = b.pq[i - 1]
        next_p2 = b.col(i + 1)[0]
        prev_q2 = b.col(i - 1)[1]
        p_odd, q_odd = p % 2, q % 2
        if p_odd and next_p2:
            return frozenset()                       # (I)
        if p and not p_odd and prev_q2:
            return frozenset()                       # (II)
        if q_odd and prev_q2:
            return frozenset()                       # (III)
        if q and not q_odd and next_p2:
            return frozenset()                       # (IV)
        if not p_odd and not q_odd and (p - q) * (p2 - q2) < 0:
            return frozenset()                       # (V)
        if p_odd and q_odd and (p - q) * (p2 - q2) > 0:
            return frozenset()                       # (VI)
        r = p + q2 if p_odd else (0 if q_odd else p + p2)
        s = q + p2 if q_odd else (0 if p_odd else q + q2)
        cols.append((r, s))
    c = tuple(sorted(set(a.c) | set(b.c)))
    return frozenset({Gen(a.x, c, tuple(cols))})


def mul_terms(left, right) -> frozenset:
    by_x = {}
    for b in right:
        by_x.setdefault(b.x, []).append(b)
    acc = set()
    for a in left:
        for b in by_x.get(right_idempotent(a), ()):
            acc ^= mul_gen(a, b)
    return frozenset(acc)


def mul(a: Element, b: Element) -> Element:
    return a * b


# ---------------------------------------------------------------- differential

def _replace(g: Gen, i: int, col, c=None) -> Gen:
    pq = list(g.pq)
    pq[i - 1] = col
    return Gen(g.x, g.c if c is None else c, tuple(pq))


def d0(g: Gen, i: int) -> frozenset:
    """Crossing resolutions between the two strands on circle i."""
    xs = g.x
    if i - 1 not in xs or i not in xs:
        return frozenset()
    if g.col(i - 1)[1] or g.col(i + 1)[0]:
        return frozenset()
    p, q = g.pq[i - 1]
    lo, hi = min(p, q), max(p, q)
    if hi == lo:
        return frozenset()
    if hi - lo == 2:
        return frozenset({_replace(g, i, (lo + 1, hi - 1))})
    return frozenset({_replace(g, i, (lo + 1, hi - 1)), _replace(g, i, (hi - 1, lo + 1))})


def dc(g: Gen, i: int) -> frozenset:
    """Resolutions of crossings between strands and the closed loop on circle i."""
    if i not in g.c:
        return frozenset()
    c = tuple(j for j in g.c if j != i)
    p, q = g.pq[i - 1]
    if p == q == 0:
        out = set()
        if i - 1 in g.x and g.col(i - 1)[1] == 0:
            out ^= {_replace(g, i, (2, 0), c)}
        if i in g.x and g.col(i + 1)[0] == 0:
            out ^= {_replace(g, i, (0, 2), c)}
        return frozenset(out)
    if p == q:
        return frozenset({_replace(g, i, (p + 2, q), c), _replace(g, i, (p, q + 2), c)})
    if p > q:
        return frozenset({_replace(g, i, (p + 2, q), c)})
    return frozenset({_replace(g, i, (p, q + 2), c)})


@lru_cache(maxsize=200_000)
def diff_gen(g: Gen) -> frozenset:
    acc = set()
    for i in range(1, len(g.pq) + 1):
        acc ^= d0(g, i)
        acc ^= dc(g, i)
    return frozenset(acc)


def diff_terms(terms) -> frozenset:
    acc = set()
    for g in terms:
        acc ^= diff_gen(g)
    return frozenset(acc)


def diff(a: Element) -> Element:
    return a.boundary()


# ---------------------------------------------------------------- gradings

def refined2(g: Gen) -> tuple:
    cs = set(g.c)
    return tuple(2 * (i in cs) + p + q for i, (p, q) in enumerate(g.pq, 1))


def grade(ctx: Context, g: Gen) -> Grading:
    S, cs = set(ctx.S), set(g.c)
    m2 = 0
    un = []
    w2 = []
    alex2 = 0
    for i, (p, q) in enumerate(g.pq, 1):
        ci = int(i in cs)
        sign = -1 if i in S else 1
        wi2 = 2 * ci + p + q
        m2 += abs(p - q) - 2 * (p + q) + sign * wi2
        un += [ci + p // 2 + (q + 1) // 2, ci + (p + 1) // 2 + q // 2]
        w2.append(wi2)
        alex2 += sign * wi2
    assert m2 % 2 == 0
    return Grading(m2 // 2, tuple(un), tuple(w2), alex2)


# ---------------------------------------------------------------- special elements

def g_min(n: int, x, y) -> Gen:
    """The minimal generator from x to y: one odd unit strand per crossed line."""
    x, y = tuple(x), tuple(y)
    if is_far(x, y):
        raise DomainError(f"{x} and {y} are far")
    cols = []
    for i in range(1, n + 1):
        v = weight_v(x, y, i)
        cols.append((1, 0) if v == 1 else (0, 1) if v == -1 else (0, 0))
    return Gen(x, (), tuple(cols))


def rho_state(n: int, x) -> tuple:
    return tuple(sorted(n - a for a in x))


def rho_context(ctx: Context) -> Context:
    return Context(ctx.n, ctx.k, tuple(sorted(ctx.n + 1 - i for i in ctx.S)))


def rho(ctx: Context, g: Gen) -> Gen:
    """Reflection symmetry; the result lives in the algebra for rho_context(ctx)."""
    n = ctx.n
    pq = tuple((g.pq[n - i][1], g.pq[n - i][0]) for i in range(1, n + 1))
    return Gen(rho_state(n, g.x), tuple(sorted(n + 1 - i for i in g.c)), pq)


def _reverse_column(p: int, q: int) -> tuple[int, int]:
    # a reversed strand starts where the old one ended: odd speeds trade sides
    new_p = (p if p % 2 == 0 else 0) + (q if q % 2 else 0)
    new_q = (q if q % 2 == 0 else 0) + (p if p % 2 else 0)
    return new_p, new_q


def o_sym(g: Gen) -> Gen:
    """Time reversal into the opposite algebra, starting at the old right state."""
    return Gen(right_idempotent(g), g.c, tuple(_reverse_column(p, q) for p, q in g.pq))


def in_truncation(n: int, g: Gen, which: str) -> bool:
    ends = set(g.x) | set(right_idempotent(g))
    if which == "r":
        return 0 not in ends
    if which == "l":
        return n not in ends
    if which == "both":
        return 0 not in ends and n not in ends
    raise ParameterError(f"unknown truncation {which!r}")


# ---------------------------------------------------------------- enumeration

def doubled_caps(n: int, cap) -> tuple:
    """Per-line refined-weight bounds, doubled to integers."""
    if isinstance(cap, (int, Fraction, str)):
        cap = [cap] * n
    cap = list(cap)
    if len(cap) != n:
        raise ParameterError(f"need {n} caps, got {len(cap)}")
    out = []
    for c in cap:
        f = Fraction(c)
        if f < 0 or (2 * f).denominator != 1:
            raise ParameterError(f"cap {c} is not a nonnegative half-integer")
        out.append(int(2 * f))
    return tuple(out)


def _column_choices(ctx: Context, x: set, i: int, cap2: int):
    loops = (0, 1) if i in ctx.S else (0,)
    out = []
    for ci in loops:
        room = cap2 - 2 * ci
        for p in range(0, room + 1):
            if p and (i - 1) not in x:
                continue
            for q in range(0, room - p + 1):
                if q and i not in x:
                    continue
                if p and q and (p - q) % 2:
                    continue
                out.append((ci, p, q))
    return out


@lru_cache(maxsize=4096)
def generators_from(ctx: Context, x: tuple, cap2: tuple) -> tuple:
    """All valid generators with left I-state x and doubled weights <= cap2."""
    xs = set(x)
    n = ctx.n
    choices = [_column_choices(ctx, xs, i, cap2[i - 1]) for i in range(1, n + 1)]
    out = []

    def extend(i, prefix):
        if i > n:
            c = tuple(j for j, (ci, _, _) in enumerate(prefix, 1) if ci)
            g = Gen(x, c, tuple((p, q) for _, p, q in prefix))
            if is_valid(ctx, g):
                out.append(g)
            return
        prev = prefix[-1] if prefix else None
        for ch in choices[i - 1]:
            if prev is not None:
                _, pp, pq_ = prev
                if pq_ * ch[1] or (pp * ch[2]) % 2:
                    continue
            extend(i + 1, prefix + [ch])

    extend(1, [])
    out.sort(key=sort_key)
    return tuple(out)


def enumerate_basis(ctx: Context, x, y, cap) -> list[Gen]:
    x = check_istate(ctx.n, x, ctx.k)
    y = check_istate(ctx.n, y, ctx.k)
    if is_far(x, y):
        return []
    cap2 = doubled_caps(ctx.n, cap)
    return [g for g in generators_from(ctx, x, cap2) if right_idempotent(g) == y]


def enumerate_basis_total(ctx: Context, x, y, total) -> list[Gen]:
    """Generators from x to y whose total refined weight is at most `total`."""
    t2 = int(2 * Fraction(total))
    return [g for g in enumerate_basis(ctx, x, y, [Fraction(t2, 2)] * ctx.n)
            if sum(refined2(g)) <= t2]


def all_generators(ctx: Context, cap) -> list[Gen]:
    cap2 = doubled_caps(ctx.n, cap)
    out = []
    for x in enumerate_istates(ctx.n, ctx.k):
        out.extend(generators_from(ctx, x, cap2))
    return out


__all__ = [
    "Context", "make_context", "Gen", "Grading", "Element", "element", "sort_key",
    "validate_generator", "is_valid", "right_idempotent", "idempotent",
    "mul_gen", "mul_terms", "mul", "d0", "dc", "diff_gen", "diff_terms", "diff",
    "grade", "refined2", "g_min", "rho", "rho_state", "rho_context", "o_sym",
    "in_truncation", "doubled_caps", "generators_from", "enumerate_basis",
    "enumerate_basis_total", "all_generators",
]
