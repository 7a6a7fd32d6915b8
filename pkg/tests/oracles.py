"""Independent model of the pre-strands algebra, used as a test oracle.

Nothing here imports the closed-form rules in ozstrands.strands; generators
are rebuilt as honest sums E(s, c) of k-strands and multiplied or
differentiated one k-strand at a time.

A basepoint is (i, side): side 0 is z_i^-, side 1 is z_i^+.  The two ends of
the linear backbones are (0, 1) and (n + 1, 0); strands there are constant.
"""

from __future__ import annotations

from itertools import combinations

from ozstrands.strands import Gen


def matched(b):
    i, side = b
    return (i + 1, 0) if side == 1 else (i - 1, 1)


def end_of(start, speed):
    i, side = start
    return (i, (side + speed) % 2)


def basepoints(n):
    pts = [(0, 1), (n + 1, 0)]
    for i in range(1, n + 1):
        pts += [(i, 0), (i, 1)]
    return sorted(pts)


def on_circle(b, n):
    return 1 <= b[0] <= n


class PreStrand(tuple):
    """(strands, loops): strands is a frozenset of (start, speed)."""

    def __new__(cls, strands, loops):
        return super().__new__(cls, (frozenset(strands), frozenset(loops)))

    @property
    def strands(self):
        return self[0]

    @property
    def loops(self):
        return self[1]

    def starts(self):
        return {s for s, _ in self.strands}

    def ends(self):
        return {end_of(s, a) for s, a in self.strands}

    def is_kstrand(self):
        return len(self.ends()) == len(self.strands)


def quotient(points):
    return tuple(sorted(i if side == 1 else i - 1 for i, side in points))


def admissible(ps: PreStrand) -> bool:
    s0, s1 = ps.starts(), ps.ends()
    return (ps.is_kstrand()
            and not (s0 & {matched(b) for b in s0})
            and not (s1 & {matched(b) for b in s1}))


def E(ps: PreStrand) -> frozenset:
    """All k-strands obtained by moving any subset of constant strands to the matched point."""
    const = [s for s, a in ps.strands if a == 0]
    moving = [(s, a) for s, a in ps.strands if a != 0]
    out = set()
    for r in range(len(const) + 1):
        for sub in combinations(const, r):
            pts = [matched(b) if b in sub else b for b in const]
            out.add(PreStrand(moving + [(b, 0) for b in pts], ps.loops))
    return frozenset(out)


def key(ps: PreStrand, n: int) -> Gen:
    cols = [[0, 0] for _ in range(n)]
    for (i, side), a in ps.strands:
        if a:
            cols[i - 1][side] = a
    return Gen(quotient(ps.starts()), tuple(sorted(ps.loops)), tuple(map(tuple, cols)))


def right_state(ps: PreStrand):
    return quotient(ps.ends())


def representative(g: Gen, alternate=False) -> PreStrand:
    """A k-strand whose E-sum is the basis element g.

    Idle coordinates (no moving strand leaves from either of their basepoints)
    get a constant strand on z_j^+ by default, on z_{j+1}^- if `alternate`.
    """
    n = len(g.pq)
    strands = []
    for i, (p, q) in enumerate(g.pq, 1):
        if p:
            strands.append(((i, 0), p))
        if q:
            strands.append(((i, 1), q))
    for j in g.x:
        q = g.pq[j - 1][1] if j >= 1 else 0
        p_next = g.pq[j][0] if j < n else 0
        if q == 0 and p_next == 0:
            strands.append(((j + 1, 0) if alternate else (j, 1), 0))
    return PreStrand(strands, g.c)


def pre_mul(a: PreStrand, b: PreStrand):
    if a.ends() != b.starts() or a.loops & b.loops:
        return None
    nxt = {s: sp for s, sp in b.strands}
    joined = []
    for s, alpha in a.strands:
        joined.append((s, alpha, nxt[end_of(s, alpha)]))
    by_circle = {}
    for s, alpha, beta in joined:
        by_circle.setdefault(s[0], []).append((alpha, beta))
    for pair in by_circle.values():
        if len(pair) == 2:
            (a1, b1), (a2, b2) = pair
            if (a1 - a2) * (b1 - b2) < 0:
                return None
    return PreStrand([(s, alpha + beta) for s, alpha, beta in joined], a.loops | b.loops)


def pre_diff(ps: PreStrand) -> set:
    out = set()

    def toggle(x):
        out.symmetric_difference_update({x})

    by_circle = {}
    for s, a in ps.strands:
        by_circle.setdefault(s[0], []).append((s, a))
    rest = lambda drop: [t for t in ps.strands if t not in drop]  # noqa: E731
    circles = {s[0] for s, _ in ps.strands} | set(ps.loops)
    for i in circles:
        here = by_circle.get(i, [])
        if i in ps.loops:
            top = max((a for _, a in here), default=None)
            for s, a in here:
                if a == top:
                    toggle(PreStrand(rest([(s, a)]) + [(s, a + 2)], ps.loops - {i}))
        if len(here) == 2:
            (s1, a1), (s2, a2) = here
            if a1 != a2:
                hi, lo = max(a1, a2), min(a1, a2)
                if hi - lo == 2:
                    choices = [(lo + 1, hi - 1)]
                else:
                    choices = [(hi - 1, lo + 1), (lo + 1, hi - 1)]
                for n1, n2 in choices:
                    toggle(PreStrand(rest(here) + [(s1, n1), (s2, n2)], ps.loops))
    return out


def to_basis(terms, n: int) -> frozenset:
    """Rewrite an F2 sum of k-strands as a sum of basis elements, checking it lies in the span."""
    groups = {}
    for t in terms:
        groups.setdefault(key(t, n), set()).add(t)
    out = set()
    for g, members in groups.items():
        full = E(next(iter(members)))
        assert members == full, f"sum is not in the span of E-elements near {g}"
        out.add(g)
    return frozenset(out)


def oracle_mul(a: Gen, b: Gen, n: int) -> frozenset:
    acc = set()
    for s in E(representative(a)):
        for t in E(representative(b)):
            prod = pre_mul(s, t)
            if prod is not None:
                acc.symmetric_difference_update({prod})
    return to_basis(acc, n)


def oracle_diff(a: Gen, n: int) -> frozenset:
    acc = set()
    for s in E(representative(a)):
        acc.symmetric_difference_update(pre_diff(s))
    return to_basis(acc, n)


def oracle_generators(n: int, k: int, S, cap2: int):
    """Every basis element with per-circle doubled weight <= cap2, keyed canonically, with its y."""
    pts = basepoints(n)
    found = {}
    for starts in combinations(pts, k):
        st = set(starts)
        if st & {matched(b) for b in st}:
            continue
        circ = [b for b in starts if on_circle(b, n)]
        fixed = [(b, 0) for b in starts if not on_circle(b, n)]
        speed_ranges = [range(cap2 + 1) for _ in circ]
        _speeds(circ, speed_ranges, [], fixed, n, S, cap2, found)
    return found


def _speeds(circ, ranges, acc, fixed, n, S, cap2, found):
    if len(acc) == len(circ):
        strands = fixed + list(zip(circ, acc))
        load = {}
        for (i, _), a in zip(circ, acc):
            load[i] = load.get(i, 0) + a
        loop_choices = [()]
        for i in sorted(S):
            loop_choices = [c + (i,) for c in loop_choices] + loop_choices
        for loops in loop_choices:
            if any(load.get(i, 0) + 2 * (i in loops) > cap2 for i in range(1, n + 1)):
                continue
            ps = PreStrand(strands, loops)
            if admissible(ps):
                found[key(ps, n)] = right_state(ps)
        return
    for a in ranges[len(acc)]:
        _speeds(circ, ranges, acc + [a], fixed, n, S, cap2, found)
