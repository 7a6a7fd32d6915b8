"""The unrefined grading group G' of Z(n) and the maps out of it.

Homology classes are 2n-tuples (tau_1, beta_1, ..., tau_n, beta_n), where
beta_i is the arc of circle i running from z_i^- to z_i^+ and tau_i is the
other arc.  Half-integers are stored doubled.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import ConsistencyError, ParameterError
from .strands import Gen

MINUS, PLUS = 0, 1


class GPrime(NamedTuple):
    j2: int      # doubled Maslov component
    alpha: tuple

    @property
    def j(self):
        from fractions import Fraction
        return Fraction(self.j2, 2)


def _n_of(alpha) -> int:
    if len(alpha) % 2:
        raise ParameterError(f"homology class needs an even number of entries, got {len(alpha)}")
    return len(alpha) // 2


def multiplicity2(alpha, basepoint) -> int:
    """Doubled multiplicity of alpha at basepoint (i, side)."""
    n = _n_of(alpha)
    i, _ = basepoint
    if not 1 <= i <= n:
        return 0
    return alpha[2 * i - 2] + alpha[2 * i - 1]


def boundary(alpha) -> dict:
    """Connecting map to H_0(B): d(beta_i) = z_i^+ - z_i^-, d(tau_i) = z_i^- - z_i^+."""
    out = {}
    for i in range(1, _n_of(alpha) + 1):
        t, b = alpha[2 * i - 2], alpha[2 * i - 1]
        out[(i, PLUS)] = out.get((i, PLUS), 0) + b - t
        out[(i, MINUS)] = out.get((i, MINUS), 0) - b + t
    return out


def linking2(a1, a2) -> int:
    """Doubled L(a1, a2) = m(a2, d a1), evaluated literally."""
    return sum(coef * multiplicity2(a2, pt) for pt, coef in boundary(a1).items())


def epsilon2(alpha) -> int:
    """Doubled epsilon: a quarter of the number of parity changes, mod 1."""
    changes = 0
    for i in range(1, _n_of(alpha) + 1):
        for side in (MINUS, PLUS):
            changes += multiplicity2(alpha, (i, side)) % 2
    # epsilon = changes/4 mod 1, so doubled epsilon = changes/2 mod 2
    assert changes % 2 == 0
    return (changes // 2) % 2


def check_gprime(g: GPrime) -> GPrime:
    if (g.j2 - epsilon2(g.alpha)) % 2:
        raise ConsistencyError(f"{g} violates j = epsilon(alpha) mod 1")
    return g


def gprime_mul(g1: GPrime, g2: GPrime) -> GPrime:
    if len(g1.alpha) != len(g2.alpha):
        raise ParameterError("grading group elements for different n")
    out = GPrime(g1.j2 + g2.j2 + linking2(g1.alpha, g2.alpha),
                 tuple(a + b for a, b in zip(g1.alpha, g2.alpha)))
    return check_gprime(out)


def gprime_identity(n: int) -> GPrime:
    return GPrime(0, (0,) * (2 * n))


def deg_prime(g: Gen) -> GPrime:
    """Closed form of deg' on a basis element."""
    j2 = 0
    alpha = []
    cs = set(g.c)
    for i, (p, q) in enumerate(g.pq, 1):
        ci = int(i in cs)
        j2 += abs(p - q) - 2 * (p + q)
        alpha += [ci + p // 2 + (q + 1) // 2, ci + (p + 1) // 2 + q // 2]
    return GPrime(j2, tuple(alpha))


def strand_class(n: int, start, speed: int) -> tuple:
    """Relative homology class of one constant-speed strand."""
    alpha = [0] * (2 * n)
    i, side = start
    if speed == 0 or not 1 <= i <= n:
        return tuple(alpha)
    big, small = (speed + 1) // 2, speed // 2
    t, b = (small, big) if side == MINUS else (big, small)
    alpha[2 * i - 2], alpha[2 * i - 1] = t, b
    return tuple(alpha)


def diagram(g: Gen, section_rule: str = "plus") -> list:
    """Strands (start, speed) of one k-strand in the sum for g.

    Idle coordinates j carry a constant strand on z_j^+ under the "plus" rule
    and on z_{j+1}^- under the "minus" rule.
    """
    if section_rule not in ("plus", "minus"):
        raise ParameterError(f"unknown section rule {section_rule!r}")
    n = len(g.pq)
    out = []
    for i, (p, q) in enumerate(g.pq, 1):
        if p:
            out.append(((i, MINUS), p))
        if q:
            out.append(((i, PLUS), q))
    for j in g.x:
        q = g.col(j)[1]
        p_next = g.col(j + 1)[0]
        if q == 0 and p_next == 0:
            out.append(((j, PLUS), 0) if section_rule == "plus" else ((j + 1, MINUS), 0))
    assert len(out) == len(g.x) and all(0 <= s[0][0] <= n + 1 for s in out)
    return out


def deg_prime_from_diagram(g: Gen, section_rule: str = "plus") -> GPrime:
    """deg' = (inv - m([s,c], [s(0)]), [s,c]) evaluated on an explicit k-strand."""
    n = len(g.pq)
    strands = diagram(g, section_rule)
    cs = set(g.c)
    alpha = [0] * (2 * n)
    for start, speed in strands:
        for idx, v in enumerate(strand_class(n, start, speed)):
            alpha[idx] += v
    for i in cs:
        alpha[2 * i - 2] += 1
        alpha[2 * i - 1] += 1
    inv = 0
    for i in range(1, n + 1):
        here = [(s, a) for s, a in strands if s[0] == i]
        ci = int(i in cs)
        if len(here) == 1:
            inv += ci
        elif len(here) == 2:
            inv += abs(here[0][1] - here[1][1]) // 2 + 2 * ci
    m2 = sum(multiplicity2(alpha, s) for s, _ in strands)
    return GPrime(2 * inv - m2, tuple(alpha))


def theta(S, g: GPrime) -> tuple:
    """Theta_S: G' -> Z x Z^{2n}, sending (+-1/2, tau_i or beta_i) to (0, tau_i or beta_i)."""
    check_gprime(g)
    S = set(S)
    first2 = g.j2
    for i in range(1, _n_of(g.alpha) + 1):
        tot = g.alpha[2 * i - 2] + g.alpha[2 * i - 1]
        first2 += -tot if i in S else tot
    if first2 % 2:
        raise ConsistencyError(f"Theta of {g} is not integral")
    return (first2 // 2, tuple(g.alpha))


def psi_refine(m: int, alpha) -> tuple:
    """Psi: (m, alpha) -> (m, doubled refined weights (tau_i + beta_i))."""
    return (m, tuple(alpha[2 * i] + alpha[2 * i + 1] for i in range(_n_of(alpha))))


def swap_tau_beta(alpha) -> tuple:
    """Exchange every tau_i with beta_i (relabeling used when comparing with B)."""
    out = []
    for i in range(0, len(alpha), 2):
        out += [alpha[i + 1], alpha[i]]
    return tuple(out)


__all__ = [
    "GPrime", "multiplicity2", "boundary", "linking2", "epsilon2", "check_gprime",
    "gprime_mul", "gprime_identity", "deg_prime", "strand_class", "diagram",
    "deg_prime_from_diagram", "theta", "psi_refine", "swap_tau_beta",
]
