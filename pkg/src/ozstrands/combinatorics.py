"""I-states, line classification and the canonical path between states.

An I-state is a sorted tuple of distinct integers in [0, n].  Lines are the
integers 1..n; line i separates regions i-1 and i.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from .errors import DomainError, ParameterError

IState = tuple  # sorted tuple of ints in [0, n]


def check_istate(n: int, x, k: int | None = None) -> IState:
    x = tuple(x)
    if any(not isinstance(a, int) for a in x):
        raise ParameterError(f"I-state entries must be integers: {x}")
    if list(x) != sorted(set(x)):
        raise ParameterError(f"I-state must be strictly increasing: {x}")
    if x and (x[0] < 0 or x[-1] > n):
        raise ParameterError(f"I-state {x} not contained in [0,{n}]")
    if k is not None and len(x) != k:
        raise ParameterError(f"I-state {x} does not have {k} elements")
    return x


def enumerate_istates(n: int, k: int) -> list[IState]:
    """All k-element subsets of [0, n] in lexicographic order (k may be n+1)."""
    if n < 0 or not 0 <= k <= n + 1:
        raise ParameterError(f"need 0 <= k <= n+1, got n={n}, k={k}")
    return list(combinations(range(n + 1), k))


def _same_size(x, y):
    if len(x) != len(y):
        raise ParameterError(f"I-states {x} and {y} have different sizes")


def weight_v(x: IState, y: IState, i: int) -> int:
    """v_i(x, y) = |y ∩ [i,n]| - |x ∩ [i,n]|."""
    _same_size(x, y)
    return sum(1 for a in y if a >= i) - sum(1 for a in x if a >= i)


def v_vector(n: int, x: IState, y: IState) -> tuple[int, ...]:
    return tuple(weight_v(x, y, i) for i in range(1, n + 1))


def is_far(x: IState, y: IState) -> bool:
    _same_size(x, y)
    return any(abs(a - b) > 1 for a, b in zip(x, y))


class LineClassification(NamedTuple):
    crossed: frozenset
    generating: tuple  # of (lo, hi) closed intervals
    left_edge: tuple | None
    right_edge: tuple | None
    two_faced: bool

    def intervals(self):
        """(interval, kind) for every non-crossed block, left to right."""
        out = []
        if self.two_faced:
            return out
        if self.left_edge:
            out.append((self.left_edge, "left"))
        out.extend((g, "generating") for g in self.generating)
        if self.right_edge:
            out.append((self.right_edge, "right"))
        return sorted(out)


def classify_lines(n: int, x: IState, y: IState) -> LineClassification:
    """Split [1, n] into crossed lines, generating intervals and edge intervals."""
    if is_far(x, y):
        raise DomainError(f"{x} and {y} are far")
    full = set(x) & set(y)
    if len(full) == n + 1:
        return LineClassification(frozenset(), (), None, None, True)
    loose = [j for j in range(n + 1) if j not in full]
    v = {i: weight_v(x, y, i) for i in range(1, n + 1)}
    crossed = {i for i in v if v[i] != 0}
    left = (1, loose[0]) if loose[0] > 0 else None
    right = (loose[-1] + 1, n) if loose[-1] < n else None
    generating = []
    for j, j2 in zip(loose, loose[1:]):
        # v is constant across a block whose interior coordinates are fully used
        if v[j + 1] == 0:
            generating.append((j + 1, j2))
    return LineClassification(frozenset(crossed), tuple(generating), left, right, False)


class GeneratorLabel(NamedTuple):
    kind: str  # one of "R", "L", "U", "C"
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"


def move_target(x: IState, label: GeneratorLabel) -> IState | None:
    """Endpoint of the quiver edge with this label at x, or None if illegal."""
    i = label.index
    s = set(x)
    if label.kind in ("U", "C"):
        return x
    if label.kind == "R" and (i - 1) in s and i not in s:
        return tuple(sorted((s - {i - 1}) | {i}))
    if label.kind == "L" and i in s and (i - 1) not in s:
        return tuple(sorted((s - {i}) | {i - 1}))
    return None


def gamma_path(x: IState, y: IState) -> list[GeneratorLabel]:
    """The canonical path from x to y: right moves first, then left moves."""
    if is_far(x, y):
        raise DomainError(f"{x} and {y} are far")
    path = []
    cur = list(x)
    while cur != list(y):
        ups = [a for a in range(len(cur)) if cur[a] < y[a]]
        if ups:
            a = ups[-1]
            path.append(GeneratorLabel("R", cur[a] + 1))
            cur[a] += 1
        else:
            a = min(a for a in range(len(cur)) if cur[a] > y[a])
            path.append(GeneratorLabel("L", cur[a]))
            cur[a] -= 1
    return path


__all__ = [
    "IState", "check_istate", "enumerate_istates", "weight_v", "v_vector", "is_far",
    "LineClassification", "classify_lines", "GeneratorLabel", "move_target", "gamma_path",
]
