from itertools import combinations

import pytest
from hypothesis import given

from helpers import istate_pairs
from ozstrands.combinatorics import (GeneratorLabel, check_istate, classify_lines,
                                     enumerate_istates, gamma_path, is_far, move_target,
                                     v_vector, weight_v)
from ozstrands.errors import DomainError, ParameterError

R, L = (lambda i: GeneratorLabel("R", i)), (lambda i: GeneratorLabel("L", i))
X, Y = (0, 1, 2, 5), (0, 2, 3, 4)


def test_enumerate_small():
    assert enumerate_istates(1, 1) == [(0,), (1,)]
    assert enumerate_istates(2, 1) == [(0,), (1,), (2,)]


def test_enumerate_five_three():
    states = enumerate_istates(5, 3)
    assert len(states) == 20
    assert (1, 3, 4) in states and (0, 2, 5) in states


@pytest.mark.parametrize("n,k", [(1, 3), (2, -1)])
def test_enumerate_rejects_k(n, k):
    with pytest.raises(ParameterError):
        enumerate_istates(n, k)


def test_check_istate_rejects():
    with pytest.raises(DomainError):
        check_istate(2, (0, 3))
    with pytest.raises(DomainError):
        check_istate(2, (0, 1), k=1)


def test_weight_v_examples():
    assert weight_v(X, Y, 2) == 1
    assert weight_v(X, Y, 5) == -1
    assert v_vector(5, X, Y) == (0, 1, 1, 0, -1)
    with pytest.raises(ParameterError):
        weight_v((0,), (0, 1), 1)


def test_is_far_examples():
    assert is_far((0,), (2,))
    assert not is_far(X, Y)
    assert not is_far(X, X)


def test_classify_examples():
    c = classify_lines(2, (1,), (1,))
    assert c.crossed == frozenset() and c.generating == ((1, 2),)
    assert c.left_edge is None and c.right_edge is None and not c.two_faced
    c = classify_lines(1, (0,), (0,))
    assert c.left_edge == (1, 1) and not c.generating and c.right_edge is None
    assert classify_lines(1, (0, 1), (0, 1)).two_faced
    with pytest.raises(DomainError):
        classify_lines(2, (0,), (2,))


def test_gamma_path_examples():
    assert gamma_path(X, X) == []
    assert gamma_path((0,), (1,)) == [R(1)]
    assert gamma_path(X, Y) == [R(3), R(2), L(5)]
    with pytest.raises(DomainError):
        gamma_path((0,), (2,))


def brute_far(x, y):
    return any(abs(a - b) > 1 for a, b in zip(x, y))


@given(istate_pairs())
def test_v_is_a_count_difference(nxy):
    n, x, y = nxy
    for i in range(1, n + 1):
        assert weight_v(x, y, i) == sum(1 for b in y if b >= i) - sum(1 for a in x if a >= i)
        assert abs(weight_v(x, y, i)) <= 1 or brute_far(x, y)


@given(istate_pairs())
def test_far_is_componentwise(nxy):
    _, x, y = nxy
    assert is_far(x, y) == brute_far(x, y)


@given(istate_pairs())
def test_gamma_path_walks_from_x_to_y(nxy):
    n, x, y = nxy
    if is_far(x, y):
        return
    path = gamma_path(x, y)
    cur = x
    for label in path:
        cur = move_target(cur, label)
        assert cur is not None
    assert cur == y
    # a shortest path: one move per unit of |v|
    assert len(path) == sum(abs(v) for v in v_vector(n, x, y))


@given(istate_pairs())
def test_classification_partitions_lines(nxy):
    n, x, y = nxy
    if is_far(x, y):
        return
    c = classify_lines(n, x, y)
    covered = set(c.crossed)
    for (lo, hi), _ in c.intervals():
        block = set(range(lo, hi + 1))
        assert not block & covered
        covered |= block
        assert all(weight_v(x, y, i) == 0 for i in block)
    if c.two_faced:
        covered = set(range(1, n + 1))
    assert covered == set(range(1, n + 1))


def test_istate_count_is_binomial():
    for n in range(0, 6):
        for k in range(0, n + 2):
            assert enumerate_istates(n, k) == [tuple(c) for c in combinations(range(n + 1), k)]
