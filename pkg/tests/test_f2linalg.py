from itertools import product

import pytest
from hypothesis import given, strategies as st

from ozstrands.errors import ConsistencyError
from ozstrands.f2linalg import (F2Matrix, homology_dim, homology_representatives,
                                kernel_basis, rank, reduce_basis, reduce_vector)


def ones(r, c):
    return F2Matrix.from_rows([(1 << c) - 1] * r, c)


def identity(n):
    return F2Matrix.from_rows([1 << i for i in range(n)], n)


def zero(r, c):
    return F2Matrix(r, c)


def test_rank_examples():
    assert rank(ones(2, 2)) == 1
    assert rank(zero(3, 3)) == 0
    assert rank(identity(3)) == 3


def test_kernel_examples():
    assert kernel_basis(ones(2, 2)) == [0b11]
    assert kernel_basis(identity(4)) == []
    assert kernel_basis(ones(1, 2)) == [0b11]


def test_homology_examples():
    assert homology_dim(zero(1, 1), zero(1, 1)) == 1
    # C1 = F2 --id--> C0 = F2 --0-->: nothing survives
    assert homology_dim(zero(0, 1), identity(1)) == 0


def ladder(r):
    """F2^2 -> ... -> F2^2 -> F2 with all-ones maps, r+1 spaces."""
    maps = [ones(2, 2) for _ in range(r - 1)] + [ones(1, 2)] if r else []
    return maps


@pytest.mark.parametrize("r", range(0, 6))
def test_ladder_has_total_homology_one(r):
    maps = ladder(r)
    dims = [2] * r + [1]
    total = 0
    for level in range(len(dims)):
        d_out = maps[level] if level < len(maps) else zero(0, dims[level])
        d_in = maps[level - 1] if level else zero(dims[level], 0)
        total += homology_dim(d_out, d_in)
    assert total == 1


def test_noncomposable_rejected():
    with pytest.raises(ConsistencyError):
        homology_dim(identity(2), identity(3))
    with pytest.raises(ConsistencyError):
        homology_dim(identity(2), identity(2))


matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r).map(
            lambda rows: F2Matrix.from_rows(rows, c))))


def brute_kernel_size(m):
    return sum(1 for v in range(1 << m.ncols) if m.apply(v) == 0)


@given(matrices)
def test_rank_nullity_by_enumeration(m):
    k = kernel_basis(m)
    assert all(m.apply(v) == 0 for v in k)
    assert 2 ** len(k) == brute_kernel_size(m)
    assert rank(m) + len(k) == m.ncols


@given(matrices)
def test_transpose_rank(m):
    assert rank(m) == rank(F2Matrix.from_columns(m.rows, m.ncols))


@given(st.lists(st.integers(0, 63), max_size=6), st.integers(0, 63))
def test_reduce_vector_is_membership(vectors, v):
    basis = reduce_basis(vectors)
    span = {0}
    for b in vectors:
        span |= {s ^ b for s in span}
    assert (reduce_vector(v, basis) == 0) == (v in span)


@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_representatives_span_homology(dim, extra, data):
    # random complex C2 --a--> C1 --b--> C0 with b a = 0, built as b = 0 or a = 0 mixtures
    rows = data.draw(st.lists(st.integers(0, (1 << dim) - 1), min_size=extra, max_size=extra))
    d_out = F2Matrix.from_rows(rows, dim)
    ker = kernel_basis(d_out)
    cols = data.draw(st.lists(st.sampled_from(ker), max_size=3)) if ker else []
    d_in = F2Matrix.from_columns(cols, dim)
    reps = homology_representatives(d_out, d_in)
    assert len(reps) == homology_dim(d_out, d_in)
    assert all(d_out.apply(z) == 0 for z in reps)
    # the representatives together with the boundaries span the kernel, brute force
    span = {0}
    for b in reps + cols:
        span |= {s ^ b for s in span}
    assert {v for v in range(1 << dim) if d_out.apply(v) == 0} <= span


def test_matmul_and_apply_agree():
    a = F2Matrix.from_rows([0b011, 0b110], 3)
    b = F2Matrix.from_rows([0b1, 0b1, 0b0], 1)
    for v in product((0, 1), repeat=1):
        assert (a @ b).apply(v[0]) == a.apply(b.apply(v[0]))
