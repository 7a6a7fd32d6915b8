from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import contexts, gen
from ozstrands.combinatorics import enumerate_istates, is_far
from ozstrands.errors import ParameterError
from ozstrands.splitting import (diff_factorization, graded_piece, homology_basis,
                                 homology_dims, interval_context, max_maslov_cycle,
                                 predicted_dims, quasi_iso_check, restrict, split_psi,
                                 unsplit_phi)
from ozstrands.strands import (Element, Gen, all_generators, diff_gen, grade, idempotent,
                               make_context, right_idempotent)


def test_restrict_examples():
    ctx = make_context(2, 1)
    g = gen(ctx, "[0/2]_1 @ {1}")
    lctx, lx = interval_context("generating", 2)
    assert lx == (1,)
    assert restrict(g, (1, 2), "generating") == Gen((1,), (), ((0, 2), (0, 0)))
    assert restrict(idempotent(ctx, (1,)), (1, 2), "generating") == idempotent(lctx, lx)


def test_split_examples():
    ctx = make_context(1, 1)
    f = split_psi(ctx, gen(ctx, "[3/0]_1 @ {0}"))
    assert f.crossed_exponents == ((1, 1),) and f.factors == ()
    j = idempotent(make_context(3, 2), (0, 2))
    f = split_psi(make_context(3, 2), j)
    assert all(e == 0 for _, e in f.crossed_exponents)
    assert all(fac.local.pq == ((0, 0),) * len(fac.local.pq) for fac in f.factors)
    assert unsplit_phi(f) == j
    with pytest.raises(ParameterError):
        split_psi(make_context(1, 1, (1,)), gen(make_context(1, 1, (1,)), "J{0}"))


def test_unsplit_crossed_line():
    ctx = make_context(1, 1)
    f = split_psi(ctx, gen(ctx, "[1/0]_1 @ {0}"))
    assert f.crossed_exponents == ((1, 0),)
    assert unsplit_phi(f) == gen(ctx, "[1/0]_1 @ {0}")


@pytest.mark.parametrize("r", range(0, 4))
def test_lambda_rho_cycle(r):
    lctx, e = max_maslov_cycle("two_faced", 1, (r,))
    if r:
        terms = {Gen((0, 1), (), ((2 * r, 0),)), Gen((0, 1), (), ((0, 2 * r),))}
    else:
        terms = {Gen((0, 1), (), ((0, 0),))}
    assert e == Element(lctx, terms)


@pytest.mark.parametrize("kind", ["generating", "left", "right", "two_faced"])
@pytest.mark.parametrize("l", [1, 2, 3])
def test_cycles_close_and_multiply(kind, l):
    rs = [(1,) * l, tuple(range(l)), (2,) + (0,) * (l - 1)]
    for r in rs:
        lctx, a = max_maslov_cycle(kind, l, r)
        assert a.boundary() == Element(lctx)
        for r2 in rs:
            _, b = max_maslov_cycle(kind, l, r2)
            _, ab = max_maslov_cycle(kind, l, tuple(u + v for u, v in zip(r, r2)))
            assert a * b == ab


@pytest.mark.parametrize("r", range(0, 5))
def test_lambda_rho_piece_dims(r):
    ctx = make_context(1, 2)
    piece = graded_piece("A", ctx, (0, 1), (0, 1), (r,))
    sizes = {m: len(v) for m, v in piece.levels.items()}
    assert sizes == {0: 1} if r == 0 else sizes == {**{-s: 2 for s in range(r)}, -r: 1}
    assert homology_dims(piece) == {0: 1}
    (rep,) = homology_basis(piece)[0]
    assert rep == max_maslov_cycle("two_faced", 1, (r,))[1]


def test_generating_interval_homology():
    lctx, lx = interval_context("generating", 2)
    assert homology_dims(graded_piece("A", lctx, lx, lx, (1, 1))) == {}
    for r in range(4):
        assert homology_dims(graded_piece("A", lctx, lx, lx, (0, r))) == {0: 1}


def test_small_bases():
    ctx = make_context(2, 1)
    j = idempotent(ctx, (1,))
    piece = graded_piece("A", ctx, (1,), (1,), (0, 0))
    assert homology_basis(piece) == {0: [Element(ctx, {j})]}
    c1 = make_context(1, 1)
    piece = graded_piece("A", c1, (0,), (1,), (Fraction(3, 2),))
    assert homology_basis(piece) == {0: [Element(c1, {gen(c1, "[3/0]_1 @ {0}")})]}
    b = graded_piece("B", make_context(2, 1), (0,), (1,), (Fraction(3, 2), 0))
    assert set(b.levels) == {0}


def test_predicted_examples():
    ctx = make_context(2, 1)
    assert predicted_dims(ctx, (1,), (1,), (1, 1)) == {}
    c1 = make_context(1, 1)
    for r in range(5):
        assert predicted_dims(c1, (0,), (0,), (r,)) == {0: 1}
    assert predicted_dims(ctx, (0,), (2,), (1, 1)) == {}


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 3) for k in range(0, n + 2)])
def test_quasi_iso_small(n, k):
    for S in [(), tuple(range(1, n + 1))]:
        rep = quasi_iso_check(n, k, S, 2)
        assert rep.ok, rep.failures[:3]


@given(contexts(n_max=3, n_min=1).filter(lambda c: not c.S))
def test_psi_phi_inverse_chain_maps(ctx):
    for g in all_generators(ctx, 2):
        f = split_psi(ctx, g)
        assert unsplit_phi(f) == g
        assert diff_factorization(f) == frozenset(split_psi(ctx, t) for t in diff_gen(g))


@given(contexts(n_max=3, n_min=1), st.data())
def test_pieces_match_prediction(ctx, data):
    g = data.draw(st.sampled_from(all_generators(ctx, 2)))
    y = right_idempotent(g)
    w = [Fraction(v, 2) for v in grade(ctx, g).refined2]
    for algebra in "AB":
        piece = graded_piece(algebra, ctx, g.x, y, w)
        assert homology_dims(piece) == predicted_dims(ctx, g.x, y, w)


def test_far_pairs_predict_nothing():
    ctx = make_context(3, 1)
    for x in enumerate_istates(3, 1):
        for y in enumerate_istates(3, 1):
            if is_far(x, y):
                assert predicted_dims(ctx, x, y, (1, 1, 1)) == {}
