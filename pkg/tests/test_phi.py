import pytest
from hypothesis import given, strategies as st

from helpers import contexts, gen
from ozstrands.combinatorics import GeneratorLabel, enumerate_istates, is_far
from ozstrands.grading_groups import swap_tau_beta
from ozstrands.osz import (OSElement, OSGen, all_os_generators, gamma_generator, grade_os,
                           o_os, os_idempotent, rho_os)
from ozstrands.phi import (phi_basis, phi_closed_form, phi_elem, phi_label, phi_word,
                           relation_check)
from ozstrands.strands import (Element, g_min, grade, idempotent, make_context, o_sym, rho,
                               rho_context)

R, L, U, C = (lambda i, k=k: GeneratorLabel(k, i) for k in "RLUC")


def test_letter_images():
    ctx = make_context(5, 3)
    assert phi_label(ctx, (0, 1, 3), R(2)) == Element(ctx, {gen(ctx, "[1/0]_2 @ {0,1,3}")})
    assert phi_label(ctx, (0, 2, 3), U(3)) == Element(
        ctx, {gen(ctx, "[2/0]_3 @ {0,2,3}"), gen(ctx, "[0/2]_3 @ {0,2,3}")})
    assert phi_label(ctx, (0, 1, 5), U(4)) == Element(ctx)


def test_basis_images():
    ctx = make_context(5, 4)
    x, y = (0, 1, 2, 5), (0, 2, 3, 4)
    g = gamma_generator(ctx, x, y)
    assert phi_basis(ctx, g) == Element(ctx, {g_min(5, x, y)})
    assert phi_closed_form(ctx, g) == Element(ctx, {g_min(5, x, y)})
    assert phi_basis(ctx, os_idempotent(ctx, x)) == Element(ctx, {idempotent(ctx, x)})
    c1 = make_context(1, 1)
    u = OSGen((0,), (0,), (), (1,))
    assert phi_basis(c1, u) == Element(c1, {gen(c1, "[2/0]_1 @ {0}")})
    assert phi_closed_form(c1, u) == Element(c1, {gen(c1, "[2/0]_1 @ {0}")})


def test_elements():
    ctx = make_context(1, 1)
    assert phi_elem(OSElement(ctx)) == Element(ctx)
    a, b = OSGen((0,), (0,), (), (1,)), OSGen((0,), (1,), (), (0,))
    assert phi_elem(OSElement(ctx, {a, b})) == phi_closed_form(ctx, a) + phi_closed_form(ctx, b)


def test_relation_examples():
    ctx = make_context(3, 2, (2,))
    x = (1, 3)
    assert phi_word(ctx, x, [R(2), L(2)]) == phi_label(ctx, x, U(2))
    y = (0, 2)
    assert phi_word(ctx, y, [R(1), R(3)]) == phi_word(ctx, y, [R(3), R(1)])
    assert phi_word(ctx, y, [C(2), C(2)]) == Element(ctx)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relations_hold(n):
    checked = 0
    for k in range(0, n + 2):
        for S in [(), tuple(range(1, n + 1))]:
            rep = relation_check(n, k, S)
            assert rep.ok, rep.failures[:3]
            checked += rep.checked
    assert checked


@st.composite
def os_gens(draw, cap=2):
    ctx = draw(contexts(n_max=3, n_min=1))
    return ctx, draw(st.sampled_from(all_os_generators(ctx, cap)))


@given(os_gens())
def test_closed_form_equals_words(cg):
    ctx, g = cg
    img = phi_closed_form(ctx, g)
    assert phi_basis(ctx, g, "left") == img
    assert phi_basis(ctx, g, "right") == img
    if not any(g.r) and not g.c:
        assert img == Element(ctx, {g_min(ctx.n, g.x, g.y)})


@given(os_gens())
def test_phi_commutes_with_symmetries(cg):
    ctx, g = cg
    rctx = rho_context(ctx)
    img = phi_closed_form(ctx, g)
    assert phi_closed_form(rctx, rho_os(ctx, g)) == Element(rctx, {rho(ctx, t) for t in img})
    assert phi_closed_form(ctx, o_os(g)) == Element(ctx, {o_sym(t) for t in img})


@given(os_gens())
def test_phi_preserves_gradings(cg):
    ctx, g = cg
    gb = grade_os(ctx, g)
    for t in phi_closed_form(ctx, g):
        ga = grade(ctx, t)
        assert (ga.maslov, ga.refined2, ga.alexander2) == (gb.maslov, gb.refined2, gb.alexander2)
        assert swap_tau_beta(ga.unrefined) == gb.unrefined


def test_far_pairs_have_no_gamma():
    ctx = make_context(2, 1)
    assert is_far((0,), (2,))
    assert (0,) in enumerate_istates(2, 1)
    assert all(not is_far(g.x, g.y) for g in all_os_generators(ctx, 2))
