import pytest
from hypothesis import given

from helpers import contexts
from ozstrands.errors import DomainError, InvalidGenerator, NotationError
from ozstrands.notation import dumps, format_element, loads, parse_element
from ozstrands.osz import OSElement, all_os_generators
from ozstrands.strands import Element, Gen, all_generators, idempotent, make_context


def test_three_loop_element():
    ctx = make_context(5, 6, (2, 4, 5))
    e = parse_element("C2 C4 C5 [1/9]_1 [0/2]_3 [1/1]_5 @ {0,1,2,3,4,5}", ctx)
    (g,) = e.terms
    assert g == Gen((0, 1, 2, 3, 4, 5), (2, 4, 5), ((1, 9), (0, 0), (0, 2), (0, 0), (1, 1)))


def test_idempotent_and_sums():
    ctx = make_context(2, 2)
    assert parse_element("J{0,2}", ctx) == Element(ctx, {idempotent(ctx, (0, 2))})
    c1 = make_context(1, 1)
    e = parse_element("[1/0]_1 @ {0} + [0/0]_1 @ {0}", c1)
    assert len(e) == 2 and idempotent(c1, (0,)) in e.terms


def test_format_examples():
    ctx = make_context(2, 2)
    assert format_element(Element(ctx)) == "0"
    assert format_element(Element(ctx, {idempotent(ctx, (0, 2))})) == "J{0,2}"
    assert parse_element("0", ctx) == Element(ctx)


def test_default_left_state():
    ctx = make_context(1, 1)
    assert parse_element("[1/0]_1", ctx, x=(0,)) == parse_element("[1/0]_1 @ {0}", ctx)


def test_errors_carry_position():
    ctx = make_context(1, 1)
    with pytest.raises(NotationError) as info:
        parse_element("[1/0]_1 @ {0} + ?", ctx)
    assert info.value.position == 16
    with pytest.raises(InvalidGenerator):
        parse_element("[2/1]_1 @ {0}", ctx)
    with pytest.raises(DomainError):
        parse_element("[1/0]_1", ctx)


def test_b_notation():
    ctx = make_context(2, 1, (1,))
    e = parse_element("C1 U2^2 {1}->{1} + {0}->{1}", ctx, algebra="B")
    assert format_element(e) == "{0}->{1} + C1 U2^2 {1}->{1}"
    assert parse_element(format_element(e), ctx, algebra="B") == e


@given(contexts(n_max=3))
def test_round_trip_a(ctx):
    for g in all_generators(ctx, 2):
        e = Element(ctx, {g})
        assert parse_element(format_element(e), ctx) == e
        assert loads(dumps(e)) == e


@given(contexts(n_max=3))
def test_round_trip_b(ctx):
    for g in all_os_generators(ctx, 2):
        e = OSElement(ctx, {g})
        assert parse_element(format_element(e), ctx, algebra="B") == e
        assert loads(dumps(e)) == e
