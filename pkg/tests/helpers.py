"""Small shared helpers for the tests."""

from hypothesis import strategies as st

from ozstrands.combinatorics import enumerate_istates
from ozstrands.notation import parse_element
from ozstrands.strands import all_generators, make_context


def gen(ctx, text, x=None):
    """The single generator written as `text`."""
    e = parse_element(text, ctx, x=x)
    (g,) = e.terms
    return g


@st.composite
def contexts(draw, n_max=3, n_min=0):
    n = draw(st.integers(n_min, n_max))
    k = draw(st.integers(0, n + 1))
    S = draw(st.sets(st.integers(1, n), max_size=n)) if n else set()
    return make_context(n, k, sorted(S))


@st.composite
def istate_pairs(draw, n_max=5):
    n = draw(st.integers(1, n_max))
    k = draw(st.integers(0, n + 1))
    states = enumerate_istates(n, k)
    return n, draw(st.sampled_from(states)), draw(st.sampled_from(states))


@st.composite
def ctx_and_gen(draw, n_max=2, cap=2):
    ctx = draw(contexts(n_max=n_max, n_min=1))
    gens = all_generators(ctx, cap)
    return ctx, draw(st.sampled_from(gens))
