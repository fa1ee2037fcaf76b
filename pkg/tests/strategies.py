"""Hypothesis strategies shared across test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from barbellcalc.groupring import RingElement
from barbellcalc.groupword import GroupPresentation
from barbellcalc.lattice import Window, enumerate_pairs
from barbellcalc.wspace import WVector

presentations = st.sampled_from(
    [
        GroupPresentation((0, 0)),
        GroupPresentation((3, 0)),
        GroupPresentation((2, 3)),
        GroupPresentation((0, 4, 0)),
    ]
)

small_fractions = st.builds(
    Fraction, st.integers(-5, 5).filter(bool), st.integers(1, 3)
)


def words(pres, max_len=4):
    n = len(pres.factor_orders)
    syl = st.tuples(st.integers(0, n - 1), st.integers(-3, 3).filter(bool))
    return st.lists(syl, max_size=max_len).map(pres.word)


def nontrivial_words(pres, max_len=4):
    return words(pres, max_len).filter(lambda w: not w.is_identity)


def ring_elements(pres, max_terms=4, max_len=3):
    term = st.tuples(nontrivial_words(pres, max_len), st.integers(-3, 3))
    return st.lists(term, max_size=max_terms).map(RingElement)


def wvectors(rank, bound, max_terms=5):
    pairs = enumerate_pairs(Window(rank, bound))
    term = st.tuples(st.sampled_from(pairs), small_fractions)
    return st.lists(term, max_size=max_terms).map(WVector)
