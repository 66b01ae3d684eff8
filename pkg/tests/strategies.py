"""Hypothesis strategies shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from apollonia.lattice import Quadruple, WeightPoint, apply_word

BASES = [Quadruple.of(-1, 2, 2, 3), Quadruple.of(-2, 3, 6, 7), Quadruple.of(-3, 5, 8, 8),
         Quadruple.of(-6, 11, 14, 15), Quadruple.of(-4, 8, 9, 9)]

words = st.lists(st.integers(1, 4), max_size=8).map(tuple)
small_ints = st.integers(-30, 30)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def descartes_quadruples(draw):
    base = draw(st.sampled_from(BASES))
    return apply_word(draw(words), base)


@st.composite
def int_weights(draw, positive_height: bool = True):
    s = draw(st.tuples(small_ints, small_ints, small_ints, small_ints))
    if positive_height and sum(s) <= 0:
        s = (s[0] - sum(s) + 1,) + s[1:]
    return WeightPoint(s)


@st.composite
def rational_weights(draw):
    return WeightPoint(draw(st.tuples(rationals, rationals, rationals, rationals)))


def as_fraction(x) -> Fraction:
    return Fraction(x)
