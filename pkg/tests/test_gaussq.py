from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from heckeconv.gaussq import GaussRational, to_mp

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)


@pytest.mark.parametrize("text, re_, im_, inexact", [
    ("1/3", Fraction(1, 3), 0, False),
    ("-7", Fraction(-7), 0, False),
    ("3-i", Fraction(3), Fraction(-1), False),
    ("i", 0, Fraction(1), False),
    ("1+i", Fraction(1), Fraction(1), False),
    ("-2/3+5/7i", Fraction(-2, 3), Fraction(5, 7), False),
    ("0.5", Fraction(1, 2), 0, True),
    ("1e-3j", 0, Fraction(1, 1000), True),
])
def test_parse(text, re_, im_, inexact):
    g = GaussRational.parse(text)
    assert (g.re, g.im, g.inexact) == (re_, im_, inexact)


@pytest.mark.parametrize("bad", ["", "1/0", "i+i", "abc", "1//2", "2+3"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        GaussRational.parse(bad)


@given(fractions, fractions)
def test_text_round_trip_is_lossless(a, b):
    g = GaussRational(a, b)
    back = GaussRational.parse(str(g))
    assert back == g and not back.inexact


@given(fractions, fractions, fractions, fractions)
def test_field_arithmetic_matches_complex(a, b, c, d):
    x, y = GaussRational(a, b), GaussRational(c, d)
    with mp.workdps(40):
        for got, want in ((x + y, to_mp(x) + to_mp(y)), (x * y, to_mp(x) * to_mp(y)), (x - y, to_mp(x) - to_mp(y))):
            assert abs(to_mp(got) - want) < mp.mpf(10) ** -30 * (1 + abs(want))
        if y != 0:
            assert abs(to_mp(x / y) - to_mp(x) / to_mp(y)) < mp.mpf(10) ** -30 * (1 + abs(to_mp(x) / to_mp(y)))


def test_predicates():
    assert GaussRational.of(3).is_odd_integer
    assert not GaussRational.of(4).is_odd_integer
    assert not GaussRational.parse("3+i").is_integer
    assert GaussRational.of(-5).as_int() == -5
    with pytest.raises(ValueError):
        GaussRational.parse("1/2").as_int()


def test_mpf_conversion_keeps_sign():
    g = GaussRational.of(mp.mpf("-0.5"))
    assert g.re == Fraction(-1, 2) and g.inexact
