from fractions import Fraction

import pytest

from hhrec.rational import Rational, format_rational, is_integer, parse_rational


def test_rational_is_fraction():
    assert Rational is Fraction


@pytest.mark.parametrize("text,value", [
    ("3/4", Fraction(3, 4)),
    ("-3/4", Fraction(-3, 4)),
    ("+7", Fraction(7)),
    ("0", Fraction(0)),
    ("12/4", Fraction(3)),
])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "3/", "/4", "1/2/3", "a", "1e3", "3 / 4"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(-66, 143)) == "-6/13"  # canonical form reduces
    assert format_rational(Fraction(14)) == "14"


def test_canonical_form_after_operations():
    # den > 0 and gcd(|num|, den) = 1 hold after arbitrary arithmetic
    vals = [Fraction(6, -4), Fraction(2, 6) + Fraction(1, 6), Fraction(3, 7) * Fraction(7, 3)]
    for v in vals:
        assert v.denominator > 0
        from math import gcd
        assert gcd(abs(v.numerator), v.denominator) == 1


def test_is_integer():
    assert is_integer(Fraction(8, 4))
    assert not is_integer(Fraction(1, 3))


def test_equality_agrees_with_cross_multiplication():
    a, b = Fraction(6, 8), Fraction(3, 4)
    assert a == b and a.numerator * b.denominator == b.numerator * a.denominator
