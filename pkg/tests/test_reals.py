from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobcover.reals import Surd, compare_reals, format_rational, format_real, iroot, root_bracket


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@given(st.fractions(min_value=0, max_value=10**6), st.integers(1, 5), st.integers(8, 80))
def test_root_bracket_contains_root(x, k, bits):
    lo, hi = root_bracket(x, k, bits)
    assert lo**k <= x <= hi**k
    assert hi - lo <= Fraction(1, 2**bits)


def test_sqrt3_bracket():
    lo, hi = Surd(3, 2).interval(100)
    assert lo * lo < 3 < hi * hi


def test_surd_compare_exact():
    s = Surd(3, 2)
    assert s > Fraction(17320508, 10**7)
    assert s < Fraction(17320509, 10**7)
    assert Surd(4, 2).compare(2) == 0
    assert Surd(4, 2).exact() == 2
    assert Surd(2, 2).exact() is None


@given(st.fractions(min_value=0, max_value=1000), st.fractions(min_value=-50, max_value=50))
def test_surd_compare_agrees_with_square(x, q):
    s = Surd(x, 2)
    expected = 1 if q < 0 else (x > q * q) - (x < q * q)
    assert s.compare(q) == expected


def test_compare_reals_two_surds():
    assert compare_reals(Surd(2, 2), Surd(3, 2)) == -1
    assert compare_reals(Surd(3, 2) + Fraction(1, 10), Surd(3, 2)) == 1
    assert compare_reals(Surd(9, 2), 3) == 0
    assert compare_reals(Fraction(1, 3), Fraction(1, 2)) == -1


def test_formatting():
    assert format_rational(Fraction(19)) == "19"
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_real(Surd(3, 2), 10) == "1.7320508076"
    assert format_real(Fraction(0)) == "0.000000000000"
    assert format_real(Fraction(1, 3), 3) == "0.333"


def test_surd_rejects_negative():
    with pytest.raises(ValueError):
        Surd(-1, 2)
