import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frobcover.errors import (
    BudgetExceeded,
    DimensionTooSmall,
    NonPositiveElement,
    NotCoprime,
    NotStrictlyIncreasing,
    TooFewElements,
)
from frobcover.frobenius import (
    FrobeniusInstance,
    apery_set,
    bounds_report,
    f_ratio,
    frobenius_number,
    is_representable,
    validate_instance,
)
from frobcover.reals import Surd
from oracles import brute_force_apery, brute_force_g


def tuples(n_min=2, n_max=4, a_max=40):
    @st.composite
    def build(draw):
        n = draw(st.integers(n_min, n_max))
        a = sorted(draw(st.sets(st.integers(1, a_max), min_size=n, max_size=n)))
        assume(math.gcd(*a) == 1)
        return FrobeniusInstance(tuple(a))
    return build()


@pytest.mark.parametrize("a,g,f", [((3, 5), 7, 15), ((3, 5, 7), 4, 19), ((6, 10, 15), 29, 60),
                                   ((2, 3), 1, 6), ((1, 5), -1, 5)])
def test_known_values(a, g, f):
    r = frobenius_number(FrobeniusInstance(a))
    assert (r.g, r.f) == (g, f)


def test_apery_examples():
    assert apery_set(FrobeniusInstance((3, 5, 7))) == {0: 0, 1: 7, 2: 5}
    assert apery_set(FrobeniusInstance((2, 3))) == {0: 0, 1: 3}


@pytest.mark.parametrize("raw,err", [((4, 6), NotCoprime), ((5, 3), NotStrictlyIncreasing),
                                     ((3, 3, 4), NotStrictlyIncreasing), ((7,), TooFewElements),
                                     ((0, 3), NonPositiveElement), ((-2, 3), NonPositiveElement)])
def test_validation(raw, err):
    with pytest.raises(err):
        validate_instance(raw)


def test_budget():
    with pytest.raises(BudgetExceeded):
        frobenius_number(FrobeniusInstance((101, 103)), max_a1=100)


def test_representability_examples():
    inst = FrobeniusInstance((3, 5, 7))
    assert not is_representable(4, inst)
    assert not is_representable(19, inst, positive=True)
    assert is_representable(0, inst)
    assert is_representable(20, inst, positive=True)


@given(tuples())
def test_apery_matches_brute_force(inst):
    assert apery_set(inst) == brute_force_apery(inst.a)


@given(tuples())
def test_g_matches_brute_force(inst):
    assert frobenius_number(inst).g == brute_force_g(inst.a)


@given(tuples())
def test_f_is_the_positive_threshold(inst):
    r = frobenius_number(inst)
    assert r.f == r.g + sum(inst.a)
    assert not is_representable(r.f, inst, positive=True)
    for n in range(r.f + 1, r.f + inst.a[0] + 1):
        assert is_representable(n, inst, positive=True)


def test_two_generator_formula_sweep():
    for a1 in range(2, 40):
        for a2 in range(a1 + 1, 60):
            if math.gcd(a1, a2) == 1:
                r = frobenius_number(FrobeniusInstance((a1, a2)))
                assert r.g == (a1 - 1) * (a2 - 1) - 1 and r.f == a1 * a2


@given(tuples(3, 5))
def test_simplex_volume_bound_strict(inst):
    f = frobenius_number(inst).f
    k = inst.N - 1
    assert f**k > math.factorial(k) * inst.product


@given(tuples(3, 3, 60))
def test_three_generator_lower_bound(inst):
    assert frobenius_number(inst).f ** 2 >= 3 * inst.product


def test_f_ratio_examples():
    r = f_ratio(FrobeniusInstance((3, 5, 7)))
    assert (r.f, r.product) == (19, 105)
    assert abs(float(r) - 1.8542101386) < 1e-9  # 19 / sqrt(105)
    assert r.value == Surd(Fraction(361, 105), 2)
    assert f_ratio(FrobeniusInstance((6, 10, 15))).value.exact() == 2
    with pytest.raises(DimensionTooSmall):
        f_ratio(FrobeniusInstance((3, 5)))


def test_bounds_report_357():
    rep = bounds_report(FrobeniusInstance((3, 5, 7)))
    assert rep["erdos_graham"].value == 11
    assert rep["selmer"].value == 13 and rep["selmer"].note == "as-printed"
    assert rep["vitek"].value == 9
    assert abs(float(rep["beck_diaz_robins"].value) - 12.3431) < 1e-4
    assert abs(float(rep["davison"].value) - 2.748) < 1e-3
    assert abs(float(rep["simplex_volume"].value) - 14.491) < 1e-3
    assert all(e.satisfied for e in rep.entries if e.applicable)
    assert not rep["sharp"].applicable


def test_bounds_report_two_generators():
    rep = bounds_report(FrobeniusInstance((2, 3)))
    assert rep["sharp"].value == 1 and rep["sharp"].satisfied
    assert rep["erdos_graham"].value == 4 and rep["erdos_graham"].satisfied
    assert not rep["vitek"].applicable and not rep["davison"].applicable
    assert rep.f == 6


@given(tuples(3, 4, 50))
def test_lower_bounds_always_hold(inst):
    assert bounds_report(inst).lower_bounds_hold
