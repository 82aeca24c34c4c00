import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frobcover.covering import (
    KANNAN_SHRINK,
    SimplexSpec,
    covering_need,
    inhomogeneous_minimum_2d,
    is_covering_2d,
    kannan_check,
    mu0_bounds,
    point_is_covered,
    scaling_check,
)
from frobcover.errors import DegenerateSimplex, DimensionTooSmall
from frobcover.frobenius import FrobeniusInstance, frobenius_number
from frobcover.lattice import LatticeSpec, integer_lattice, lattice_from_tuple, standard_covering_lattice
from frobcover.reals import Surd
from oracles import staircase_mu

S2 = SimplexSpec.standard(2)
Z2 = integer_lattice(2)
small = st.fractions(min_value=Fraction(-3), max_value=Fraction(3), max_denominator=4)
weights = st.fractions(min_value=Fraction(1, 3), max_value=Fraction(4), max_denominator=3)


@st.composite
def planar_lattices(draw):
    B = [[draw(small) for _ in range(2)] for _ in range(2)]
    assume(B[0][0] * B[1][1] != B[0][1] * B[1][0])
    return LatticeSpec(tuple(tuple(r) for r in B))


def test_simplex_basics():
    assert S2.is_standard and S2.volume == Fraction(1, 2)
    with pytest.raises(DegenerateSimplex):
        SimplexSpec((1, 0))
    S = SimplexSpec.of_tuple(FrobeniusInstance((3, 5, 7)))
    assert S.weights == (3, 5)
    assert SimplexSpec.of_ratios(FrobeniusInstance((3, 5, 7))).weights == (Fraction(3, 7), Fraction(5, 7))


def test_covering_examples():
    assert is_covering_2d(S2, 1, standard_covering_lattice(3)).covered
    v = is_covering_2d(S2, Fraction(1, 2), Z2)
    assert not v.covered and v.witness is not None and v.remainder_area > 0
    inst = FrobeniusInstance((3, 5, 7))
    S, L = SimplexSpec.of_tuple(inst), lattice_from_tuple(inst)
    assert is_covering_2d(S, 19, L).covered
    assert not is_covering_2d(S, 19 * KANNAN_SHRINK, L).covered


def test_minimum_examples():
    assert tuple(inhomogeneous_minimum_2d(S2, Z2)) == (2, 2)
    assert tuple(inhomogeneous_minimum_2d(S2, standard_covering_lattice(3))) == (1, 1)
    inst = FrobeniusInstance((3, 5, 7))
    b = inhomogeneous_minimum_2d(SimplexSpec.of_tuple(inst), lattice_from_tuple(inst))
    assert b.lo <= 19 <= b.hi


@pytest.mark.parametrize("a,f", [((3, 5, 7), 19), ((6, 10, 15), 60), ((2, 3, 5), 11)])
def test_kannan_examples(a, f):
    rep = kannan_check(FrobeniusInstance(a))
    assert rep.passed and rep.f == f and rep.mu_interval == (f, f)
    assert rep.chain_consistent and rep.ratio_simplex_covered


def test_kannan_sampled_mode():
    rep = kannan_check(FrobeniusInstance((3, 5, 7, 11)), samples=500)
    assert rep.mode == "sampled" and rep.passed
    assert rep.witness is not None


def test_kannan_needs_three():
    with pytest.raises(DimensionTooSmall):
        kannan_check(FrobeniusInstance((3, 5)))


def test_scaling_examples():
    assert scaling_check(S2, Z2, 2, 3)
    assert scaling_check(S2, Z2, Fraction(3, 2), 2)
    assert scaling_check(S2, Z2, Fraction(7, 4), 1)


def test_mu0_bounds_examples():
    b = mu0_bounds(3)
    assert b.lower == Surd(2, 2) and b.upper == 2 and b.gamma_upper == Fraction(1, 2)
    b4 = mu0_bounds(4)
    assert abs(float(b4.lower) - 1.81712) < 1e-5 and b4.upper == 3 and b4.gamma_upper == Fraction(1, 6)
    assert b.lower < Fraction(17320508, 10**7) < b.upper


@given(planar_lattices(), weights, weights)
def test_minimum_matches_staircase_oracle(L, w1, w2):
    S = SimplexSpec((w1, w2))
    b = inhomogeneous_minimum_2d(S, L)
    assert b.exact
    assert b.lo == staircase_mu((w1, w2), L.basis)


@given(st.integers(4, 25), st.integers(0, 10**6))
def test_oracle_reproduces_f(a3, seed):
    rng = random.Random(seed)
    a1, a2 = sorted(rng.sample(range(1, a3), 2))
    assume(math.gcd(a1, a2, a3) == 1)
    inst = FrobeniusInstance((a1, a2, a3))
    assert staircase_mu((a1, a2), lattice_from_tuple(inst).basis) == frobenius_number(inst).f


@given(planar_lattices(), st.lists(st.fractions(min_value=Fraction(1, 8), max_value=Fraction(6),
                                                max_denominator=8), min_size=2, max_size=6))
def test_verdict_monotone(L, ladder):
    ladder = sorted(set(ladder))
    verdicts = [is_covering_2d(S2, s, L).covered for s in ladder]
    # once covered, stays covered
    assert verdicts == sorted(verdicts)


@given(planar_lattices(), st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=6))
def test_witness_is_uncovered(L, sigma):
    v = is_covering_2d(S2, sigma, L)
    assert v.covered == (v.remainder_area == 0) == (v.witness is None)
    if v.witness is not None:
        assert not point_is_covered(S2, sigma, L, v.witness)
        assert covering_need(S2, L, v.witness, 64) > sigma


@given(planar_lattices(), st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=6))
def test_translation_invariance(L, sigma):
    p = (Fraction(1, 6), Fraction(1, 6))
    shifted = is_covering_2d(S2, sigma, L, offset=(-sigma * p[0], -sigma * p[1]))
    assert shifted.covered == is_covering_2d(S2, sigma, L).covered


@given(planar_lattices(), st.fractions(min_value=Fraction(1, 4), max_value=Fraction(4), max_denominator=6),
       st.fractions(min_value=Fraction(1, 5), max_value=Fraction(5), max_denominator=5))
def test_scaling_property(L, sigma, t):
    assert scaling_check(S2, L, sigma, t)


def test_guard_enumeration_agrees():
    inst = FrobeniusInstance((4, 9, 11))
    S, L = SimplexSpec.of_tuple(inst), lattice_from_tuple(inst)
    f = frobenius_number(inst).f
    assert is_covering_2d(S, f, L, guard=True).covered
    assert not is_covering_2d(S, f - 1, L, guard=True).covered


def test_continuity_qualitative():
    base = ((Fraction(1), Fraction(0)), (Fraction(1, 3), Fraction(1)))
    mu = inhomogeneous_minimum_2d(S2, LatticeSpec(base)).lo
    gaps = []
    for delta in (Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000)):
        moved = LatticeSpec(((base[0][0] + delta, base[0][1]), (base[1][0], base[1][1] + delta)))
        gaps.append(abs(inhomogeneous_minimum_2d(S2, moved).lo - mu))
    assert gaps[0] > gaps[1] > gaps[2]
