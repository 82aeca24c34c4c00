from fractions import Fraction

import pytest

from frobcover.covering import SimplexSpec, inhomogeneous_minimum_2d
from frobcover.mu0 import mu0_search_2d, param_lattice, start_points
from frobcover.reals import Surd


@pytest.fixture(scope="module")
def small_search():
    return mu0_search_2d(starts=2, max_iters=40)


def test_param_lattice_det_one():
    assert param_lattice(Fraction(3, 2), Fraction(-1, 5)).det_abs == 1


def test_starts_begin_at_square_lattice():
    pts = start_points(5, 0)
    assert pts[0] == (1.0, 0.0) and len(pts) == 5
    assert start_points(5, 0) == pts


def test_square_lattice_probe(small_search):
    z2 = [p for p in small_search.trace if (p.p, p.q) == (1, 0)]
    assert z2 and z2[0].mu_hi == 2
    assert small_search.best_mu < Fraction(174, 100)


def test_probes_respect_volume_bound(small_search):
    lower = Surd(2, 2)
    for p in small_search.trace:
        assert p.mu_lo > lower - Fraction(1, 10**6)
        assert p.mu_hi >= small_search.best_mu


def test_gamma_and_best_are_consistent(small_search):
    r = small_search
    assert r.gamma_estimate == 1 / r.best_mu**2
    b = inhomogeneous_minimum_2d(SimplexSpec.standard(2), r.best_lattice)
    assert b.hi == r.best_mu


def test_search_is_deterministic(small_search):
    again = mu0_search_2d(starts=2, max_iters=40)
    assert again.best_mu == small_search.best_mu and again.trace == small_search.trace


def test_threads_do_not_change_result(small_search):
    par = mu0_search_2d(starts=2, max_iters=40, threads=2)
    assert par.best_mu == small_search.best_mu and par.best_params == small_search.best_params


def test_budget_flag():
    r = mu0_search_2d(starts=3, max_iters=200, budget_s=1e-9)
    assert r.exhausted
    assert r.best_mu <= 2
