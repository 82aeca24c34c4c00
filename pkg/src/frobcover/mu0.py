"""Search for the absolute inhomogeneous minimum of the standard triangle.

Determinant-one planar lattices are parametrized by the basis
{(p, 0), (q, 1/p)}.  Every probe is snapped to rationals and evaluated with
the exact planar inhomogeneous minimum, so each reported value is a
certified upper bound for that lattice.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from .covering import DEFAULT_REL_TOL, SimplexSpec, inhomogeneous_minimum_2d
from .lattice import LatticeSpec

P_RANGE = (0.25, 4.0)
Q_RANGE = (-2.0, 2.0)


@dataclass(frozen=True)
class Probe:
    p: Fraction
    q: Fraction
    mu_lo: Fraction
    mu_hi: Fraction

    @property
    def key(self):
        return (self.mu_hi, self.p, self.q)


@dataclass(frozen=True)
class Mu0SearchResult:
    best_mu: Fraction  # certified upper bound of mu for best_lattice
    best_interval: tuple[Fraction, Fraction]
    best_lattice: LatticeSpec
    best_params: tuple[Fraction, Fraction]
    gamma_estimate: Fraction  # best_mu ** -2
    trace: tuple[Probe, ...]
    exhausted: bool = False


def param_lattice(p, q) -> LatticeSpec:
    p, q = Fraction(p), Fraction(q)
    return LatticeSpec(((p, Fraction(0)), (q, 1 / p)))


def _snap(x: float, denom_limit: int) -> Fraction:
    return Fraction(x).limit_denominator(denom_limit)


def _run_start(args):
    x0, max_iters, denom_limit, rel_tol, deadline = args
    S = SimplexSpec.standard(2)
    cache: dict[tuple[Fraction, Fraction], Probe] = {}
    out_of_time = False

    def objective(v):
        nonlocal out_of_time
        p, q = float(v[0]), float(v[1])
        # outside the box: penalize by distance so the simplex walks back
        pen = max(0.0, P_RANGE[0] - p, p - P_RANGE[1]) + max(0.0, Q_RANGE[0] - q, q - Q_RANGE[1])
        if pen > 0:
            return 10.0 + pen
        pr, qr = _snap(p, denom_limit), _snap(q, denom_limit)
        if pr <= 0:
            return 10.0
        key = (pr, qr)
        if key not in cache:
            # the first probe of every start is always evaluated
            if cache and deadline is not None and time.monotonic() > deadline:
                out_of_time = True
                return 10.0
            b = inhomogeneous_minimum_2d(S, param_lattice(pr, qr), rel_tol)
            cache[key] = Probe(pr, qr, b.lo, b.hi)
        return float(cache[key].mu_hi)

    step = 0.15
    simplex = np.array([x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]])
    minimize(objective, np.array(x0), method="Nelder-Mead",
             options={"maxiter": max_iters, "initial_simplex": simplex,
                      "xatol": 1e-9, "fatol": 1e-12})
    return list(cache.values()), out_of_time


def start_points(starts: int, seed: int) -> list[tuple[float, float]]:
    """Z^2 first, then seeded uniform points of the parameter box."""
    rng = random.Random(seed)
    pts = [(1.0, 0.0)]
    while len(pts) < starts:
        pts.append((rng.uniform(*P_RANGE), rng.uniform(*Q_RANGE)))
    return pts[:starts]


def mu0_search_2d(starts: int = 16, max_iters: int = 200, denom_limit: int = 2**16,
                  seed: int = 0, rel_tol=DEFAULT_REL_TOL, threads: int = 1,
                  budget_s: float | None = None) -> Mu0SearchResult:
    """Multistart Nelder-Mead over determinant-one lattices, minimizing mu(S_2, L)."""
    deadline = None if not budget_s else time.monotonic() + budget_s
    jobs = [((p, q), max_iters, denom_limit, Fraction(rel_tol), deadline)
            for p, q in start_points(starts, seed)]
    if threads > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_run_start, jobs))
    else:
        results = [_run_start(j) for j in jobs]
    # deterministic reduction over all probes
    seen = {}
    exhausted = False
    for probes, ran_out in results:
        exhausted |= ran_out
        for pr in probes:
            seen[(pr.p, pr.q)] = pr
    trace = tuple(sorted(seen.values(), key=lambda pr: (pr.p, pr.q)))
    best = min(trace, key=lambda pr: pr.key)
    return Mu0SearchResult(best.mu_hi, (best.mu_lo, best.mu_hi), param_lattice(best.p, best.q),
                           (best.p, best.q), 1 / best.mu_hi**2, trace, exhausted)
