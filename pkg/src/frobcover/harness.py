"""Experiments: near-optimal tuples with prescribed ratios, ratio tables, trend rows."""
from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .construction import construction_input, iter_constructions
from .covering import SimplexSpec, inhomogeneous_minimum_2d, mu0_bounds
from .errors import BudgetExhausted, DimensionTooSmall, InvalidAlpha
from .frobenius import (
    DEFAULT_MAX_A1,
    FrobeniusInstance,
    bounds_report,
    f_ratio,
    frobenius_number,
)
from .lattice import LatticeSpec, reduce_2d
from .mu0 import Mu0SearchResult, mu0_search_2d
from .reals import Surd, compare_reals

SQRT3 = Surd(3, 2)


@dataclass(frozen=True)
class DensityRequest:
    N: int
    alpha: tuple[Fraction, ...]
    epsilon: Fraction
    t_max: int = 10**4
    tstar_max: int = 8
    denom_limit: int = 64
    max_a1: int = DEFAULT_MAX_A1
    budget_s: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(Fraction(x) for x in self.alpha))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.N < 3:
            raise DimensionTooSmall("the density experiment needs N >= 3")
        a = self.alpha
        if len(a) != self.N - 1:
            raise InvalidAlpha(f"need {self.N - 1} ratios, got {len(a)}")
        if not (0 < a[0] and all(x < y for x, y in zip(a, a[1:])) and a[-1] < 1):
            raise InvalidAlpha(f"ratios must satisfy 0 < a_1 < ... < a_(N-1) < 1: {a}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class DensityResult:
    instance: FrobeniusInstance
    f: int
    deviations: tuple[Fraction, ...]
    ratio: Surd
    lattice_used: LatticeSpec
    mu_reference: Surd | int
    epsilon: Fraction
    t: int
    t_star: tuple[int, ...]
    predicted_ratio: Surd | None  # mu(S_alpha, L)/(det L * prod alpha)^(1/(N-1)), N = 3 only
    search_best_mu: Fraction | None
    tried: int
    alpha: tuple[Fraction, ...]

    @property
    def density_ok(self) -> bool:
        return all(x < self.epsilon for x in self.deviations)

    @property
    def sharpness_ok(self) -> bool:
        return compare_reals(self.ratio, self.mu_reference + self.epsilon) < 0

    def verify(self) -> bool:
        """Recompute f and both inequalities from scratch."""
        res = frobenius_number(self.instance)
        if res.f != self.f or f_ratio(self.instance, res).value != self.ratio:
            return False
        aN = self.instance.a[-1]
        devs = tuple(abs(a - Fraction(x, aN)) for a, x in zip(self.alpha, self.instance.a))
        return devs == self.deviations and self.density_ok and self.sharpness_ok


def _ratio_for(mu, det, alpha) -> Surd:
    k = len(alpha)
    return Surd(Fraction(mu) ** k / (det * math.prod(alpha)), k)


def _planar_lattice_for(alpha, search: Mu0SearchResult | None, base: LatticeSpec | None,
                        epsilon, denom_limit: int, search_kw: dict):
    """Lattice L with mu(S_alpha, L) close to optimal, small denominators.

    The best lattice for the standard triangle is pulled back through
    diag(1/alpha), reduced, normalized and snapped; the smallest denominator
    bound whose exact normalized minimum is within epsilon/4 of sqrt(3) wins,
    leaving the rest of the margin to finite t.
    """
    if base is None:
        if search is None:
            search = mu0_search_2d(**search_kw)
        base = search.best_lattice
    rows = [tuple(x / a for x, a in zip(r, alpha)) for r in base.basis]
    b1, b2 = reduce_2d(*rows)
    m = max(abs(x) for x in b1 + b2)
    S = SimplexSpec(tuple(alpha))
    target = SQRT3 + Fraction(epsilon) / 4
    best = None
    for limit in range(1, denom_limit + 1):
        b = tuple(tuple((x / m).limit_denominator(limit) for x in v) for v in (b1, b2))
        if b[0][0] * b[1][1] == b[0][1] * b[1][0]:
            continue
        L = LatticeSpec(b)
        mu = inhomogeneous_minimum_2d(S, L).hi
        pred = _ratio_for(mu, L.det_abs, alpha)
        if best is None or compare_reals(pred, best[1]) < 0:
            best = (L, pred)
        if compare_reals(pred, target) < 0:
            break
    return best[0], best[1], search


def density_experiment(req: DensityRequest, search: Mu0SearchResult | None = None,
                       lattice: LatticeSpec | None = None, search_kw: dict | None = None) -> DensityResult:
    """First constructed tuple whose ratios are within epsilon of alpha and whose
    normalized Frobenius number is below the reference value plus epsilon.

    For N = 3 the reference is sqrt(3); for N >= 4 it is N - 1, reached with
    the pull-back of the standard covering lattice.
    """
    deadline = None if not req.budget_s else time.monotonic() + req.budget_s
    alpha = req.alpha
    pred = None
    if req.N == 3:
        kw = {"starts": 4, "max_iters": 100}
        kw.update(search_kw or {})
        L, pred, search = _planar_lattice_for(alpha, search, lattice, req.epsilon,
                                              req.denom_limit, kw)
        ref = SQRT3
    else:
        # image of the standard covering lattice for S_alpha, up to scale
        n = req.N - 1
        L = lattice or LatticeSpec(tuple(tuple(Fraction(int(i == j)) / alpha[i] for j in range(n))
                                         for i in range(n)))
        ref = n
    inp = construction_input(L, alpha)
    target = ref + req.epsilon
    tried = 0
    best = None
    for out in iter_constructions(inp, req.t_max, req.tstar_max):
        if out.a[0] > req.max_a1:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
        tried += 1
        inst = out.instance
        res = frobenius_number(inst, req.max_a1)
        ratio = f_ratio(inst, res).value
        devs = tuple(abs(a - Fraction(x, inst.a[-1])) for a, x in zip(alpha, inst.a))
        dens = all(x < req.epsilon for x in devs)
        # prefer candidates meeting the ratio condition, then the smaller ratio
        key = (not dens, ratio)
        if best is None or key[0] < best[0][0] or (key[0] == best[0][0]
                                                   and compare_reals(ratio, best[0][1]) < 0):
            best = (key, inst, max(devs))
        if dens and compare_reals(ratio, target) < 0:
            return DensityResult(inst, res.f, devs, ratio, L, ref, req.epsilon, out.t, out.t_star,
                                 pred, search.best_mu if search else None, tried, alpha)
    msg = f"no qualifying tuple after {tried} candidates"
    if best is not None:
        (_, ratio), inst, dev = best
        best = (inst, ratio, dev)
        msg += f"; best ratio {float(ratio):.6f} at {inst} (max deviation {float(dev):.4g})"
    raise BudgetExhausted(msg, best=best)


# --- tables ------------------------------------------------------------------

def _triples(a_max: int):
    for a3 in range(3, a_max + 1):
        for a2 in range(2, a3):
            g23 = math.gcd(a2, a3)
            for a1 in range(1, a2):
                if math.gcd(a1, g23) == 1:
                    yield (a1, a2, a3)


def _sample_tuples(N: int, a_max: int, count: int, seed: int):
    rng = random.Random(seed)
    seen = set()
    if math.comb(a_max, N) < count:
        raise ValueError(f"fewer than {count} tuples with entries <= {a_max}")
    while len(seen) < count:
        a = tuple(sorted(rng.sample(range(1, a_max + 1), N)))
        if math.gcd(*a) == 1 and a not in seen:
            seen.add(a)
            yield a


TABLE_COLUMNS = ("a", "g", "f", "ratio", "corollary1_margin", "davison_margin",
                 "erdos_graham", "selmer", "vitek", "beck_diaz_robins", "rodseth")


def table_row(a: Sequence[int]) -> dict:
    """One table row.  Margins are exact integers, positive iff the bound holds strictly:
    f^(N-1) - (N-1)! prod a, and for N = 3 also f^2 - 3 prod a (equivalent to Davison's bound).
    """
    inst = FrobeniusInstance(tuple(a))
    res = frobenius_number(inst)
    rep = bounds_report(inst, res)
    k = inst.N - 1
    fact = math.factorial(k)
    row = {
        "a": inst.a,
        "g": res.g,
        "f": res.f,
        "ratio": f_ratio(inst, res).value,
        "corollary1_margin": res.f**k - fact * inst.product,
        "davison_margin": res.f**2 - 3 * inst.product if inst.N == 3 else None,
    }
    for name in TABLE_COLUMNS[6:]:
        e = rep[name]
        row[name] = e.value if e.applicable else None
    row["ok"] = row["corollary1_margin"] > 0
    return row


@dataclass(frozen=True)
class RatioTable:
    N: int
    rows: tuple[dict, ...]
    argmin: tuple[int, ...] | None
    min_ratio: Surd | None

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if not r["ok"])

    @property
    def passed(self) -> bool:
        return self.violations == 0


def ratio_table(N: int, a_max: int, seed: int = 0, count: int = 200,
                threads: int = 1) -> RatioTable:
    """Exhaustive over triples with a_3 <= a_max for N = 3; seeded sample otherwise."""
    if N < 3:
        raise DimensionTooSmall("ratio tables need N >= 3")
    tuples = list(_triples(a_max)) if N == 3 else list(_sample_tuples(N, a_max, count, seed))
    if threads > 1 and len(tuples) > 1000:
        with ProcessPoolExecutor(threads) as ex:
            rows = list(ex.map(table_row, tuples, chunksize=256))
    else:
        rows = [table_row(a) for a in tuples]
    best = None
    for r in rows:
        if best is None or compare_reals(r["ratio"], best["ratio"]) < 0:
            best = r
    return RatioTable(N, tuple(rows), best["a"] if best else None, best["ratio"] if best else None)


def trend_rows(Ns: Sequence[int] = range(3, 13)) -> list[dict]:
    """((N-1)!)^(1/(N-1)) / (N-1) against 1/e; informational only."""
    out = []
    for N in Ns:
        b = mu0_bounds(N)
        out.append({"N": N, "lower": b.lower, "upper": b.upper,
                    "lower_over_dim": b.lower_over_dim, "inv_e": 1 / math.e})
    return out


def all_instances(N: int, a_max: int):
    """Every valid N-tuple with entries <= a_max (small sweeps only)."""
    for a in itertools.combinations(range(1, a_max + 1), N):
        if math.gcd(*a) == 1:
            yield a
