"""Lattice coverings of weighted simplices.

Planar covering decisions are exact: the fundamental cell of the lattice is
cut by every translate of ``sigma * S`` that meets it, using regularized
polygon subtraction over the rationals.  A zero-area remainder means the
translates cover the plane; otherwise an interior point of the remainder is
returned as a witness.

Internally the plane is mapped to the coordinates of a reduced lattice
basis, so the lattice becomes Z^2 and the cell the unit square.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from gmpy2 import mpq

from .errors import (
    DegenerateSimplex,
    DimensionMismatch,
    DimensionTooSmall,
    ToleranceTooSmall,
    UnboundedEnumeration,
)
from .frobenius import FrobeniusInstance, f_ratio, frobenius_number
from .lattice import LatticeSpec, lattice_from_tuple, reduce_2d, triangular_basis
from .reals import Surd, root_bracket

DEFAULT_REL_TOL = Fraction(1, 2**20)
KANNAN_SHRINK = 1 - Fraction(1, 2**12)
MAX_TRANSLATES = 10**6


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class SimplexSpec:
    """The body {x : x_i >= 0, sum w_i x_i <= 1}."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if not w or any(x <= 0 for x in w):
            raise DegenerateSimplex(f"weights must be positive: {w}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def standard(cls, dim: int) -> "SimplexSpec":
        return cls((Fraction(1),) * dim)

    @classmethod
    def of_tuple(cls, inst: FrobeniusInstance) -> "SimplexSpec":
        """Weights a_1, ..., a_{N-1}."""
        return cls(tuple(Fraction(x) for x in inst.a[:-1]))

    @classmethod
    def of_ratios(cls, inst: FrobeniusInstance) -> "SimplexSpec":
        """Weights a_i / a_N, i < N."""
        return cls(tuple(Fraction(x, inst.a[-1]) for x in inst.a[:-1]))

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    @property
    def volume(self) -> Fraction:
        return 1 / (math.factorial(self.dim) * math.prod(self.weights))

    def scaled(self, t) -> "SimplexSpec":
        """The body t * S."""
        t = Fraction(t)
        return SimplexSpec(tuple(w / t for w in self.weights))

    def vertices(self, sigma=1) -> list[tuple[Fraction, ...]]:
        sigma = Fraction(sigma)
        n = self.dim
        out = [tuple(Fraction(0) for _ in range(n))]
        for i, w in enumerate(self.weights):
            out.append(tuple(sigma / w if j == i else Fraction(0) for j in range(n)))
        return out

    def gauge(self, y: Sequence) -> Fraction | None:
        """Least sigma >= 0 with y in sigma * S, or None when y is outside the cone."""
        if any(v < 0 for v in y):
            return None
        return sum(w * v for w, v in zip(self.weights, y))


@dataclass(frozen=True)
class CoveringVerdict:
    covered: bool
    witness: tuple[Fraction, Fraction] | None
    translates_used: int
    remainder_area: Fraction
    cell: tuple = field(default=(), compare=False)  # basis rows spanning the cell tested
    pieces: tuple = field(default=(), compare=False, repr=False)  # remainder polygons

    def __post_init__(self):
        if self.covered != (self.remainder_area == 0) or self.covered != (self.witness is None):
            raise AssertionError("inconsistent covering verdict")


# --- planar kernel ----------------------------------------------------------

def _clip(poly, a, b, c):
    """Part of a convex polygon with a*x + b*y + c >= 0."""
    out = []
    n = len(poly)
    vals = [a * x + b * y + c for x, y in poly]
    for i in range(n):
        p, vp = poly[i], vals[i]
        j = i + 1 if i + 1 < n else 0
        q, vq = poly[j], vals[j]
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area2(poly):
    s = 0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[i + 1 if i + 1 < n else 0]
        s += x1 * y2 - x2 * y1
    return s


def _solid(poly) -> bool:
    return len(poly) >= 3 and _area2(poly) != 0


@lru_cache(maxsize=4096)
def _cell_frame(basis):
    """Reduced basis and its inverse, as mpq, for a rational planar basis."""
    b1, b2 = reduce_2d(basis[0], basis[1])
    d = b1[0] * b2[1] - b1[1] * b2[0]
    return (b1, b2), tuple(mpq(x.numerator, x.denominator) for x in (*b1, *b2, d))


def _to_cell(frame, x, y):
    b10, b11, b20, b21, d = frame
    return (x * b21 - y * b20) / d, (b10 * y - b11 * x) / d


def _from_cell(frame, u, v):
    b10, b11, b20, b21, _ = frame
    return u * b10 + v * b20, u * b11 + v * b21


def _check_planar(S: SimplexSpec, L: LatticeSpec):
    if S.dim != 2 or L.dim != 2:
        raise DimensionMismatch("planar covering needs a 2-dimensional simplex and lattice")


def _remainder(S: SimplexSpec, sigma, L: LatticeSpec, offset=None, inflate: int = 0):
    """Remainder polygons of the unit cell (cell coordinates) and translate count."""
    cell, frame = _cell_frame(L.basis)
    sigma = mpq(sigma.numerator, sigma.denominator)
    ox, oy = (mpq(0), mpq(0)) if offset is None else (mpq(*_nd(offset[0])), mpq(*_nd(offset[1])))
    w1, w2 = (mpq(w.numerator, w.denominator) for w in S.weights)
    verts = [_to_cell(frame, ox, oy),
             _to_cell(frame, ox + sigma / w1, oy),
             _to_cell(frame, ox, oy + sigma / w2)]
    if _area2(verts) < 0:
        verts = [verts[0], verts[2], verts[1]]
    halves = []
    for i in range(3):
        p, q = verts[i], verts[(i + 1) % 3]
        a, b = p[1] - q[1], q[0] - p[0]
        halves.append((a, b, -(a * p[0] + b * p[1])))
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    kx0, kx1 = math.ceil(-max(xs)) - inflate, math.floor(1 - min(xs)) + inflate
    ky0, ky1 = math.ceil(-max(ys)) - inflate, math.floor(1 - min(ys)) + inflate
    if (kx1 - kx0 + 1) * (ky1 - ky0 + 1) > MAX_TRANSLATES:
        raise UnboundedEnumeration("too many candidate translates")
    zero, one = mpq(0), mpq(1)
    square = [(zero, zero), (one, zero), (one, one), (zero, one)]
    pieces = [square]
    used = 0
    for kx in range(kx0, kx1 + 1):
        for ky in range(ky0, ky1 + 1):
            hs = [(a, b, c - a * kx - b * ky) for a, b, c in halves]
            # separating-axis rejection against the closed square
            if any(all(a * x + b * y + c <= 0 for x, y in square) for a, b, c in hs):
                continue
            used += 1
            nxt = []
            for P in pieces:
                vals = [[a * x + b * y + c for x, y in P] for a, b, c in hs]
                if any(all(v <= 0 for v in vs) for vs in vals):
                    nxt.append(P)
                    continue
                if all(v >= 0 for vs in vals for v in vs):
                    continue
                cur = P
                for a, b, c in hs:
                    outside = _clip(cur, -a, -b, -c)
                    if _solid(outside):
                        nxt.append(outside)
                    cur = _clip(cur, a, b, c)
                    if not _solid(cur):
                        break
            pieces = nxt
            if not pieces:
                return cell, frame, [], used
    return cell, frame, pieces, used


def _nd(x):
    x = Fraction(x)
    return x.numerator, x.denominator


def is_covering_2d(S: SimplexSpec, sigma, L: LatticeSpec, offset=None,
                   guard: bool = False) -> CoveringVerdict:
    """Decide whether {sigma*S + offset + l : l in L} covers the plane."""
    _check_planar(S, L)
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    cell, frame, pieces, used = _remainder(S, sigma, L, offset)
    if guard:
        _, _, pieces2, _ = _remainder(S, sigma, L, offset, inflate=1)
        a1 = sum(_area2(p) for p in pieces)
        a2 = sum(_area2(p) for p in pieces2)
        if a1 != a2:
            raise AssertionError("translate enumeration missed a translate")
    if not pieces:
        return CoveringVerdict(True, None, used, Fraction(0), cell)
    det = abs(frame[4])
    area = _frac(sum(_area2(p) for p in pieces) * det / 2)
    big = max(pieces, key=_area2)
    n = len(big)
    u = sum(p[0] for p in big) / n
    v = sum(p[1] for p in big) / n
    x, y = _from_cell(frame, u, v)
    return CoveringVerdict(False, (_frac(x), _frac(y)), used, area, cell,
                           tuple(tuple((_frac(_from_cell(frame, *p)[0]), _frac(_from_cell(frame, *p)[1]))
                                       for p in P) for P in pieces))


# --- point-wise coverage in any dimension -----------------------------------

def lattice_points_in_box(L: LatticeSpec, lo: Sequence, hi: Sequence, limit: int = MAX_TRANSLATES):
    """All lattice points l with lo <= l <= hi componentwise."""
    if L.dim == 2:
        return _planar_points_in_box(L, lo, hi, limit)
    T = triangular_basis(L)
    n = L.dim
    out = []

    def rec(j, partial):
        if j == n:
            out.append(tuple(partial))
            if len(out) > limit:
                raise UnboundedEnumeration("too many lattice points in box")
            return
        tjj = T[j][j]
        base = partial[j]
        for c in range(math.ceil((lo[j] - base) / tjj), math.floor((hi[j] - base) / tjj) + 1):
            rec(j + 1, [p + c * t for p, t in zip(partial, T[j])])

    rec(0, [Fraction(0)] * n)
    return out


def _planar_points_in_box(L, lo, hi, limit):
    # coefficient ranges from the box corners in reduced-basis coordinates
    (b1, b2), _ = _cell_frame(L.basis)
    d = b1[0] * b2[1] - b1[1] * b2[0]
    us, vs = [], []
    for x in (lo[0], hi[0]):
        for y in (lo[1], hi[1]):
            us.append((x * b2[1] - y * b2[0]) / d)
            vs.append((b1[0] * y - b1[1] * x) / d)
    u0, u1 = math.ceil(min(us)), math.floor(max(us))
    v0, v1 = math.ceil(min(vs)), math.floor(max(vs))
    if (u1 - u0 + 1) * (v1 - v0 + 1) > limit:
        raise UnboundedEnumeration("too many lattice points in box")
    out = []
    for u in range(u0, u1 + 1):
        px, py = u * b1[0], u * b1[1]
        for v in range(v0, v1 + 1):
            x, y = px + v * b2[0], py + v * b2[1]
            if lo[0] <= x <= hi[0] and lo[1] <= y <= hi[1]:
                out.append((x, y))
    return out


def covering_need(S: SimplexSpec, L: LatticeSpec, x: Sequence, cap, offset=None,
                  strict: bool = False) -> Fraction | None:
    """min over l in L of the least sigma with x in sigma*S + offset + l, if it is <= cap.

    With ``strict`` only lattice points strictly below x in every coordinate
    count; the result is then the limit of the need at points x - delta*(1,..,1)
    as delta -> 0+, which is still a lower bound on the inhomogeneous minimum.
    """
    if len(x) != S.dim or L.dim != S.dim:
        raise DimensionMismatch("point, simplex and lattice dimensions differ")
    cap = Fraction(cap)
    y = [Fraction(v) - (Fraction(offset[i]) if offset is not None else 0) for i, v in enumerate(x)]
    lo = [v - cap / w for v, w in zip(y, S.weights)]
    best = None
    for l in lattice_points_in_box(L, lo, y):
        if strict and any(a >= b for a, b in zip(l, y)):
            continue
        g = S.gauge([a - b for a, b in zip(y, l)])
        if g is not None and g <= cap and (best is None or g < best):
            best = g
    return best


def point_is_covered(S: SimplexSpec, sigma, L: LatticeSpec, x: Sequence, offset=None) -> bool:
    """Exact test of x against every translate of sigma*S that could contain it."""
    return covering_need(S, L, x, sigma, offset) is not None


# --- inhomogeneous minimum --------------------------------------------------

@dataclass(frozen=True)
class MuBracket:
    """lo <= mu(S, L) <= hi.  When lo == hi the minimum is known exactly."""

    lo: Fraction
    hi: Fraction
    checks: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __iter__(self):
        return iter((self.lo, self.hi))


def _deep_hole_bound(S, L, verdict, cap) -> Fraction:
    """Lower bound on mu from the vertices and centroids of the remainder pieces.

    The deepest hole is a staircase corner of the lattice, which shows up as
    the upper-right vertex of a small remainder piece; its one-sided need is
    then exactly mu.
    """
    best = Fraction(0)
    for P in verdict.pieces:
        n = len(P)
        pts = list(P) + [(sum(p[0] for p in P) / n, sum(p[1] for p in P) / n)]
        for x in pts:
            need = covering_need(S, L, x, cap, strict=True)
            best = max(best, cap if need is None else need)
    return best


def inhomogeneous_minimum_2d(S: SimplexSpec, L: LatticeSpec, rel_tol=DEFAULT_REL_TOL,
                             max_iter: int = 400) -> MuBracket:
    """Bracket mu(S, L) = inf{sigma : L is a covering lattice of sigma*S}.

    Bisection on sigma with exact covering checks.  Each failed check also
    yields a lower bound from the uncovered witness points; when that bound
    turns out to cover, mu is attained there and is returned exactly.
    """
    _check_planar(S, L)
    rel_tol = Fraction(rel_tol)
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    checks = 0

    def cover(s):
        nonlocal checks
        checks += 1
        if checks > max_iter:
            raise ToleranceTooSmall(f"no bracket within {max_iter} covering checks")
        return is_covering_2d(S, s, L)

    # area condition: sigma^2 * vol(S) >= det L is necessary
    lo = root_bracket(L.det_abs / S.volume, 2, 40)[0]
    v_lo = cover(lo)
    while v_lo.covered:
        lo /= 2
        v_lo = cover(lo)
    hi = lo * 2
    while not (v := cover(hi)).covered:
        lo, v_lo = hi, v
        hi *= 2
    while hi > lo * (1 + rel_tol):
        lb = _deep_hole_bound(S, L, v_lo, hi)
        if lb >= hi:
            return MuBracket(hi, hi, checks)
        if lb > lo:
            v = cover(lb)
            if v.covered:
                return MuBracket(lb, lb, checks)
            lo, v_lo = lb, v
            if hi <= lo * (1 + rel_tol):
                break
        mid = (lo + hi) / 2
        v = cover(mid)
        if v.covered:
            hi = mid
        else:
            lo, v_lo = mid, v
    return MuBracket(lo, hi, checks)


# --- identities and bounds --------------------------------------------------

def scaling_check(S: SimplexSpec, L: LatticeSpec, sigma, t) -> bool:
    """Covering verdicts agree for (S, sigma, L), (S, t*sigma, tL), (tS, sigma/t, L), (tS, sigma, tL)."""
    sigma, t = Fraction(sigma), Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    tL = LatticeSpec(tuple(tuple(t * x for x in r) for r in L.basis))
    tS = S.scaled(t)
    verdicts = [
        is_covering_2d(S, sigma, L).covered,
        is_covering_2d(S, t * sigma, tL).covered,
        is_covering_2d(tS, sigma / t, L).covered,
        is_covering_2d(tS, sigma, tL).covered,
    ]
    return len(set(verdicts)) == 1


@dataclass(frozen=True)
class KannanReport:
    instance: FrobeniusInstance
    f: int
    mode: str  # "exact" or "sampled"
    covered_at_f: bool | None
    uncovered_below_f: bool | None
    witness: tuple | None
    mu_interval: tuple[Fraction, Fraction] | None
    ratio_simplex_covered: bool | None  # f/a_N * S_alpha covered by L_a
    normalized_mu: Surd  # mu(S_alpha, L_u) = f / a_N^(1 + 1/(N-1))
    ratio: Surd  # f / (a_1...a_N)^(1/(N-1))
    chain_consistent: bool
    ratio_above_lower: bool
    samples: int = 0
    inconclusive: bool = False

    @property
    def passed(self) -> bool:
        core = self.covered_at_f and self.chain_consistent and self.ratio_above_lower
        if self.mode == "exact":
            return bool(core and self.uncovered_below_f and self.ratio_simplex_covered)
        return bool(core and (self.uncovered_below_f or self.inconclusive))


def kannan_check(inst: FrobeniusInstance, samples: int = 10**4, seed: int = 0,
                 with_interval: bool = True) -> KannanReport:
    """Check that f is exactly the covering threshold of S_a by L_a.

    N = 3 is decided exactly; N >= 4 tests pseudorandom cell points plus the
    lattice-coset corners where the deepest holes sit.
    """
    if inst.N < 3:
        raise DimensionTooSmall("the covering picture needs N >= 3")
    res = frobenius_number(inst)
    f = res.f
    k = inst.N - 1
    aN = inst.a[-1]
    S = SimplexSpec.of_tuple(inst)
    L = lattice_from_tuple(inst)
    below = f * KANNAN_SHRINK
    normalized_mu = Surd(Fraction(f**k, aN**inst.N), k)
    ratio = f_ratio(inst, res).value
    alpha_prod = Fraction(math.prod(inst.a[:-1]), aN**k)
    # mu(S_a, L_a) = a_N^(1+1/k) mu(S_alpha, L_u), and dividing by (prod alpha)^(1/k) gives the ratio
    chain = normalized_mu.radicand / alpha_prod == ratio.radicand
    # ratio > ((N-1)!)^(1/(N-1)), compared in integers
    above = f**k > math.factorial(k) * inst.product
    if inst.N == 3:
        top = is_covering_2d(S, f, L)
        bot = is_covering_2d(S, below, L)
        witness = bot.witness
        if witness is not None and point_is_covered(S, below, L, witness):
            raise AssertionError("witness re-check failed")
        Salpha = SimplexSpec.of_ratios(inst)
        alpha_ok = (is_covering_2d(Salpha, Fraction(f, aN), L).covered
                    and not is_covering_2d(Salpha, Fraction(f, aN) * KANNAN_SHRINK, L).covered)
        interval = None
        if with_interval:
            b = inhomogeneous_minimum_2d(S, L)
            interval = (b.lo, b.hi)
        return KannanReport(inst, f, "exact", top.covered, not bot.covered, witness, interval,
                            alpha_ok, normalized_mu, ratio, chain, above)
    rng = random.Random(seed)
    T = triangular_basis(L)
    pts = []
    den = 1 << 20
    for _ in range(samples):
        c = [Fraction(rng.randrange(den), den) for _ in range(k)]
        pts.append(tuple(sum(c[i] * T[i][j] for i in range(k)) for j in range(k)))
    covered = all(point_is_covered(S, f, L, p) for p in pts)
    # coset corners: just below each integer point of the triangular cell
    eps = Fraction(1, 2**24)
    witness = None
    for p in _coset_representatives(T):
        q = tuple(x - eps for x in p)
        if not point_is_covered(S, below, L, q):
            witness = q
            break
    if witness is None:
        for p in pts:
            if not point_is_covered(S, below, L, p):
                witness = p
                break
    return KannanReport(inst, f, "sampled", covered, witness is not None, witness, None, None,
                        normalized_mu, ratio, chain, above, samples=len(pts),
                        inconclusive=witness is None)


def _coset_representatives(T):
    """Integer points c with 0 <= c_j < T_jj (an integral upper-triangular basis)."""
    n = len(T)
    ranges = [range(int(T[j][j])) for j in range(n)]

    def rec(j, acc):
        if j == n:
            yield tuple(Fraction(x) for x in acc)
            return
        for c in ranges[j]:
            yield from rec(j + 1, acc + [c])

    return rec(0, [])


@dataclass(frozen=True)
class Mu0Bounds:
    N: int
    lower: Surd  # strict: mu0 > lower
    upper: int
    gamma_upper: Fraction
    lower_over_dim: Surd  # lower / (N-1), reported against 1/e


def mu0_bounds(N: int) -> Mu0Bounds:
    """Volume lower bound, standard-covering upper bound, and Gamma <= vol."""
    if N < 3:
        raise DimensionTooSmall("needs N >= 3")
    k = N - 1
    fact = math.factorial(k)
    lower = Surd(fact, k)
    return Mu0Bounds(N, lower, k, Fraction(1, fact), Surd(fact, k, Fraction(1, k)))
