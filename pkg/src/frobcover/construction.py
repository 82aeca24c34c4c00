"""Integer tuples whose lattice L_a approximates a prescribed rational lattice.

Given a rational lattice with basis rows b_i and ratios 0 < alpha_1 <= ... <= 1,
the (N-1) x N matrix

    M(t) = [ d*b*t + diag(t*_1, ..., t*_{N-1}) | d*(b @ alpha)*t ]

has maximal minors M_1(t), ..., M_N(t).  Whenever they are coprime,
a(t) = (|M_1(t)|, ..., |M_N(t)|) is a Frobenius instance whose lattice L_a(t)
is spanned by the first N-1 columns of M(t), approximately (d*t) * b.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

from .errors import (
    AlphaOutOfRange,
    CommonFactorFound,
    ConstructionCheckFailed,
    GcdNotOne,
    InsufficientSequence,
    NonIntegerCoefficient,
    OrderingFailed,
)
from .frobenius import FrobeniusInstance
from .lattice import LatticeSpec
from .polynomial import Poly, determinant, poly_gcd, root_bound


@dataclass(frozen=True)
class ConstructionInput:
    lattice: LatticeSpec
    alpha: tuple[Fraction, ...]
    d: int

    @property
    def n(self) -> int:
        """Lattice dimension N - 1."""
        return self.lattice.dim

    @property
    def N(self) -> int:
        return self.lattice.dim + 1


def _check_alpha(L: LatticeSpec, alpha) -> tuple[Fraction, ...]:
    alpha = tuple(Fraction(x) for x in alpha)
    if len(alpha) != L.dim:
        raise AlphaOutOfRange(f"need {L.dim} ratios, got {len(alpha)}")
    if not (0 < alpha[0] and all(x <= y for x, y in zip(alpha, alpha[1:])) and alpha[-1] <= 1):
        raise AlphaOutOfRange(f"ratios must satisfy 0 < a_1 <= ... <= a_(N-1) <= 1: {alpha}")
    return alpha


def compute_denominator(L: LatticeSpec, alpha: Sequence) -> int:
    """Least d > 0 with d*b_ij and d*alpha_j*b_ij all integers."""
    alpha = _check_alpha(L, alpha)
    dens = []
    for row in L.basis:
        for j, b in enumerate(row):
            dens += [b.denominator, (alpha[j] * b).denominator]
    return math.lcm(*dens)


def construction_input(L: LatticeSpec, alpha: Sequence) -> ConstructionInput:
    alpha = _check_alpha(L, alpha)
    return ConstructionInput(L, alpha, compute_denominator(L, alpha))


@dataclass(frozen=True)
class ParametricMatrix:
    rows: tuple[tuple[Poly, ...], ...]  # (N-1) x N, degree <= 1 in t
    t_star: tuple[int, ...]

    def at(self, t: int) -> list[list[int]]:
        return [[e(t) for e in row] for row in self.rows]


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegerCoefficient(f"{what} = {x} is not an integer; d is wrong")
    return int(x)


def build_parametric_matrix(inp: ConstructionInput, t_star: Sequence[int]) -> ParametricMatrix:
    n, d = inp.n, inp.d
    t_star = tuple(int(x) for x in t_star)
    if len(t_star) != n:
        raise ValueError(f"need {n} offsets, got {len(t_star)}")
    rows = []
    for i, brow in enumerate(inp.lattice.basis):
        row = []
        for j, b in enumerate(brow):
            slope = _as_int(d * b, f"d*b[{i}][{j}]")
            row.append(Poly.linear(slope, t_star[i] if i == j else 0))
        last = _as_int(d * sum(a * b for a, b in zip(inp.alpha, brow)), f"d*(b@alpha)[{i}]")
        row.append(Poly.linear(last))
        rows.append(tuple(row))
    return ParametricMatrix(tuple(rows), t_star)


def _drop_column(rows, k):
    return [list(r[:k]) + list(r[k + 1:]) for r in rows]


@dataclass(frozen=True)
class MinorSet:
    polys: tuple[Poly, ...]  # M_i(t), column i omitted, i = 1..N
    B: tuple[Fraction, ...]  # minors of the unperturbed rational matrix
    d: int
    t_star: tuple[int, ...]

    def values(self, t: int) -> list[int]:
        return [p(t) for p in self.polys]

    def gcd_at(self, t: int) -> int:
        return reduce(math.gcd, (abs(v) for v in self.values(t)))


def unperturbed_matrix(inp: ConstructionInput) -> list[list[Fraction]]:
    """The rational matrix [b | b @ alpha]."""
    return [list(row) + [sum(a * b for a, b in zip(inp.alpha, row))] for row in inp.lattice.basis]


def minor_polynomials(M: ParametricMatrix, inp: ConstructionInput,
                      check_common_factor: bool = True) -> MinorSet:
    """Maximal minors of M(t) and of [b | b@alpha], with the identities between them checked.

    Raises CommonFactorFound when the minors share a non-constant factor,
    in which case no t makes them coprime and the offsets must change.
    """
    n, d = inp.n, inp.d
    N = n + 1
    polys = tuple(determinant(_drop_column(M.rows, k)) for k in range(N))
    polys = tuple(p if isinstance(p, Poly) else Poly.const(p) for p in polys)
    Bm = unperturbed_matrix(inp)
    B = tuple(Fraction(determinant(_drop_column(Bm, k))) for k in range(N))
    for k in range(N):
        if polys[k].degree > n:
            raise AssertionError(f"minor {k + 1} has degree {polys[k].degree} > {n}")
        if polys[k].coeff(n) != d**n * B[k]:
            raise AssertionError(f"leading coefficient of minor {k + 1} is not d^(N-1) B_{k + 1}")
    if abs(B[-1]) != inp.lattice.det_abs:
        raise AssertionError("|B_N| differs from det L")
    for k in range(n):
        if abs(B[k]) != inp.alpha[k] * abs(B[-1]):
            raise AssertionError(f"|B_{k + 1}| differs from alpha_{k + 1} |B_N|")
    if check_common_factor:
        g = reduce(poly_gcd, polys)
        if g.degree >= 1:
            raise CommonFactorFound(f"minors share the factor {g} for offsets {M.t_star}")
    return MinorSet(polys, B, d, M.t_star)


def find_gcd_one(minors: MinorSet, t_max: int, t_min: int = 1) -> list[int]:
    """All t in [t_min, t_max] where the minors evaluate to coprime integers."""
    return [t for t in range(t_min, t_max + 1) if minors.gcd_at(t) == 1]


def ordering_threshold(minors: MinorSet) -> int | None:
    """T such that for every t >= T the |M_i(t)| are nonzero and strictly increasing.

    None when the leading terms do not force the order (e.g. equal ratios
    whose lower-order terms go the wrong way).
    """
    ps = minors.polys
    signs = [1 if p.leading > 0 else -1 for p in ps]
    bounds = [root_bound(p) for p in ps]
    for i in range(len(ps) - 1):
        diff = signs[i + 1] * ps[i + 1] - signs[i] * ps[i]
        if diff.degree < 0 or diff.leading <= 0:
            return None
        bounds.append(root_bound(diff))
    return math.floor(max(bounds)) + 1


@dataclass(frozen=True)
class ConstructionOutput:
    t: int
    t_star: tuple[int, ...]
    a: tuple[int, ...]
    basis_rows: tuple[tuple[int, ...], ...]
    alpha_t: tuple[Fraction, ...]
    deviations: tuple[Fraction, ...]
    aN_leading_ratio: Fraction

    @property
    def instance(self) -> FrobeniusInstance:
        return FrobeniusInstance(self.a)


def construct_tuple(inp: ConstructionInput, t_star: Sequence[int], t: int,
                    minors: MinorSet | None = None, strict: bool = True) -> ConstructionOutput:
    """The tuple a(t) and the basis of L_a(t), with every claimed property checked.

    ``strict=False`` skips the gcd and ordering requirements so that
    degenerate families can still be inspected.
    """
    M = build_parametric_matrix(inp, t_star)
    if minors is None:
        minors = minor_polynomials(M, inp, check_common_factor=False)
    vals = minors.values(t)
    a = tuple(abs(v) for v in vals)
    n = inp.n
    if strict:
        if any(x == 0 for x in a):
            raise OrderingFailed(f"a zero minor at t={t}")
        g = reduce(math.gcd, a)
        if g != 1:
            raise GcdNotOne(f"gcd of a({t}) is {g}")
        if any(x >= y for x, y in zip(a, a[1:])):
            thr = ordering_threshold(minors)
            if thr is not None and t >= thr:
                raise AssertionError("ordering failed above the proven threshold")
            raise OrderingFailed(f"a({t}) = {a} is not strictly increasing")
    rows = tuple(tuple(r[:n]) for r in M.at(t))
    aN = a[-1]
    if aN:
        bad = None
        for r in rows:
            if sum(x * y for x, y in zip(a[:n], r)) % aN:
                # below the threshold some minor may still carry the wrong sign
                bad = f"row {r} is not in L_a for a = {a}"
                break
        else:
            if abs(determinant(rows)) != aN:
                bad = "basis determinant differs from a_N"
        if bad:
            thr = ordering_threshold(minors) if strict else None
            if thr is not None and t >= thr:
                raise AssertionError(bad + " above the proven threshold")
            raise ConstructionCheckFailed(bad)
    alpha_t = tuple(Fraction(x, aN) for x in a[:n]) if aN else ()
    devs = tuple(abs(x - y) for x, y in zip(alpha_t, inp.alpha))
    lead = inp.lattice.det_abs * inp.d**n * t**n
    return ConstructionOutput(t, tuple(int(x) for x in t_star), a, rows, alpha_t, devs,
                              Fraction(aN) / lead)


def search_gcd_one(inp: ConstructionInput, t_max: int, tstar_max: int = 8,
                   t_min: int = 1) -> list[tuple[tuple[int, ...], int]]:
    """All (t_star, t) with t_star in [0, tstar_max]^(N-1), t in [t_min, t_max], coprime minors.

    Offsets whose minors share a polynomial factor are skipped.  The result
    is sorted by (t_star, t).
    """
    out = []
    for ts in itertools.product(range(tstar_max + 1), repeat=inp.n):
        M = build_parametric_matrix(inp, ts)
        try:
            minors = minor_polynomials(M, inp)
        except CommonFactorFound:
            continue
        out.extend((ts, t) for t in find_gcd_one(minors, t_max, t_min))
    return sorted(out)


def iter_constructions(inp: ConstructionInput, t_max: int, tstar_max: int = 8,
                       t_min: int = 1) -> Iterator[ConstructionOutput]:
    """Valid outputs in order of increasing t (offsets lexicographic within a t).

    Small-t candidates that fail the ordering or lattice checks are skipped.
    """
    families = []
    for ts in itertools.product(range(tstar_max + 1), repeat=inp.n):
        M = build_parametric_matrix(inp, ts)
        try:
            families.append((ts, minor_polynomials(M, inp)))
        except CommonFactorFound:
            continue
    for t in range(t_min, t_max + 1):
        for ts, minors in families:
            if minors.gcd_at(t) != 1:
                continue
            try:
                yield construct_tuple(inp, ts, t, minors)
            except (OrderingFailed, ConstructionCheckFailed):
                continue


@dataclass(frozen=True)
class AsymptoticsReport:
    t_values: tuple[int, ...]
    entry_constants: tuple[tuple[Fraction, ...], ...]  # C_ij with |b_ij(t)/(dt) - b_ij| <= C_ij/t
    entry_ok: bool
    alpha_constants: tuple[Fraction, ...]  # proven envelope for t >= envelope_from
    alpha_fitted: tuple[Fraction, ...]  # t_min * deviation at t_min, for comparison
    envelope_from: int
    alpha_ok: bool
    alpha_decreasing: bool
    aN_ratios: tuple[Fraction, ...]
    aN_constant: Fraction
    aN_ok: bool
    aN_monotone: bool

    @property
    def ok(self) -> bool:
        return self.entry_ok and self.alpha_ok and self.aN_ok


def _abs_coeff_sum(p: Poly, upto: int | None = None) -> Fraction:
    cs = p.coeffs if upto is None else p.coeffs[:upto]
    return sum((abs(Fraction(c)) for c in cs), Fraction(0))


def verify_asymptotics(seq: Sequence[ConstructionOutput], inp: ConstructionInput) -> AsymptoticsReport:
    """Check the O(1/t) behaviour of the basis, the ratios and a_N along one offset family.

    Basis entries are linear in t, so the constant fitted at the smallest t is
    exact.  For the ratios the constant is derived from the minor polynomials
    and holds for every t >= ``envelope_from``.
    """
    seq = sorted(seq, key=lambda o: o.t)
    if len(seq) < 3:
        raise InsufficientSequence("need at least three outputs")
    if len({o.t_star for o in seq}) != 1 or len({o.t for o in seq}) != len(seq):
        raise InsufficientSequence("outputs must share offsets and have distinct t")
    n, d = inp.n, inp.d
    b = inp.lattice.basis
    ts = tuple(o.t for o in seq)
    t0 = ts[0]

    def entry_dev(o, i, j):
        return abs(Fraction(o.basis_rows[i][j], d * o.t) - b[i][j])

    consts = tuple(tuple(t0 * entry_dev(seq[0], i, j) for j in range(n)) for i in range(n))
    entry_ok = all(o.t * entry_dev(o, i, j) <= consts[i][j]
                   for o in seq for i in range(n) for j in range(n))

    M = build_parametric_matrix(inp, seq[0].t_star)
    minors = minor_polynomials(M, inp, check_common_factor=False)
    pN = minors.polys[-1]
    sN = 1 if pN.leading > 0 else -1
    leadN = abs(Fraction(pN.leading))
    lowN = _abs_coeff_sum(pN, n)
    # |M_N(t)| >= t^(n-1) (|lead| t - lowN) for t >= 1
    start = max(t0, math.floor(2 * lowN / leadN) + 1)
    alpha_c = []
    for k in range(n):
        pk = minors.polys[k]
        sk = 1 if pk.leading > 0 else -1
        num = sk * pk - inp.alpha[k] * sN * pN  # degree <= n-1
        alpha_c.append(_abs_coeff_sum(num) / (leadN - lowN / start))
    fitted = tuple(t0 * x for x in seq[0].deviations)
    alpha_ok = all(o.t * o.deviations[k] <= alpha_c[k]
                   for o in seq if o.t >= start for k in range(n))
    alpha_decreasing = all(all(x > y for x, y in zip(p.deviations, q.deviations))
                           for p, q in zip(seq, seq[1:]))
    ratios = tuple(o.aN_leading_ratio for o in seq)
    aN_c = lowN / leadN
    aN_ok = all(o.t * abs(r - 1) <= aN_c for o, r in zip(seq, ratios))
    aN_monotone = all(abs(p - 1) > abs(q - 1) for p, q in zip(ratios, ratios[1:]))
    return AsymptoticsReport(ts, consts, entry_ok, tuple(alpha_c), fitted, start, alpha_ok,
                             alpha_decreasing, ratios, aN_c, aN_ok, aN_monotone)
