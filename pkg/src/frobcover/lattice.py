"""Exact lattice algebra over the rationals.

Bases are stored rows-as-vectors.  Integer lattices are normalized to row
Hermite normal form so that two bases of the same lattice compare equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, DimensionTooSmall, NonPositiveScale, RankDeficient
from .frobenius import FrobeniusInstance
from .reals import Surd

Matrix = tuple[tuple[Fraction, ...], ...]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign = 1
    d = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            m[j], m[piv] = m[piv], m[j]
            sign = -sign
        p = m[j][j]
        d *= p
        for i in range(j + 1, n):
            if m[i][j]:
                c = m[i][j] / p
                m[i] = [x - c * y for x, y in zip(m[i], m[j])]
    return sign * d


def solve_left(rows: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    """Coefficients c with sum_i c_i * rows[i] = x (rows nonsingular)."""
    n = len(rows)
    # transpose: B^T c = x
    m = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(x[j])] for j in range(n)]
    for j in range(n):
        piv = next((i for i in range(j, n) if m[i][j] != 0), None)
        if piv is None:
            raise RankDeficient("singular basis")
        m[j], m[piv] = m[piv], m[j]
        p = m[j][j]
        m[j] = [v / p for v in m[j]]
        for i in range(n):
            if i != j and m[i][j]:
                c = m[i][j]
                m[i] = [a - c * b for a, b in zip(m[i], m[j])]
    return [m[j][n] for j in range(n)]


@dataclass(frozen=True)
class LatticeSpec:
    """Full-rank lattice given by a square rational basis (rows are vectors)."""

    basis: Matrix
    det_abs: Fraction = field(init=False)

    def __post_init__(self):
        b = tuple(tuple(Fraction(x) for x in row) for row in self.basis)
        if any(len(r) != len(b) for r in b):
            raise DimensionMismatch("basis must be square")
        object.__setattr__(self, "basis", b)
        d = abs(det(b))
        if d == 0:
            raise RankDeficient("basis is singular")
        object.__setattr__(self, "det_abs", d)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.basis for x in r)

    def point(self, coeffs: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum(c * self.basis[i][j] for i, c in enumerate(coeffs))
                     for j in range(self.dim))


@dataclass(frozen=True)
class ScaledLattice:
    """``scale * lattice`` for an irrational positive scale, kept symbolic."""

    lattice: LatticeSpec
    scale: Surd

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def det_abs(self):
        """|det| as a Fraction when rational, otherwise as a Surd."""
        s = self.scale
        if s.offset != 0:
            raise ValueError("scale must be a pure radical")
        k, n = s.degree, self.dim
        rad = s.radicand ** n
        coef = s.coef ** n * self.lattice.det_abs
        exact = Surd(rad, k, coef).exact()
        return exact if exact is not None else Surd(rad, k, coef)


def hermite_normal_form(generators: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style HNF: upper triangular, positive pivots, entries above a pivot in [0, pivot)."""
    rows = [[int(x) for x in r] for r in generators]
    if not rows:
        raise RankDeficient("no generators")
    k = len(rows[0])
    if any(len(r) != k for r in rows):
        raise DimensionMismatch("ragged generator matrix")
    r = 0
    for j in range(k):
        # gcd-eliminate column j among rows r..end
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][j] != 0]
            if not nz:
                raise RankDeficient(f"no pivot in column {j}")
            p = min(nz, key=lambda i: abs(rows[i][j]))
            rows[r], rows[p] = rows[p], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][j]:
                    q = rows[i][j] // rows[r][j]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][j]:
                        done = False
            if done:
                break
        if rows[r][j] < 0:
            rows[r] = [-a for a in rows[r]]
        piv = rows[r][j]
        for i in range(r):
            q = rows[i][j] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:k])


def _integer_kernel(row: Sequence[int]) -> list[list[int]]:
    """Basis of {x in Z^n : row . x = 0} via unimodular column reduction."""
    n = len(row)
    v = list(row)
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns are transforms
    while sum(1 for x in v if x) > 1:
        p = min((i for i in range(n) if v[i]), key=lambda i: abs(v[i]))
        for i in range(n):
            if i != p and v[i]:
                q = v[i] // v[p]
                v[i] -= q * v[p]
                for r in range(n):
                    U[r][i] -= q * U[r][p]
    piv = next(i for i in range(n) if v[i])
    return [[U[r][c] for r in range(n)] for c in range(n) if c != piv]


def lattice_from_tuple(inst: FrobeniusInstance) -> LatticeSpec:
    """HNF basis of {x in Z^(N-1) : sum a_i x_i = 0 mod a_N}."""
    kernel = _integer_kernel(inst.a)
    gens = [vec[:-1] for vec in kernel]
    return LatticeSpec(hermite_normal_form(gens))


def _common_denominator(rows) -> int:
    return math.lcm(*(Fraction(x).denominator for r in rows for x in r))


def triangular_basis(L: LatticeSpec) -> Matrix:
    """Upper-triangular basis of L (HNF of the cleared-denominator lattice, rescaled)."""
    D = _common_denominator(L.basis)
    h = hermite_normal_form([[int(x * D) for x in r] for r in L.basis])
    return tuple(tuple(Fraction(x, D) for x in r) for r in h)


def membership(L: LatticeSpec, x: Sequence) -> bool:
    """Whether x is an integer combination of the basis rows."""
    if len(x) != L.dim:
        raise DimensionMismatch(f"point of dimension {len(x)} for lattice of dimension {L.dim}")
    return all(c.denominator == 1 for c in solve_left(L.basis, x))


def scale_lattice(L: LatticeSpec, s) -> LatticeSpec | ScaledLattice:
    """s * L.  Rational s gives a new basis; a Surd is carried symbolically."""
    if isinstance(s, Surd):
        if s.offset != 0 or s.coef <= 0 or s.radicand <= 0:
            raise NonPositiveScale(f"scale must be a positive radical: {s!r}")
        ex = s.exact()
        if ex is None:
            return ScaledLattice(L, s)
        s = ex
    s = Fraction(s)
    if s <= 0:
        raise NonPositiveScale(f"scale must be positive: {s}")
    return LatticeSpec(tuple(tuple(s * x for x in r) for r in L.basis))


def standard_covering_lattice(N: int) -> LatticeSpec:
    """The lattice generated by e_j / (N-1) in dimension N-1."""
    if N < 3:
        raise DimensionTooSmall("standard covering lattice needs N >= 3")
    n = N - 1
    return LatticeSpec(tuple(tuple(Fraction(int(i == j), n) for j in range(n)) for i in range(n)))


def integer_lattice(n: int) -> LatticeSpec:
    return LatticeSpec(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def reduce_2d(b1, b2):
    """Lagrange-Gauss reduced basis of a planar lattice (same lattice, short vectors)."""
    def dot(u, v):
        return u[0] * v[0] + u[1] * v[1]

    if dot(b1, b1) > dot(b2, b2):
        b1, b2 = b2, b1
    while True:
        n1 = dot(b1, b1)
        m = dot(b1, b2) / n1
        # nearest integer, exact for rationals
        q = math.floor(m + Fraction(1, 2))
        b2 = (b2[0] - q * b1[0], b2[1] - q * b1[1])
        if dot(b2, b2) >= n1:
            return b1, b2
        b1, b2 = b2, b1


def parse_lattice(text: str) -> LatticeSpec:
    """Parse ``"1,0;0,1"`` style literals (rows separated by semicolons)."""
    rows = [[Fraction(x.strip()) for x in row.split(",")] for row in text.split(";") if row.strip()]
    return LatticeSpec(tuple(tuple(r) for r in rows))
