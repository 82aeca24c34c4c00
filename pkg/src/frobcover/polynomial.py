"""Univariate polynomials in t with exact (integer or rational) coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Poly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of t**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, slope, intercept=0) -> "Poly":
        return cls((intercept, slope))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _lift(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly((other,))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t" if k == 1 else f"{c}*t^{k}")
        return " + ".join(terms)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Division over the rationals."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * max(len(r) - len(other.coeffs) + 1, 0)
        lead = Fraction(other.leading)
        for k in range(len(q) - 1, -1, -1):
            c = r[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Poly(q), Poly(r[: len(other.coeffs) - 1])

    def monic(self) -> "Poly":
        lead = Fraction(self.leading)
        return Poly(Fraction(c) / lead for c in self.coeffs)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q[t] (zero if both are zero)."""
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a.coeffs else a


def determinant(m: Sequence[Sequence]):
    """Cofactor (Laplace) expansion along the first row; works over any ring."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * determinant(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root has |t| < 1 + max |c_k / c_lead|."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(Fraction(p.leading))
    return 1 + max(abs(Fraction(c)) / lead for c in p.coeffs[:-1])
