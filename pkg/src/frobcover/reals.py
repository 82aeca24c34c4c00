"""Exact real numbers of the form ``offset + coef * radicand ** (1/degree)``.

Every irrational quantity in the package (normalized Frobenius ratios, the
classical square-root bounds, simplex lower bounds) has this shape, so
comparisons against rationals can be decided with integer arithmetic and
decimal output can be certified to any number of bits.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational

DEFAULT_BITS = 64


def iroot(n: int, k: int) -> int:
    """Largest integer r with r**k <= n (n >= 0, k >= 1)."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    # Newton iteration from an overestimate
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def root_bracket(x: Fraction, k: int, bits: int = DEFAULT_BITS) -> tuple[Fraction, Fraction]:
    """Rational lo <= x**(1/k) <= hi with hi - lo <= 2**-bits."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits
    # floor(x * scale**k) then integer root
    num = (x.numerator * scale ** k) // x.denominator
    r = iroot(num, k)
    lo = Fraction(r, scale)
    hi = lo if lo ** k == x else Fraction(r + 1, scale)
    return lo, hi


@dataclass(frozen=True)
class Surd:
    """The real number ``offset + coef * radicand ** (1/degree)`` with coef >= 0."""

    radicand: Fraction
    degree: int = 1
    coef: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        object.__setattr__(self, "coef", Fraction(self.coef))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.radicand < 0 or self.coef < 0 or self.degree < 1:
            raise ValueError("Surd needs radicand >= 0, coef >= 0, degree >= 1")

    @classmethod
    def root(cls, x, k: int) -> "Surd":
        return cls(Fraction(x), k)

    def exact(self) -> Fraction | None:
        """The value as a Fraction when it is rational, else None."""
        if self.coef == 0:
            return self.offset
        x = self.radicand
        p, q = iroot(x.numerator, self.degree), iroot(x.denominator, self.degree)
        if p ** self.degree == x.numerator and q ** self.degree == x.denominator:
            return self.offset + self.coef * Fraction(p, q)
        return None

    def compare(self, q) -> int:
        """Sign of ``self - q`` for a rational q, decided exactly."""
        q = Fraction(q)
        if self.coef == 0:
            return (self.offset > q) - (self.offset < q)
        t = (q - self.offset) / self.coef
        if t < 0:
            return 1
        tk = t ** self.degree
        return (self.radicand > tk) - (self.radicand < tk)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __add__(self, q):
        if not isinstance(q, (int, Rational)):
            return NotImplemented
        return Surd(self.radicand, self.degree, self.coef, self.offset + Fraction(q))

    __radd__ = __add__

    def __sub__(self, q):
        if not isinstance(q, (int, Rational)):
            return NotImplemented
        return Surd(self.radicand, self.degree, self.coef, self.offset - Fraction(q))

    def __mul__(self, q):
        if not isinstance(q, (int, Rational)) or q < 0:
            return NotImplemented
        q = Fraction(q)
        return Surd(self.radicand, self.degree, self.coef * q, self.offset * q)

    __rmul__ = __mul__

    def interval(self, bits: int = DEFAULT_BITS) -> tuple[Fraction, Fraction]:
        lo, hi = root_bracket(self.radicand, self.degree, bits)
        return self.offset + self.coef * lo, self.offset + self.coef * hi

    def __float__(self):
        lo, hi = self.interval(60)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"Surd({self.offset} + {self.coef}*({self.radicand})^(1/{self.degree}) ~ {float(self):.12g})"


def _decimal_of(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(50, digits + 30)
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return format(d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN), "f")


def format_real(x, digits: int = 12) -> str:
    """Decimal string with ``digits`` places after the point."""
    if isinstance(x, Surd):
        ex = x.exact()
        if ex is None:
            # enough bits that the rounding is settled except at exact ties
            lo, hi = x.interval(int(digits * 3.33) + 20)
            x = (lo + hi) / 2
        else:
            x = ex
    elif isinstance(x, float):
        x = Fraction(x)
    return _decimal_of(Fraction(x), digits)


def format_rational(x) -> str:
    """``"p/q"``, or ``"n"`` for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def compare_reals(x, y, max_bits: int = 4096) -> int:
    """Sign of x - y for rationals or surds.

    Two irrational surds are separated by refining their intervals; 0 is
    returned only if they agree to ``max_bits`` bits.
    """
    if isinstance(x, Surd) and x.exact() is not None:
        x = x.exact()
    if isinstance(y, Surd) and y.exact() is not None:
        y = y.exact()
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if not isinstance(y, Surd):
        return x.compare(y)
    if not isinstance(x, Surd):
        return -y.compare(x)
    bits = DEFAULT_BITS
    while bits <= max_bits:
        xl, xh = x.interval(bits)
        yl, yh = y.interval(bits)
        if xh < yl:
            return -1
        if yh < xl:
            return 1
        bits *= 2
    return 0
