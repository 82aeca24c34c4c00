"""Frobenius numbers, Apéry sets and the classical bounds on g_N."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable

from .errors import (
    BudgetExceeded,
    DimensionTooSmall,
    NonPositiveElement,
    NotCoprime,
    NotStrictlyIncreasing,
    TooFewElements,
)
from .reals import Surd

DEFAULT_MAX_A1 = 10**7


@dataclass(frozen=True)
class FrobeniusInstance:
    """A validated tuple a_1 < ... < a_N of positive integers with gcd 1."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if len(a) < 2:
            raise TooFewElements(f"need at least 2 elements, got {len(a)}")
        if any(x <= 0 for x in a):
            raise NonPositiveElement(f"all elements must be positive: {a}")
        if any(x >= y for x, y in zip(a, a[1:])):
            raise NotStrictlyIncreasing(f"elements must be strictly increasing: {a}")
        if reduce(math.gcd, a) != 1:
            raise NotCoprime(f"gcd{a} = {reduce(math.gcd, a)}")

    @property
    def N(self) -> int:
        return len(self.a)

    @property
    def product(self) -> int:
        return math.prod(self.a)

    def __str__(self):
        return ",".join(map(str, self.a))


def validate_instance(raw: Iterable[int]) -> FrobeniusInstance:
    """Check a raw integer sequence; no sorting is done, bad order is an error."""
    return FrobeniusInstance(tuple(raw))


@dataclass(frozen=True)
class FrobeniusResult:
    instance: FrobeniusInstance
    g: int
    f: int
    apery: dict = field(compare=False, repr=False)


@lru_cache(maxsize=256)
def _apery(a: tuple[int, ...]) -> tuple[int, ...]:
    # Dijkstra over residues mod a_1; edge r -> r + a_j with weight a_j
    m = a[0]
    dist = [-1] * m
    dist[0] = 0
    heap = [(0, 0)]
    gens = a[1:]
    while heap:
        d, r = heapq.heappop(heap)
        if d != dist[r]:
            continue
        for x in gens:
            s = (r + x) % m
            nd = d + x
            if dist[s] < 0 or nd < dist[s]:
                dist[s] = nd
                heapq.heappush(heap, (nd, s))
    return tuple(dist)


def _apery_checked(inst: FrobeniusInstance, max_a1: int) -> tuple[int, ...]:
    if inst.a[0] > max_a1:
        raise BudgetExceeded(f"a_1 = {inst.a[0]} exceeds the limit {max_a1}")
    return _apery(inst.a)


def apery_set(inst: FrobeniusInstance, max_a1: int = DEFAULT_MAX_A1) -> dict[int, int]:
    """Smallest element of the semigroup in each residue class mod a_1."""
    return dict(enumerate(_apery_checked(inst, max_a1)))


def frobenius_number(inst: FrobeniusInstance, max_a1: int = DEFAULT_MAX_A1) -> FrobeniusResult:
    ap = _apery_checked(inst, max_a1)
    # a_1 = 1 leaves only residue 0, every n >= 0 is representable
    g = max(ap) - inst.a[0] if len(ap) > 1 else -1
    return FrobeniusResult(inst, g, g + sum(inst.a), dict(enumerate(ap)))


def is_representable(n: int, inst: FrobeniusInstance, positive: bool = False,
                     max_a1: int = DEFAULT_MAX_A1) -> bool:
    """Whether n is a non-negative (or, with ``positive``, positive) combination."""
    if positive:
        n -= sum(inst.a)
    if n < 0:
        return False
    ap = _apery_checked(inst, max_a1)
    return n >= ap[n % inst.a[0]]


@dataclass(frozen=True)
class FRatio:
    """f_N / (a_1 ... a_N)^(1/(N-1)), kept exact as a surd."""

    f: int
    product: int
    value: Surd

    def __float__(self):
        return float(self.value)


def f_ratio(inst: FrobeniusInstance, result: FrobeniusResult | None = None) -> FRatio:
    if inst.N < 3:
        raise DimensionTooSmall("the normalized ratio is defined for N >= 3")
    f = (result or frobenius_number(inst)).f
    k = inst.N - 1
    p = inst.product
    return FRatio(f, p, Surd(Fraction(f**k, p), k))


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # "upper", "lower" or "exact"
    value: object  # int, Fraction, Surd, or None when not applicable
    applicable: bool
    satisfied: bool | None
    note: str = ""


@dataclass(frozen=True)
class BoundsReport:
    instance: FrobeniusInstance
    g: int
    f: int
    entries: tuple[BoundEntry, ...]

    def __getitem__(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def lower_bounds_hold(self) -> bool:
        return all(e.satisfied for e in self.entries
                   if e.applicable and e.kind in ("lower", "exact"))


def _cmp(value, n) -> int:
    """Sign of value - n for an int/Fraction/Surd value."""
    if isinstance(value, Surd):
        return value.compare(n)
    return (value > n) - (value < n)


def bounds_report(inst: FrobeniusInstance, result: FrobeniusResult | None = None) -> BoundsReport:
    """Evaluate the classical bounds exactly against the computed g and f.

    Upper bounds are informational: a violation is recorded, never raised.
    """
    res = result or frobenius_number(inst)
    g, f = res.g, res.f
    a = inst.a
    N = inst.N
    s = sum(a)
    P = inst.product
    out = []

    def upper(name, value, applicable, note=""):
        out.append(BoundEntry(name, "upper", value if applicable else None, applicable,
                              (_cmp(value, g) >= 0) if applicable else None, note))

    def lower(name, value, applicable, against=None, strict=False, note=""):
        target = g if against is None else against
        ok = None
        if applicable:
            c = _cmp(value, target)
            ok = c < 0 if strict else c <= 0
        out.append(BoundEntry(name, "lower", value if applicable else None, applicable, ok, note))

    if N == 2:
        sharp = (a[0] - 1) * (a[1] - 1) - 1
        out.append(BoundEntry("sharp", "exact", sharp, True, sharp == g))
    else:
        out.append(BoundEntry("sharp", "exact", None, False, None))

    eg_floor = a[0] // N
    upper("erdos_graham", 2 * a[-1] * eg_floor - a[0], eg_floor > 0)
    sel_floor = a[-1] // N
    upper("selmer", 2 * a[-2] * sel_floor - a[-1], sel_floor > 0, note="as-printed")
    upper("vitek", ((a[1] - 1) * (a[-1] - 2)) // 2 - 1, N >= 3)
    if N == 3:
        s3 = a[0] + a[1] + a[2]
        upper("beck_diaz_robins", Surd(P * s3, 2, Fraction(1, 2), Fraction(-s3, 2)), True)
        lower("davison", Surd(3 * P, 2, 1, -s), True)
    else:
        upper("beck_diaz_robins", None, False)
        lower("davison", None, False)
    k = N - 1
    lower("rodseth", Surd(math.factorial(k) * P, k, 1, -s), True)
    lower("simplex_volume", Surd(math.factorial(k) * P, k) if N >= 3 else None, N >= 3,
          against=f, strict=True, note="f_N > ((N-1)! a_1...a_N)^(1/(N-1))")
    return BoundsReport(inst, g, f, tuple(out))

