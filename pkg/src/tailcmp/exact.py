"""Exact scalars, certified intervals, and combinatorial helpers.

Every probability in this package is either an exact ``fractions.Fraction``
or a ``CertInterval``: a pair of rational bounds that provably enclose a
possibly irrational quantity (a Poisson tail, e^lambda, ...). Nothing here
ever rounds; soundness of the enclosures is the module's contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Union

ZERO = Fraction(0)
ONE = Fraction(1)

Scalar = Union[Fraction, int]


class Comparison(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    UNRESOLVED = "Unresolved"


class UnresolvedError(Exception):
    """An interval comparison could not be decided at the current precision."""


@dataclass(frozen=True)
class CertInterval:
    """Closed interval [lo, hi] with exact rational endpoints.

    An instance stands for some true value v with lo <= v <= hi by
    construction. Arithmetic preserves that enclosure; widths may grow but
    never lie.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            object.__setattr__(self, "lo", Fraction(self.lo))
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, value: Scalar) -> "CertInterval":
        q = Fraction(value)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Scalar) -> bool:
        return self.lo <= value <= self.hi

    def overlaps(self, other: "CertInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "CertInterval | Scalar") -> "CertInterval":
        o = as_interval(other)
        return CertInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "CertInterval":
        return CertInterval(-self.hi, -self.lo)

    def __sub__(self, other: "CertInterval | Scalar") -> "CertInterval":
        return self + (-as_interval(other))

    def __rsub__(self, other: "CertInterval | Scalar") -> "CertInterval":
        return as_interval(other) + (-self)

    def __mul__(self, other: "CertInterval | Scalar") -> "CertInterval":
        o = as_interval(other)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return CertInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "CertInterval":
        if self.lo <= 0:
            raise ValueError("reciprocal requires a strictly positive interval")
        return CertInterval(1 / self.hi, 1 / self.lo)

    def intersect(self, other: "CertInterval") -> "CertInterval":
        return CertInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __str__(self) -> str:
        if self.is_point:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


def as_interval(x: "CertInterval | Scalar") -> CertInterval:
    if isinstance(x, CertInterval):
        return x
    return CertInterval.point(x)


def compare(a: "CertInterval | Scalar", b: "CertInterval | Scalar") -> Comparison:
    """Certified order of the true values enclosed by a and b.

    EQUAL is only ever produced from degenerate (exact) intervals on both
    sides; overlapping non-degenerate intervals yield UNRESOLVED, never a
    wrong verdict.
    """
    ia, ib = as_interval(a), as_interval(b)
    if ia.lo > ib.hi:
        return Comparison.GREATER
    if ia.hi < ib.lo:
        return Comparison.LESS
    if ia.is_point and ib.is_point and ia.lo == ib.lo:
        return Comparison.EQUAL
    return Comparison.UNRESOLVED


# ---------------------------------------------------------------------------
# Combinatorics
# ---------------------------------------------------------------------------

def binom_coeff(n: int, k: int) -> int:
    """Exact binomial coefficient n!/(k!(n-k)!); requires 0 <= k <= n."""
    if n < 0 or k < 0:
        raise ValueError(f"binom_coeff requires non-negative arguments, got ({n}, {k})")
    if k > n:
        raise ValueError(f"binom_coeff requires k <= n, got k={k} > n={n}")
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Certified enclosure of e^lambda
# ---------------------------------------------------------------------------

def _scaled_partial_exp(lam: int, n: int) -> tuple[int, int]:
    """Integer S = sum_{k<=n} lam^k * n!/k! and the last term lam^n.

    Dividing S by n! gives the exact partial Taylor sum of e^lam. Pure
    integer recurrence, no intermediate Fractions.
    """
    term = math.factorial(n)  # lam^0 * n!/0!
    total = term
    for k in range(1, n + 1):
        term = term * lam // k  # exact: lam^k * n!/k!
        total += term
    return total, term


@lru_cache(maxsize=None)
def exp_interval(lam: int, width: Fraction) -> CertInterval:
    """Enclosure of e^lambda of width <= ``width`` for a positive integer lambda.

    Lower endpoint is a partial Taylor sum; the remainder after n terms is
    bounded by the geometric estimate
    (lam^{n+1}/(n+1)!) * 1/(1 - lam/(n+2)), valid once n + 2 > lam.
    """
    if not isinstance(lam, int) or lam < 1:
        raise ValueError(f"exp_interval requires a positive integer, got {lam!r}")
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")

    n = max(2 * lam, 8)
    while True:
        total, last = _scaled_partial_exp(lam, n)
        fact_n = math.factorial(n)
        # last/fact_n == lam^n/n!; next term is lam^{n+1}/(n+1)!
        remainder_hi = Fraction(last * lam * (n + 2), (n + 1) * (n + 2 - lam)) / fact_n
        if remainder_hi <= width:
            lo = Fraction(total, fact_n)
            return CertInterval(lo, lo + remainder_hi)
        n *= 2
