"""Distributions on the non-negative integers.

Two representations coexist:

* ``FiniteDist`` -- a dense vector of exact rational weights summing to 1.
  Houses binomials, convolutions, and every randomly generated test
  distribution. All queries are exact.
* ``CertDist`` -- a truncated distribution whose weights are certified
  intervals, plus a rigorous upper bound on the mass beyond the truncation
  point. Houses Poisson. Queries return enclosing intervals.

Poisson quantities are deliberately reachable two ways: ratio questions
(pmf at j vs pmf at k) cancel the transcendental e^{-lambda} factor and are
answered exactly as rationals, while absolute tail probabilities go through
the certified truncation. Interval arithmetic cannot certify an exact
equality; rational cancellation can.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import ONE, ZERO, CertInterval, binom_coeff, exp_interval

# ---------------------------------------------------------------------------
# Parameter specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoissonSpec:
    """Poisson with positive integer mean."""

    lam: int

    def __post_init__(self) -> None:
        if not isinstance(self.lam, int) or self.lam < 1:
            raise ValueError(f"Poisson parameter must be a positive integer, got {self.lam!r}")


@dataclass(frozen=True)
class BinomialSpec:
    """Binomial with n trials and success probability m/n; the mean is exactly m."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise ValueError("binomial parameters must be integers")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"binomial requires 1 <= m <= n, got m={self.m}, n={self.n}")


# ---------------------------------------------------------------------------
# Exact finite distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteDist:
    """Exact distribution given by weights at 0..N (trailing zeros permitted)."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise ValueError("FiniteDist needs at least one weight")
        if any(w < 0 for w in ws):
            raise ValueError("weights must be non-negative")
        if sum(ws) != 1:
            raise ValueError(f"weights must sum to exactly 1, got {sum(ws)}")

    @classmethod
    def from_integer_weights(cls, counts: Sequence[int]) -> "FiniteDist":
        total = sum(counts)
        if total <= 0:
            raise ValueError("total weight must be positive")
        return cls(tuple(Fraction(c, total) for c in counts))

    @classmethod
    def point_mass(cls, value: int) -> "FiniteDist":
        if value < 0:
            raise ValueError("support must be non-negative")
        return cls(tuple([ZERO] * value + [ONE]))

    def pmf(self, k: int) -> Fraction:
        if 0 <= k < len(self.weights):
            return self.weights[k]
        return ZERO

    def tail(self, t: int) -> Fraction:
        """P(value >= t), exact."""
        if t <= 0:
            return ONE
        return sum(self.weights[t:], ZERO)

    def le(self, v: int) -> Fraction:
        """P(value <= v), exact."""
        if v < 0:
            return ZERO
        return sum(self.weights[: v + 1], ZERO)

    def mean(self) -> Fraction:
        return sum((k * w for k, w in enumerate(self.weights)), ZERO)

    @property
    def max_support(self) -> int:
        """Largest value carrying positive mass."""
        for k in range(len(self.weights) - 1, -1, -1):
            if self.weights[k] > 0:
                return k
        raise AssertionError("unreachable: weights sum to 1")

    def to_json_dict(self) -> dict:
        return {"weights": [str(w) for w in self.weights]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteDist":
        try:
            raw = data["weights"]
            ws = tuple(Fraction(s) for s in raw)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed distribution payload: {exc}") from exc
        return cls(ws)


def binomial_dist(spec: BinomialSpec) -> FiniteDist:
    """Exact Bin(n, m/n): weight at k is C(n,k) m^k (n-m)^{n-k} / n^n."""
    n, m = spec.n, spec.m
    denom = n**n
    numers = [binom_coeff(n, k) * m**k * (n - m) ** (n - k) for k in range(n + 1)]
    return FiniteDist(tuple(Fraction(num, denom) for num in numers))


def convolve(a: FiniteDist, b: FiniteDist) -> FiniteDist:
    """Distribution of the sum of independent draws from a and b."""
    na, nb = len(a.weights), len(b.weights)
    out = [ZERO] * (na + nb - 1)
    for i, wa in enumerate(a.weights):
        if wa == 0:
            continue
        for j, wb in enumerate(b.weights):
            if wb == 0:
                continue
            out[i + j] += wa * wb
    return FiniteDist(tuple(out))


# ---------------------------------------------------------------------------
# Certified truncations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CertDist:
    """Truncated distribution with certified interval weights.

    ``tail_mass_hi`` bounds P(value > N) from above, so every tail query can
    account for the invisible mass. ``family`` records an analytic identity
    (currently Poisson) that exact ratio paths may exploit.
    """

    weights: tuple[CertInterval, ...]
    tail_mass_hi: Fraction
    family: Optional[PoissonSpec] = None

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("CertDist needs at least one weight")
        if self.tail_mass_hi < 0:
            raise ValueError("tail bound must be non-negative")
        for k, w in enumerate(self.weights):
            if w.lo < 0 or w.hi > 1:
                raise ValueError(f"weight interval at {k} leaves [0,1]: {w}")

    @property
    def cutoff(self) -> int:
        return len(self.weights) - 1

    def tail(self, t: int) -> CertInterval:
        """Enclosure of P(value >= t); the upper end includes the tail bound."""
        if t <= 0:
            return CertInterval.point(ONE)
        lo = sum((w.lo for w in self.weights[t:]), ZERO)
        hi = sum((w.hi for w in self.weights[t:]), ZERO) + self.tail_mass_hi
        return CertInterval(lo, min(hi, ONE))

    def le(self, v: int) -> CertInterval:
        if v < 0:
            return CertInterval.point(ZERO)
        ge = self.tail(v + 1)
        return CertInterval(ONE - ge.hi, ONE - ge.lo)


def default_cutoff(lam: int) -> int:
    """Starting truncation point for the adaptive refinement schedule."""
    return max(4 * lam, lam + 16)


@dataclass(frozen=True)
class Precision:
    """Refinement policy for certified Poisson computations.

    Rounds start at ``default_cutoff`` and double up to ``cutoff_cap``; the
    e-enclosure width is squared each round (widths below 1 only shrink).
    Exhausting the schedule without a decision means Unresolved, never a
    guess.
    """

    exp_width: Fraction = Fraction(1, 10**30)
    cutoff_cap: int = 2**16

    def __post_init__(self) -> None:
        object.__setattr__(self, "exp_width", Fraction(self.exp_width))
        if self.exp_width <= 0:
            raise ValueError("exp_width must be positive")
        if self.cutoff_cap < 1:
            raise ValueError("cutoff cap must be positive")

    def schedule(self, lam: int):
        """Yield (exp_width, cutoff) rounds for a given Poisson parameter."""
        if self.cutoff_cap + 2 <= lam:
            return  # no admissible truncation below the cap
        width = self.exp_width
        cutoff = min(default_cutoff(lam), self.cutoff_cap)
        while True:
            yield width, cutoff
            if cutoff >= self.cutoff_cap:
                return
            cutoff = min(2 * cutoff, self.cutoff_cap)
            if width < 1:
                width = width * width


DEFAULT_PRECISION = Precision()


def _scaled_poisson_terms(lam: int, cutoff: int) -> tuple[list[int], int]:
    """Integers t_k = lam^k * cutoff!/k! for k = 0..cutoff, plus cutoff!.

    t_k / cutoff! is the e^{lam}-scaled Poisson weight lam^k/k!; keeping the
    common denominator makes partial sums pure integer arithmetic.
    """
    fact = math.factorial(cutoff)
    terms = [fact]
    t = fact
    for k in range(1, cutoff + 1):
        t = t * lam // k
        terms.append(t)
    return terms, fact


def _scaled_remainder_hi(lam: int, cutoff: int, terms: list[int]) -> Fraction:
    """Upper bound on sum_{k>cutoff} lam^k/k!, in units of 1/cutoff!.

    Geometric bound (lam^{cutoff+1}/(cutoff+1)!) / (1 - lam/(cutoff+2));
    requires cutoff + 2 > lam.
    """
    return Fraction(terms[cutoff] * lam * (cutoff + 2), (cutoff + 1) * (cutoff + 2 - lam))


def poisson_truncate(spec: PoissonSpec, exp_width: Fraction, cutoff: int) -> CertDist:
    """Certified truncation of Poi(lam) to support 0..cutoff.

    Each weight interval encloses e^{-lam} lam^k / k!; the tail bound is the
    scaled geometric remainder times an upper bound on e^{-lam}.
    """
    lam = spec.lam
    if cutoff + 2 <= lam:
        raise ValueError(
            f"cutoff {cutoff} too small for lambda {lam}: need cutoff + 2 > lambda"
        )
    terms, fact = _scaled_poisson_terms(lam, cutoff)
    e_lam = exp_interval(lam, Fraction(exp_width))
    inv_lo, inv_hi = 1 / e_lam.hi, 1 / e_lam.lo  # enclosure of e^{-lam}

    weights = []
    for t in terms:
        scaled = Fraction(t, fact)
        weights.append(
            CertInterval(max(ZERO, scaled * inv_lo), min(ONE, scaled * inv_hi))
        )
    tail_hi = _scaled_remainder_hi(lam, cutoff, terms) / fact * inv_hi
    return CertDist(tuple(weights), min(tail_hi, ONE), family=spec)


def convolve_cert(a: CertDist, b: CertDist) -> CertDist:
    """Certified convolution of two truncations.

    Cross terms in which either summand exceeds its cutoff are not visible in
    the weight products, so each upper endpoint absorbs both tail bounds and
    the result's tail bound is their sum. Sound, deliberately not tight.
    """
    slack = a.tail_mass_hi + b.tail_mass_hi
    na, nb = len(a.weights), len(b.weights)
    lo = [ZERO] * (na + nb - 1)
    hi = [ZERO] * (na + nb - 1)
    for i, wa in enumerate(a.weights):
        for j, wb in enumerate(b.weights):
            lo[i + j] += wa.lo * wb.lo
            hi[i + j] += wa.hi * wb.hi
    weights = tuple(
        CertInterval(l, min(h + slack, ONE)) for l, h in zip(lo, hi)
    )
    return CertDist(weights, min(slack, ONE), family=None)


# ---------------------------------------------------------------------------
# Shared queries
# ---------------------------------------------------------------------------

Dist = Union[FiniteDist, CertDist]


def tail_prob(d: Dist, t: int) -> Union[Fraction, CertInterval]:
    """P(value >= t): exact for FiniteDist, an enclosure for CertDist."""
    if t < 0:
        raise ValueError("threshold must be non-negative")
    return d.tail(t)


def mean_exact(d: FiniteDist) -> Fraction:
    return d.mean()


def poisson_pmf_ratio(lam: int, j: int, k: int) -> Fraction:
    """P(Poi(lam)=j) / P(Poi(lam)=k) as an exact rational.

    The e^{-lam} factors cancel, leaving lam^{j-k} k!/j!. This is the exact
    path that decides Poisson pmf equalities which no interval can.
    """
    if lam < 1:
        raise ValueError("lambda must be a positive integer")
    if j < 0 or k < 0:
        raise ValueError("pmf indices must be non-negative")
    return Fraction(lam**j * math.factorial(k), lam**k * math.factorial(j))
