"""Hypothesis predicates: unimodality, right-skewness, left-loadedness.

The central objects are

* the mode report of a distribution (plateaus allowed on both flanks, the
  canonical mode is the largest maximizer),
* right-skewness: P(S = s-i) <= P(S = s+i-1) for every i in [s], s the mode,
* the alpha sequence of an integer-mean X: alpha_i = P(X <= m-i) - P(X >= m+i)
  for i in [m], together with the two left-loadedness conditions
  L1 (single + -> - sign change) and L2 (all prefix sums non-negative),
* the identity sum_i alpha_i = sum_{i >= m+1} P(X >= m+i), which pins the
  total of any alpha sequence at a non-negative value.

Every decision is trichotomous: Holds, Fails with a re-checkable witness, or
Unresolved when interval-backed inputs cannot certify a sign. Exact inputs
never produce Unresolved. Poisson questions that reduce to pmf ratios are
decided exactly through cancelled-exponential rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from .exact import (
    ONE,
    ZERO,
    CertInterval,
    Comparison,
    UnresolvedError,
    compare,
    exp_interval,
)
from .dists import (
    CertDist,
    Dist,
    FiniteDist,
    Precision,
    DEFAULT_PRECISION,
    poisson_pmf_ratio,
)

Value = Union[Fraction, CertInterval]


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class VerdictTag(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class Verdict:
    """Trichotomous outcome of a predicate or inequality check.

    A Fails verdict always carries a witness that re-evaluation can confirm;
    Unresolved only ever arises from interval-backed inputs.
    """

    tag: VerdictTag
    predicate: str = ""
    witness: Any = None
    certificate: Optional[dict] = None

    @classmethod
    def holds(cls, predicate: str = "", certificate: Optional[dict] = None) -> "Verdict":
        return cls(VerdictTag.HOLDS, predicate, None, certificate)

    @classmethod
    def fails(cls, witness: Any, predicate: str = "", certificate: Optional[dict] = None) -> "Verdict":
        return cls(VerdictTag.FAILS, predicate, witness, certificate)

    @classmethod
    def unresolved(cls, predicate: str = "", certificate: Optional[dict] = None) -> "Verdict":
        return cls(VerdictTag.UNRESOLVED, predicate, None, certificate)

    @property
    def is_holds(self) -> bool:
        return self.tag is VerdictTag.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.tag is VerdictTag.FAILS

    @property
    def is_unresolved(self) -> bool:
        return self.tag is VerdictTag.UNRESOLVED


@dataclass(frozen=True)
class ModeReport:
    unimodal: bool
    canonical_mode: int
    maximizers: frozenset[int]

    def __post_init__(self) -> None:
        if self.canonical_mode not in self.maximizers:
            raise ValueError("canonical mode must be a maximizer")


@dataclass(frozen=True)
class AlphaSequence:
    """The vector alpha_1..alpha_m for an integer mean m (empty when m = 0)."""

    mean: int
    values: tuple[Value, ...]

    def __post_init__(self) -> None:
        if self.mean < 0:
            raise ValueError("mean must be a non-negative integer")
        if len(self.values) != self.mean:
            raise ValueError(
                f"alpha sequence for mean {self.mean} needs {self.mean} entries, got {len(self.values)}"
            )

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)


# ---------------------------------------------------------------------------
# Certified sign classification
# ---------------------------------------------------------------------------


def _bounds(x: Value) -> tuple[Fraction, Fraction]:
    if isinstance(x, CertInterval):
        return x.lo, x.hi
    q = Fraction(x)
    return q, q


def check_single_sign_change(values: Sequence[Value]) -> Verdict:
    """Certify the pattern (>=0)* followed by (<=0)*, empty blocks allowed.

    Witness of a Fails is the 0-based position of the first certified
    strictly-positive entry occurring after a certified strictly-negative
    one. The certificate carries the length of the leading non-negative run.
    """
    name = "single-sign-change"
    seen_strict_neg = False
    for idx, x in enumerate(values):
        lo, hi = _bounds(x)
        if seen_strict_neg and lo > 0:
            return Verdict.fails(idx, name)
        if hi < 0:
            seen_strict_neg = True

    run = 0
    while run < len(values) and _bounds(values[run])[0] >= 0:
        run += 1
    if all(_bounds(x)[1] <= 0 for x in values[run:]):
        return Verdict.holds(name, {"sign_change_index": run})
    return Verdict.unresolved(name)


def check_u_shaped(values: Sequence[Value]) -> Verdict:
    """Certify non-increasing then non-decreasing (valley shape).

    Reduces to a single sign change of the negated consecutive differences;
    a Fails witness is the 0-based index of the offending difference.
    """
    diffs = [values[i] - values[i + 1] for i in range(len(values) - 1)]
    inner = check_single_sign_change(diffs)
    return Verdict(inner.tag, "u-shaped", inner.witness, inner.certificate)


# ---------------------------------------------------------------------------
# Mode and unimodality
# ---------------------------------------------------------------------------


def _mode_exact(weights: Sequence[Fraction]) -> ModeReport:
    top = max(weights)
    maximizers = frozenset(k for k, w in enumerate(weights) if w == top)
    canonical = max(maximizers)
    rising = all(weights[k] <= weights[k + 1] for k in range(canonical))
    falling = all(
        weights[k] >= weights[k + 1] for k in range(canonical, len(weights) - 1)
    )
    return ModeReport(rising and falling, canonical, maximizers)


def _mode_intervals(d: CertDist) -> ModeReport:
    # Without a family identity only strictly resolved adjacent orderings can
    # be used; genuine plateaus are undecidable by refinement and raise.
    ws = d.weights
    rels = [compare(ws[k], ws[k + 1]) for k in range(len(ws) - 1)]
    if any(r is Comparison.UNRESOLVED or r is Comparison.EQUAL for r in rels):
        raise UnresolvedError("adjacent weights cannot be ordered at this precision")
    first_drop = next(
        (k for k, r in enumerate(rels) if r is Comparison.GREATER), len(rels)
    )
    unimodal = all(r is Comparison.GREATER for r in rels[first_drop:])
    if unimodal:
        peak = first_drop
    else:
        # Strict orderings everywhere: compare the local peaks directly.
        peaks = [
            k
            for k in range(len(ws))
            if (k == 0 or rels[k - 1] is Comparison.LESS)
            and (k == len(rels) or rels[k] is Comparison.GREATER)
        ]
        peak = peaks[0]
        for cand in peaks[1:]:
            rel = compare(ws[cand], ws[peak])
            if rel is Comparison.UNRESOLVED:
                raise UnresolvedError("peak weights cannot be ordered at this precision")
            if rel is Comparison.GREATER:
                peak = cand
    if d.tail_mass_hi >= ws[peak].lo:
        raise UnresolvedError("truncated tail could hide a larger weight")
    return ModeReport(unimodal, peak, frozenset({peak}))


def mode_and_unimodality(d: Dist) -> ModeReport:
    """Mode report of a distribution; raises UnresolvedError when interval
    overlaps prevent ordering adjacent weights.

    Unimodality allows plateaus: the weights must be non-decreasing up to the
    canonical mode (largest maximizer) and non-increasing afterwards. A
    Poisson-tagged truncation is answered exactly: Poi(lam) with integer lam
    has maximizers {lam-1, lam} and canonical mode lam.
    """
    if isinstance(d, FiniteDist):
        return _mode_exact(d.weights)
    if d.family is not None:
        lam = d.family.lam
        return ModeReport(True, lam, frozenset({lam - 1, lam}))
    return _mode_intervals(d)


# ---------------------------------------------------------------------------
# Right-skewness
# ---------------------------------------------------------------------------


def check_right_skewed(d: Dist) -> Verdict:
    """P(S = s-i) <= P(S = s+i-1) for all i in [s], s the canonical mode.

    Mode 0 makes the index range empty, so the verdict is vacuously Holds.
    Non-unimodal input Fails outright.
    """
    name = "right-skewed"
    try:
        report = mode_and_unimodality(d)
    except UnresolvedError:
        return Verdict.unresolved(name)
    if not report.unimodal:
        return Verdict.fails({"reason": "not-unimodal"}, name)
    s = report.canonical_mode

    if isinstance(d, CertDist) and d.family is not None:
        inner = poisson_right_skew_exact(d.family.lam)
        return Verdict(inner.tag, name, inner.witness, inner.certificate)

    if isinstance(d, FiniteDist):
        for i in range(1, s + 1):
            left, right = d.pmf(s - i), d.pmf(s + i - 1)
            if left > right:
                return Verdict.fails({"i": i, "left": left, "right": right}, name)
        return Verdict.holds(name, {"mode": s, "checked": s})

    undecided = []
    tail_iv = CertInterval(ZERO, d.tail_mass_hi)
    for i in range(1, s + 1):
        left = d.weights[s - i]
        right = d.weights[s + i - 1] if s + i - 1 <= d.cutoff else tail_iv
        rel = compare(left, right)
        if rel is Comparison.GREATER:
            return Verdict.fails({"i": i}, name)
        if rel is Comparison.UNRESOLVED:
            undecided.append(i)
    if undecided:
        return Verdict.unresolved(name, {"undecided": undecided})
    return Verdict.holds(name, {"mode": s, "checked": s})


# ---------------------------------------------------------------------------
# Alpha sequences and left-loadedness
# ---------------------------------------------------------------------------


def _integer_mean(d: FiniteDist) -> int:
    mu = d.mean()
    if mu.denominator != 1:
        raise ValueError(f"mean {mu} is not an integer")
    return int(mu)


def alpha_sequence(d: Dist) -> AlphaSequence:
    """alpha_i = P(X <= m-i) - P(X >= m+i) for i in [m].

    The mean m must be certain: exact and integral for a FiniteDist, or read
    off a family tag for a truncation. m = 0 yields the empty sequence.
    """
    if isinstance(d, FiniteDist):
        m = _integer_mean(d)
        values = tuple(d.le(m - i) - d.tail(m + i) for i in range(1, m + 1))
        return AlphaSequence(m, values)

    if d.family is None:
        raise ValueError("alpha sequence of a truncation requires a family tag")
    m = d.family.lam

    # Suffix sums once, O(1) per alpha entry afterwards.
    n = d.cutoff
    ge_lo = [ZERO] * (n + 2)
    ge_hi = [ZERO] * (n + 2)
    ge_hi[n + 1] = d.tail_mass_hi
    for k in range(n, -1, -1):
        ge_lo[k] = ge_lo[k + 1] + d.weights[k].lo
        ge_hi[k] = ge_hi[k + 1] + d.weights[k].hi

    def ge(t: int) -> CertInterval:
        if t <= 0:
            return CertInterval.point(ONE)
        if t > n:
            return CertInterval(ZERO, min(d.tail_mass_hi, ONE))
        return CertInterval(ge_lo[t], min(ge_hi[t], ONE))

    values = []
    for i in range(1, m + 1):
        below, above = ge(m - i + 1), ge(m + i)
        values.append(
            CertInterval((ONE - below.hi) - above.hi, (ONE - below.lo) - above.lo)
        )
    return AlphaSequence(m, tuple(values))


def check_l1(a: AlphaSequence) -> Verdict:
    """Condition L1: the alpha sequence changes sign once, + block then -.

    The certificate's ell is the length of the leading certified
    non-negative run; L1 additionally demands ell >= 1 (a strictly negative
    alpha_1 is fatal even if the rest stays negative).
    """
    name = "left-loaded-L1"
    if a.mean == 0:
        return Verdict.holds(name, {"degenerate": True, "ell": 0})
    inner = check_single_sign_change(a.values)
    if inner.is_fails:
        return Verdict.fails(inner.witness, name)
    if inner.is_unresolved:
        return Verdict.unresolved(name)
    ell = inner.certificate["sign_change_index"]
    if ell >= 1:
        return Verdict.holds(name, {"ell": ell})
    if _bounds(a.values[0])[1] < 0:
        return Verdict.fails(0, name)
    return Verdict.unresolved(name)


def check_l2(a: AlphaSequence) -> Verdict:
    """Condition L2: every prefix sum of the alpha sequence is non-negative.

    Certificate carries all prefix sums; a Fails witness is the 1-based
    length k of the first certifiably negative prefix.
    """
    name = "left-loaded-L2"
    prefix: list[Value] = []
    acc: Value = ZERO
    undecided = False
    for k, v in enumerate(a.values, start=1):
        acc = acc + v
        prefix.append(acc)
        lo, hi = _bounds(acc)
        if hi < 0:
            return Verdict.fails(k, name, {"prefix_sum": acc})
        if lo < 0:
            undecided = True
    if undecided:
        return Verdict.unresolved(name)
    return Verdict.holds(name, {"prefix_sums": tuple(prefix)})


def integer_mean_identity(d: FiniteDist) -> tuple[Fraction, Fraction]:
    """Both sides of sum_i alpha_i = sum_{i >= m+1} P(X >= m+i), exactly.

    The identity is a consequence of the mean being the integer m; a mismatch
    would be an arithmetic bug, so it is asserted here.
    """
    m = _integer_mean(d)
    a = alpha_sequence(d)
    lhs = sum(a.values, ZERO)
    rhs = ZERO
    i = m + 1
    while m + i <= d.max_support:
        rhs += d.tail(m + i)
        i += 1
    if lhs != rhs:
        raise AssertionError(
            f"integer-mean identity violated: {lhs} != {rhs} (mean {m})"
        )
    return lhs, rhs


# ---------------------------------------------------------------------------
# Closed-form Poisson criteria (cancelled-exponential exact paths)
# ---------------------------------------------------------------------------


def poisson_right_skew_exact(s: int) -> Verdict:
    """Right-skewness of Poi(s) for integer s >= 1, by exact integer arithmetic.

    beta_i = P(S=s-i)/P(S=s+i-1) satisfies beta_1 = 1 (the pmf ties at s-1
    and s) and beta_i/beta_{i+1} = s^2/(s^2 - i^2) >= 1, so the whole
    sequence stays <= 1.
    """
    name = "poisson-right-skewed"
    if s < 1:
        raise ValueError("s must be a positive integer")
    if poisson_pmf_ratio(s, s - 1, s) != 1:
        return Verdict.fails({"reason": "mode tie broken", "s": s}, name)
    s2 = s * s
    for i in range(1, s):
        if s2 < (s - i) * (s + i):
            return Verdict.fails({"i": i}, name)
    return Verdict.holds(
        name, {"mode": s, "beta1": ONE, "ratio_checks": max(s - 1, 0)}
    )


def power_vs_factorial(m: int) -> Verdict:
    """m^{2m} >= (2m)! for m >= 3 (fails for m in {1, 2}: 1 < 2 and 16 < 24)."""
    name = "power-vs-factorial"
    if m < 3:
        raise ValueError(
            f"m^(2m) >= (2m)! requires m >= 3; m={m} gives "
            f"{m ** (2 * m)} < {math.factorial(2 * m)}"
        )
    power, fact = m ** (2 * m), math.factorial(2 * m)
    if power >= fact:
        return Verdict.holds(name, {"power": power, "factorial": fact})
    return Verdict.fails({"power": power, "factorial": fact}, name)


def poisson_alpha1_positive(m: int, precision: Precision = DEFAULT_PRECISION) -> Verdict:
    """Simmons' inequality P(X <= m-1) > P(X >= m+1) for X ~ Poi(m), certified.

    In e^m-scaled space the claim becomes the comparison of the exact
    rational 2*sum_{k<m} m^k/k! + m^m/m! against e^m itself, which an
    enclosure of e^m decides; the gap is strict, so refinement terminates.
    """
    name = "poisson-alpha1-positive"
    if m < 1:
        raise ValueError("m must be a positive integer")
    fact = math.factorial(m)
    term, acc = fact, fact
    for k in range(1, m):
        term = term * m // k
        acc += term
    middle = term * m // m  # m^m * m!/m! = m^m
    lhs = Fraction(2 * acc + middle, fact)
    for width, _ in precision.schedule(m):
        rel = compare(lhs, exp_interval(m, width))
        if rel is Comparison.GREATER:
            return Verdict.holds(name, {"scaled_lhs": lhs})
        if rel is Comparison.LESS:
            return Verdict.fails({"scaled_lhs": lhs}, name)
    return Verdict.unresolved(name)


def poisson_l1_exact(m: int, precision: Precision = DEFAULT_PRECISION) -> Verdict:
    """Condition L1 for Poi(m), m >= 3, by reconstructing the closed-form proof.

    With beta_i = P(X=m+i)/P(X=m-i) (cancelled-exponential rationals):
    beta_i >= beta_{i+1} iff i^2 + i <= m, so beta is U-shaped; beta_1 =
    m/(m+1) < 1 and beta_m >= 1 iff m^{2m} >= (2m)!. Hence a_i =
    P(X=m-i) - P(X=m+i) is a + block then a - block, the alpha sequence is
    U-shaped, and with alpha_1 > 0 (Simmons) and alpha_m <= 0 it changes
    sign exactly once.
    """
    name = "poisson-left-loaded-L1"
    if m < 3:
        raise ValueError("the closed-form route requires m >= 3")

    beta1 = Fraction(m, m + 1)
    if not beta1 < 1:
        return Verdict.fails({"reason": "beta1", "value": beta1}, name)

    # U-shape of beta: the decrease predicate i^2 + i <= m must be a prefix.
    decreasing = [(m - i) * (m + i + 1) >= m * m for i in range(1, m)]
    valley = 0
    while valley < len(decreasing) and decreasing[valley]:
        valley += 1
    if any(decreasing[valley:]):
        return Verdict.fails(
            {"reason": "ratio predicate not prefix-shaped", "flips": decreasing}, name
        )

    # Crossing of beta through 1: beta_i < 1 iff m^{2i} (m-i)! < (m+i)!.
    lt_one = []
    lhs = m * m * math.factorial(m - 1)  # i = 1
    rhs = math.factorial(m + 1)
    for i in range(1, m + 1):
        lt_one.append(lhs < rhs)
        if i < m:
            lhs = lhs * m * m // (m - i)
            rhs = rhs * (m + i + 1)
    crossing = 0
    while crossing < m and lt_one[crossing]:
        crossing += 1
    if any(lt_one[crossing:]) or crossing == 0 or crossing == m:
        return Verdict.fails({"reason": "unit crossing", "pattern": lt_one}, name)

    tail_vs_origin = power_vs_factorial(m)
    if not tail_vs_origin.is_holds:
        return Verdict.fails({"reason": "alpha_m sign", "inner": tail_vs_origin}, name)

    simmons = poisson_alpha1_positive(m, precision)
    if not simmons.is_holds:
        return Verdict(simmons.tag, name, simmons.witness, simmons.certificate)

    return Verdict.holds(
        name,
        {
            "beta1": beta1,
            "valley_index": valley,
            "unit_crossing": crossing,
            "alpha1": "positive (Simmons, certified)",
            "alpha_m": "non-positive (m^{2m} >= (2m)!)",
        },
    )
