"""Exact scalar and certified interval arithmetic."""

import math
import random
from fractions import Fraction

import pytest

from tailcmp import (
    CertInterval,
    Comparison,
    binom_coeff,
    compare,
    exp_interval,
)

F = Fraction


def iv(lo, hi=None):
    lo = F(lo)
    return CertInterval(lo, F(hi) if hi is not None else lo)


# ---------------------------------------------------------------------------
# Interval arithmetic
# ---------------------------------------------------------------------------


def test_interval_add_identity():
    assert iv(0) + iv("1/2", "3/4") == iv("1/2", "3/4")


def test_interval_add_exact_rationals():
    assert iv("1/3", "1/2") + iv("1/6", "1/4") == iv("1/2", "3/4")


def test_interval_add_degenerate_stays_exact():
    a, b = iv("2/7"), iv("3/11")
    out = a + b
    assert out.is_point and out.lo == F(2, 7) + F(3, 11)


def test_interval_mul_absorbing_zero():
    assert iv(0) * iv("-5", "17") == iv(0)


def test_interval_mul_positive():
    assert iv(1, 2) * iv(3, 4) == iv(3, 8)


def test_interval_mul_sign_mixing():
    assert iv(-1, 1) * iv(-1, 1) == iv(-1, 1)


def test_interval_sub_and_neg():
    assert iv(1, 2) - iv("1/2", 1) == iv(0, "3/2")
    assert -iv(-1, 3) == iv(-3, 1)


def test_interval_reciprocal():
    assert iv(2, 4).reciprocal() == iv("1/4", "1/2")
    with pytest.raises(ValueError):
        iv(0, 1).reciprocal()


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        CertInterval(F(1), F(0))


# ---------------------------------------------------------------------------
# Certified comparison
# ---------------------------------------------------------------------------


def test_compare_exact_greater():
    assert compare(iv("3/4"), iv("11/16")) is Comparison.GREATER


def test_compare_identical_points_equal():
    x = iv("5/7")
    assert compare(x, x) is Comparison.EQUAL


def test_compare_overlap_unresolved():
    assert compare(iv(0, 1), iv("1/2", "3/2")) is Comparison.UNRESOLVED


def test_compare_never_equal_for_wide_intervals():
    # Equal intervals with positive width are still UNRESOLVED: equality of
    # the enclosed values cannot be certified.
    a = iv(0, 1)
    assert compare(a, a) is Comparison.UNRESOLVED


def test_compare_accepts_bare_fractions():
    assert compare(F(3, 4), F(11, 16)) is Comparison.GREATER
    assert compare(F(1, 2), F(1, 2)) is Comparison.EQUAL


def test_compare_never_contradicts_exact_order():
    rng = random.Random(90125)
    for _ in range(500):
        x = F(rng.randint(-50, 50), rng.randint(1, 20))
        y = F(rng.randint(-50, 50), rng.randint(1, 20))
        a = CertInterval(x - F(rng.randint(0, 3), 7), x + F(rng.randint(0, 3), 7))
        b = CertInterval(y - F(rng.randint(0, 3), 7), y + F(rng.randint(0, 3), 7))
        rel = compare(a, b)
        if rel is Comparison.GREATER:
            assert x > y
        elif rel is Comparison.LESS:
            assert x < y
        elif rel is Comparison.EQUAL:
            assert x == y


def test_interval_soundness_random_pipelines():
    # Run the same computation in interval space (with random widening) and
    # in pure rationals; the final interval must enclose the exact result.
    rng = random.Random(4424)
    for _ in range(300):
        exact = F(rng.randint(-9, 9), rng.randint(1, 9))
        wide = CertInterval(exact - F(rng.randint(0, 2), 11), exact + F(rng.randint(0, 2), 11))
        for _ in range(rng.randint(1, 6)):
            q = F(rng.randint(-9, 9), rng.randint(1, 9))
            other = CertInterval(q - F(rng.randint(0, 2), 13), q + F(rng.randint(0, 2), 13))
            op = rng.choice(["add", "sub", "mul"])
            if op == "add":
                exact, wide = exact + q, wide + other
            elif op == "sub":
                exact, wide = exact - q, wide - other
            else:
                exact, wide = exact * q, wide * other
        assert wide.contains(exact)


# ---------------------------------------------------------------------------
# Rational round trips (the scalar layer must never round)
# ---------------------------------------------------------------------------


def test_fraction_round_trip_identities():
    rng = random.Random(7)
    for _ in range(1000):
        a = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        b = F(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        assert (a + b) - b == a
        if b != 0:
            assert a * b / b == a


def test_fraction_canonical_form():
    q = F(-6, -8)
    assert q.denominator > 0 and math.gcd(abs(q.numerator), q.denominator) == 1


# ---------------------------------------------------------------------------
# Binomial coefficients
# ---------------------------------------------------------------------------


def test_binom_small_cases():
    assert binom_coeff(4, 2) == 6
    assert binom_coeff(5, 3) == 10


def test_binom_against_factorial_oracle():
    assert binom_coeff(52, 5) == 2598960
    for n in range(0, 30):
        for k in range(0, n + 1):
            oracle = math.factorial(n) // (math.factorial(k) * math.factorial(n - k))
            assert binom_coeff(n, k) == oracle


def test_binom_domain_errors():
    with pytest.raises(ValueError):
        binom_coeff(3, 4)
    with pytest.raises(ValueError):
        binom_coeff(-1, 0)
    with pytest.raises(ValueError):
        binom_coeff(3, -2)


# ---------------------------------------------------------------------------
# e^lambda enclosure
# ---------------------------------------------------------------------------


def _taylor_enclosure(lam: int, terms: int) -> CertInterval:
    # Independent oracle: partial sum plus the coarse remainder bound
    # 2 * lam^{terms+1}/(terms+1)!, valid once terms + 1 >= 2*lam.
    acc, t = F(1), F(1)
    for k in range(1, terms + 1):
        t = t * lam / k
        acc += t
    rem = 2 * t * lam / (terms + 1)
    return CertInterval(acc, acc + rem)


@pytest.mark.parametrize("lam,width", [(1, F(1, 100)), (2, F(1, 10)), (5, F(1, 10**12))])
def test_exp_interval_encloses_series_oracle(lam, width):
    enclosure = exp_interval(lam, width)
    assert enclosure.width <= width
    oracle = _taylor_enclosure(lam, 40 + 4 * lam)
    assert enclosure.overlaps(oracle)
    # both contain the true value, and the oracle here is much tighter
    assert enclosure.lo <= oracle.hi and oracle.lo <= enclosure.hi


def test_exp_interval_known_digits():
    e1 = exp_interval(1, F(1, 100))
    assert e1.lo < F("2.71829") and e1.hi > F("2.71828")
    e2 = exp_interval(2, F(1, 10))
    assert e2.lo < F("7.39") and e2.hi > F("7.389")


def test_exp_interval_lower_bound_is_partial_sum():
    # Partial sums of a positive series are lower bounds of its limit.
    for lam in (1, 3, 7):
        enclosure = exp_interval(lam, F(1, 10**6))
        acc, t = F(1), F(1)
        for k in range(1, 25):
            t = t * lam / k
            acc += t
            assert enclosure.hi >= acc
        assert enclosure.lo >= acc - F(1)  # sanity: same ballpark


def test_exp_interval_width_request_honoured():
    for width in (F(1, 10), F(1, 10**9), F(1, 10**40)):
        for lam in (1, 4, 30):
            assert exp_interval(lam, width).width <= width


def test_exp_interval_rejects_bad_arguments():
    with pytest.raises(ValueError):
        exp_interval(0, F(1, 10))
    with pytest.raises(ValueError):
        exp_interval(2, F(0))
