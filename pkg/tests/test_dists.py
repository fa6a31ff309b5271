"""Distribution model: exact finite distributions and certified truncations."""

import math
import random
from fractions import Fraction

import pytest

from tailcmp import (
    BinomialSpec,
    CertInterval,
    FiniteDist,
    PoissonSpec,
    binomial_dist,
    convolve,
    convolve_cert,
    exp_interval,
    mean_exact,
    poisson_pmf_ratio,
    poisson_truncate,
    tail_prob,
)

F = Fraction
WIDTH = F(1, 10**30)


# ---------------------------------------------------------------------------
# FiniteDist construction and queries
# ---------------------------------------------------------------------------


def test_finite_dist_validation():
    with pytest.raises(ValueError):
        FiniteDist((F(1, 2), F(1, 3)))  # does not sum to 1
    with pytest.raises(ValueError):
        FiniteDist((F(3, 2), F(-1, 2)))  # negative weight
    with pytest.raises(ValueError):
        FiniteDist(())


def test_point_mass():
    d = FiniteDist.point_mass(7)
    assert d.pmf(7) == 1 and d.mean() == 7 and d.max_support == 7


def test_json_round_trip():
    d = binomial_dist(BinomialSpec(5, 2))
    assert FiniteDist.from_json_dict(d.to_json_dict()) == d
    with pytest.raises(ValueError):
        FiniteDist.from_json_dict({"weights": "nope"})


def test_binomial_fair_two_coins():
    d = binomial_dist(BinomialSpec(2, 1))
    assert d.weights == (F(1, 4), F(1, 2), F(1, 4))


def test_binomial_5_2_weights():
    d = binomial_dist(BinomialSpec(5, 2))
    assert d.pmf(0) == F(243, 3125)
    assert d.pmf(1) == F(810, 3125)
    assert d.pmf(3) == F(720, 3125)
    assert sum(d.weights) == 1


def test_binomial_degenerate_p_one():
    d = binomial_dist(BinomialSpec(1, 1))
    assert d.weights == (F(0), F(1))
    d = binomial_dist(BinomialSpec(4, 4))
    assert d.pmf(4) == 1


def test_binomial_mean_is_m():
    for n, m in [(2, 1), (5, 2), (12, 5), (9, 3), (40, 7)]:
        assert mean_exact(binomial_dist(BinomialSpec(n, m))) == m


def test_binomial_spec_validation():
    with pytest.raises(ValueError):
        BinomialSpec(3, 0)
    with pytest.raises(ValueError):
        BinomialSpec(3, 4)


def test_tail_examples():
    assert tail_prob(binomial_dist(BinomialSpec(2, 1)), 1) == F(3, 4)
    assert tail_prob(binomial_dist(BinomialSpec(4, 2)), 2) == F(11, 16)
    assert tail_prob(binomial_dist(BinomialSpec(4, 2)), 0) == 1


def test_mean_examples():
    assert mean_exact(binomial_dist(BinomialSpec(5, 2))) == 2
    assert mean_exact(FiniteDist.point_mass(7)) == 7
    assert mean_exact(FiniteDist((F(1, 2), F(0), F(1, 2)))) == 1


# ---------------------------------------------------------------------------
# Convolution
# ---------------------------------------------------------------------------


def test_convolve_point_masses():
    out = convolve(FiniteDist.point_mass(3), FiniteDist.point_mass(4))
    assert out.pmf(7) == 1


def test_convolve_binomial_semigroup():
    out = convolve(binomial_dist(BinomialSpec(2, 1)), binomial_dist(BinomialSpec(2, 1)))
    assert out == binomial_dist(BinomialSpec(4, 2))
    assert out.weights == (F(1, 16), F(4, 16), F(6, 16), F(4, 16), F(1, 16))


def test_convolve_identity_element():
    a = binomial_dist(BinomialSpec(5, 2))
    assert convolve(a, FiniteDist.point_mass(0)) == a


def _brute_force_convolve(a: FiniteDist, b: FiniteDist) -> list[Fraction]:
    out = [F(0)] * (len(a.weights) + len(b.weights) - 1)
    for i, wa in enumerate(a.weights):
        for j, wb in enumerate(b.weights):
            out[i + j] += wa * wb
    return out


def _random_dist(rng: random.Random, max_support: int = 12) -> FiniteDist:
    n = rng.randint(0, max_support)
    w = [rng.randint(0, 9) for _ in range(n + 1)]
    if not any(w):
        w[0] = 1
    return FiniteDist.from_integer_weights(w)


def test_convolve_matches_brute_force_enumeration():
    rng = random.Random(1812)
    for _ in range(100):
        a, b = _random_dist(rng), _random_dist(rng)
        assert list(convolve(a, b).weights) == _brute_force_convolve(a, b)


def test_convolve_normalization_random():
    rng = random.Random(55)
    for _ in range(50):
        out = convolve(_random_dist(rng), _random_dist(rng))
        assert sum(out.weights) == 1


# ---------------------------------------------------------------------------
# Poisson truncation
# ---------------------------------------------------------------------------


def test_poisson_weight_zero_encloses_inverse_e():
    d = poisson_truncate(PoissonSpec(1), WIDTH, 30)
    w0 = d.weights[0]
    # independent Taylor oracle for e
    acc, t = F(1), F(1)
    for k in range(1, 45):
        t /= k
        acc += t
    e_lo, e_hi = acc, acc + 2 * t
    assert w0.lo <= 1 / e_lo and 1 / e_hi <= w0.hi


def test_poisson_lambda_one_ties_at_zero_and_one():
    d = poisson_truncate(PoissonSpec(1), WIDTH, 30)
    assert d.weights[0] == d.weights[1]


def test_poisson_tail_bound_shrinks_with_cutoff():
    prev = None
    for cutoff in (8, 16, 32, 64):
        d = poisson_truncate(PoissonSpec(3), WIDTH, cutoff)
        if prev is not None:
            assert d.tail_mass_hi < prev
        prev = d.tail_mass_hi
    assert prev > 0


def test_poisson_truncate_cutoff_precondition():
    with pytest.raises(ValueError):
        poisson_truncate(PoissonSpec(10), WIDTH, 8)


def test_poisson_mass_accounting():
    for lam, cutoff in [(1, 20), (4, 30), (11, 60)]:
        d = poisson_truncate(PoissonSpec(lam), WIDTH, cutoff)
        lo_sum = sum(w.lo for w in d.weights)
        hi_sum = sum(w.hi for w in d.weights)
        assert lo_sum <= 1 <= hi_sum + d.tail_mass_hi


def test_poisson_weights_enclose_scaled_partial_terms():
    # In e^lam-scaled space the weight at k is exactly lam^k/k!; a much
    # tighter independent enclosure of each absolute weight must sit inside
    # the claimed interval's span.
    lam, cutoff = 5, 40
    d = poisson_truncate(PoissonSpec(lam), F(1, 10**6), cutoff)
    tight_e = exp_interval(lam, F(1, 10**45))
    for k in range(cutoff + 1):
        scaled = F(lam**k, math.factorial(k))
        tight = CertInterval(scaled / tight_e.hi, scaled / tight_e.lo)
        assert d.weights[k].lo <= tight.lo and tight.hi <= d.weights[k].hi


def test_poisson_tail_interval_and_mean_enclosure():
    lam, cutoff = 6, 48
    d = poisson_truncate(PoissonSpec(lam), WIDTH, cutoff)
    t0 = tail_prob(d, 0)
    assert t0.lo == 1 == t0.hi
    t = tail_prob(d, lam)
    assert 0 < t.lo < t.hi < 1
    # mean of the truncation: sum k*w_k plus at most lam * P(X >= cutoff)
    mean_lo = sum(k * w.lo for k, w in enumerate(d.weights))
    slack = lam * (d.tail_mass_hi + d.weights[cutoff].hi)
    mean_hi = sum(k * w.hi for k, w in enumerate(d.weights)) + slack
    assert mean_lo <= lam <= mean_hi


def test_poisson_pmf_ratio_examples():
    for s in (1, 2, 9, 50):
        assert poisson_pmf_ratio(s, s - 1, s) == 1
    assert poisson_pmf_ratio(3, 0, 6) == F(720, 729)
    assert poisson_pmf_ratio(7, 4, 4) == 1


def test_poisson_pmf_ratio_matches_scaled_weights():
    rng = random.Random(31)
    for _ in range(50):
        lam = rng.randint(1, 12)
        j, k = rng.randint(0, 20), rng.randint(0, 20)
        oracle = F(lam**j, math.factorial(j)) / F(lam**k, math.factorial(k))
        assert poisson_pmf_ratio(lam, j, k) == oracle


# ---------------------------------------------------------------------------
# Semigroup identity vs certified convolution
# ---------------------------------------------------------------------------


def test_semigroup_tail_agrees_with_truncated_convolution():
    for lam1, lam2 in [(1, 1), (2, 3), (4, 4)]:
        a = poisson_truncate(PoissonSpec(lam1), WIDTH, 24 + 4 * lam1)
        b = poisson_truncate(PoissonSpec(lam2), WIDTH, 24 + 4 * lam2)
        direct = poisson_truncate(
            PoissonSpec(lam1 + lam2), WIDTH, 48 + 4 * (lam1 + lam2)
        )
        conv = convolve_cert(a, b)
        assert conv.family is None
        for t in (0, lam1 + lam2, 2 * (lam1 + lam2)):
            ti, tc = direct.tail(t), conv.tail(t)
            # both enclose the same true value, so they must overlap
            assert ti.overlaps(tc)
