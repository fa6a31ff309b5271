"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every tolerance is exact-or-certified: rational comparisons have zero
tolerance, interval claims require actual separation, and randomized suites
are fully seeded. Runtime ceilings are asserted alongside correctness.
"""

import random
import time
from fractions import Fraction

from tailcmp import (
    FiniteDist,
    PoissonSpec,
    SweepSpec,
    alpha_sequence,
    check_l1,
    compare_tails,
    convolve,
    convolve_cert,
    integer_mean_identity,
    poisson_l1_exact,
    poisson_right_skew_exact,
    poisson_truncate,
    power_vs_factorial,
    replay,
    run_sweep,
    tail_comparison_certificate,
    verify_chaundy_bullard,
    verify_kane_poisson,
    verify_teicher,
)
from tailcmp.dists import default_cutoff
from tailcmp.randgen import random_integer_mean_dist, trial_rng

F = Fraction
WIDTH = F(1, 10**30)


class _Timer:
    def __init__(self, num: int, label: str, limit_s: float):
        self.num, self.label, self.limit = num, label, limit_s

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"criterion {self.num:02d} {status} {elapsed:6.1f}s  {self.label}")
        if exc_type is None:
            assert elapsed < self.limit, (
                f"criterion {self.num} exceeded its {self.limit}s budget: {elapsed:.1f}s"
            )
        return False


def test_criterion_01_chaundy_bullard_exact():
    with _Timer(1, "binomial chain exact, n in [2..8], k in [1..40]", 60):
        for n in range(2, 9):
            verdicts = verify_chaundy_bullard(n, 40)
            assert len(verdicts) == 40
            assert all(v.is_holds for v in verdicts), n


def test_criterion_02_teicher_certified():
    with _Timer(2, "Poisson chain certified, k in [1..100]", 60):
        verdicts = verify_teicher(100)
        assert len(verdicts) == 100
        assert all(v.is_holds for v in verdicts)
        # spot value at k=1: 1 - e^{-1} > 1 - 3 e^{-2}
        cert = verdicts[0].certificate
        assert cert["lhs"].lo > cert["rhs"].hi
        assert F("0.63212") < cert["lhs"].lo < cert["lhs"].hi < F("0.63213")
        assert F("0.59399") < cert["rhs"].lo < cert["rhs"].hi < F("0.59400")


def test_criterion_03_poisson_sum_chains_random():
    with _Timer(3, "100 seeded prefix-condition Poisson sum chains", 120):
        rng = random.Random(20260203)
        for _ in range(100):
            length = rng.randint(2, 8)
            lams = [rng.randint(1, 20)]
            for _ in range(length - 1):
                lams.append(rng.randint(1, min(20, sum(lams))))
            verdicts = verify_kane_poisson(lams)
            assert all(v.is_holds for v in verdicts), lams


def test_criterion_04_mean_identity_random():
    with _Timer(4, "integer-mean identity on 1000 seeded dists", 30):
        for i in range(1000):
            d = random_integer_mean_dist(trial_rng(808, i), max_support=40)
            assert d.max_support <= 40
            lhs, rhs = integer_mean_identity(d)
            assert lhs == rhs >= 0


def test_criterion_05_poisson_right_skew_range():
    with _Timer(5, "Poisson right-skewness, s in [1..2000]", 30):
        for s in range(1, 2001):
            assert poisson_right_skew_exact(s).is_holds


def test_criterion_06_poisson_l1_range_with_cross_check():
    with _Timer(6, "Poisson L1 in [3..300] plus interval cross-check in [3..50]", 120):
        for m in range(3, 301):
            assert poisson_l1_exact(m).is_holds
        resolved = 0
        for m in range(3, 51):
            d = poisson_truncate(PoissonSpec(m), WIDTH, default_cutoff(m))
            v = check_l1(alpha_sequence(d))
            assert not v.is_fails
            if not v.is_unresolved:
                resolved += 1
                assert v.is_holds  # agreement with the exact route
        assert resolved == 48  # every instance resolves at default precision


def test_criterion_07_power_vs_factorial_range():
    with _Timer(7, "m^(2m) >= (2m)! for m in [3..200], rejected below", 5):
        for m in range(3, 201):
            assert power_vs_factorial(m).is_holds
        for m, (p, f) in {1: (1, 2), 2: (16, 24)}.items():
            assert p < f
            try:
                power_vs_factorial(m)
            except ValueError:
                continue
            raise AssertionError(f"m={m} should be rejected")


def test_criterion_08_tail_comparison_property_suite():
    with _Timer(8, "10^4 seeded hypothesis pairs, conclusion plus certificate", 300):
        from tailcmp.randgen import random_hypothesis_pair

        for i in range(10_000):
            rng = trial_rng(424242, i)
            S, X = random_hypothesis_pair(rng)
            report = compare_tails(S, X)
            assert report.conclusion.is_holds, (i, S.weights, X.weights)
            cert = tail_comparison_certificate(S, X)
            delta = cert.delta
            assert all(delta[j] >= delta[j + 1] for j in range(len(delta) - 1))
            assert not delta or delta[-1] >= 0
            assert cert.pairing_sum >= 0
            # summation-by-parts identity, exact, re-derived here
            acc, prefix = F(0), []
            for a in cert.alpha.values:
                acc += a
                prefix.append(acc)
            if delta:
                sbp = sum(
                    (delta[j] - delta[j + 1]) * prefix[j] for j in range(len(delta) - 1)
                ) + delta[-1] * prefix[-1]
                assert sbp == cert.pairing_sum


def test_criterion_09_conjecture_sweeps():
    import json

    from tailcmp.reports import render_json, sweep_report

    with _Timer(9, "conj1 grid m<=20, n<=120 and conj2 m<=300", 600):
        spec1 = SweepSpec("conjecture1", {"m_min": 1, "m_max": 20, "n_max": 120})
        out1 = run_sweep(spec1)
        assert out1.result.total == sum(120 - 2 * m for m in range(1, 21))
        assert out1.result.unresolved == []  # exact path cannot be undecided
        for entry in out1.result.fails:
            assert replay(spec1, entry).is_fails  # counterexamples must replay
        assert out1.result.fails == []

        spec2 = SweepSpec("conjecture2", {"m_min": 1, "m_max": 300})
        out2 = run_sweep(spec2)
        assert out2.result.total == 300
        for entry in out2.result.fails:
            assert replay(spec2, entry).is_fails
        assert out2.result.fails == []
        assert out2.result.unresolved == []

        for outcome in (out1, out2):
            report = json.loads(render_json(sweep_report(outcome)))
            assert report["result"]["fails"] == []
            assert report["result"]["total"] == outcome.result.total


def test_criterion_10_oracle_equivalences():
    with _Timer(10, "convolution brute force and Poisson semigroup cross-checks", 60):
        rng = random.Random(161803)
        for _ in range(200):
            sizes = [rng.randint(0, 12) for _ in range(2)]
            dists = []
            for n in sizes:
                w = [rng.randint(0, 9) for _ in range(n + 1)]
                if not any(w):
                    w[0] = 1
                dists.append(FiniteDist.from_integer_weights(w))
            a, b = dists
            out = convolve(a, b)
            brute = [F(0)] * (len(a.weights) + len(b.weights) - 1)
            for i, wa in enumerate(a.weights):
                for j, wb in enumerate(b.weights):
                    brute[i + j] += wa * wb
            assert list(out.weights) == brute

        for lam1 in range(1, 11):
            for lam2 in range(lam1, 11):
                a = poisson_truncate(PoissonSpec(lam1), WIDTH, default_cutoff(lam1))
                b = poisson_truncate(PoissonSpec(lam2), WIDTH, default_cutoff(lam2))
                direct = poisson_truncate(
                    PoissonSpec(lam1 + lam2), WIDTH, default_cutoff(lam1 + lam2)
                )
                conv = convolve_cert(a, b)
                for t in (lam1 + lam2, 2 * (lam1 + lam2)):
                    assert direct.tail(t).overlaps(conv.tail(t)), (lam1, lam2, t)
