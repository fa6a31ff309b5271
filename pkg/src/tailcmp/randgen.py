"""Seeded generators for the randomized property harnesses.

The constructions are exact: integer weight vectors are repaired to hit an
integer mean on the nose (moving the surplus to a neighbour of the target
mean), right-skewed shapes are built by sampling a non-increasing right
profile and then a left profile dominated both by its right mirror and by
its inner neighbour, and left-loaded candidates are rejection-sampled
against the L1/L2 checks with a point-mass fallback so generation always
terminates.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .dists import FiniteDist
from .predicates import alpha_sequence, check_l1, check_l2, check_right_skewed


def trial_rng(seed: int, index: int) -> random.Random:
    """Independent, order-free RNG for one trial; str seeding is stable."""
    return random.Random(f"{seed}:{index}")


def random_integer_mean_dist(
    rng: random.Random,
    max_support: int = 40,
    max_weight: int = 9,
    mean: int | None = None,
) -> FiniteDist:
    """Random FiniteDist whose mean is exactly the integer ``mean``.

    With ``mean`` unset the rounded empirical mean is used. The repair step
    adds surplus weight at mean-1 or mean+1, which changes the first moment
    by exactly the defect; support stays within ``max_support``.
    """
    n = rng.randint(1, max(1, max_support - 1))
    w = [rng.randint(0, max_weight) for _ in range(n + 1)]
    if not any(w):
        w[rng.randint(0, n)] = rng.randint(1, max_weight)

    total = sum(w)
    first_moment = sum(k * c for k, c in enumerate(w))
    if mean is None:
        mean = (2 * first_moment + total) // (2 * total)  # round(A/T) without floats
        if mean == 0 and first_moment > 0:
            mean = 1
    if mean == 0:
        return FiniteDist.point_mass(0)
    if mean > n:
        w.extend([0] * (mean - n))
        n = mean

    defect = first_moment - mean * total
    if defect > 0:
        w[mean - 1] += defect
    elif defect < 0:
        if mean + 1 > n:
            w.append(0)
        w[mean + 1] += -defect
    return FiniteDist.from_integer_weights(w)


def random_right_skewed(
    rng: random.Random,
    mode_max: int = 8,
    right_extent_max: int = 8,
    max_weight: int = 9,
    max_tries: int = 400,
) -> tuple[FiniteDist, int]:
    """Random right-skewed unimodal FiniteDist with an integer mean.

    Returns the distribution and its canonical mode. The right profile is
    strictly peaked at the mode so the largest maximizer stays put; the left
    profile is capped by min(inner neighbour, right mirror), which yields
    unimodality and right-skewness by construction. Integer means come from
    rejection; a point mass is the (right-skewed, exact-mean) fallback.
    """
    for _ in range(max_tries):
        s = rng.randint(0, mode_max)
        extent = rng.randint(0, right_extent_max)
        right = sorted(
            (rng.randint(0, max_weight) for _ in range(extent + 1)), reverse=True
        )
        right[0] += 1
        w = [0] * s + right
        for i in range(1, s + 1):
            mirror = w[s + i - 1] if s + i - 1 < len(w) else 0
            w[s - i] = rng.randint(0, min(w[s - i + 1], mirror))
        total = sum(w)
        if sum(k * c for k, c in enumerate(w)) % total != 0:
            continue
        dist = FiniteDist.from_integer_weights(w)
        return dist, s
    s = rng.randint(0, mode_max)
    return FiniteDist.point_mass(s), s


def random_left_loaded(
    rng: random.Random,
    mean: int,
    max_support: int = 14,
    max_weight: int = 9,
    max_tries: int = 60,
) -> FiniteDist:
    """Random FiniteDist with exact integer mean satisfying L1 or L2.

    Falls back to the point mass at ``mean`` (all alphas vanish, so both
    conditions hold) if rejection does not land within the budget.
    """
    if mean == 0:
        return FiniteDist.point_mass(0)
    for _ in range(max_tries):
        cand = random_integer_mean_dist(
            rng, max_support=max_support, max_weight=max_weight, mean=mean
        )
        a = alpha_sequence(cand)
        if check_l1(a).is_holds or check_l2(a).is_holds:
            return cand
    return FiniteDist.point_mass(mean)


def random_hypothesis_pair(
    rng: random.Random,
    mode_max: int = 8,
    right_extent_max: int = 8,
    x_support_max: int = 14,
) -> tuple[FiniteDist, FiniteDist]:
    """A pair (S, X) satisfying every tail-comparison hypothesis.

    S is right-skewed with canonical mode s and integer mean; X has integer
    mean m <= s and satisfies L1 or L2. Verified before returning, so the
    property suite never runs on a silently invalid draw.
    """
    while True:
        S, s = random_right_skewed(rng, mode_max, right_extent_max)
        m = rng.randint(0, s) if s > 0 else 0
        X = random_left_loaded(rng, m, max_support=x_support_max)
        a = alpha_sequence(X)
        if (
            check_right_skewed(S).is_holds
            and (check_l1(a).is_holds or check_l2(a).is_holds)
            and X.mean() == Fraction(m)
        ):
            return S, X
