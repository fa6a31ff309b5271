"""Parameter-grid sweeps, randomized property harnesses, and replay.

Grids are sharded statically across workers (order-preserving chunked map),
so a sweep's output is a pure function of its spec: identical specs,
including the seed, produce identical point lists with any worker count.
Randomized targets derive one independent RNG per trial index, which keeps
parallel and serial runs byte-identical after the canonical merge.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Sequence

from .dists import (
    BinomialSpec,
    DEFAULT_PRECISION,
    FiniteDist,
    PoissonSpec,
    Precision,
    binomial_dist,
    poisson_truncate,
)
from .predicates import Verdict, alpha_sequence, check_l2, integer_mean_identity
from .randgen import (
    random_hypothesis_pair,
    random_integer_mean_dist,
    trial_rng,
)
from .verify import (
    HypothesisError,
    compare_tails,
    poisson_left_loaded_route,
    tail_comparison_certificate,
    verify_chaundy_bullard,
    verify_jogdeo_samuels,
    verify_kane_poisson,
    verify_teicher,
)

RANDOMIZED_TARGETS = frozenset({"property-theorem1", "lemma1-random"})
TARGETS = frozenset(
    {"conjecture1", "conjecture2", "cb", "teicher", "kane", "jogdeo"}
) | RANDOMIZED_TARGETS


@dataclass
class SweepSpec:
    """What to sweep: target, parameter ranges, precision, seed, parallelism."""

    target: str
    ranges: dict
    precision: Precision = DEFAULT_PRECISION
    seed: Optional[int] = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"unknown sweep target {self.target!r}")
        if not self.ranges:
            raise ValueError("ranges must be non-empty")
        if self.target in RANDOMIZED_TARGETS and self.seed is None:
            raise ValueError(f"target {self.target} requires a seed")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def to_json_dict(self) -> dict:
        return {
            "target": self.target,
            "ranges": self.ranges,
            "precision": {
                "exp_width": str(self.precision.exp_width),
                "cutoff_cap": self.precision.cutoff_cap,
            },
            "seed": self.seed,
            "parallelism": self.jobs,
        }


@dataclass
class SweepResult:
    total: int
    holds: int
    fails: list[dict]
    unresolved: list[dict]
    wall_time: float

    def __post_init__(self) -> None:
        if self.total != self.holds + len(self.fails) + len(self.unresolved):
            raise ValueError("sweep accounting does not add up")


@dataclass
class SweepOutcome:
    spec: SweepSpec
    points: list[tuple[dict, Verdict]]
    result: SweepResult


# ---------------------------------------------------------------------------
# Point checks (module level so worker processes can pickle them)
# ---------------------------------------------------------------------------


def check_conjecture1_point(params: tuple[int, int]) -> Verdict:
    """L2 for Bin(n, m/n) at one exact grid point (n > 2m)."""
    m, n = params
    inner = check_l2(alpha_sequence(binomial_dist(BinomialSpec(n, m))))
    return Verdict(inner.tag, "conjecture1-L2", inner.witness, inner.certificate)


def check_conjecture2_point(m: int, precision: Precision = DEFAULT_PRECISION) -> Verdict:
    """L2 for Poi(m) via certified intervals with adaptive refinement.

    Cross-checked against the proof route (mean identity and Simmons for
    m in {1,2}, the closed-form L1 criterion for m >= 3). A prefix sum that
    is exactly zero could never be certified by intervals, hence the
    Unresolved escape when the cap is reached.
    """
    verdict = Verdict.unresolved("conjecture2-L2")
    cutoff_used = None
    for width, cutoff in precision.schedule(m):
        d = poisson_truncate(PoissonSpec(m), width, cutoff)
        cutoff_used = cutoff
        verdict = check_l2(alpha_sequence(d))
        if not verdict.is_unresolved:
            break
    cross = poisson_left_loaded_route(m, precision)
    certificate = {
        "cutoff": cutoff_used,
        "cross_check": cross.tag.value,
        "cross_route": (cross.certificate or {}).get("route"),
        "agreement": verdict.is_holds == cross.is_holds or verdict.is_unresolved,
    }
    return Verdict(verdict.tag, "conjecture2-L2", verdict.witness, certificate)


def property_trial(seed: int, i: int) -> tuple[dict, Verdict]:
    """One seeded tail-comparison trial: conclusion plus full certificate."""
    rng = trial_rng(seed, i)
    S, X = random_hypothesis_pair(rng)
    report = compare_tails(S, X)
    params = {"trial": i}
    try:
        cert = tail_comparison_certificate(S, X)
    except (HypothesisError, RuntimeError) as exc:
        return params, Verdict.fails(
            {
                "trial": i,
                "reason": f"certificate: {exc}",
                "s_dist": S.to_json_dict(),
                "x_dist": X.to_json_dict(),
            },
            "property-tail-comparison",
        )
    if report.conclusion.is_holds:
        return params, Verdict.holds(
            "property-tail-comparison",
            {"s": report.s, "m": report.m, "route": cert.route},
        )
    return params, Verdict.fails(
        {
            "trial": i,
            "lhs": report.lhs_tail,
            "rhs": report.rhs_tail,
            "s_dist": S.to_json_dict(),
            "x_dist": X.to_json_dict(),
        },
        "property-tail-comparison",
    )


def mean_identity_trial(seed: int, support_max: int, i: int) -> tuple[dict, Verdict]:
    rng = trial_rng(seed, i)
    d = random_integer_mean_dist(rng, max_support=support_max)
    params = {"trial": i}
    try:
        lhs, rhs = integer_mean_identity(d)
    except AssertionError as exc:
        return params, Verdict.fails(
            {"trial": i, "reason": str(exc), "dist": d.to_json_dict()},
            "mean-identity",
        )
    if lhs < 0:
        return params, Verdict.fails(
            {"trial": i, "reason": "negative total", "dist": d.to_json_dict()},
            "mean-identity",
        )
    return params, Verdict.holds("mean-identity", {"total": lhs})


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def _map_points(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = math.ceil(len(items) / jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _aggregate(points: list[tuple[dict, Verdict]], wall_time: float) -> SweepResult:
    holds = sum(1 for _, v in points if v.is_holds)
    fails = [
        {"params": p, "predicate": v.predicate, "witness": v.witness}
        for p, v in points
        if v.is_fails
    ]
    unresolved = [
        {"params": p, "predicate": v.predicate, "certificate": v.certificate}
        for p, v in points
        if v.is_unresolved
    ]
    return SweepResult(len(points), holds, fails, unresolved, wall_time)


def conjecture1_grid(m_min: int, m_max: int, n_max: int) -> list[tuple[int, int]]:
    """All (m, n) with m in [m_min..m_max] and 2m < n <= n_max."""
    if not (1 <= m_min <= m_max):
        raise ValueError("need 1 <= m_min <= m_max")
    grid = [
        (m, n)
        for m in range(m_min, m_max + 1)
        for n in range(2 * m + 1, n_max + 1)
    ]
    if not grid:
        raise ValueError("empty grid: n_max leaves no n > 2m")
    return grid


def run_sweep(spec: SweepSpec) -> SweepOutcome:
    """Execute a sweep spec and aggregate its points deterministically."""
    start = time.perf_counter()
    r = spec.ranges
    target = spec.target

    if target == "conjecture1":
        grid = conjecture1_grid(r["m_min"], r["m_max"], r["n_max"])
        verdicts = _map_points(check_conjecture1_point, grid, spec.jobs)
        points = [({"m": m, "n": n}, v) for (m, n), v in zip(grid, verdicts)]
    elif target == "conjecture2":
        ms = list(range(r["m_min"], r["m_max"] + 1))
        if not ms or ms[0] < 1:
            raise ValueError("conjecture2 needs 1 <= m_min <= m_max")
        fn = partial(check_conjecture2_point, precision=spec.precision)
        verdicts = _map_points(fn, ms, spec.jobs)
        points = [({"m": m}, v) for m, v in zip(ms, verdicts)]
    elif target == "cb":
        verdicts = verify_chaundy_bullard(r["n"], r["k_max"])
        points = [({"n": r["n"], "k": k}, v) for k, v in enumerate(verdicts, 1)]
    elif target == "teicher":
        verdicts = verify_teicher(r["k_max"], spec.precision)
        points = [({"k": k}, v) for k, v in enumerate(verdicts, 1)]
    elif target == "kane":
        verdicts = verify_kane_poisson(list(r["lambdas"]), spec.precision)
        points = [({"k": k}, v) for k, v in enumerate(verdicts, 1)]
    elif target == "jogdeo":
        verdicts = verify_jogdeo_samuels(r["n"], r["m"], r["k_max"])
        points = [
            ({"n": r["n"], "m": r["m"], "k": k}, v)
            for k, v in enumerate(verdicts, 1)
        ]
    elif target == "property-theorem1":
        fn = partial(property_trial, spec.seed)
        points = _map_points(fn, list(range(r["trials"])), spec.jobs)
    elif target == "lemma1-random":
        fn = partial(mean_identity_trial, spec.seed, r.get("support_max", 40))
        points = _map_points(fn, list(range(r["trials"])), spec.jobs)
    else:  # pragma: no cover - guarded by SweepSpec validation
        raise ValueError(f"unknown target {target!r}")

    return SweepOutcome(spec, points, _aggregate(points, time.perf_counter() - start))


def replay(spec: SweepSpec, entry: dict) -> Verdict:
    """Re-run the single check behind a fails/unresolved entry.

    For randomized targets the dumped distributions (preferred) or the
    (seed, trial) pair reproduce the exact instance.
    """
    params = entry["params"]
    target = spec.target
    if target == "conjecture1":
        return check_conjecture1_point((params["m"], params["n"]))
    if target == "conjecture2":
        return check_conjecture2_point(params["m"], spec.precision)
    if target == "cb":
        return verify_chaundy_bullard(params["n"], params["k"])[-1]
    if target == "teicher":
        return verify_teicher(params["k"], spec.precision)[-1]
    if target == "kane":
        lams = list(spec.ranges["lambdas"])
        return verify_kane_poisson(lams, spec.precision)[params["k"] - 1]
    if target == "jogdeo":
        return verify_jogdeo_samuels(params["n"], params["m"], params["k"])[-1]
    if target == "property-theorem1":
        witness = entry.get("witness") or {}
        if "s_dist" in witness:
            S = FiniteDist.from_json_dict(witness["s_dist"])
            X = FiniteDist.from_json_dict(witness["x_dist"])
            report = compare_tails(S, X)
            return report.conclusion
        return property_trial(spec.seed, params["trial"])[1]
    if target == "lemma1-random":
        return mean_identity_trial(
            spec.seed, spec.ranges.get("support_max", 40), params["trial"]
        )[1]
    raise ValueError(f"unknown target {target!r}")
