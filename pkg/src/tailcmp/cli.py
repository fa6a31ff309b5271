"""Command-line interface.

Exit status conventions:
  0  every emitted verdict Holds
  1  at least one verdict Fails (a counterexample or violated inequality)
  2  Unresolved verdicts present, none failing (more precision needed)
  3  usage or precondition error

Distribution inputs are JSON objects {"weights": ["243/3125", ...]} with
exact rationals as strings. Reports can be emitted as JSON (--json) or CSV
(--csv, sweep-style commands); CSV columns are fixed per target: the
parameter columns listed in the subcommand help, then per-step values where
applicable, then verdict and witness. TAILCMP_JOBS sets the default worker
count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .dists import DEFAULT_PRECISION, FiniteDist, Precision
from .predicates import (
    Verdict,
    alpha_sequence,
    check_l1,
    check_l2,
    check_right_skewed,
)
from .reports import (
    CHAIN_TARGETS,
    chain_report,
    jsonable,
    render_csv,
    render_json,
    sweep_report,
)
from .sweep import SweepOutcome, SweepSpec, run_sweep
from .verify import HypothesisError, compare_tails, tail_comparison_certificate

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_UNRESOLVED = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the contract reserves 2 for
    # Unresolved, so route everything through UsageError -> 3.
    def error(self, message):
        raise UsageError(message)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: expected N or LO..HI") from exc
    if lo > hi:
        raise UsageError(f"bad range {text!r}: lower bound exceeds upper")
    return lo, hi


def _parse_lambdas(text: str) -> list[int]:
    try:
        lams = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"bad lambda list {text!r}") from exc
    if not lams:
        raise UsageError("lambda list is empty")
    return lams


def _load_dist(text: str) -> FiniteDist:
    try:
        payload = json.loads(text)
        return FiniteDist.from_json_dict(payload)
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"bad distribution: {exc}") from exc


def _precision_from(args) -> Precision:
    width = DEFAULT_PRECISION.exp_width
    cap = DEFAULT_PRECISION.cutoff_cap
    if getattr(args, "precision", None):
        try:
            width = Fraction(args.precision)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad precision {args.precision!r}") from exc
        if width <= 0:
            raise UsageError("precision must be a positive rational")
    if getattr(args, "cutoff_cap", None):
        cap = args.cutoff_cap
        if cap < 1:
            raise UsageError("cutoff cap must be positive")
    return Precision(exp_width=width, cutoff_cap=cap)


def _default_jobs() -> int:
    raw = os.environ.get("TAILCMP_JOBS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(verdicts: list[Verdict]) -> int:
    if any(v.is_fails for v in verdicts):
        return EXIT_FAILS
    if any(v.is_unresolved for v in verdicts):
        return EXIT_UNRESOLVED
    return EXIT_HOLDS


def _emit_verdicts(args, verdicts: list[Verdict], human_lines: list[str]) -> int:
    if getattr(args, "json", False):
        payload = verdicts[0] if len(verdicts) == 1 else verdicts
        _emit(render_json(payload), args.out)
    else:
        _emit("".join(line + "\n" for line in human_lines), args.out)
    return _exit_code(verdicts)


def _emit_outcome(args, outcome: SweepOutcome) -> int:
    res = outcome.result
    if getattr(args, "json", False):
        report = (
            chain_report(outcome)
            if outcome.spec.target in CHAIN_TARGETS
            else sweep_report(outcome)
        )
        _emit(render_json(report), args.out)
    elif getattr(args, "csv", False):
        _emit(render_csv(outcome), args.out)
    else:
        lines = [
            f"{outcome.spec.target}: total={res.total} holds={res.holds} "
            f"fails={len(res.fails)} unresolved={len(res.unresolved)} "
            f"({res.wall_time:.2f}s)"
        ]
        for entry in res.fails:
            lines.append(f"  FAIL {json.dumps(jsonable(entry))}")
        for entry in res.unresolved:
            lines.append(f"  UNRESOLVED {json.dumps(jsonable(entry))}")
        _emit("".join(line + "\n" for line in lines), args.out)
    return _exit_code([v for _, v in outcome.points])


# ---------------------------------------------------------------------------
# Parser construction
# ---------------------------------------------------------------------------


def _add_output_flags(p: argparse.ArgumentParser, csv_ok: bool = True) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="emit a JSON report")
    if csv_ok:
        group.add_argument("--csv", action="store_true", help="emit CSV rows")
    p.add_argument("--out", metavar="PATH", help="write output to a file")


def _add_precision_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--precision",
        metavar="RATIONAL",
        help="target width for e-enclosures, e.g. 1/1000000000000000000000000000000",
    )
    p.add_argument("--cutoff-cap", type=int, metavar="N", help="truncation term cap")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="tailcmp",
        description="Exact and certified tail-comparison verification.",
    )
    parser.add_argument("--version", action="version", version=f"tailcmp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-skew", help="right-skewness of an exact distribution")
    p.add_argument("--dist", required=True, help='JSON {"weights": [...]}')
    _add_output_flags(p, csv_ok=False)

    p = sub.add_parser("check-load", help="left-loadedness (L1/L2) of an exact distribution")
    p.add_argument("--dist", required=True)
    _add_output_flags(p, csv_ok=False)

    p = sub.add_parser("alpha", help="alpha sequence of an integer-mean distribution")
    p.add_argument("--dist", required=True)
    _add_output_flags(p, csv_ok=False)

    p = sub.add_parser(
        "compare-tails", help="full tail-comparison report for a pair (S, X)"
    )
    p.add_argument("--s-dist", required=True)
    p.add_argument("--x-dist", required=True)
    p.add_argument(
        "--certificate", action="store_true", help="also replay the proof certificate"
    )
    _add_output_flags(p, csv_ok=False)

    p = sub.add_parser("verify", help="certify a classical tail chain")
    vsub = p.add_subparsers(dest="chain", required=True)

    v = vsub.add_parser("cb", help="binomial chain: columns n,k,lhs,rhs,verdict,witness")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--kmax", type=int, required=True)
    _add_output_flags(v)

    v = vsub.add_parser(
        "teicher",
        help="Poisson chain: columns k,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict,witness",
    )
    v.add_argument("--kmax", type=int, required=True)
    _add_precision_flags(v)
    _add_output_flags(v)

    v = vsub.add_parser(
        "kane",
        help="prefix-condition Poisson sums: columns k,s,m,lhs_lo,lhs_hi,rhs_lo,rhs_hi,verdict,witness",
    )
    v.add_argument("--lambdas", required=True, help="comma-separated positive integers")
    _add_precision_flags(v)
    _add_output_flags(v)

    v = vsub.add_parser(
        "jogdeo",
        help="binomial mean-m chain: columns n,m,k,lhs,rhs,coverage,verdict,witness",
    )
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--kmax", type=int, required=True)
    _add_output_flags(v)

    p = sub.add_parser("sweep", help="conjecture sweeps over parameter grids")
    ssub = p.add_subparsers(dest="conjecture", required=True)

    s = ssub.add_parser(
        "conj1", help="binomial L2 grid (exact): columns m,n,verdict,witness"
    )
    s.add_argument("--m", required=True, metavar="LO..HI")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    _add_output_flags(s)

    s = ssub.add_parser(
        "conj2", help="Poisson L2 range (certified): columns m,verdict,witness"
    )
    s.add_argument("--m", required=True, metavar="LO..HI")
    s.add_argument("--jobs", type=int, default=None)
    _add_precision_flags(s)
    _add_output_flags(s)

    p = sub.add_parser("prop", help="randomized property harnesses")
    psub = p.add_subparsers(dest="property", required=True)

    s = psub.add_parser(
        "theorem1", help="random hypothesis pairs: columns trial,verdict,witness"
    )
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    _add_output_flags(s)

    s = psub.add_parser(
        "lemma1", help="random integer-mean identity: columns trial,verdict,witness"
    )
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--support-max", type=int, default=40)
    s.add_argument("--jobs", type=int, default=None)
    _add_output_flags(s)

    return parser


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _cmd_check_skew(args) -> int:
    d = _load_dist(args.dist)
    v = check_right_skewed(d)
    return _emit_verdicts(args, [v], [f"right-skewed: {v.tag.value}"])


def _cmd_check_load(args) -> int:
    d = _load_dist(args.dist)
    a = alpha_sequence(d)
    v1, v2 = check_l1(a), check_l2(a)
    combined = (
        Verdict.holds("left-loaded")
        if (v1.is_holds or v2.is_holds)
        else Verdict.fails({"L1": v1.witness, "L2": v2.witness}, "left-loaded")
        if (v1.is_fails and v2.is_fails)
        else Verdict.unresolved("left-loaded")
    )
    lines = [
        f"mean: {a.mean}",
        f"L1: {v1.tag.value}",
        f"L2: {v2.tag.value}",
        f"left-loaded: {combined.tag.value}",
    ]
    if getattr(args, "json", False):
        _emit(render_json({"mean": a.mean, "L1": v1, "L2": v2, "left_loaded": combined}), args.out)
        return _exit_code([combined])
    _emit("".join(line + "\n" for line in lines), args.out)
    return _exit_code([combined])


def _cmd_alpha(args) -> int:
    d = _load_dist(args.dist)
    a = alpha_sequence(d)
    if getattr(args, "json", False):
        _emit(render_json({"mean": a.mean, "alpha": list(a.values)}), args.out)
    else:
        values = ", ".join(str(v) for v in a.values)
        _emit(f"mean: {a.mean}\nalpha: [{values}]\n", args.out)
    return EXIT_HOLDS


def _cmd_compare_tails(args) -> int:
    S = _load_dist(args.s_dist)
    X = _load_dist(args.x_dist)
    report = compare_tails(S, X)
    verdicts = list(report.hypotheses.values()) + [report.conclusion]
    payload = {
        "s": report.s,
        "m": report.m,
        "lhs_tail": report.lhs_tail,
        "rhs_tail": report.rhs_tail,
        "hypotheses": report.hypotheses,
        "conclusion": report.conclusion,
    }
    lines = [
        f"s (mode of S): {report.s}",
        f"m (mean of X): {report.m}",
        f"P(S >= s) = {report.lhs_tail}",
        f"P(S+X >= s+m) = {report.rhs_tail}",
    ]
    lines += [f"{name}: {v.tag.value}" for name, v in report.hypotheses.items()]
    lines.append(f"conclusion: {report.conclusion.tag.value}")
    if args.certificate:
        try:
            cert = tail_comparison_certificate(S, X)
            payload["certificate"] = {
                "route": cert.route,
                "pairing_sum": cert.pairing_sum,
                "delta": list(cert.delta),
            }
            lines.append(f"certificate: route {cert.route}, pairing sum {cert.pairing_sum}")
        except HypothesisError as exc:
            payload["certificate"] = {"refused": str(exc)}
            lines.append(f"certificate refused: {exc}")
    if getattr(args, "json", False):
        _emit(render_json(payload), args.out)
    else:
        _emit("".join(line + "\n" for line in lines), args.out)
    return _exit_code(verdicts)


def _spec_for(args) -> SweepSpec:
    jobs = args.jobs if getattr(args, "jobs", None) else _default_jobs()
    precision = _precision_from(args)
    if args.command == "verify":
        if args.chain == "cb":
            return SweepSpec("cb", {"n": args.n, "k_max": args.kmax})
        if args.chain == "teicher":
            return SweepSpec("teicher", {"k_max": args.kmax}, precision)
        if args.chain == "kane":
            return SweepSpec(
                "kane", {"lambdas": _parse_lambdas(args.lambdas)}, precision
            )
        return SweepSpec("jogdeo", {"n": args.n, "m": args.m, "k_max": args.kmax})
    if args.command == "sweep":
        m_lo, m_hi = _parse_range(args.m)
        if args.conjecture == "conj1":
            return SweepSpec(
                "conjecture1",
                {"m_min": m_lo, "m_max": m_hi, "n_max": args.n_max},
                precision,
                jobs=jobs,
            )
        return SweepSpec(
            "conjecture2", {"m_min": m_lo, "m_max": m_hi}, precision, jobs=jobs
        )
    if args.property == "theorem1":
        return SweepSpec(
            "property-theorem1",
            {"trials": args.trials},
            precision,
            seed=args.seed,
            jobs=jobs,
        )
    return SweepSpec(
        "lemma1-random",
        {"trials": args.trials, "support_max": args.support_max},
        precision,
        seed=args.seed,
        jobs=jobs,
    )


def _cmd_collection(args) -> int:
    spec = _spec_for(args)
    outcome = run_sweep(spec)
    return _emit_outcome(args, outcome)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "check-skew":
            return _cmd_check_skew(args)
        if args.command == "check-load":
            return _cmd_check_load(args)
        if args.command == "alpha":
            return _cmd_alpha(args)
        if args.command == "compare-tails":
            return _cmd_compare_tails(args)
        return _cmd_collection(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
