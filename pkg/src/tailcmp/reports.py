"""Report emission: canonical JSON and fixed-column CSV.

Rationals are rendered as "num/den" strings (plain integers stay bare) so
reports remain exact; intervals become {"lo": ..., "hi": ...} objects. JSON
is emitted with sorted keys, which makes identical sweep specs produce
byte-identical reports apart from wall_time.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from . import __version__
from .exact import CertInterval
from .predicates import AlphaSequence, Verdict, VerdictTag
from .sweep import SweepOutcome


def jsonable(x):
    """Recursively convert package values into JSON-serializable data."""
    if x is None or isinstance(x, (bool, int, str, float)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, CertInterval):
        return {"lo": str(x.lo), "hi": str(x.hi)}
    if isinstance(x, VerdictTag):
        return x.value
    if isinstance(x, Verdict):
        return {
            "predicate": x.predicate,
            "tag": x.tag.value,
            "witness": jsonable(x.witness),
            "certificate": jsonable(x.certificate),
        }
    if isinstance(x, AlphaSequence):
        return {"mean": x.mean, "values": [jsonable(v) for v in x.values]}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(x)
    return str(x)


def render_json(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


CHAIN_TARGETS = frozenset({"cb", "teicher", "kane", "jogdeo"})


def chain_report(outcome: SweepOutcome) -> dict:
    """Step-by-step report for the named inequality chains."""
    steps = []
    for params, verdict in outcome.points:
        cert = verdict.certificate or {}
        step = {
            "k": params["k"],
            "lhs": jsonable(cert.get("lhs")),
            "rhs": jsonable(cert.get("rhs")),
            "verdict": verdict.tag.value,
            "witness": jsonable(verdict.witness),
        }
        for extra in ("s", "m", "coverage"):
            if extra in cert:
                step[extra] = jsonable(cert[extra])
        steps.append(step)
    return {
        "theorem": outcome.spec.target,
        "params": jsonable(outcome.spec.ranges),
        "steps": steps,
        "tool_version": __version__,
    }


def sweep_report(outcome: SweepOutcome) -> dict:
    res = outcome.result
    return {
        "spec": outcome.spec.to_json_dict(),
        "result": {
            "total": res.total,
            "holds": res.holds,
            "fails": jsonable(res.fails),
            "unresolved": jsonable(res.unresolved),
            "wall_time_s": round(res.wall_time, 6),
        },
        "tool_version": __version__,
    }


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

_PARAM_COLUMNS = {
    "conjecture1": ["m", "n"],
    "conjecture2": ["m"],
    "cb": ["n", "k"],
    "teicher": ["k"],
    "kane": ["k"],
    "jogdeo": ["n", "m", "k"],
    "property-theorem1": ["trial"],
    "lemma1-random": ["trial"],
}

_VALUE_COLUMNS = {
    "cb": ["lhs", "rhs"],
    "teicher": ["lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi"],
    "kane": ["s", "m", "lhs_lo", "lhs_hi", "rhs_lo", "rhs_hi"],
    "jogdeo": ["lhs", "rhs", "coverage"],
}


def _interval_cells(value) -> tuple[str, str]:
    if isinstance(value, CertInterval):
        return str(value.lo), str(value.hi)
    return ("", "") if value is None else (str(value), str(value))


def csv_header(target: str) -> list[str]:
    return _PARAM_COLUMNS[target] + _VALUE_COLUMNS.get(target, []) + ["verdict", "witness"]


def csv_rows(outcome: SweepOutcome) -> list[list[str]]:
    target = outcome.spec.target
    rows = []
    for params, verdict in outcome.points:
        row = [str(params[c]) for c in _PARAM_COLUMNS[target]]
        cert = verdict.certificate or {}
        if target == "cb" or target == "jogdeo":
            row.append(str(cert.get("lhs", "")))
            row.append(str(cert.get("rhs", "")))
            if target == "jogdeo":
                row.append(str(cert.get("coverage", "")))
        elif target == "teicher" or target == "kane":
            if target == "kane":
                row.append(str(cert.get("s", "")))
                row.append(str(cert.get("m", "")))
            lo1, hi1 = _interval_cells(cert.get("lhs"))
            lo2, hi2 = _interval_cells(cert.get("rhs"))
            row.extend([lo1, hi1, lo2, hi2])
        row.append(verdict.tag.value)
        row.append(
            "" if verdict.witness is None else json.dumps(jsonable(verdict.witness))
        )
        rows.append(row)
    return rows


def render_csv(outcome: SweepOutcome) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(outcome.spec.target))
    writer.writerows(csv_rows(outcome))
    return buf.getvalue()
