"""Reports produced by the command line: building, JSON/TSV emission, parsing."""

from __future__ import annotations

import io
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .cohomology import (
    cohomology_punctured,
    cohomology_unpunctured,
    enumerate_torsors,
)
from .errors import InvalidInput
from .quadratic import QuadraticField

SCHEMA_VERSION = "1"
FORMATS = ("json", "tsv")


def _s(x: Any) -> str:
    return str(x)


@dataclass
class Report:
    """Command metadata, payload and (optionally) timing."""

    command: str
    meta: dict[str, str]
    payload: dict[str, Any]
    records: list[dict[str, str]] = field(default_factory=list)
    timing: dict[str, str] | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(r.get("passed") == "true" for r in self.records)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "meta": self.meta,
            "payload": self.payload,
            "records": self.records,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        return cls(
            command=d["command"],
            meta=dict(d["meta"]),
            payload=d["payload"],
            records=list(d.get("records", [])),
            timing=d.get("timing"),
            schema_version=d["schema_version"],
        )


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "tsv":
        return _emit_tsv(report)
    raise InvalidInput(f"unsupported format {fmt!r}")


def parse(text: str, fmt: str = "json") -> Report:
    if fmt != "json":
        raise InvalidInput("only JSON reports can be parsed back")
    return Report.from_dict(json.loads(text))


def _tsv_rows(report: Report) -> tuple[list[str], list[list[str]]]:
    p = report.payload
    if report.command == "groups":
        return ["degree", "invariants"], [[g["degree"], ",".join(g["invariants"])] for g in p["groups"]]
    if report.command == "torsors":
        return ["disc", "field"], [[t["disc"], t["field"]] for t in p["torsors"]]
    if report.command == "pairing":
        return ["y", "z", "values"], [[e["y"], e["z"], ",".join(e["values"])] for e in p["entries"]]
    if report.command == "legendre":
        cols = ["p", "q", "cup_pq_vanishes", "cup_qp_vanishes", "jacobi_pq", "jacobi_qp", "passed"]
        return cols, [[r[c] for c in cols] for r in report.records]
    cols = ["name", "passed", "detail"]
    return cols, [[r[c] for c in cols] for r in report.records]


def _emit_tsv(report: Report) -> str:
    head, rows = _tsv_rows(report)
    buf = io.StringIO()
    buf.write(f"# schema_version={report.schema_version} command={report.command}")
    for k in sorted(report.meta):
        buf.write(f" {k}={report.meta[k]}")
    buf.write("\n")
    buf.write("\t".join(head) + "\n")
    for r in rows:
        buf.write("\t".join(r) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------- builders


def base_meta(field_name: str, S, n: int | None, seed: int | None) -> dict[str, str]:
    meta = {"version": __version__, "field": field_name}
    if S is not None:
        meta["S"] = ",".join(_s(p) for p in S) if S else "infinity"
    if n is not None:
        meta["n"] = _s(n)
    if seed is not None:
        meta["seed"] = _s(seed)
    return meta


def groups_report(field: QuadraticField | None, S, n: int, max_degree: int = 5) -> Report:
    if S:
        if field is not None:
            raise InvalidInput("punctured profiles are implemented over Q only")
        prof = cohomology_punctured(S, n, max_degree)
    else:
        prof = cohomology_unpunctured(field, n, max_degree)
    groups = [
        {"degree": _s(i), "invariants": [_s(d) for d in g.invariants], "order": _s(g.order)}
        for i, g in enumerate(prof.groups)
    ]
    payload = {
        "groups": groups,
        "stable_tail": [_s(d) for d in prof.stable_tail.invariants],
        "punctured": "true" if prof.punctured else "false",
    }
    name = "Q" if field is None else f"sqrt:{field.m}"
    return Report("groups", base_meta(name, S, n, None), payload)


def torsors_report(S, n: int = 2) -> Report:
    ts = enumerate_torsors(S, n)
    payload = {"torsors": [{"disc": _s(t.disc), "field": str(t)} for t in ts], "h1_order": _s(len(ts) + 1)}
    return Report("torsors", base_meta("Q", S, n, None), payload)


def pairing_report(S, n: int = 2) -> Report:
    from .cup import pairing_table

    tab = pairing_table(S, n)
    entries = [
        {"y": _s(y), "z": _s(z), "values": [_s(v) for v in vec]}
        for y, z, vec in tab.rows()
    ]
    payload = {
        "basis": [_s(t.disc) for t in tab.basis],
        "entries": entries,
        "symmetric": "true" if tab.is_symmetric() else "false",
        "orientation": "sigma: sqrt(D) -> -sqrt(D); values a in Z/n read as a/n in Q/Z; entry (y, z) is y cup z",
    }
    return Report("pairing", base_meta("Q", S, n, None), payload)


def legendre_report(bound: int) -> Report:
    from .cup import verify_reciprocity

    rep = verify_reciprocity(bound)
    records = [
        {
            "p": _s(r.p),
            "q": _s(r.q),
            "cup_pq_vanishes": "true" if r.cup_pq_vanishes else "false",
            "cup_qp_vanishes": "true" if r.cup_qp_vanishes else "false",
            "jacobi_pq": _s(r.jacobi_pq),
            "jacobi_qp": _s(r.jacobi_qp),
            "passed": "true" if r.passed else "false",
        }
        for r in rep.records
    ]
    meta = base_meta("Q", None, 2, None)
    meta["max"] = _s(bound)
    return Report("legendre", meta, {"pairs": _s(len(records))}, records)


def _record(name: str, ok: bool, detail: str = "") -> dict[str, str]:
    return {"name": name, "passed": "true" if ok else "false", "detail": detail}


def verify_report(S, n: int, bound: int, seed: int) -> Report:
    """Run the invariant suites and record one line per check."""
    from .checks import run_checks

    rng = random.Random(seed)
    records = [_record(name, ok, detail) for name, ok, detail in run_checks(S, n, bound, rng)]
    meta = base_meta("Q", S, n, seed)
    meta["max"] = _s(bound)
    return Report("verify", meta, {"checks": _s(len(records))}, records)


def timed(fn, *args, **kwargs) -> tuple[Any, dict[str, str]]:
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, {"seconds": f"{time.perf_counter() - t0:.3f}"}
