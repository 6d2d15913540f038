"""Serialisation of families, matrices and reports to JSON, CSV and plain text.

Output is a pure function of the inputs: keys are sorted, carriers come in
their defining order, and wall times are left out unless asked for.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Hashable, Sequence

from .bases import F2Matrix
from .dyadic import Dyadic, DyadicMatrix
from .gf2 import EvenSubset, Orbit
from .matchings import Matching
from .report import Report

PAPER_TAG = "bases-of-grothendieck-groups-II"
FORMAT_VERSION = 1
FORMATS = ("json", "csv", "text")


def header(n: int, kind: str) -> dict[str, Any]:
    return {"paper": PAPER_TAG, "n": n, "kind": kind, "version": FORMAT_VERSION}


def encode_item(x: Hashable) -> Any:
    """JSON form of a carrier element."""
    if isinstance(x, Matching):
        return [[a.lo, a.hi] for a in x.arcs]
    if isinstance(x, EvenSubset):
        return list(x.elements)
    if isinstance(x, Orbit):
        return {"sign": x.sign, "rep": list(x.rep.elements), "other": list(x.other.elements)}
    raise TypeError(f"cannot encode {type(x).__name__}")


def label(x: Hashable) -> str:
    """Compact one-cell label used in CSV and text output."""
    return str(x)


def encode_dyadic(v: Dyadic) -> str:
    return f"{v.num}/2^{v.exp}"


def decode_dyadic(s: str) -> Dyadic:
    num, _, exp = s.partition("/2^")
    return Dyadic(int(num), int(exp or 0))


def _matrix_rows(m: F2Matrix | DyadicMatrix) -> list[list[Any]]:
    if isinstance(m, F2Matrix):
        return [[int(v) for v in row] for row in m.entries]
    return [[encode_dyadic(v) for v in row] for row in m.rows()]


def family_document(n: int, kind: str, items: Sequence[Hashable], extra: dict[str, Any] | None = None) -> dict:
    doc = header(n, kind)
    doc.update(extra or {})
    doc["count"] = len(items)
    doc["items"] = [encode_item(x) for x in items]
    return doc


def matrix_document(n: int, kind: str, m: F2Matrix | DyadicMatrix, certificate: dict | None = None) -> dict:
    doc = header(n, kind)
    doc["carrier"] = [encode_item(x) for x in m.carrier]
    doc["entries"] = _matrix_rows(m)
    doc["convention"] = "column j lists the coefficients of basis vector j in terms of the carrier"
    if certificate is not None:
        doc["certificate"] = certificate
    return doc


def reports_document(n: int, kind: str, reports: Sequence[Report], timings: bool = False) -> dict:
    doc = header(n, kind)
    doc["reports"] = [r.to_dict(timings=timings) for r in reports]
    doc["summary"] = {
        status: sum(r.status == status for r in reports) for status in ("pass", "fail", "reported")
    }
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def family_csv(items: Sequence[Hashable]) -> str:
    return _csv([["index", "item"]] + [[i, label(x)] for i, x in enumerate(items)])


def matrix_csv(m: F2Matrix | DyadicMatrix) -> str:
    names = [label(x) for x in m.carrier]
    rows = _matrix_rows(m)
    return _csv([[""] + names] + [[names[i]] + rows[i] for i in range(len(rows))])


def reports_csv(reports: Sequence[Report], timings: bool = False) -> str:
    head = ["statement", "n", "status", "checked", "failures", "first_witness"]
    if timings:
        head.append("wall_time")
    rows = [head]
    for r in reports:
        row = [r.statement, r.n, r.status, r.counts.get("checked", 0), r.counts.get("failures", 0),
               r.witnesses[0] if r.witnesses else ""]
        if timings:
            row.append(f"{r.wall_time:.6f}")
        rows.append(row)
    return _csv(rows)


def family_text(n: int, kind: str, items: Sequence[Hashable]) -> str:
    lines = [f"{kind} N={n}: {len(items)} items"] + [f"  {label(x)}" for x in items]
    return "\n".join(lines) + "\n"


def matrix_text(n: int, kind: str, m: F2Matrix | DyadicMatrix) -> str:
    names = [label(x) for x in m.carrier]
    rows = _matrix_rows(m) if isinstance(m, F2Matrix) else m.strings()
    cells = [[str(v) for v in row] for row in rows]
    width = max([len(c) for row in cells for c in row] + [1])
    lines = [f"{kind} N={n} ({len(names)}x{len(names)})"]
    lines += [f"  {i:>3} {names[i]}" for i in range(len(names))]
    lines += ["  " + " ".join(c.rjust(width) for c in row) for row in cells]
    return "\n".join(lines) + "\n"


def reports_text(reports: Sequence[Report]) -> str:
    return "\n".join(r.line() for r in reports) + "\n"
