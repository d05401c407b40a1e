"""Table builders and JSON/CSV/markdown rendering.

Every row is computed from the cascade or from ``index_report``; nothing
here stores expected values.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .cascade import Cascade, cardinality_of_full_cascade
from .index import IndexReport, maximal_parabolic_equality, minimal_parabolic_classification
from .rootsys import SimpleType

NUMBERING_NOTE = "simple roots in Bourbaki numbering"


def cascade_size_rows(types: Iterable[SimpleType]) -> list[dict]:
    return [
        {"type": str(t), "rank": t.rank, "kPi": cardinality_of_full_cascade(t)}
        for t in types
    ]


def minimal_rows(types: Iterable[SimpleType]) -> list[dict]:
    """One row per type in the layout of the minimal-parabolic table."""
    out = []
    for t in types:
        rows = minimal_parabolic_classification(t)
        out.append({
            "type": str(t),
            "rank": t.rank,
            "equality_not_in_cascade": [r.i for r in rows if r.equality and r.branch != "in_cascade"],
            "equality_in_cascade": [r.i for r in rows if r.branch == "in_cascade"],
            "no_equality": [r.i for r in rows if not r.equality],
        })
    return out


def maximal_rows(types: Iterable[SimpleType]) -> list[dict]:
    return [
        {"type": str(t), "rank": t.rank, "equality_at": maximal_parabolic_equality(t)}
        for t in types
        if t.family == "A"
    ]


def cascade_rows(c: Cascade) -> list[dict]:
    return [
        {"support": e.labels(), "eps": list(e.eps), "gamma_size": len(e.gamma)}
        for e in c.elements
    ]


def report_rows(reports: Iterable[IndexReport]) -> list[dict]:
    return [r.to_dict() for r in reports]


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v) if v else "none"
    if isinstance(v, dict):
        return " ".join(f"{k}={v[k]}" for k in sorted(v))
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(rows: Sequence[dict], fmt: str, title: str | None = None) -> str:
    if fmt == "json":
        doc = {"numbering": "Bourbaki", "rows": list(rows)}
        if title:
            doc["title"] = title
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue()
    if fmt == "markdown":
        lines = []
        if title:
            lines += [f"### {title}", "", f"_{NUMBERING_NOTE}_", ""]
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "---|" * len(cols))
        for r in rows:
            lines.append("| " + " | ".join(_cell(r[c]) for c in cols) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
