"""Serialisation of reports: JSON, aligned text tables, CSV.

Every report is a plain dict.  Tabular content lives under ``"rows"`` (a
list of flat dicts with a common key order); everything else is header
material.  Key order is insertion order, so output is stable.
"""

from __future__ import annotations

import csv
import io
import json

from . import __version__
from .finspace import FinSpace, bits, open_masks
from .suspension import LevelVerdict, SuspensionReport


def header(command: str, level: int | None) -> dict:
    return {"tool": "qtop", "version": __version__, "command": command, "level": level}


def space_to_dict(s: FinSpace) -> dict:
    return {"labels": list(s.labels), "minimal_opens": [list(bits(u)) for u in s.ups]}


def verdict_row(v: LevelVerdict) -> dict:
    return {
        "level": v.level,
        "points": v.points,
        "discrete": v.discrete,
        "t1": v.t1,
        "t1_witness": " in closure of ".join(v.t1_witness) if v.t1_witness else None,
        "inversion_continuous": v.inversion_continuous,
        "translations_continuous": v.translations_continuous,
        "multiplication_continuous": v.multiplication_continuous,
        "coherence_closed": v.coherence_closed,
        "coherence_subspace_equal": v.coherence_subspace_equal,
        "routes_equal": v.routes_equal,
    }


def suspension_to_dict(r: SuspensionReport, command: str) -> dict:
    out = header(command, r.max_level)
    out.update(
        {
            "route": r.route,
            "input": space_to_dict(r.input_space),
            "pi0": list(r.pi0.labels),
            "components": r.components,
            "rank": r.rank,
            "discrete": r.discrete,
            "topological_group_up_to_level": r.topological_group_up_to_level,
            "condition1_powers_quotient": r.condition1_powers_quotient,
            "condition2_3_status": r.condition2_3_status,
            "notes": list(r.notes),
            "rows": [verdict_row(v) for v in r.verdicts],
        }
    )
    return out


def open_count(s: FinSpace) -> int:
    return len(open_masks(s))


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ", ".join(_cell(x) for x in v)
    return str(v)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_table(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key == "rows" or isinstance(value, dict):
            continue
        lines.append(f"# {key}: {_cell(value)}")
    rows = report.get("rows") or []
    if rows:
        cols = list(rows[0])
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    rows = report.get("rows") or []
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        cols = list(rows[0])
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_cell(r.get(c)) for c in cols])
    else:
        writer.writerow(["key", "value"])
        for key, value in report.items():
            if not isinstance(value, dict):
                writer.writerow([key, _cell(value)])
    return buf.getvalue()


RENDERERS = {"json": to_json, "table": to_table, "csv": to_csv}


def render(report: dict, fmt: str) -> str:
    return RENDERERS[fmt](report)
