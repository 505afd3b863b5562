"""Tabular output: CSV and JSON renderers shared by the CLI.

CSV: header row, comma separator, floats at 15 significant digits, booleans
as true/false, missing values empty.  JSON: an array of row objects whose
keys equal the CSV headers.
"""

import json


def format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _normalize(columns, rows):
    out = []
    for row in rows:
        if isinstance(row, dict):
            out.append([row.get(c) for c in columns])
        else:
            out.append(list(row))
    return out


def to_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in _normalize(columns, rows):
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json(columns, rows) -> str:
    objs = [dict(zip(columns, row)) for row in _normalize(columns, rows)]
    return json.dumps(objs, indent=2) + "\n"


def render(columns, rows, fmt="csv") -> str:
    if fmt == "csv":
        return to_csv(columns, rows)
    if fmt == "json":
        return to_json(columns, rows)
    raise ValueError(f"unknown format {fmt!r}")
