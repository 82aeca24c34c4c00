"""Serialization of results to JSON, CSV and plain text.

Exact numbers (int, Fraction) are written as "p/q" strings, irrational
values as certified decimals, booleans as booleans.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .frobenius import FrobeniusInstance
from .lattice import LatticeSpec
from .reals import Surd, format_rational, format_real

EXIT_OK = 0
EXIT_IO = 1
EXIT_FAILED = 2


def to_plain(x, digits: int = 12):
    """Recursively convert a result value into JSON-ready data."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, (Surd, float)):
        return format_real(x, digits)
    if isinstance(x, FrobeniusInstance):
        return [format_rational(v) for v in x.a]
    if isinstance(x, LatticeSpec):
        return [[format_rational(v) for v in row] for row in x.basis]
    if isinstance(x, dict):
        return {str(k): to_plain(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v, digits) for v in x]
    if is_dataclass(x):
        return {f.name: to_plain(getattr(x, f.name), digits) for f in fields(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        if v and isinstance(v[0], list):
            return ";".join(",".join(_cell(c) for c in row) for row in v)
        return ",".join(_cell(c) for c in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render(records: Sequence[dict], fmt: str, digits: int = 12,
           columns: Sequence[str] | None = None) -> str:
    plain = [to_plain(r, digits) for r in records]
    if fmt == "json":
        body = plain[0] if len(plain) == 1 and columns is None else plain
        return json.dumps(body, indent=2) + "\n"
    if fmt == "csv":
        cols = list(columns) if columns is not None else (list(plain[0]) if plain else [])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in plain:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = []
    for r in plain:
        for k, v in r.items():
            lines.append(f"{k}: {_cell(v) if not isinstance(v, str) else v}")
        lines.append("")
    return "\n".join(lines[:-1]) + "\n" if lines else ""


def _failed(records: Iterable[dict]) -> bool:
    return any(r.get("pass") is False for r in records)


def emit_report(records: Sequence[dict], fmt: str = "json", path=None, digits: int = 12,
                columns: Sequence[str] | None = None, passed: bool | None = None) -> int:
    """Write records and return the process exit code.

    0 on success, 2 when a record carries ``"pass": false`` (or ``passed`` is
    False), 1 when the output cannot be written.
    """
    text = render(records, fmt, digits, columns)
    try:
        if path is None or str(path) == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", newline="") as fh:
                fh.write(text)
    except OSError as e:
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return EXIT_IO
    if passed is False or _failed(records):
        return EXIT_FAILED
    return EXIT_OK
