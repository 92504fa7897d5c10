"""Deterministic machine-readable reports.

Reports are plain dicts rendered either as human text or as canonical JSON
(sorted keys, fixed separators).  Nothing time- or environment-dependent goes
into a report, so repeated runs on identical inputs are byte-identical;
timing is printed to stderr by the CLI instead.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

SCHEMA = "torstab-report/1"


def input_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def build_report(
    subcommand: str,
    command: list[str],
    digest: str | None,
    result: dict,
    warnings: list[str] | None = None,
) -> dict:
    return {
        "schema": SCHEMA,
        "subcommand": subcommand,
        "command": command,
        "input_digest": digest,
        "result": result,
        "warnings": warnings or [],
    }


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def jsonable(value):
    """Recursively convert Fractions and tuples for JSON output."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value
