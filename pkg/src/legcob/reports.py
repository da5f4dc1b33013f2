"""Deterministic JSON for everything the package reports.

Two renderings of the same canonical form: compact for machine
consumption and byte-stable across runs, indented for reading.  All
dictionary keys are coerced to strings and sorted; fractions become
"p/q" strings; objects may opt in with a to_jsonable method.
"""

import json
from fractions import Fraction

from .resolve import frac_str


def to_jsonable(value):
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_jsonable"):
        return to_jsonable(value.to_jsonable())
    return value


def canonical_json(value):
    return json.dumps(to_jsonable(value), sort_keys=True,
                      separators=(",", ":"))


def pretty_json(value):
    return json.dumps(to_jsonable(value), sort_keys=True, indent=2)
