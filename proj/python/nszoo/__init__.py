"""Symbolic engine for standardness-relativized arithmetic.

The heavy lifting lives in the compiled module; this package adds small
JSON conveniences on top.
"""

import json as _json

from ._nszoo import (
    EngineError,
    catalog_names,
    check_rule,
    classify,
    extraction_json,
    normalize,
    parse_print,
    pipeline_json,
    principle,
    rule_names,
)

__all__ = [
    "EngineError",
    "catalog_names",
    "check_rule",
    "classify",
    "extraction",
    "extraction_json",
    "normalize",
    "parse_print",
    "pipeline",
    "pipeline_json",
    "principle",
    "rule_names",
]


def pipeline(name, logic="classical", golden_dir="", seed=0):
    """Runs the full pipeline and returns the report as a dict."""
    return _json.loads(pipeline_json(name, logic, golden_dir, seed))


def extraction(name, logic="classical"):
    """Witness extraction for a catalog principle, as a dict."""
    return _json.loads(extraction_json(name, logic))
