"""Bundled JSON schemas for every report the CLI emits, plus a validator.

The schemas use a small, self-contained subset of JSON Schema (type,
properties, required, items, enum); ``validate`` walks an object against a
schema and raises ``SchemaError`` with a path on the first violation.
Every report is validated before being written, and the test suite
validates golden outputs against these same definitions.
"""

from __future__ import annotations

from typing import Any


class SchemaError(Exception):
    pass


_POINT = {
    "type": "object",
    "required": ["coords", "field"],
    "properties": {
        "coords": {"type": "array", "items": {"type": "integer"}},
        "field": {"type": "string"},
    },
}

_DESCRIPTOR = {
    "type": "object",
    "required": ["order", "abelian", "element_order_histogram", "tag", "params"],
    "properties": {
        "order": {"type": "integer"},
        "abelian": {"type": "boolean"},
        "element_order_histogram": {"type": "object"},
        "tag": {"type": "string",
                "enum": ["trivial", "cyclic", "klein", "elementary_abelian",
                         "s3", "a4", "semidirect_p_cyclic", "other"]},
        "params": {"type": "object"},
    },
}

_GROUP = {
    "type": ["object", "null"],
    "required": ["order", "field", "dimension", "elements"],
    "properties": {
        "order": {"type": "integer"},
        "field": {"type": "string"},
        "dimension": {"type": "integer"},
        "elements": {"type": "array",
                     "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

GALOIS_REPORT = {
    "type": "object",
    "required": ["point", "point_class", "projection_degree", "verdict",
                 "method", "trials", "notes", "group", "descriptor", "witness"],
    "properties": {
        "point": _POINT,
        "point_class": {"type": "string", "enum": ["inner", "outer", "invalid"]},
        "projection_degree": {"type": "integer"},
        "verdict": {"type": "string",
                    "enum": ["certified_galois", "certified_not_galois",
                             "probably_galois", "inconclusive"]},
        "method": {"type": ["string", "null"],
                   "enum": ["collineation", "deck", "monte_carlo", None]},
        "trials": {"type": "integer"},
        "notes": {"type": "array", "items": {"type": "string"}},
        "group": _GROUP,
        "descriptor": {"type": ["object", "null"], **{
            k: v for k, v in _DESCRIPTOR.items() if k != "type"}},
        "witness": {"type": ["object", "null"]},
    },
}

_PRODUCT = {
    "type": ["object", "null"],
    "required": ["joint_order", "joint_descriptor", "intersection_order",
                 "product_set_equals_joint", "g1_normal", "g2_normal",
                 "classification"],
    "properties": {
        "joint_order": {"type": "integer"},
        "joint_descriptor": _DESCRIPTOR,
        "intersection_order": {"type": "integer"},
        "product_set_equals_joint": {"type": "boolean"},
        "g1_normal": {"type": "boolean"},
        "g2_normal": {"type": "boolean"},
        "classification": {"type": "string",
                           "enum": ["direct", "left_semidirect",
                                    "right_semidirect", "neither",
                                    "not_a_product"]},
    },
}

_CURVE = {
    "type": "object",
    "required": ["field", "modulus", "degree", "form", "affine_poly",
                 "assume_irreducible"],
    "properties": {
        "field": {"type": "string"},
        "modulus": {"type": "array", "items": {"type": "integer"}},
        "degree": {"type": "integer"},
        "form": {"type": "string"},
        "affine_poly": {"type": "string"},
        "assume_irreducible": {"type": "boolean"},
    },
}

_LEMMA_LINE = {
    "type": "object",
    "required": ["support_size", "is_1_or_d", "is_dP", "support_meets_singular"],
    "properties": {
        "support_size": {"type": "integer"},
        "is_1_or_d": {"type": "boolean"},
        "is_dP": {"type": "boolean"},
        "support_meets_singular": {"type": "boolean"},
    },
}

_CHECK = {
    "type": "object",
    "required": ["name", "passed"],
    "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"}},
}

PAIR_REPORT = {
    "type": "object",
    "required": ["inner", "outer", "joint", "lemma_line"],
    "properties": {
        "inner": GALOIS_REPORT,
        "outer": GALOIS_REPORT,
        "joint": _PRODUCT,
        "lemma_line": _LEMMA_LINE,
    },
}

EMBEDDING_RESULT = {
    "type": "object",
    "required": ["f", "g", "field", "curve", "image_P", "Q", "inner_report",
                 "outer_report", "joint", "witness", "checks"],
    "properties": {
        "f": {"type": "object"},
        "g": {"type": "object"},
        "field": {"type": "string"},
        "curve": _CURVE,
        "image_P": {"type": "array", "items": {"type": "integer"}},
        "Q": {"type": "array", "items": {"type": "integer"}},
        "inner_report": GALOIS_REPORT,
        "outer_report": GALOIS_REPORT,
        "joint": _PRODUCT,
        "witness": {"type": "object"},
        "checks": {"type": "array", "items": _CHECK},
    },
}

FAMILY_VERDICT = {
    "type": "object",
    "required": ["curve", "inner", "outer", "joint", "lemma_line", "checks",
                 "success"],
    "properties": {
        "curve": _CURVE,
        "inner": GALOIS_REPORT,
        "outer": GALOIS_REPORT,
        "joint": _PRODUCT,
        "lemma_line": _LEMMA_LINE,
        "checks": {"type": "array", "items": _CHECK},
        "success": {"type": "boolean"},
    },
}

BRANCH_CERTIFICATE = {
    "type": "object",
    "required": ["d", "field", "constants", "beta_power", "beta", "identity"],
    "properties": {
        "d": {"type": "integer", "enum": [3, 4]},
        "field": {"type": "string"},
        "constants": {"type": "object"},
        "beta_power": {"type": "integer"},
        "beta": {"type": "object"},
        "identity": {"type": "string"},
    },
}

ERROR_REPORT = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {
        "error": {"type": "string"},
        "message": {"type": "string"},
    },
}

SCHEMAS = {
    "galois_report": GALOIS_REPORT,
    "pair_report": PAIR_REPORT,
    "embedding_result": EMBEDDING_RESULT,
    "family_verdict": FAMILY_VERDICT,
    "branch_certificate": BRANCH_CERTIFICATE,
    "error": ERROR_REPORT,
}

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "boolean": bool,
    "null": type(None),
}


def _check_type(value: Any, expected, path: str) -> None:
    types = expected if isinstance(expected, list) else [expected]
    ok = False
    for t in types:
        py = _TYPES[t]
        if py is int:
            if isinstance(value, int) and not isinstance(value, bool):
                ok = True
        elif isinstance(value, py):
            ok = True
    if not ok:
        raise SchemaError(f"{path}: expected {types}, got {type(value).__name__}")


def validate(obj: Any, schema: dict, path: str = "$") -> None:
    """Validate obj against a schema subset; raises SchemaError on failure."""
    if "type" in schema:
        _check_type(obj, schema["type"], path)
    if obj is None:
        return
    if "enum" in schema and obj not in schema["enum"]:
        raise SchemaError(f"{path}: {obj!r} not in {schema['enum']}")
    if isinstance(obj, dict):
        for req in schema.get("required", []):
            if req not in obj:
                raise SchemaError(f"{path}: missing required key {req!r}")
        for key, sub in schema.get("properties", {}).items():
            if key in obj:
                validate(obj[key], sub, f"{path}.{key}")
    if isinstance(obj, list) and "items" in schema:
        for i, item in enumerate(obj):
            validate(item, schema["items"], f"{path}[{i}]")


def validate_report(kind: str, obj: Any) -> None:
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown report kind {kind!r}")
    validate(obj, SCHEMAS[kind])
