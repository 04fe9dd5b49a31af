"""JSON schemas for the session document and the service payload fragments.

The session file is the single shared artifact between the CLI, the service,
and the UI, so its shape is pinned here; service responses reuse the same
fragments. Validation is intentionally permissive about extra keys to keep
older documents loadable.
"""

from __future__ import annotations

from typing import Any

import jsonschema

from .model import ValidationError

_JUDGMENT = {
    "oneOf": [
        {"type": "number"},
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}

_MATRIX = {
    "type": "object",
    "required": ["ids", "criteria", "levels"],
    "properties": {
        "ids": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "criteria": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "direction", "lower", "upper"],
                "properties": {
                    "name": {"type": "string"},
                    "direction": {"enum": ["benefit", "cost"]},
                    "lower": {"type": "number"},
                    "upper": {"type": "number"},
                },
            },
        },
        "levels": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
    },
}

_COMPARISONS = {
    "type": "object",
    "required": ["best", "worst", "bo", "ow"],
    "properties": {
        "best": {"type": "string"},
        "worst": {"type": "string"},
        "bo": {"type": "object", "additionalProperties": _JUDGMENT},
        "ow": {"type": "object", "additionalProperties": _JUDGMENT},
    },
}

SESSION_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["schema", "revision"],
    "properties": {
        "schema": {"const": 1},
        "revision": {"type": "integer", "minimum": 0},
        "matrix": _MATRIX,
        "matrix_path": {"type": "string"},
        "segments": {
            "oneOf": [
                {"type": "integer", "minimum": 1},
                {"type": "array", "items": {"type": "integer", "minimum": 1}},
            ]
        },
        "reference": {
            "type": "object",
            "required": ["ids"],
            "properties": {
                "ids": {"type": "array", "items": {"type": "string"}}
            },
        },
        "comparisons": _COMPARISONS,
        "thresholds": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 3,
                "maxItems": 3,
                "items": {"type": "number"},
            },
        },
        "cache": {"type": "object"},
    },
}

_VERDICT = {"enum": ["pass", "fail", "unknown-threshold"]}

CONSISTENCY_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "revision",
        "reference",
        "or",
        "or_by_alt",
        "violations",
        "cr",
        "cr_by_alt",
        "or_verdict",
        "cr_verdict",
        "threshold_known",
        "revision_ranges",
    ],
    "properties": {
        "revision": {"type": "integer"},
        "reference": {"type": "array", "items": {"type": "string"}},
        "or": {"type": "number", "minimum": 0, "maximum": 1},
        "or_by_alt": {"type": "array", "items": {"type": "number"}},
        "violations": {
            "type": "array",
            "items": {"type": "array", "items": {"enum": [0, 0.5, 1]}},
        },
        "cr": {"type": "number", "minimum": 0},
        "cr_by_alt": {"type": "array", "items": {"type": "number"}},
        "threshold": {"oneOf": [{"type": "number"}, {"type": "null"}]},
        "or_verdict": _VERDICT,
        "cr_verdict": _VERDICT,
        "threshold_known": {"type": "boolean"},
        "revision_ranges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vector", "id", "current", "interval"],
                "properties": {
                    "vector": {"enum": ["bo", "ow"]},
                    "id": {"type": "string"},
                    "current": {"type": "number"},
                    "interval": {
                        "oneOf": [
                            {"type": "null"},
                            {
                                "type": "array",
                                "minItems": 2,
                                "maxItems": 2,
                                "items": {"type": "number"},
                            },
                        ]
                    },
                },
            },
        },
    },
}

RESULTS_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "revision",
        "kind",
        "xi_star",
        "model",
        "values",
        "ranking",
        "rank_ranges",
        "U",
        "necessary",
        "hasse",
        "ids",
    ],
    "properties": {
        "revision": {"type": "integer"},
        "kind": {"enum": ["bwd", "ibwd"]},
        "xi_star": {"type": "number", "minimum": 0},
        "model": {
            "type": "object",
            "required": ["breakpoints", "values"],
            "properties": {
                "breakpoints": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}},
                },
                "values": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}},
                },
            },
        },
        "values": {"type": "object", "additionalProperties": {"type": "number"}},
        "ranking": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}},
        },
        "rank_ranges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "best_rank", "worst_rank"],
                "properties": {
                    "id": {"type": "string"},
                    "best_rank": {"type": "integer", "minimum": 1},
                    "worst_rank": {"type": "integer", "minimum": 1},
                },
            },
        },
        "U": {"type": "number", "minimum": 0, "maximum": 1},
        "necessary": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer"},
            },
        },
        "hasse": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "string"},
            },
        },
        "ids": {"type": "array", "items": {"type": "string"}},
    },
}

_SCHEMAS = {
    "session": SESSION_SCHEMA,
    "consistency": CONSISTENCY_SCHEMA,
    "results": RESULTS_SCHEMA,
}


def validate_payload(kind: str, doc: Any) -> None:
    """Raise a ValidationError when a document breaks its schema."""
    try:
        jsonschema.validate(doc, _SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"{kind} document invalid: {exc.message}") from None
