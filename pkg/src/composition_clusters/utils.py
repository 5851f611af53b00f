import importlib
import json
import logging
import pkgutil

import jsonschema

logger = logging.getLogger(__name__)


def import_submodules(module):
    """Import all submodules of a module, recursively"""
    for _loader, module_name, _is_pkg in pkgutil.walk_packages(module.__path__, module.__name__ + "."):
        importlib.import_module(module_name)


# every number in a report is a string so that exact rationals survive the round trip
_NUMBER = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_DECIMAL = {"type": "string", "pattern": r"^-?\d+(\.\d+)?(e[+-]?\d+)?$"}
_OPTIONAL_DECIMAL = {"anyOf": [_DECIMAL, {"type": "null"}]}
_TERM = {
    "type": "object",
    "properties": {"exp": {"type": "array", "items": _NUMBER}, "coef": _NUMBER},
    "required": ["exp", "coef"],
    "additionalProperties": False,
}
_RATIONAL = {
    "type": "object",
    "properties": {
        "vars": {"type": "array", "items": {"type": "string"}},
        "num": {"type": "array", "items": _TERM},
        "den": {"type": "array", "items": _TERM, "minItems": 1},
    },
    "required": ["vars", "num", "den"],
    "additionalProperties": False,
}
_LINEAR = {
    "type": "object",
    "properties": {"slope": _NUMBER, "intercept": _NUMBER},
    "required": ["slope", "intercept"],
}
_GROWTH = {
    "type": "object",
    "properties": {
        "lambda": _DECIMAL,
        "amplitude": _OPTIONAL_DECIMAL,
        "x0": {"type": "object", "properties": {"lo": _NUMBER, "hi": _NUMBER}, "required": ["lo", "hi"]},
        "digits": _NUMBER,
        "dominant": {"type": ["boolean", "null"]},
        "subexponential": {"type": "boolean"},
    },
    "required": ["lambda", "amplitude", "x0", "digits", "dominant", "subexponential"],
}

REPORT_SCHEMAS: dict[str, dict] = {
    "gf": {
        "type": "object",
        "properties": {
            "patterns": {"type": "string"},
            "states": _NUMBER,
            "mode": {"enum": ["plain", "marker"]},
            "G": _RATIONAL,
            "F": _RATIONAL,
            "text": {"type": "string"},
        },
        "required": ["patterns", "states", "G", "F", "text"],
    },
    "series": {
        "type": "object",
        "properties": {"patterns": {"type": "string"}, "n": _NUMBER, "terms": {"type": "array", "items": _NUMBER}},
        "required": ["patterns", "n", "terms"],
    },
    "asym": {
        "type": "object",
        "properties": {"patterns": {"type": "string"}, "growth": _GROWTH},
        "required": ["patterns", "growth"],
    },
    "joint": {
        "type": "object",
        "properties": {
            "patterns": {"type": "string"},
            "markers": {"type": "object", "additionalProperties": {"type": "string"}},
            "F": _RATIONAL,
        },
        "required": ["patterns", "markers", "F"],
    },
    "moments": {
        "type": "object",
        "properties": {
            "patterns": {"type": "string"},
            "expectation": {"type": "array", "items": _LINEAR},
            "variance": {"type": "array", "items": _LINEAR},
            "covariance": {"type": "object", "additionalProperties": _LINEAR},
            "correlation": {"type": "object", "additionalProperties": {"type": "string"}},
            "window": {"type": "object", "properties": {"start": _NUMBER, "stop": _NUMBER}},
        },
        "required": ["patterns", "expectation", "variance", "covariance", "correlation", "window"],
    },
    "rank": {
        "type": "object",
        "properties": {
            "max_sum": _NUMBER,
            "digits": _NUMBER,
            "groups": {
                "type": "object",
                "additionalProperties": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "pattern": {"type": "string"},
                            "twin": {"type": ["string", "null"]},
                            "lambda": _OPTIONAL_DECIMAL,
                            "amplitude": _OPTIONAL_DECIMAL,
                            "error": {"type": ["string", "null"]},
                        },
                        "required": ["pattern", "twin", "lambda", "error"],
                    },
                },
            },
        },
        "required": ["max_sum", "digits", "groups"],
    },
    "oracle": {
        "type": "object",
        "properties": {
            "patterns": {"type": "string"},
            "n": _NUMBER,
            "count": _NUMBER,
            "joint": {"type": "object", "additionalProperties": _NUMBER},
        },
        "required": ["patterns", "n"],
    },
    "explain": {
        "type": "object",
        "properties": {
            "patterns": {"type": "string"},
            "states": {"type": "array", "items": {"type": "string"}},
            "equations": {"type": "array", "items": {"type": "string"}},
            "solutions": {"type": "object", "additionalProperties": _RATIONAL},
            "G_xt": _RATIONAL,
            "G": _RATIONAL,
            "F": _RATIONAL,
        },
        "required": ["patterns", "states", "equations", "solutions", "G_xt", "G", "F"],
    },
    "reproduce": {
        "type": "object",
        "properties": {
            "reproductions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "id": {"type": "string"},
                        "passed": {"type": "boolean"},
                        "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
                    },
                    "required": ["id", "passed", "checks"],
                },
            }
        },
        "required": ["reproductions"],
    },
}


def validate_report(command: str, payload: dict) -> None:
    """Raise jsonschema.ValidationError when ``payload`` does not match the command's report schema."""
    jsonschema.validate(instance=payload, schema=REPORT_SCHEMAS[command])


def dump_report(command: str, payload: dict) -> str:
    validate_report(command, payload)
    return json.dumps(payload, indent=2)
