"""JSON encoding of scalars, polynomials, operators and reports.

Every number goes out as a rational string (``"3"``, ``"-1/2"``); a surd is
``{"rat": .., "coef": .., "rad": ..}``.  Polynomials are coefficient lists,
lowest degree first.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .mps import General, Orthogonal, TwoOrtho
from .operator import OperatorJ
from .polyalg import Poly, Surd, as_scalar

__all__ = [
    "REPORT_SCHEMA",
    "dump_scalar",
    "load_scalar",
    "dump_poly",
    "load_poly",
    "dump_operator",
    "load_operator",
    "dump_structure",
    "load_structure",
    "dump_report",
    "validate_report",
    "to_json",
    "jsonable",
]

_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "rat": _RAT,
        "scalar": {
            "oneOf": [
                {"$ref": "#/$defs/rat"},
                {
                    "type": "object",
                    "properties": {"rat": _RAT, "coef": _RAT, "rad": _RAT},
                    "required": ["rat", "coef", "rad"],
                    "additionalProperties": False,
                },
            ]
        },
        "error": {
            "type": "object",
            "properties": {
                "code": {"type": "string"},
                "message": {"type": "string"},
                "index": {"type": "integer"},
            },
            "required": ["code", "message"],
        },
    },
    "type": "object",
    "properties": {
        "status": {"enum": ["ok", "error"]},
        "command": {"type": "string"},
        "payload": {"type": "object"},
        "error": {"$ref": "#/$defs/error"},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["status", "command", "diagnostics"],
    "allOf": [
        {
            "if": {"properties": {"status": {"const": "ok"}}},
            "then": {"required": ["payload"], "not": {"required": ["error"]}},
            "else": {"required": ["error"], "not": {"required": ["payload"]}},
        }
    ],
    "additionalProperties": False,
}


def dump_scalar(c):
    c = as_scalar(c)
    if isinstance(c, Surd):
        return {"rat": str(c.rat), "coef": str(c.coef), "rad": str(c.rad)}
    return str(c)


def load_scalar(obj):
    if isinstance(obj, dict):
        return Surd(Fraction(obj["rat"]), Fraction(obj["coef"]), Fraction(obj["rad"])).collapse()
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ValueError(f"inexact number {obj!r}; write rationals as strings")
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ValueError(f"not a scalar: {obj!r}")


def dump_poly(p: Poly) -> list:
    return [dump_scalar(c) for c in p.coeffs]


def load_poly(obj) -> Poly:
    if not isinstance(obj, list):
        raise ValueError("a polynomial is a list of coefficients")
    return Poly(load_scalar(c) for c in obj)


def dump_operator(J: OperatorJ) -> dict:
    return {"N": J.N, "coeffs": [dump_poly(a) for a in J.coeffs]}


def load_operator(obj) -> OperatorJ:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError('operator JSON needs {"N": int, "coeffs": [...]}')
    coeffs = [load_poly(a) for a in obj["coeffs"]]
    N = obj.get("N")
    if N is not None and (not isinstance(N, int) or isinstance(N, bool) or N < 0):
        raise ValueError("N must be a nonnegative integer")
    return OperatorJ(coeffs, N)


def dump_structure(s) -> dict:
    scal = lambda xs: [dump_scalar(c) for c in xs]  # noqa: E731
    if isinstance(s, Orthogonal):
        return {"kind": "orthogonal", "betas": scal(s.betas), "gammas": scal(s.gammas)}
    if isinstance(s, TwoOrtho):
        return {
            "kind": "two-ortho",
            "betas": scal(s.betas),
            "alphas": scal(s.alphas),
            "gammas": scal(s.gammas),
        }
    if isinstance(s, General):
        return {"kind": "general", "betas": scal(s.betas), "chis": [scal(r) for r in s.chis]}
    raise TypeError(f"unknown structure {type(s).__name__}")


def load_structure(obj):
    kind = obj.get("kind")
    scal = lambda key: [load_scalar(c) for c in obj.get(key, [])]  # noqa: E731
    if kind == "orthogonal":
        return Orthogonal(scal("betas"), scal("gammas"))
    if kind == "two-ortho":
        return TwoOrtho(scal("betas"), scal("alphas"), scal("gammas"))
    if kind == "general":
        return General(scal("betas"), [[load_scalar(c) for c in r] for r in obj.get("chis", [])])
    raise ValueError(f"unknown structure kind {kind!r}")


def jsonable(obj):
    """Recursively turn library values into JSON-ready data."""
    if isinstance(obj, Poly):
        return dump_poly(obj)
    if isinstance(obj, (Fraction, Surd)):
        return dump_scalar(obj)
    if isinstance(obj, OperatorJ):
        return dump_operator(obj)
    if isinstance(obj, (Orthogonal, TwoOrtho, General)):
        return dump_structure(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dump_report(command: str, payload=None, error=None, diagnostics=()) -> dict:
    report = {"status": "ok" if error is None else "error", "command": command, "diagnostics": list(diagnostics)}
    if error is None:
        report["payload"] = payload
    else:
        report["error"] = error
    return report


def validate_report(report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
