"""JSON schemas of the CLI's ``--json`` output."""

_count = {"type": ["string", "null"], "pattern": r"^-?\d+(/\d+)?$"}
_int_or_null = {"type": ["integer", "null"]}

POLY_VERDICT = {
    "type": "object",
    "required": ["status", "fitted", "denominator", "witnesses", "validation_primes"],
    "properties": {
        "status": {"enum": ["integer_polynomial", "rational_polynomial", "no_polynomial_fit"]},
        "fitted": {"type": ["string", "null"]},
        "denominator": _int_or_null,
        "witnesses": {"type": "array", "items": {"type": "integer"}},
        "validation_primes": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "sources": {"type": "object", "additionalProperties": {"enum": ["enumeration", "formula", "symbolic"]}},
    },
}

VERIFY = {
    "type": "object",
    "required": ["space", "class", "scalar_denominator", "records", "verdict", "poly_verdict"],
    "properties": {
        "space": {"type": "string"},
        "class": {"type": ["string", "null"]},
        "scalar_denominator": _int_or_null,
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "symbolic", "formula", "enumeration"],
                "properties": {
                    "q": {"type": "integer"},
                    "symbolic": _count,
                    "formula": _count,
                    "enumeration": _count,
                    "error": {"type": ["string", "null"]},
                },
            },
        },
        "verdict": {"enum": ["agree", "disagree"]},
        "poly_verdict": {"anyOf": [POLY_VERDICT, {"type": "null"}]},
    },
}

CLASS = {
    "type": "object",
    "required": ["space", "class", "scalar_denominator", "tate"],
    "properties": {
        "space": {"type": "string"},
        "class": {"type": ["string", "null"]},
        "scalar_denominator": _int_or_null,
        "tate": {"type": ["boolean", "null"]},
        "note": {"type": ["string", "null"]},
    },
}

COUNT = {
    "type": "object",
    "required": ["space", "q", "count", "method", "elapsed", "search_space"],
    "properties": {
        "space": {"type": "string"},
        "q": {"type": "integer"},
        "count": {"type": "string", "pattern": r"^\d+(/\d+)?$"},
        "method": {"enum": ["enumeration", "formula", "symbolic"]},
        "elapsed": {"type": "number"},
        "search_space": {"type": ["string", "null"]},
        "cached": {"type": "boolean"},
    },
}

DETECT = {
    "type": "object",
    "required": ["space", "poly_verdict"],
    "properties": {"space": {"type": "string"}, "poly_verdict": POLY_VERDICT},
}

SEMISMALL = {
    "type": "object",
    "required": ["n", "dim_I", "strata", "semismall"],
    "properties": {
        "n": {"type": "integer"},
        "dim_I": {"type": "integer"},
        "semismall": {"type": "boolean"},
        "strata": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rank", "dim", "fiber_dim", "defect", "passed", "equality"],
                "properties": {
                    "rank": {"type": "integer"},
                    "dim": {"type": "integer"},
                    "fiber_dim": {"type": "integer"},
                    "defect": {"type": "integer", "minimum": 0},
                    "passed": {"type": "boolean"},
                    "equality": {"type": "boolean"},
                },
            },
        },
    },
}

DECOMP = {
    "type": "object",
    "required": ["n", "rows", "holds"],
    "properties": {
        "n": {"type": "integer"},
        "holds": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "incidence", "hypersurface", "corank2", "bundle", "holds"],
                "properties": {
                    "q": {"type": "integer"},
                    "incidence": {"type": "string"},
                    "hypersurface": {"type": "string"},
                    "corank2": {"type": "string"},
                    "bundle": {"type": "string"},
                    "holds": {"type": "boolean"},
                },
            },
        },
    },
}

REPORT = {
    "type": "object",
    "required": ["primes", "reports"],
    "properties": {
        "primes": {"type": "array", "items": {"type": "integer"}},
        "reports": {"type": "array", "items": VERIFY},
    },
}

ERROR = {
    "type": "object",
    "required": ["error", "message"],
    "properties": {
        "error": {"enum": ["usage", "parse_error", "invalid_parameter", "budget_exceeded", "inexact_division"]},
        "message": {"type": "string"},
        "column": {"type": "integer"},
        "expected": {"type": "array", "items": {"type": "string"}},
    },
}

BY_VERB = {
    "class": CLASS,
    "count": COUNT,
    "verify": VERIFY,
    "detect": DETECT,
    "semismall": SEMISMALL,
    "decomp": DECOMP,
    "report": REPORT,
}
