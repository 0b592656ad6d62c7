"""JSON Schemas for the ``--json`` output of each command."""

_STR_OR_NULL = {"type": ["string", "null"]}
_INVARIANT = {
    "type": "object",
    "required": ["rank", "degree"],
    "properties": {"rank": {"type": "string"}, "degree": {"type": "integer", "minimum": 1}},
}

PARSE = {
    "type": "object",
    "required": ["input", "canonical", "ordered"],
    "properties": {
        "input": {"type": "string"},
        "canonical": {"type": "string"},
        "ordered": {"type": "boolean"},
    },
}

INVARIANTS = {
    "type": "object",
    "required": ["expr", "well_ordered", "order_type", "compact", "discrete", "ms_invariant"],
    "properties": {
        "expr": _STR_OR_NULL,
        "well_ordered": {"type": "boolean"},
        "order_type": _STR_OR_NULL,
        "compact": {"type": ["boolean", "null"]},
        "discrete": {"type": "boolean"},
        "non_isolated_witness": _STR_OR_NULL,
        "height": _STR_OR_NULL,
        "cardinality": {"type": ["integer", "string"]},
        "ms_invariant": {"oneOf": [{"type": "null"}, _INVARIANT]},
    },
}

HOMEO = {
    "type": "object",
    "required": ["verdict", "depths"],
    "properties": {
        "verdict": {"enum": ["Yes", "No", "Unknown"]},
        "invariant": _INVARIANT,
        "witness": {"type": "string"},
        "reason": {"type": "string"},
        "depths": {"type": "object", "additionalProperties": {"type": "integer"}},
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["id", "depths", "bijection", "continuity", "oracle", "pass"],
    "properties": {
        "id": {"type": "string"},
        "depths": {
            "type": "object",
            "required": ["k", "n_max"],
            "properties": {"k": {"type": "integer"}, "n_max": {"type": "integer"}},
        },
        "bijection": {
            "type": "object",
            "required": ["checked", "orphans"],
            "properties": {
                "checked": {"type": "object"},
                "orphans": {"type": "array", "items": {"type": "string"}},
                "problems": {"type": "array", "items": {"type": "string"}},
            },
        },
        "continuity": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "direction", "n_max", "mode", "pass"],
                "properties": {
                    "point": {"type": "string"},
                    "direction": {"enum": ["forward", "inverse"]},
                    "n_max": {"type": "integer"},
                    "mode": {"enum": ["vacuous", "symbolic", "sampled"]},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "oracle": {
            "type": "object",
            "required": ["invariant_src", "invariant_tgt", "equal"],
            "properties": {
                "invariant_src": _STR_OR_NULL,
                "invariant_tgt": _STR_OR_NULL,
                "equal": {"type": ["boolean", "null"]},
            },
        },
        "pass": {"type": "boolean"},
    },
}

DEMO = {
    "type": "object",
    "required": ["id", "pass", "report"],
    "properties": {"id": {"type": "string"}, "pass": {"type": "boolean"}, "report": {"type": "string"}},
}

DECOMPOSE = {
    "type": "object",
    "required": ["expr", "pieces", "discrete_rest", "problems"],
    "properties": {
        "expr": {"type": "string"},
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["x", "alpha_x", "beta_x", "order_type"],
                "properties": {"x": {"type": "string"}, "alpha_x": {"type": "string"},
                               "beta_x": _STR_OR_NULL, "order_type": {"type": "string"}},
            },
        },
        "discrete_rest": {"type": "object"},
        "problems": {"type": "array", "items": {"type": "string"}},
    },
}

EMBED = {
    "type": "object",
    "required": ["expr", "blocks", "map", "injective", "pieces"],
    "properties": {
        "expr": {"type": "string"},
        "blocks": {"type": "integer"},
        "map": {"type": "array"},
        "injective": {"type": "boolean"},
        "pieces": {"type": "array", "items": HOMEO},
    },
}

ENUMERATE = {
    "type": "object",
    "required": ["expr", "depth", "points"],
    "properties": {
        "expr": {"type": "string"},
        "depth": {"type": "integer"},
        "points": {
            "type": "array",
            "items": {"type": "object", "required": ["point", "rank"]},
        },
    },
}

DOT = {"type": "object", "required": ["dot"], "properties": {"dot": {"type": "string"}}}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {"error": {"type": "string"}, "position": {"type": "integer"}},
}

BY_COMMAND = {
    "parse": PARSE, "invariants": INVARIANTS, "homeo": HOMEO, "certify": CERTIFICATE,
    "demo": DEMO, "decompose": DECOMPOSE, "embed": EMBED, "enumerate": ENUMERATE, "dot": DOT,
}
