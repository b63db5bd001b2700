"""JSON Schemas for the ``--json`` output of every CLI subcommand."""

TYPE_AST = {
    "$id": "type",
    "oneOf": [
        {"type": "object", "properties": {"tag": {"const": "Nat"}}, "required": ["tag"], "additionalProperties": False},
        {
            "type": "object",
            "properties": {"tag": {"const": "Arrow"}, "domain": {"$ref": "#/$defs/type"}, "codomain": {"$ref": "#/$defs/type"}},
            "required": ["tag", "domain", "codomain"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"tag": {"const": "Prod"}, "left": {"$ref": "#/$defs/type"}, "right": {"$ref": "#/$defs/type"}},
            "required": ["tag", "left", "right"],
            "additionalProperties": False,
        },
    ],
}

_TERM = {"$ref": "#/$defs/term"}


def _node(tag, **fields):
    return {
        "type": "object",
        "properties": {"tag": {"const": tag}, **fields},
        "required": ["tag", *fields],
        "additionalProperties": False,
    }


TERM_AST = {
    "oneOf": [
        _node("Var", index={"type": "integer", "minimum": 0}),
        _node("Lam", domainType={"$ref": "#/$defs/type"}, body=_TERM),
        _node("App", fun=_TERM, arg=_TERM),
        _node("Zero"),
        _node("Succ"),
        _node("Rec", resultType={"$ref": "#/$defs/type"}),
        _node("Pair", fst=_TERM, snd=_TERM),
        _node("Fst"),
        _node("Snd"),
    ]
}

DEFS = {"type": {k: v for k, v in TYPE_AST.items() if k != "$id"}, "term": TERM_AST}

NAT = {"type": "integer", "minimum": 0}
POINT = {"type": "string", "pattern": r"^\[[0-9,]*;(const [0-9]+|cycle [0-9]+(,[0-9]+)*)\]$"}


def _object(**fields):
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": DEFS,
        "type": "object",
        "properties": fields,
        "required": list(fields),
        "additionalProperties": False,
    }


SCHEMAS = {
    "check": _object(type={"type": "string"}, typeAst={"$ref": "#/$defs/type"}),
    "translate": _object(target={"enum": ["baire", "bb", "nat"]}, type={"type": "string"}, term=_TERM),
    "eval": _object(value=NAT, queries={"type": "array", "items": NAT}),
    "modulus": _object(
        f={"type": "string"},
        alpha=POINT,
        modulus_bb=NAT,
        modulus_oracle=NAT,
        checked=NAT,
        verified={"type": ["boolean", "null"]},
        counterexample={"oneOf": [POINT, {"type": "null"}]},
        perturbations_tested=NAT,
        exhaustive={"type": "boolean"},
    ),
    "modulus-term": _object(type={"const": "(N -> N) -> N"}, source={"type": "string"}, term=_TERM),
    "uc-modulus": _object(f={"type": "string"}, uc_modulus=NAT, prefixes_checked=NAT, max_depth_hit={"type": "boolean"}),
    "equiv": _object(
        f={"type": "string"},
        target={"type": "string"},
        points=NAT,
        equal=NAT,
        mismatches={
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"alpha": POINT, "direct": NAT, "translated": NAT},
                "required": ["alpha", "direct", "translated"],
            },
        },
    ),
}
