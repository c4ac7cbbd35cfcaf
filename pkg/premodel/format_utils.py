"""JSON representations of every value the package reads or writes.

Each ``*_from_json`` validates its input against a JSON schema first, so
malformed files fail with an InputError naming the offending path.
"""
import json

import numpy as np

from .base import InputError, validate_json
from .kreweras import NoncrossingPartition
from .orders import StructurePair, classify
from .poset import build_lattice, chain
from .transfer import relation_from_pairs, transfer_system
from .trees import tricolored_tree
from .triangulation import EXTERNAL, StackedTriangulation

_PAIRS = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {"type": "integer", "minimum": 0},
        "minItems": 2,
        "maxItems": 2,
    },
}

LATTICE_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"chain": {"type": "integer", "minimum": 0}},
            "required": ["chain"],
        },
        {
            "type": "object",
            "properties": {
                "size": {"type": "integer", "minimum": 1},
                "leq": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": ["boolean", "integer"]}},
                },
                "name": {"type": "string"},
            },
            "required": ["size", "leq"],
        },
    ]
}

TRANSFER_SCHEMA = {
    "type": "object",
    "properties": {"lattice": LATTICE_SCHEMA, "pairs": _PAIRS},
    "required": ["pairs"],
}

PAIR_SCHEMA = {
    "type": "object",
    "properties": {
        "R": _PAIRS,
        "R_prime": _PAIRS,
        "kind_flags": {"type": "object", "additionalProperties": {"type": "boolean"}},
        "lattice": LATTICE_SCHEMA,
    },
    "required": ["R", "R_prime"],
}

PARTITION_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "blocks": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
    },
    "required": ["n", "blocks"],
}

TREE_SCHEMA = {
    "type": "object",
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                    {"enum": ["blue", "green", "red"]},
                ],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
    "required": ["m", "edges"],
}

_CORNER = {"oneOf": [{"type": "integer", "minimum": 0}, {"enum": list(EXTERNAL)}]}

TRIANGULATION_SCHEMA = {
    "type": "object",
    "properties": {
        "insertions": {
            "type": "array",
            "items": {"type": "array", "items": _CORNER, "minItems": 3, "maxItems": 3},
        }
    },
    "required": ["insertions"],
}


def _is_natural_chain(L):
    idx = np.arange(L.size)
    return bool((L.leq == (idx[:, None] <= idx[None, :])).all())


def lattice_to_json(L):
    if _is_natural_chain(L):
        return {"chain": L.size - 1}
    out = {"size": L.size, "leq": L.leq.astype(bool).tolist()}
    if L.name is not None:
        out["name"] = L.name
    return out


def lattice_from_json(obj):
    validate_json(obj, LATTICE_SCHEMA, "lattice")
    if "chain" in obj:
        return chain(obj["chain"])
    return build_lattice(obj["size"], obj["leq"], name=obj.get("name"))


def transfer_to_json(R):
    return {"lattice": lattice_to_json(R.lattice), "pairs": [list(p) for p in R.pairs()]}


def _resolve_lattice(obj, lattice):
    if "lattice" in obj:
        return lattice_from_json(obj["lattice"])
    if lattice is None:
        raise InputError("no lattice given in the file or on the command line")
    return lattice


def transfer_from_json(obj, lattice=None):
    validate_json(obj, TRANSFER_SCHEMA, "transfer system")
    L = _resolve_lattice(obj, lattice)
    return transfer_system(L, relation_from_pairs(L, obj["pairs"]))


def pair_to_json(P, flags=None):
    """Structure pair with its kind flags; flags are computed when not given"""
    if flags is None:
        flags = classify(P)
    return {
        "R": [list(p) for p in P.R.pairs()],
        "R_prime": [list(p) for p in P.R_prime.pairs()],
        "kind_flags": {k: bool(v) for k, v in flags.items() if k != "premodel"},
        "lattice": lattice_to_json(P.lattice),
    }


def pair_from_json(obj, lattice=None):
    """Read a structure pair; ``lattice`` is used when the object names none"""
    validate_json(obj, PAIR_SCHEMA, "structure pair")
    L = _resolve_lattice(obj, lattice)
    R = transfer_system(L, relation_from_pairs(L, obj["R"]))
    R_prime = transfer_system(L, relation_from_pairs(L, obj["R_prime"]))
    return StructurePair(R, R_prime)


def partition_to_json(P):
    return {"n": P.n, "blocks": [list(b) for b in P.blocks]}


def partition_from_json(obj):
    validate_json(obj, PARTITION_SCHEMA, "partition")
    return NoncrossingPartition(n=obj["n"], blocks=obj["blocks"])


def tree_to_json(T):
    return {"m": T.m, "edges": [list(e) for e in T.edges()]}


def tree_from_json(obj):
    validate_json(obj, TREE_SCHEMA, "tree")
    return tricolored_tree(obj["m"], obj["edges"])


def triangulation_to_json(S):
    return {"insertions": [list(face) for face in S.insertions]}


def triangulation_from_json(obj):
    validate_json(obj, TRIANGULATION_SCHEMA, "triangulation")
    return StackedTriangulation(obj["insertions"])


_DETECT = (
    ("pair", ("R", "R_prime")),
    ("transfer", ("pairs",)),
    ("partition", ("n", "blocks")),
    ("tree", ("m", "edges")),
    ("triangulation", ("insertions",)),
    ("lattice", ("chain",)),
    ("lattice", ("size", "leq")),
)


def detect_kind(obj):
    """Name the representation a parsed JSON object holds

    Returns
    -------
    str
        One of 'pair', 'transfer', 'partition', 'tree', 'triangulation' or
        'lattice'.
    """
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    for kind, keys in _DETECT:
        if all(k in obj for k in keys):
            return kind
    raise InputError(f"cannot tell what kind of object has keys {sorted(obj)}")


def load_json(path):
    """Read one JSON document from a file, or several JSON lines"""
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        pass
    try:
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not JSON or JSON lines: {e}") from e
