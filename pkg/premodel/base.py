import json
import logging
from fractions import Fraction

import attrs
import jsonschema
import numpy as np

logger = logging.getLogger(__name__)


class PremodelError(Exception):
    pass


class InputError(PremodelError, ValueError):
    """Bad user input: the CLI maps these to exit status 1."""

    pass


class InvariantViolation(PremodelError, AssertionError):
    """A post-condition that the mathematics guarantees did not hold.

    The CLI maps these to exit status 2. Seeing one means a bug.
    """

    pass


class ConfigurationError(InputError):
    pass


class NotAPartialOrder(InputError):
    pass


class NotALattice(InputError):
    def __init__(self, pair, message=None):
        self.pair = tuple(pair)
        if message is None:
            message = f"Not a lattice: elements {self.pair[0]} and {self.pair[1]} lack a glb or lub"
        super(NotALattice, self).__init__(message)


class NotAChain(InputError):
    pass


class ElementOutOfRange(InputError, IndexError):
    pass


class DimensionMismatch(InputError):
    pass


class NotAPremodelPair(InputError):
    pass


class NotAPartition(InputError):
    pass


class CrossingPartition(InputError):
    pass


class NotCompositionClosed(InputError):
    pass


class NotAModelTree(InputError):
    pass


class InvalidTree(InputError):
    pass


class InvalidTriangulation(InputError):
    pass


class NoFactorization(InvariantViolation):
    pass


class BaseEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, Fraction):
            return f"{obj.numerator}/{obj.denominator}"
        if attrs.has(type(obj)):
            return attrs.asdict(obj, recurse=True)
        return json.JSONEncoder.default(self, obj)


def dumps(obj):
    """Compact, key-ordered JSON used for every streamed line"""
    return json.dumps(obj, cls=BaseEncoder, sort_keys=True, separators=(",", ":"))


def validate_json(obj, schema, what="input"):
    """Validate a parsed JSON object, re-raising schema failures as InputError"""
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise InputError(f"Invalid {what} at '{path or '<root>'}': {e.message}") from e
    return obj


def ensure(condition, message):
    """Raise InvariantViolation unless condition holds"""
    if not condition:
        logger.error(message)
        raise InvariantViolation(message)
