"""Python bindings for the ramseyforge library."""

import json

from . import _core
from ._core import (
    CapExceeded,
    FormatError,
    LanguageMismatch,
    PreconditionError,
    RamseyforgeError,
    Structure,
    complete_metric,
    count_copies,
    find_morphism,
    four_values,
    hales_jewett,
    is_associative,
    is_jump_free,
    obstacles,
    partite_construction,
    ramsey_number,
)


def verify_arrow(c, a, b, k=2, mode="exhaustive", seed=0):
    """Arrow report as a dict (verdict, copy counts, optional certificate)."""
    return json.loads(_core.verify_arrow(c, a, b, k, mode, seed))


__all__ = [
    "CapExceeded",
    "FormatError",
    "LanguageMismatch",
    "PreconditionError",
    "RamseyforgeError",
    "Structure",
    "complete_metric",
    "count_copies",
    "find_morphism",
    "four_values",
    "hales_jewett",
    "is_associative",
    "is_jump_free",
    "obstacles",
    "partite_construction",
    "ramsey_number",
    "verify_arrow",
]
