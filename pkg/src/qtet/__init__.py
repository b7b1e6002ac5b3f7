"""Exact computations with evaluation modules of the q-tetrahedron algebra."""

from .scalar import (
    DEFAULT_POINT,
    DegenerateError,
    Scalar,
    SpecPoint,
    q_binomial,
    q_bracket,
    q_factorial,
    q_pochhammer,
    specialize,
)

__all__ = [
    "DEFAULT_POINT",
    "DegenerateError",
    "Scalar",
    "SpecPoint",
    "q_binomial",
    "q_bracket",
    "q_factorial",
    "q_pochhammer",
    "specialize",
]
