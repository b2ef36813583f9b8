"""cglab: exact Chvatal-Gomory cuts, closures, and finite-generation certificates."""

from .qfield import ExtValue, QuadValue, Rational, cmp_quad, floor_quad
from .polytope import HPolyhedron, VPolyhedron, dd_convert

__all__ = [
    "ExtValue",
    "QuadValue",
    "Rational",
    "cmp_quad",
    "floor_quad",
    "HPolyhedron",
    "VPolyhedron",
    "dd_convert",
]

__version__ = "0.1.0"
