"""Exact volume forms, resolutions and uniform intersection homology of convex polytopes."""

__version__ = "0.1.0"

from .builtins import builtin_polytope
from .errors import PolyIHError
from .polytope import HPolytope, enumerate_vertices, face_lattice, parse_validate
from .resolution import ResolutionConfig, enumerate_resolutions

__all__ = [
    "HPolytope",
    "PolyIHError",
    "ResolutionConfig",
    "builtin_polytope",
    "enumerate_resolutions",
    "enumerate_vertices",
    "face_lattice",
    "parse_validate",
]
