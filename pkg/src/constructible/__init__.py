"""Constructible functions on finite simplicial complexes."""

from .complexes import SimplexSet, SimplicialComplex, Stratification, build_complex
from .functions import ConstructibleFunction, constant, indicator, integral
from .maps import SimplicialMap, pullback, pushforward
from .operators import dual_op, half_link, half_omega, link_along, link_op, omega_op

__version__ = "0.1.0"

__all__ = [
    "ConstructibleFunction",
    "SimplexSet",
    "SimplicialComplex",
    "SimplicialMap",
    "Stratification",
    "build_complex",
    "constant",
    "dual_op",
    "half_link",
    "half_omega",
    "indicator",
    "integral",
    "link_along",
    "link_op",
    "omega_op",
    "pullback",
    "pushforward",
]
