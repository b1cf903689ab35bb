"""Exact lattice-point counting in inside-out polytopes, with the 3x3 magic,
semimagic and magilatin square counts as built-in instances."""

from .ehrhart import ehrhart_series, intersection_poset, open_inside_out_series
from .polytope import HPolytope, Hyperplane, InsideOutPolytope, hyperplane, vertices
from .ratfunc import Quasipolynomial, RationalGF, to_quasipolynomial
from .squares import count, count_gf, quasipolynomial

__all__ = [
    "HPolytope",
    "Hyperplane",
    "InsideOutPolytope",
    "Quasipolynomial",
    "RationalGF",
    "count",
    "count_gf",
    "ehrhart_series",
    "hyperplane",
    "intersection_poset",
    "open_inside_out_series",
    "quasipolynomial",
    "to_quasipolynomial",
    "vertices",
]
