"""Ehrhart series of faces, intersection posets and inside-out inversion.

Closed series are obtained by counting points of small dilates exactly and
solving for the numerator over a denominator fixed in advance by the vertex
denominators.  Open inside-out series then follow by Moebius inversion over
the poset of flats, either reciprocity-first or reciprocity-last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .lattice import count_closed
from .linalg import rank, row_space_key
from .polytope import (
    HPolytope,
    Hyperplane,
    InsideOutPolytope,
    PolytopeLike,
    Point,
    as_polytope,
    denominator,
    meets_interior,
    points_to_json,
    vertices,
)
from .ratfunc import RationalGF, poly_mul, reciprocity


def affine_dim(points: list[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(pt, base)] for pt in points[1:]]
    return rank(diffs) if diffs else 0


# --- closed series -------------------------------------------------------


def series_denominator(p: PolytopeLike) -> tuple[int, ...]:
    """Denominator factors known to clear the closed series of ``p``.

    A simplex gets one factor per vertex (its denominator); anything else
    gets ``dim + 1`` copies of the common vertex denominator.
    """
    verts = vertices(p)
    if not verts:
        raise ValueError("empty polytope")
    d = affine_dim(verts)
    if len(verts) == d + 1:
        return tuple(sorted(denominator([v]) for v in verts))
    return (denominator(verts),) * (d + 1)


@lru_cache(maxsize=None)
def _ehrhart_series(p: HPolytope, factors: tuple[int, ...], extra: int) -> RationalGF:
    dim = len(factors) - 1
    total = sum(factors)
    checks = max(extra, dim + 2)
    counts = [1] + [count_closed(p, t) for t in range(1, total + checks)]
    den = [1]
    for a in factors:
        den = poly_mul(den, [1] + [0] * (a - 1) + [-1])
    num = poly_mul(counts, den)[:total]
    f = RationalGF(num, factors)
    if f.coefficients(len(counts) - 1) != counts:
        raise ValueError("period/denominator hint too small")
    return f.normalized()


def ehrhart_series(face: PolytopeLike, factors: tuple[int, ...] | None = None, extra: int = 0) -> RationalGF:
    """Closed Ehrhart series ``1 + sum_t E(t) x^t`` of a nonempty polytope.

    ``factors`` overrides the denominator; it must be large enough or the
    verification on ``extra`` (at least ``dim + 2``) further dilates fails.
    """
    p = as_polytope(face)
    if factors is None:
        factors = series_denominator(p)
    return _ehrhart_series(p, tuple(sorted(factors)), extra)


def open_series_via_reciprocity(closed: RationalGF, dim: int) -> RationalGF:
    """Series of the relative interior from the closed series (and back)."""
    return reciprocity(closed, dim).normalized()


# --- intersection poset --------------------------------------------------


@dataclass(frozen=True)
class Flat:
    """``P° ∩ (intersection of planes)``: an open section of the polytope.

    ``planes`` lists (0-based) every arrangement hyperplane containing the
    flat, not only a generating subset.
    """

    planes: frozenset[int]
    closure: HPolytope = field(compare=False)
    codim: int = field(compare=False)

    @property
    def dim(self) -> int:
        return self.closure.dim

    @property
    def label(self) -> str:
        return "".join(str(i + 1) for i in sorted(self.planes)) if self.planes else "0"

    @cached_property
    def vertices(self) -> list[Point]:
        return vertices(self.closure)


def _aug_rows(p: HPolytope, planes) -> list[list[Fraction]]:
    return [h.row() for h in p.equalities] + [h.row() for h in planes]


@dataclass
class IntersectionPoset:
    iop: InsideOutPolytope
    elements: list[Flat]
    moebius: dict[Flat, int]

    @property
    def bottom(self) -> Flat:
        return self.elements[0]

    def leq(self, u: Flat, v: Flat) -> bool:
        """Reverse inclusion: ``u <= v`` when ``v`` is contained in ``u``."""
        return u.planes <= v.planes

    def by_label(self, label: str) -> Flat:
        for u in self.elements:
            if u.label == label:
                return u
        raise KeyError(label)

    def by_codim(self, k: int) -> list[Flat]:
        return [u for u in self.elements if u.codim == k]

    def is_alternating(self) -> bool:
        return all(m == 0 or (m > 0) == (u.codim % 2 == 0) for u, m in self.moebius.items())

    def to_json(self) -> dict:
        return {
            "dim": self.iop.polytope.dim,
            "elements": [
                {
                    "label": u.label,
                    "planes": sorted(i + 1 for i in u.planes),
                    "codim": u.codim,
                    "moebius": self.moebius[u],
                    "vertices": points_to_json(u.vertices),
                }
                for u in self.elements
            ],
        }


def _flat_planes(iop: InsideOutPolytope, rows: list[list[Fraction]]) -> frozenset[int]:
    r = rank(rows)
    return frozenset(
        i for i, h in enumerate(iop.arrangement) if rank(rows + [h.row()]) == r
    )


def intersection_poset(iop: InsideOutPolytope) -> IntersectionPoset:
    """All distinct nonempty flats ``P° ∩ ⋂S`` with their Moebius values."""
    p = iop.polytope
    bottom = Flat(frozenset(), p, 0)
    found: dict[tuple, Flat] = {row_space_key(_aug_rows(p, ())) if p.equalities else (): bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for u in frontier:
            for i, h in enumerate(iop.arrangement):
                if i in u.planes:
                    continue
                planes = [iop.arrangement[j] for j in sorted(u.planes)] + [h]
                rows = _aug_rows(p, planes)
                key = row_space_key(rows)
                if key in found:
                    continue
                if rank([r[:-1] for r in rows]) != len(key):
                    continue  # inconsistent: the planes do not meet in P's span
                if not meets_interior(p, planes):
                    found[key] = None  # type: ignore[assignment]
                    continue
                closure = p.with_equalities(planes)
                flat = Flat(_flat_planes(iop, rows), closure, p.dim - closure.dim)
                found[key] = flat
                nxt.append(flat)
        frontier = nxt
    elements = sorted((f for f in found.values() if f is not None), key=lambda f: (f.codim, sorted(f.planes)))
    mu: dict[Flat, int] = {}
    for u in elements:
        if u is bottom:
            mu[u] = 1
            continue
        mu[u] = -sum(mu[v] for v in elements if v is not u and v.planes < u.planes)
    return IntersectionPoset(iop, elements, mu)


def closed_flats(iop: InsideOutPolytope) -> list[frozenset[int]]:
    """Plane sets of every flat meeting the closed polytope."""
    p = iop.polytope
    seen: dict[tuple, frozenset[int]] = {}
    n = len(iop.arrangement)
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            planes = [iop.arrangement[i] for i in combo]
            rows = _aug_rows(p, planes)
            key = row_space_key(rows)
            if key in seen:
                continue
            if rank([r[:-1] for r in rows]) != len(key):
                seen[key] = frozenset()
                continue
            if vertices(p.with_equalities(planes)):
                seen[key] = _flat_planes(iop, rows)
            else:
                seen[key] = frozenset()
    return sorted((s for s in seen.values() if s), key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class TransversalityReport:
    """How the open flats relate to the flats of the closed polytope.

    ``injective`` says that distinct open flats have distinct closures, and
    ``boundary_only`` lists closed flats that miss the interior entirely.
    """

    injective: bool
    boundary_only: tuple[frozenset[int], ...]

    @property
    def transverse(self) -> bool:
        return self.injective and not self.boundary_only


def transversality(iop: InsideOutPolytope) -> TransversalityReport:
    poset = intersection_poset(iop)
    closures = {tuple(u.vertices) for u in poset.elements}
    injective = len(closures) == len(poset.elements)
    open_sets = {u.planes for u in poset.elements}
    boundary = tuple(s for s in closed_flats(iop) if s not in open_sets)
    return TransversalityReport(injective, boundary)


# --- inside-out series ---------------------------------------------------


def _terms(iop: InsideOutPolytope) -> list[tuple[Flat, int, RationalGF]]:
    poset = intersection_poset(iop)
    return [(u, poset.moebius[u], ehrhart_series(u.closure)) for u in poset.elements]


def open_series_reciprocity_first(iop: InsideOutPolytope) -> RationalGF:
    total = RationalGF.zero()
    for u, mu, closed in _terms(iop):
        if mu:
            total = total + open_series_via_reciprocity(closed, u.dim).scale(mu)
    return total


def closed_inside_out_series(iop: InsideOutPolytope) -> RationalGF:
    """``sum |mu(u)| E_closure(u)`` over the intersection poset."""
    total = RationalGF.zero()
    for _, mu, closed in _terms(iop):
        if mu:
            total = total + closed.scale(abs(mu))
    return total


def open_series_reciprocity_last(iop: InsideOutPolytope) -> RationalGF:
    return open_series_via_reciprocity(closed_inside_out_series(iop), iop.polytope.dim)


@lru_cache(maxsize=None)
def open_inside_out_series(iop: InsideOutPolytope) -> RationalGF:
    """Series of points of the open polytope off every arrangement plane.

    Computed by both inversion routes; they must agree.
    """
    first = open_series_reciprocity_first(iop)
    last = open_series_reciprocity_last(iop)
    if first != last:
        raise RuntimeError("inversion routes disagree")
    return first


def flat_equations(iop: InsideOutPolytope, u: Flat) -> list[Hyperplane]:
    return [iop.arrangement[i] for i in sorted(u.planes)]
