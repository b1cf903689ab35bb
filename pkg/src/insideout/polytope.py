"""Rational polytopes in H-representation and inside-out polytopes.

All coordinates are ``fractions.Fraction``.  Vertex enumeration solves every
maximal tight subsystem exactly, which is fine for the low dimensions this
package works in (ambient dimension at most 9, polytope dimension at most 5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Union

from .linalg import affine_parametrization, rank, solve_unique

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``normal . x = offset``.

    As a member of ``HPolytope.inequalities`` it stands for the halfspace
    ``normal . x <= offset``.
    """

    normal: tuple[Fraction, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        normal = tuple(Fraction(v) for v in self.normal)
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", Fraction(self.offset))

    def value(self, x: Sequence[Fraction]) -> Fraction:
        """Signed slack ``normal . x - offset``."""
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) - self.offset

    def row(self) -> list[Fraction]:
        return list(self.normal) + [self.offset]

    def __str__(self):
        terms = " ".join(f"{a:+}*x{i}" for i, a in enumerate(self.normal) if a)
        return f"{terms} = {self.offset}"


def hyperplane(normal: Iterable, offset=0) -> Hyperplane:
    return Hyperplane(tuple(normal), Fraction(offset))


@dataclass(frozen=True)
class HPolytope:
    """``{x : e.x = b_e for e in equalities, a.x <= b_a for a in inequalities}``.

    Problem instances are bounded and full-dimensional inside the affine span
    of their equalities, so ``dim`` is ``ambient_dim - rank(equalities)``.
    """

    ambient_dim: int
    equalities: tuple[Hyperplane, ...] = ()
    inequalities: tuple[Hyperplane, ...] = ()

    def __post_init__(self):
        for h in self.equalities + self.inequalities:
            if len(h.normal) != self.ambient_dim:
                raise ValueError("hyperplane dimension does not match ambient dimension")

    @cached_property
    def dim(self) -> int:
        if not self.equalities:
            return self.ambient_dim
        return self.ambient_dim - rank([h.normal for h in self.equalities])

    def contains(self, x: Sequence[Fraction], strict: bool = False) -> bool:
        if any(h.value(x) != 0 for h in self.equalities):
            return False
        if strict:
            return all(h.value(x) < 0 for h in self.inequalities)
        return all(h.value(x) <= 0 for h in self.inequalities)

    def with_equalities(self, extra: Iterable[Hyperplane]) -> "HPolytope":
        return HPolytope(self.ambient_dim, self.equalities + tuple(extra), self.inequalities)

    def face(self, tight: Iterable[int]) -> "Face":
        return Face(self, frozenset(tight))


@dataclass(frozen=True)
class Face:
    """A face of ``parent``: the inequalities in ``tight`` hold with equality.

    ``extra`` holds further equalities (arrangement hyperplanes) when the face
    is a section of the polytope by a flat.  Its relative interior is where
    every other inequality is strict.
    """

    parent: HPolytope
    tight: frozenset[int] = field(default_factory=frozenset)
    extra: tuple[Hyperplane, ...] = ()

    @cached_property
    def polytope(self) -> HPolytope:
        eqs = self.parent.equalities + tuple(self.parent.inequalities[i] for i in sorted(self.tight))
        ineqs = tuple(h for i, h in enumerate(self.parent.inequalities) if i not in self.tight)
        return HPolytope(self.parent.ambient_dim, eqs + self.extra, ineqs)

    @property
    def dim(self) -> int:
        return self.polytope.dim


PolytopeLike = Union[HPolytope, Face]


def as_polytope(p: PolytopeLike) -> HPolytope:
    return p.polytope if isinstance(p, Face) else p


@dataclass(frozen=True)
class InsideOutPolytope:
    """A polytope together with an arrangement of excluded hyperplanes."""

    polytope: HPolytope
    arrangement: tuple[Hyperplane, ...] = ()

    def on_face(self, tight: Iterable[int]) -> "InsideOutPolytope":
        """The same arrangement induced on a face of the polytope."""
        return InsideOutPolytope(self.polytope.face(tight).polytope, self.arrangement)

    def cutting(self) -> tuple[Hyperplane, ...]:
        """Arrangement hyperplanes that meet the open polytope."""
        return tuple(h for h in self.arrangement if meets_interior(self.polytope, (h,)))


def _tight_solutions(p: HPolytope, candidates: Sequence[Hyperplane]) -> set[Point]:
    """Points of ``p`` where some ``k`` candidates are tight and determine
    the point (``k`` the dimension of the affine span).

    Systems are solved in the free coordinates of the equalities, so each
    solve is ``k x k``.
    """
    n = p.ambient_dim
    param = affine_parametrization(
        [list(h.normal) for h in p.equalities], [h.offset for h in p.equalities], n
    )
    found: set[Point] = set()
    if param is None:
        return found
    x0, m, free = param
    k = len(free)

    def lift(u) -> Point:
        return tuple(x0[i] + sum((m[i][j] * u[j] for j in range(k)), Fraction(0)) for i in range(n))

    if k == 0:
        x = lift(())
        if p.contains(x):
            found.add(x)
        return found
    rows = []
    for h in candidates:
        coeffs = [sum((h.normal[i] * m[i][j] for i in range(n)), Fraction(0)) for j in range(k)]
        rows.append((coeffs, h.offset - sum((a * b for a, b in zip(h.normal, x0)), Fraction(0))))
    for combo in combinations(rows, k):
        u = solve_unique([c for c, _ in combo], [r for _, r in combo])
        if u is None:
            continue
        x = lift(u)
        if p.contains(x):
            found.add(x)
    return found


def is_bounded(p: HPolytope) -> bool:
    """True when the recession cone of ``p`` is zero.

    The cone ``{d : E d = 0, A d <= 0}`` is parametrized over the null space
    of the equalities; it is zero iff it has neither lineality nor an extreme
    ray.
    """
    n = p.ambient_dim
    zero = [Fraction(0)] * len(p.equalities)
    param = affine_parametrization([list(h.normal) for h in p.equalities], zero, n)
    if param is None:
        return True
    _, basis, free = param
    k = len(free)
    if k == 0:
        return True
    a = [[sum(h.normal[i] * basis[i][j] for i in range(n)) for j in range(k)] for h in p.inequalities]
    if rank(a) < k:
        return False
    for combo in combinations(range(len(a)), k - 1):
        rows = [a[i] for i in combo]
        sub = affine_parametrization(rows, [Fraction(0)] * len(rows), k)
        if sub is None or len(sub[2]) != 1:
            continue
        ray = [row[0] for row in sub[1]]
        for sign in (1, -1):
            if all(sign * sum(r * d for r, d in zip(row, ray)) <= 0 for row in a):
                return False
    return True


def vertices(p: PolytopeLike) -> list[Point]:
    """Exact vertex list of a bounded polytope, in lexicographic order.

    Raises ``ValueError("unbounded")`` for an unbounded polyhedron; an empty
    polytope has no vertices.
    """
    return list(_vertices(as_polytope(p)))


@lru_cache(maxsize=None)
def _vertices(p: HPolytope) -> tuple[Point, ...]:
    if not is_bounded(p):
        raise ValueError("unbounded")
    return tuple(sorted(_tight_solutions(p, p.inequalities)))


def inside_out_vertices(iop: InsideOutPolytope) -> list[Point]:
    """Vertices of the polytope together with every point of it cut out by
    facets and arrangement hyperplanes (or by hyperplanes alone)."""
    p = iop.polytope
    if not is_bounded(p):
        raise ValueError("unbounded")
    return sorted(_tight_solutions(p, p.inequalities + tuple(iop.arrangement)))


def denominator(points: Sequence[Point]) -> int:
    """Least common multiple of all coordinate denominators."""
    if not points:
        raise ValueError("no vertices")
    return math.lcm(*(c.denominator for pt in points for c in pt))


def centroid(points: Sequence[Point]) -> Point:
    n = len(points)
    return tuple(sum(coords, Fraction(0)) / n for coords in zip(*points))


def meets_interior(p: HPolytope, planes: Sequence[Hyperplane]) -> bool:
    """Does the intersection of ``planes`` meet the relative interior of ``p``?

    If the section is nonempty, the centroid of its vertices lies in its
    relative interior, which is then the section of the open polytope.
    """
    section = p.with_equalities(planes)
    pts = vertices(section)
    if not pts:
        return False
    return p.contains(centroid(pts), strict=True) and section.contains(centroid(pts))


def points_to_json(points: Sequence[Point]) -> list[list[list[int]]]:
    return [[[c.numerator, c.denominator] for c in pt] for pt in points]


def format_point(pt: Point) -> str:
    return "(" + ", ".join(str(c) for c in pt) + ")"
