"""Exact counting of (1/t)-lattice points in rational polytopes.

Points are those of the ambient lattice ``(1/t) Z^n``; a face is not given a
lattice of its own.  Counting works on the scaled point ``y = t x``: the
equalities are solved once for their pivot coordinates, and the free
coordinates are scanned one at a time between exact integer bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import affine_parametrization
from .polytope import (
    Hyperplane,
    InsideOutPolytope,
    PolytopeLike,
    as_polytope,
    vertices,
)


@dataclass(frozen=True)
class DilateCount:
    t: int
    closed_count: int
    open_count: int

    def __post_init__(self):
        if self.open_count > self.closed_count:
            raise ValueError("open count exceeds closed count")


def _integer_row(coeffs: Sequence[Fraction], const: Fraction) -> tuple[tuple[int, ...], int]:
    scale = math.lcm(*(c.denominator for c in coeffs), const.denominator)
    return tuple(int(c * scale) for c in coeffs), int(const * scale)


class _Scanner:
    """Precompiled integer form of one counting problem.

    Every condition is attached to the last free coordinate it involves, so
    it is tested as soon as that coordinate is fixed.
    """

    def __init__(self, p, strict: bool, avoid: tuple[Hyperplane, ...]):
        n = p.ambient_dim
        self.empty = False
        param = affine_parametrization(
            [list(h.normal) for h in p.equalities], [h.offset for h in p.equalities], n
        )
        verts = vertices(p)
        if param is None or not verts:
            self.empty = True
            return
        x0, m, free = param
        k = len(free)
        self.k = k
        # box on each free coordinate, as multiples of t
        self.box = [(min(v[c] for v in verts), max(v[c] for v in verts)) for c in free]
        # conditions per level: (kind, coeffs, const) with kind in {"le", "lt", "div", "ne"}
        self.levels: list[list[tuple]] = [[] for _ in range(k)]
        self.constant_checks: list[tuple] = []

        def add(kind, coeffs, const, extra=None):
            last = max((j for j, c in enumerate(coeffs) if c), default=-1)
            item = (kind, coeffs, const, extra)
            if last < 0:
                self.constant_checks.append(item)
            else:
                self.levels[last].append(item)

        def linear(h):
            coeffs = [sum(h.normal[i] * m[i][j] for i in range(n)) for j in range(k)]
            const = h.offset - sum(a * b for a, b in zip(h.normal, x0))
            return _integer_row(coeffs, const)

        for h in p.inequalities:
            coeffs, const = linear(h)
            add("lt" if strict else "le", coeffs, const)
        for h in avoid:
            coeffs, const = linear(h)
            add("ne", coeffs, const)
        free_set = set(free)
        for c in range(n):
            if c in free_set:
                continue
            # y_c = t * x0_c + sum_j m[c][j] u_j must be an integer
            row, const = _integer_row(m[c], x0[c])
            scale = math.lcm(*(v.denominator for v in m[c]), x0[c].denominator)
            if scale > 1:
                add("div", row, const, scale)

    def _ok(self, item, u, j, t) -> bool:
        kind, coeffs, const, extra = item
        s = sum(coeffs[i] * u[i] for i in range(j + 1))
        if kind == "le":
            return s <= t * const
        if kind == "lt":
            return s < t * const
        if kind == "ne":
            return s != t * const
        return (t * const + s) % extra == 0

    def count(self, t: int) -> int:
        if self.empty:
            return 0
        zero = [0] * self.k
        for item in self.constant_checks:
            if not self._ok(item, zero, -1, t):
                return 0
        if self.k == 0:
            return 1
        u = [0] * self.k
        return self._scan(0, u, t)

    def _scan(self, j: int, u: list[int], t: int) -> int:
        lo_f, hi_f = self.box[j]
        lo = math.ceil(lo_f * t)
        hi = math.floor(hi_f * t)
        checks = []
        for item in self.levels[j]:
            kind, coeffs, const, _ = item
            cj = coeffs[j]
            if kind in ("le", "lt"):
                rest = t * const - sum(coeffs[i] * u[i] for i in range(j))
                if kind == "lt":
                    rest -= 1
                if cj > 0:
                    hi = min(hi, rest // cj)
                else:
                    lo = max(lo, -(rest // -cj))
            else:
                checks.append(item)
        if lo > hi:
            return 0
        last = j == self.k - 1
        if last and not checks:
            return hi - lo + 1
        total = 0
        for v in range(lo, hi + 1):
            u[j] = v
            if all(self._ok(item, u, j, t) for item in checks):
                total += 1 if last else self._scan(j + 1, u, t)
        u[j] = 0
        return total


@lru_cache(maxsize=None)
def _scanner(p, strict: bool, avoid: tuple[Hyperplane, ...]) -> _Scanner:
    return _Scanner(p, strict, avoid)


def _check_t(t: int) -> None:
    if t < 1:
        raise ValueError("dilation factor must be a positive integer")


def count_closed(face: PolytopeLike, t: int) -> int:
    """Number of points of ``(1/t) Z^n`` in the closed polytope or face."""
    _check_t(t)
    return _scanner(as_polytope(face), False, ()).count(t)


def count_open(face: PolytopeLike, t: int) -> int:
    """Number of points of ``(1/t) Z^n`` in the relative interior.

    For a ``Face`` the tight inequalities stay equalities and all others are
    strict.
    """
    _check_t(t)
    return _scanner(as_polytope(face), True, ()).count(t)


def count_open_off_arrangement(iop: InsideOutPolytope, t: int) -> int:
    """Points of the open polytope lying on none of the arrangement hyperplanes."""
    _check_t(t)
    return _scanner(iop.polytope, True, tuple(iop.arrangement)).count(t)


def dilate_count(face: PolytopeLike, t: int) -> DilateCount:
    return DilateCount(t, count_closed(face, t), count_open(face, t))
