"""Brute-force enumeration of 3x3 squares.

This module knows nothing about polytopes.  It enumerates integer matrices,
tests the defining predicates and picks orbit representatives by applying the
symmetry group explicitly.  Counts of all squares are then obtained from the
reduced ones (minimum entry 0) by shifting:

* cubic: a reduced square with maximum ``w`` gives ``t - 1 - w`` squares with
  entries in ``(0, t)``;
* affine: a reduced square with line sum ``s`` gives one square with line sum
  ``t`` for each ``s < t`` with ``s = t (mod 3)``.

A direct scanner over all matrices, usable only for small ``t``, gives a
third opinion on the shifting argument.
"""

from __future__ import annotations

import csv
import io
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

FAMILIES = ("magic", "semimagic", "magilatin")
PARAMETERS = ("cubic", "affine")
MODES = ("all", "sym", "reduced", "reduced-sym")

DEFAULT_BUDGET = 60
SCAN_BUDGET = 15


class BudgetExceeded(ValueError):
    def __init__(self, what: str = "budget"):
        super().__init__("budget" if what == "budget" else f"budget: {what}")


# --- squares and predicates ----------------------------------------------

LINES_SEMI = ((0, 1, 2), (3, 4, 5), (6, 7, 8), (0, 3, 6), (1, 4, 7), (2, 5, 8))
DIAGONALS = ((0, 4, 8), (2, 4, 6))


@dataclass(frozen=True)
class Square3:
    """Row-major entries of a 3x3 matrix of nonnegative integers."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != 9:
            raise ValueError("a 3x3 square has 9 entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Square3":
        return cls(tuple(int(v) for row in rows for v in row))

    @property
    def rows(self) -> list[list[int]]:
        e = self.entries
        return [list(e[0:3]), list(e[3:6]), list(e[6:9])]

    def _sums_equal(self, lines) -> bool:
        e = self.entries
        sums = {e[a] + e[b] + e[c] for a, b, c in lines}
        return len(sums) == 1

    def is_weakly_semimagic(self) -> bool:
        return self._sums_equal(LINES_SEMI)

    def is_weakly_magic(self) -> bool:
        return self._sums_equal(LINES_SEMI + DIAGONALS)

    def is_semimagic(self) -> bool:
        return self.is_weakly_semimagic() and len(set(self.entries)) == 9

    def is_magic(self) -> bool:
        return self.is_weakly_magic() and len(set(self.entries)) == 9

    def is_magilatin(self) -> bool:
        e = self.entries
        return self.is_weakly_semimagic() and all(len({e[a], e[b], e[c]}) == 3 for a, b, c in LINES_SEMI)

    def satisfies(self, family: str) -> bool:
        return {"magic": self.is_magic, "semimagic": self.is_semimagic, "magilatin": self.is_magilatin}[family]()


# --- symmetry groups -----------------------------------------------------


def _compose_grid(row_perm, col_perm, transpose: bool) -> tuple[int, ...]:
    """Index map ``k -> source index`` of one row/column/transpose symmetry."""
    out = []
    for i in range(3):
        for j in range(3):
            a, b = (j, i) if transpose else (i, j)
            out.append(3 * row_perm[a] + col_perm[b])
    return tuple(out)


@lru_cache(maxsize=None)
def symmetry_group(family: str) -> tuple[tuple[int, ...], ...]:
    """Index permutations of the family's symmetry group.

    Row and column permutations with the transpose (order 72), or for magic
    squares the symmetries of the square (order 8).
    """
    if family == "magic":
        rot = (6, 3, 0, 7, 4, 1, 8, 5, 2)
        tr = (0, 3, 6, 1, 4, 7, 2, 5, 8)
        elems = {tuple(range(9))}
        frontier = list(elems)
        while frontier:
            g = frontier.pop()
            for h in (rot, tr):
                gh = tuple(g[h[k]] for k in range(9))
                if gh not in elems:
                    elems.add(gh)
                    frontier.append(gh)
        return tuple(sorted(elems))
    perms = list(permutations(range(3)))
    elems = {_compose_grid(r, c, t) for r in perms for c in perms for t in (False, True)}
    return tuple(sorted(elems))


def orbit(sq: Square3, family: str) -> set[tuple[int, ...]]:
    e = sq.entries
    return {tuple(e[i] for i in g) for g in symmetry_group(family)}


def canonicalize(sq: Square3, family: str) -> Square3:
    """Lexicographically least square in the orbit of ``sq``."""
    if not sq.satisfies(family):
        raise ValueError(f"not a {family} square")
    return Square3(min(orbit(sq, family)))


def orbit_size(sq: Square3, family: str) -> int:
    return len(orbit(sq, family))


def _is_canonical(e: tuple[int, ...], family: str) -> bool:
    for g in symmetry_group(family):
        img = tuple(e[i] for i in g)
        if img < e:
            return False
    return True


# --- reduced squares -----------------------------------------------------


def _distinct_ok(e: tuple[int, ...], family: str) -> bool:
    if family == "magilatin":
        return all(e[a] != e[b] and e[a] != e[c] and e[b] != e[c] for a, b, c in LINES_SEMI)
    return len(set(e)) == 9


def _reduced_semi(family: str, parameter: str, n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Canonical reduced squares with parameter at most ``n``.

    Every canonical representative has ``x11 = 0``, ``x12 <= x13``,
    ``x21 <= x31`` and ``x12 <= x21`` (each pair is swapped by a group
    element fixing everything earlier in row-major order), so only such
    squares are generated.
    """
    cubic = parameter == "cubic"
    for x13 in range(n + 1):
        for x12 in range(x13 + 1):
            s = x12 + x13
            if not cubic and s > n:
                break
            for x21 in range(x12, s // 2 + 1):
                x31 = s - x21
                if cubic and x31 > n:
                    continue
                lo = max(0, s - x21 - n) if cubic else 0
                hi = min(s - x21, s - x12)
                if cubic:
                    hi = min(hi, n)
                for x22 in range(lo, hi + 1):
                    x23 = s - x21 - x22
                    x32 = s - x12 - x22
                    x33 = s - x13 - x23
                    if x33 < 0 or (cubic and (x32 > n or x33 > n)):
                        continue
                    e = (0, x12, x13, x21, x22, x23, x31, x32, x33)
                    if not _distinct_ok(e, family) or not _is_canonical(e, family):
                        continue
                    yield (max(e) if cubic else s), e


def _reduced_magic(parameter: str, n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Canonical reduced magic squares: center ``c`` with line sum ``3c``;
    the minimum 0 sits opposite the maximum ``2c``."""
    cubic = parameter == "cubic"
    cmax = n // 2 if cubic else n // 3
    for c in range(cmax + 1):
        for x11 in range(2 * c + 1):
            for x12 in range(2 * c + 1):
                x13 = 3 * c - x11 - x12
                x33 = 2 * c - x11
                x31 = 2 * c - x13
                x21 = 3 * c - x11 - x31
                x23 = 2 * c - x21
                x32 = 2 * c - x12
                e = (x11, x12, x13, x21, c, x23, x31, x32, x33)
                if min(e) != 0 or max(e) != 2 * c:
                    continue
                if len(set(e)) != 9 or not _is_canonical(e, "magic"):
                    continue
                yield (2 * c if cubic else 3 * c), e


_TABLES: dict[tuple[str, str], tuple[int, list[int], list[int]]] = {}
_TABLES_LOCK = threading.Lock()


def _reduced_table(family: str, parameter: str, n: int) -> tuple[list[int], list[int]]:
    """``(R, r)`` indexed ``0..n``: reduced squares and their orbits.

    The largest table built so far is kept per problem and sliced for
    smaller requests (entries up to its bound are complete).
    """
    key = (family, parameter)
    with _TABLES_LOCK:
        cached = _TABLES.get(key)
        if cached is None or cached[0] < n:
            big = [0] * (n + 1)
            small = [0] * (n + 1)
            gen = _reduced_magic(parameter, n) if family == "magic" else _reduced_semi(family, parameter, n)
            for v, e in gen:
                small[v] += 1
                big[v] += len({tuple(e[i] for i in g) for g in symmetry_group(family)})
            cached = (n, big, small)
            _TABLES[key] = cached
    return cached[1][: n + 1], cached[2][: n + 1]


def reduced_squares(family: str, parameter: str, n: int) -> list[Square3]:
    """Canonical reduced squares with maximum (cubic) or line sum (affine) ``n``."""
    gen = _reduced_magic(parameter, n) if family == "magic" else _reduced_semi(family, parameter, n)
    return [Square3(e) for v, e in gen if v == n]


def _check(family: str, parameter: str, mode: str) -> None:
    if family not in FAMILIES or parameter not in PARAMETERS or mode not in MODES:
        raise ValueError(f"unknown problem or mode: {family}-{parameter} {mode}")


def enumerate_count(family: str, parameter: str, t: int, mode: str = "all", budget: int = DEFAULT_BUDGET) -> int:
    """Number of squares for one ``t``.

    ``all``: entries in ``(0, t)`` (cubic) or positive with line sum ``t``
    (affine); ``reduced``: minimum 0 and maximum ``t`` (cubic) or line sum
    ``t`` (affine); the ``sym`` variants count orbits instead of squares.
    """
    _check(family, parameter, mode)
    if t < 1:
        raise ValueError("t must be positive")
    if t > budget:
        raise BudgetExceeded()
    return counts_upto(family, parameter, t, mode)[t]


def counts_upto(family: str, parameter: str, t_max: int, mode: str = "all") -> list[int]:
    """Counts for ``t = 0..t_max`` (entry 0 is always 0)."""
    _check(family, parameter, mode)
    big, small = _reduced_table(family, parameter, t_max)
    table = small if mode.endswith("sym") else big
    out = [0] * (t_max + 1)
    for t in range(1, t_max + 1):
        if mode.startswith("reduced"):
            out[t] = table[t]
        elif parameter == "cubic":
            out[t] = sum((t - 1 - w) * table[w] for w in range(t - 1))
        else:
            out[t] = sum(table[s] for s in range(t % 3 or 3, t, 3))
    return out


def reduced_counts_table(family: str, parameter: str, t_max: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, int, int]]:
    """``(t, R(t), r(t))`` for ``t = 1..t_max``."""
    if t_max > budget:
        raise BudgetExceeded()
    big, small = _reduced_table(family, parameter, t_max)
    return [(t, big[t], small[t]) for t in range(1, t_max + 1)]


# --- direct scanning -----------------------------------------------------


def _iter_squares(magic: bool, lo: int, hi: int, sums: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Weakly (semi)magic squares with entries in ``[lo, hi]`` and the given
    line sums, from the top-left 2x2 block."""
    rng = range(lo, hi + 1)
    sums = list(sums)
    for x11 in rng:
        for x12 in rng:
            for x21 in rng:
                for x22 in rng:
                    for s in sums:
                        x13 = s - x11 - x12
                        x23 = s - x21 - x22
                        x31 = s - x11 - x21
                        x32 = s - x12 - x22
                        x33 = s - x13 - x23
                        e = (x11, x12, x13, x21, x22, x23, x31, x32, x33)
                        if min(e) < lo or max(e) > hi:
                            continue
                        if magic and (x11 + x22 + x33 != s or x13 + x22 + x31 != s):
                            continue
                        yield e


def scan_count(family: str, parameter: str, t: int, mode: str = "all", budget: int = SCAN_BUDGET) -> int:
    """Count by scanning every matrix (no shifting argument); small ``t`` only."""
    _check(family, parameter, mode)
    if t < 1:
        raise ValueError("t must be positive")
    if t > budget:
        raise BudgetExceeded()
    reduced = mode.startswith("reduced")
    if parameter == "cubic":
        lo, hi = (0, t) if reduced else (1, t - 1)
        sums = range(3 * lo, 3 * hi + 1)
    else:
        lo, hi = (0, t) if reduced else (1, t)
        sums = (t,)
    total = 0
    for e in _iter_squares(family == "magic", lo, hi, sums):
        if reduced and (min(e) != 0 or (parameter == "cubic" and max(e) != t)):
            continue
        if not _distinct_ok(e, family):
            continue
        if mode.endswith("sym") and not _is_canonical(e, family):
            continue
        total += 1
    return total


# --- weak counts ---------------------------------------------------------


def weak_count(family: str, parameter: str, t: int) -> int:
    """Squares with the line conditions only (repeated entries allowed).

    Cubic: entries in ``(0, t)``; affine: positive entries, line sum ``t``.
    Magilatin squares have the semimagic weak count.
    """
    if t < 1:
        raise ValueError("t must be positive")
    magic = family == "magic"
    if magic:
        return _weak_magic(parameter, t)
    top = t - 1
    total = 0
    if parameter == "affine":
        for x11 in range(1, t):
            for x12 in range(1, t - x11):
                for x21 in range(1, t - x11):
                    for x22 in range(1, t - x12):
                        if x21 + x22 < t and x11 + x12 + x21 + x22 > t:
                            total += 1
        return total
    # cubic: for each 2x2 block, count line sums s keeping the other five
    # entries in [1, t-1]
    for x11 in range(1, t):
        for x12 in range(1, t):
            a = x11 + x12
            for x21 in range(1, t):
                b = x11 + x21
                for x22 in range(1, t):
                    c = x21 + x22
                    d = x12 + x22
                    q = a + c
                    lo = max(a, b, c, d) + 1
                    hi = min(a, b, c, d) + top
                    lo = max(lo, q - top)
                    hi = min(hi, q - 1)
                    if hi >= lo:
                        total += hi - lo + 1
    return total


def _weak_magic(parameter: str, t: int) -> int:
    total = 0
    if parameter == "affine":
        if t % 3:
            return 0
        centers = (t // 3,)
        lo, hi = 1, t
    else:
        centers = range(1, t)
        lo, hi = 1, t - 1
    for c in centers:
        for x11 in range(lo, hi + 1):
            for x12 in range(lo, hi + 1):
                x13 = 3 * c - x11 - x12
                x31 = 2 * c - x13
                x21 = 3 * c - x11 - x31
                e = (x11, x12, x13, x21, c, 2 * c - x21, x31, 2 * c - x12, 2 * c - x11)
                if min(e) >= lo and max(e) <= hi:
                    total += 1
    return total


# --- export --------------------------------------------------------------

# OEIS sequence ids by (problem key, mode); the reduced magic sequences are
# shared between the cubic and affine tables and listed under cubic.
OEIS_SEQUENCES = {
    ("magic-cubic", "all"): "A108576",
    ("magic-cubic", "sym"): "A108577",
    ("magic-affine", "all"): "A108578",
    ("magic-affine", "sym"): "A108579",
    ("magic-cubic", "reduced"): "A174256",
    ("magic-cubic", "reduced-sym"): "A174257",
    ("semimagic-cubic", "all"): "A173546",
    ("semimagic-cubic", "sym"): "A173723",
    ("semimagic-cubic", "reduced"): "A173727",
    ("semimagic-cubic", "reduced-sym"): "A173724",
    ("semimagic-affine", "all"): "A173547",
    ("semimagic-affine", "sym"): "A173725",
    ("semimagic-affine", "reduced"): "A173728",
    ("semimagic-affine", "reduced-sym"): "A173726",
    ("magilatin-cubic", "all"): "A173548",
    ("magilatin-cubic", "sym"): "A173729",
    ("magilatin-cubic", "reduced"): "A174018",
    ("magilatin-cubic", "reduced-sym"): "A174019",
    ("magilatin-affine", "all"): "A173549",
    ("magilatin-affine", "sym"): "A173730",
    ("magilatin-affine", "reduced"): "A174020",
    ("magilatin-affine", "reduced-sym"): "A174021",
}


def bfile(values: Sequence[int], offset: int = 1) -> str:
    """OEIS b-file text: one ``n a(n)`` line per term starting at ``offset``."""
    return "".join(f"{offset + i} {v}\n" for i, v in enumerate(values))


def table_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
