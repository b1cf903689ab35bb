"""Exact linear algebra over the rationals.

Small dense routines on lists of ``Fraction`` rows.  The systems handled by
this package have at most a dozen rows, so plain Gauss-Jordan elimination is
all that is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = list[Fraction]


def to_fraction_rows(rows: Sequence[Sequence]) -> list[Row]:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the reduced matrix and the pivot columns.
    """
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_unique(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Solve ``a x = b``; return the solution if it exists and is unique."""
    if not a:
        return None
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None  # inconsistent
    if len(piv) < n:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def affine_parametrization(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int
) -> tuple[tuple[Fraction, ...], list[list[Fraction]], list[int]] | None:
    """Write the solutions of ``a x = b`` as ``x = x0 + M u``.

    ``u`` ranges over the free coordinates (returned as column indices of
    ``x``), so ``M`` restricted to the free rows is the identity.  Returns
    ``None`` for an inconsistent system.
    """
    if not a:
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return tuple(Fraction(0) for _ in range(n)), eye, list(range(n))
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    free = [c for c in range(n) if c not in piv]
    x0 = [Fraction(0)] * n
    m = [[Fraction(0)] * len(free) for _ in range(n)]
    for k, c in enumerate(free):
        m[c][k] = Fraction(1)
    for row, c in zip(red, piv):
        x0[c] = row[n]
        for k, f in enumerate(free):
            m[c][k] = -row[f]
    return tuple(x0), m, free


def row_space_key(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical key of a row space (the reduced echelon rows)."""
    red, _ = rref(rows)
    return tuple(tuple(r) for r in red)
