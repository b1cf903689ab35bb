import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from insideout import squares
from insideout.lattice import count_closed, count_open, count_open_off_arrangement, dilate_count
from insideout.polytope import HPolytope, InsideOutPolytope, hyperplane


def box(*upper) -> HPolytope:
    n = len(upper)
    ineqs = []
    for i, u in enumerate(upper):
        e = [0] * n
        e[i] = 1
        ineqs.append(hyperplane(e, u))
        ineqs.append(hyperplane([-v for v in e], 0))
    return HPolytope(n, (), tuple(ineqs))


def test_unit_square_closed():
    assert count_closed(box(1, 1), 2) == 9


def test_open_interval():
    assert count_open(box(1), 5) == 4


def test_no_points():
    thin = HPolytope(1, (), (hyperplane([1], F(2, 5)), hyperplane([-1], F(-1, 3))))
    assert count_closed(thin, 1) == 0


def test_bad_dilation():
    with pytest.raises(ValueError):
        count_closed(box(1), 0)


def test_birkhoff_polytope_at_three():
    p = squares.weak_polytope("semimagic-affine")
    assert count_closed(p, 3) == 55  # nonnegative 3x3 matrices with line sums 3
    assert count_open(p, 3) == 1  # positive entries: the all-ones square


def test_semimagic_affine_reduced_interior():
    q = squares.instance("semimagic-affine").geometry.polytope
    assert count_open(q, 7) == 1
    assert count_open(q, 6) == 0


def test_off_arrangement_counts():
    assert count_open_off_arrangement(squares.instance("magic-cubic").geometry, 10) == 1
    assert count_open_off_arrangement(squares.instance("semimagic-cubic").geometry, 8) == 1


def test_empty_arrangement_is_open_count():
    p = box(1, 2)
    for t in range(1, 6):
        assert count_open_off_arrangement(InsideOutPolytope(p, ()), t) == count_open(p, t)


def test_dilate_count_pairs():
    d = dilate_count(box(1, 1), 3)
    assert (d.closed_count, d.open_count) == (16, 4)


@given(st.lists(st.fractions(min_value=0, max_value=3, max_denominator=4), min_size=1, max_size=3), st.integers(1, 8))
def test_box_counts(upper, t):
    p = box(*upper)
    closed = 1
    for u in upper:
        closed *= (t * u).__floor__() + 1
    assert count_closed(p, t) == closed


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 4), st.integers(1, 7))
def test_triangle_counts_by_brute_force(a, b, d, t):
    # {x, y >= 0, b x + a y <= a b / d} scanned over a grid
    rhs = F(a * b, d)
    p = HPolytope(2, (), (hyperplane([-1, 0]), hyperplane([0, -1]), hyperplane([b, a], rhs)))
    closed = opened = 0
    for i, j in itertools.product(range(a * t + 1), range(b * t + 1)):
        s = b * F(i, t) + a * F(j, t)
        if s <= rhs:
            closed += 1
            if i > 0 and j > 0 and s < rhs:
                opened += 1
    assert count_closed(p, t) == closed
    assert count_open(p, t) == opened
