from fractions import Fraction as F

from hypothesis import given, strategies as st

from insideout.linalg import affine_parametrization, rank, rref, row_space_key, solve_unique

small = st.integers(min_value=-6, max_value=6)


def test_rref_identity_pivots():
    red, piv = rref([[2, 4], [1, 3]])
    assert red == [[1, 0], [0, 1]]
    assert piv == [0, 1]


def test_rank_of_dependent_rows():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    assert rank([]) == 0


def test_solve_unique_rejects_singular_and_inconsistent():
    assert solve_unique([[1, 1], [2, 2]], [F(1), F(2)]) is None
    assert solve_unique([[1, 1], [1, 1]], [F(1), F(2)]) is None
    assert solve_unique([[1, 1], [1, -1]], [F(3), F(1)]) == (F(2), F(1))


def test_affine_parametrization_of_plane():
    x0, m, free = affine_parametrization([[F(1), F(1), F(1)]], [F(1)], 3)
    assert free == [1, 2]
    for u in ((F(0), F(0)), (F(1, 2), F(-3))):
        x = [x0[i] + sum(m[i][j] * u[j] for j in range(2)) for i in range(3)]
        assert sum(x) == 1


def test_affine_parametrization_inconsistent():
    assert affine_parametrization([[F(1), F(0)], [F(1), F(0)]], [F(0), F(1)], 2) is None


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_solve_unique_solves(a, x):
    b = [sum(F(r) * v for r, v in zip(row, x)) for row in a]
    sol = solve_unique(a, b)
    if rank(a) == 3:
        assert sol == tuple(F(v) for v in x)
    else:
        assert sol is None


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4), st.integers(-3, 3))
def test_row_space_key_is_invariant_under_row_operations(rows, c):
    mixed = [list(r) for r in rows]
    if len(mixed) > 1:
        mixed[0] = [a + c * b for a, b in zip(mixed[0], mixed[1])]
    mixed.reverse()
    assert row_space_key(rows) == row_space_key(mixed)
