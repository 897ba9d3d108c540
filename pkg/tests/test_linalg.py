from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from oracles import cramer, det_laplace, rank_by_minors, rank_gauss
from singcurve import linalg

matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@given(matrices)
def test_rank_agrees_with_minors_and_gcd_elimination(rows):
    expected = rank_by_minors(rows)
    assert linalg.rank(rows) == expected
    assert linalg.rank_reduced(rows) == expected


@given(matrices)
def test_rank_of_rational_rows(rows):
    scaled = [[Fraction(x, i + 2) for x in row] for i, row in enumerate(rows)]
    assert linalg.rank(scaled) == rank_gauss(scaled)


def test_rank_of_dependent_rows():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(rows) == 2


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_laplace_expansion(m):
    assert linalg.det(m) == det_laplace(m)


@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n),
            st.lists(st.integers(-5, 5), min_size=n, max_size=n),
        )
    )
)
def test_solve_matches_cramer(args):
    m, b = args
    if det_laplace(m) == 0:
        return
    assert linalg.solve(m, b) == cramer(m, b)


@given(matrices)
def test_nullspace_vectors_are_annihilated(rows):
    ncols = len(rows[0])
    basis = linalg.nullspace(rows, ncols)
    assert len(basis) == ncols - rank_by_minors(rows)
    for vec in basis:
        assert all(sum(Fraction(a) * x for a, x in zip(row, vec)) == 0 for row in rows)


def test_leading_minors_of_negative_definite_matrix_alternate():
    cusp = [[-3, 0, 1], [0, -2, 1], [1, 1, -1]]
    minors = linalg.leading_minors(cusp)
    assert minors == [-3, 6, -1]
    assert all((-1) ** (k + 1) * m > 0 for k, m in enumerate(minors))
