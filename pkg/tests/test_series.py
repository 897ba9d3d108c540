import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense, dict_mul, expand_factors
from singcurve.errors import ArityError, DegenerateFactorError, NotDivisibleError
from singcurve.series import (
    INFINITY,
    IntPolynomial,
    MultiIndex,
    ProductForm,
    TruncatedSeries,
    exact_divide,
    expand_product_form,
    series_mul,
    specialize_diagonal,
    symmetric_power_series,
)


def poly(r, terms):
    return IntPolynomial(r, terms)


def series(r, window, terms):
    return TruncatedSeries(r, window, terms)


def as_dict(s):
    return {tuple(k): c for k, c in s.items()}


# -- multi-indices ----------------------------------------------------------


def test_multi_index_is_componentwise():
    a, b = MultiIndex((1, 2)), MultiIndex((3, -1))
    assert a + b == (4, 1)
    assert a - b == (-2, 3)
    assert a.leq((1, 3)) and not a.leq((0, 5))
    assert MultiIndex.ones(3) == (1, 1, 1)
    assert (a + MultiIndex.ones(2)).is_finite()
    assert not (MultiIndex((1, INFINITY)) + MultiIndex.ones(2)).is_finite()
    assert MultiIndex((1, INFINITY)).norm() == INFINITY


def test_multi_index_rejects_empty_and_mismatched_arity():
    with pytest.raises(ArityError):
        MultiIndex(())
    with pytest.raises(ArityError):
        MultiIndex((1, 2)) + MultiIndex((1, 2, 3))


# -- series_mul -----------------------------------------------------------


def test_difference_of_squares():
    a = series(1, (5,), {(0,): 1, (1,): 1})
    b = series(1, (5,), {(0,): 1, (1,): -1})
    assert as_dict(series_mul(a, b, (5,))) == {(0,): 1, (2,): -1}


def test_multiplying_by_one_is_identity():
    s = series(2, (3, 3), {(0, 0): 2, (1, 2): -5, (3, 3): 7})
    assert series_mul(s, TruncatedSeries.one(2, (3, 3)), (3, 3)) == s


def test_truncated_geometric_times_one_minus_t():
    geo = series(1, (10,), {(k,): 1 for k in range(11)})
    lin = series(1, (10,), {(0,): 1, (1,): -1})
    assert as_dict(series_mul(geo, lin, (9,))) == {(0,): 1}


def test_series_mul_arity_mismatch():
    with pytest.raises(ArityError):
        series_mul(TruncatedSeries.one(1, (3,)), TruncatedSeries.one(2, (3, 3)), (3,))


def _mk(r, coeffs, window):
    return TruncatedSeries(r, window, {k[:r]: c for k, c in coeffs.items()})


@given(
    st.integers(1, 2),
    st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3), max_size=6),
    st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3), max_size=6),
    st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-3, 3), max_size=6),
)
def test_series_mul_matches_naive_convolution_and_is_associative(r, da, db, dc):
    w = (4,) * r
    a, b, c = (_mk(r, d, w) for d in (da, db, dc))
    assert as_dict(series_mul(a, b, w)) == dict_mul(as_dict(a), as_dict(b), w)
    assert series_mul(a, b, w) == series_mul(b, a, w)
    assert series_mul(series_mul(a, b, w), c, w) == series_mul(a, series_mul(b, c, w), w)


@given(
    st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)), st.integers(-3, 3), max_size=8),
    st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)), st.integers(-3, 3), max_size=8),
    st.tuples(st.integers(0, 6), st.integers(0, 6)),
)
def test_series_equality_is_window_monotone(da, db, sub):
    a = TruncatedSeries(2, (6, 6), da)
    b = TruncatedSeries(2, (6, 6), db)
    if a == b:
        assert a.restrict(sub) == b.restrict(sub)
    # equality is symmetric
    assert (a == b) == (b == a)


def test_series_equality_is_transitive_on_common_windows():
    a = series(1, (8,), {(0,): 1, (3,): 2, (7,): 5})
    b = series(1, (4,), {(0,): 1, (3,): 2})
    c = series(1, (4,), {(0,): 1, (3,): 2})
    assert a == b and b == c and a == c


def test_first_discrepancy_is_lex_smallest():
    a = series(2, (3, 3), {(0, 0): 1, (1, 2): 1, (2, 0): 4})
    b = series(2, (3, 3), {(0, 0): 1, (2, 0): 3})
    assert a.first_discrepancy(b) == (1, 2)


# -- product forms --------------------------------------------------------


def test_geometric_series():
    pf = ProductForm(1, (((1,), -1),))
    assert as_dict(expand_product_form(pf, (5,))) == {(k,): 1 for k in range(6)}


def test_cusp_closed_form_expands_to_semigroup():
    pf = ProductForm(1, (((6,), 1), ((2,), -1), ((3,), -1)))
    members = {0, 2, 3, 4, 5, 6, 7, 8, 9, 10}
    assert as_dict(pf.expand((10,))) == {(k,): 1 for k in members}


def test_tacnode_alexander_product_expands_to_polynomial():
    pf = ProductForm(2, (((2, 2), 1), ((1, 1), -1)))
    assert as_dict(pf.expand((4, 4))) == {(0, 0): 1, (1, 1): 1}


def test_degenerate_factor_rejected():
    with pytest.raises(DegenerateFactorError):
        ProductForm(1, (((0,), -1),)).expand((4,))


def test_factors_merge_and_cancel():
    pf = ProductForm(1, (((2,), 1), ((2,), -1), ((3,), 2), ((3,), -1)))
    assert pf.factors == ((MultiIndex((3,)), 1),)
    assert pf.to_text() == "[1, [0]] * PROD (1 - t^[3])^1"


factor_lists = st.lists(
    st.tuples(
        st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda m: m != (0, 0)),
        st.integers(-2, 2).filter(bool),
    ),
    max_size=3,
)


@given(factor_lists, factor_lists)
def test_expansion_is_a_monoid_homomorphism(f1, f2):
    w = (5, 5)
    p1, p2 = ProductForm(2, tuple(f1)), ProductForm(2, tuple(f2))
    lhs = (p1 * p2).expand(w)
    assert lhs == series_mul(p1.expand(w), p2.expand(w), w)
    assert dense(as_dict(lhs), w) == dense(expand_factors(f1 + f2, w), w)


@given(st.integers(-5, 5), st.integers(0, 30))
def test_symmetric_power_matches_product_form(c, b):
    pf = ProductForm(1, (((1,), -c),))
    assert symmetric_power_series(c, b) == pf.expand((b,))


@pytest.mark.parametrize(
    "c, bound, expected",
    [
        (1, 4, [1, 1, 1, 1, 1]),
        (-1, 4, [1, -1, 0, 0, 0]),
        (2, 3, [1, 2, 3, 4]),
    ],
)
def test_symmetric_power_examples(c, bound, expected):
    s = symmetric_power_series(c, bound)
    assert [s.coeff((k,)) for k in range(bound + 1)] == expected


# -- exact division -------------------------------------------------------

T1T2_MINUS_1 = poly(2, {(1, 1): 1, (0, 0): -1})


def test_self_division():
    assert exact_divide(T1T2_MINUS_1, T1T2_MINUS_1) == 1


def test_divide_difference_of_squares():
    num = poly(2, {(2, 2): 1, (0, 0): -1})
    assert exact_divide(num, T1T2_MINUS_1) == poly(2, {(1, 1): 1, (0, 0): 1})


def test_non_divisible_raises():
    with pytest.raises(NotDivisibleError):
        exact_divide(poly(2, {(1, 1): 1, (0, 0): 1}), T1T2_MINUS_1)


def test_laurent_division_terminates_when_not_divisible():
    # lex order alone would allow an unbounded descent here
    num = poly(2, {(1, 0): 1, (0, 5): 1})
    den = poly(2, {(1, 0): 1, (0, 1): -1})
    with pytest.raises(NotDivisibleError):
        exact_divide(num, den)


poly_terms = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)), st.integers(-4, 4).filter(bool), min_size=1, max_size=5
)


@given(poly_terms, poly_terms)
def test_divide_round_trip(q_terms, d_terms):
    q, d = poly(2, q_terms), poly(2, d_terms)
    assert exact_divide(q * d, d) == q


def test_random_non_divisible_products_are_caught():
    rng = random.Random(7)
    for _ in range(50):
        d = poly(2, {(1, 1): 1, (0, 0): -1})
        q = poly(2, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 4) for _ in range(3)})
        bump = poly(2, {(0, 0): 1})
        with pytest.raises(NotDivisibleError):
            exact_divide(q * d + bump, d)


# -- diagonal specialization ------------------------------------------------


def test_diagonal_of_polynomial():
    assert specialize_diagonal(poly(2, {(1, 1): 1, (0, 0): 1})) == poly(1, {(2,): 1, (0,): 1})


def test_diagonal_of_product_form():
    pf = specialize_diagonal(ProductForm(2, (((1, 1), -1),)))
    assert pf == ProductForm(1, (((2,), -1),))


def test_diagonal_of_series_keeps_complete_degrees_only():
    s = series(2, (3, 2), {(0, 0): 1, (1, 1): 1, (3, 2): 9})
    d = specialize_diagonal(s)
    assert d.window == (2,) and as_dict(d) == {(0,): 1, (2,): 1}


# -- canonical text -------------------------------------------------------


def test_canonical_text_forms():
    assert poly(2, {(1, 1): 1, (0, 0): 1}).to_text() == "1 + 1*t1^1*t2^1"
    assert poly(1, {(1,): -1, (0,): 1}).to_text() == "1 + -1*t^1"
    assert poly(2, {}).to_text() == "0"
    pf = ProductForm(1, (((2,), -1), ((3,), -1), ((6,), 1)))
    assert pf.to_text() == "[1, [0]] * PROD (1 - t^[2])^-1 (1 - t^[3])^-1 (1 - t^[6])^1"
