import itertools

import pytest

from oracles import semigroup_members
from singcurve.errors import MarginError, PrecisionError
from singcurve.graph import DualGraph, acampo_zeta, graph_from_branch
from singcurve.jets import BranchParam, CurveModel
from singcurve.poincare import (
    build_laurent_window,
    curve_window,
    euler_integral,
    fit_laurent_window,
    graph_window,
    p_prime,
    poincare_from_jets,
    verify_curve,
    x_series,
)
from singcurve.series import IntPolynomial, TruncatedSeries


def branch(x, y):
    return BranchParam(tuple(x.items()), tuple(y.items()))


X_AXIS, Y_AXIS = branch({1: 1}, {}), branch({}, {1: 1})
NODE = CurveModel((X_AXIS, Y_AXIS))
CUSP = CurveModel((branch({2: 1}, {3: 1}),))
SMOOTH = CurveModel((X_AXIS,))
TACNODE = CurveModel((branch({1: 1}, {2: 1}), branch({1: 1}, {2: -1})))

NODE_G = DualGraph(2, ((1, -1),), (), ((1, 1), (1, 2)))
TACNODE_G = DualGraph(2, ((1, -2), (2, -1)), ((1, 2),), ((2, 1), (2, 2)))


def test_node_c_table():
    lw = build_laurent_window(NODE, (-2, -2), (3, 3))
    for v1, v2 in itertools.product(range(-2, 4), repeat=2):
        if v1 >= 1 and v2 >= 1:
            expected = 2
        elif v1 <= -1 and v2 <= -1:
            expected = 0
        else:
            expected = 1
        assert lw.c((v1, v2)) == expected, (v1, v2)


def test_cusp_window_is_semigroup_indicator():
    lw = build_laurent_window(CUSP, (-1,), (10,))
    members = semigroup_members((2, 3), 10)
    assert [lw.c((v,)) for v in range(11)] == [int(v in members) for v in range(11)]


def test_smooth_window_is_all_ones():
    lw = build_laurent_window(SMOOTH, (-1,), (5,))
    assert [lw.c((v,)) for v in range(6)] == [1] * 6
    assert lw.c((-1,)) == 0


def test_window_must_contain_origin():
    with pytest.raises(ValueError):
        build_laurent_window(NODE, (1, 1), (3, 3))


def test_thin_window_raises_margin_error():
    with pytest.raises(MarginError):
        build_laurent_window(NODE, (0, 0), (3, 3))


def test_p_prime_examples():
    assert p_prime(build_laurent_window(NODE, (-2, -2), (4, 4))) == IntPolynomial(2, {(1, 1): 1, (0, 0): -1})
    assert p_prime(build_laurent_window(SMOOTH, (-2,), (6,))) == IntPolynomial(1, {(0,): -1})
    # cusp: (t - 1) * L = -(1 - t) * P, and (1 - t) P = 1 - t + t^2 on this window
    assert p_prime(build_laurent_window(CUSP, (-2,), (8,))) == IntPolynomial(1, {(0,): -1, (1,): 1, (2,): -1})


def test_p_prime_boundary_certificate():
    # the tacnode numerator reaches (2, 2); a window ending there cannot certify it
    lw = build_laurent_window(TACNODE, (-2, -2), (2, 2))
    with pytest.raises(MarginError):
        p_prime(lw)


def test_poincare_from_jets_examples():
    assert poincare_from_jets(build_laurent_window(NODE, (-2, -2), (4, 4))) == 1
    tac = poincare_from_jets(build_laurent_window(TACNODE, (-2, -2), (6, 6)))
    assert tac == IntPolynomial(2, {(0, 0): 1, (1, 1): 1})
    cusp = poincare_from_jets(build_laurent_window(CUSP, (-2,), (12,)))
    members = semigroup_members((2, 3), 12)
    assert cusp == TruncatedSeries.from_exponents(1, (12,), [(v,) for v in members])


def test_x_series_examples():
    assert x_series(NODE, (4, 4)) == 1
    assert x_series(TACNODE, (5, 5)) == IntPolynomial(2, {(0, 0): 1, (1, 1): 1})
    members = semigroup_members((2, 3), 15)
    assert x_series(CUSP, (15,)) == TruncatedSeries.from_exponents(1, (15,), [(v,) for v in members])


def test_x_series_boundary_certificate():
    with pytest.raises(MarginError):
        x_series(TACNODE, (1, 1))


def test_euler_integral_modes():
    assert euler_integral(NODE, (4, 4)) == x_series(NODE, (4, 4))
    cusp_zeta = acampo_zeta(graph_from_branch((2, 3))).expand((20,))
    assert euler_integral(CUSP, (20,), "diagonal") == cusp_zeta
    smooth = euler_integral(SMOOTH, (10,), "diagonal")
    assert smooth == TruncatedSeries(1, (10,), {(k,): 1 for k in range(11)})
    with pytest.raises(ValueError):
        euler_integral(NODE, (2, 2), "sideways")


def test_window_heuristics():
    # total multiplicity at the arrow vertex, plus 2
    assert graph_window(NODE_G) == (4, 4)
    assert graph_window(TACNODE_G) == (6, 6)
    assert curve_window(NODE) == (3, 3)
    assert curve_window(TACNODE) == (4, 4)
    assert curve_window(CUSP) == (4,)


def test_fit_widens_narrow_windows():
    lw = fit_laurent_window(TACNODE, (-1, -1), (2, 2))
    assert lw.hi[0] > 2 and lw.lo[0] < -1
    assert poincare_from_jets(lw) == IntPolynomial(2, {(0, 0): 1, (1, 1): 1})


def test_jet_cap_surfaces_as_precision_error(monkeypatch):
    monkeypatch.setenv("SINGCURVE_PRECISION_CAP", "3")
    with pytest.raises(PrecisionError) as info:
        build_laurent_window(TACNODE, (-2, -2), (6, 6))
    assert info.value.state["cap"] == 3


# -- cross-pipeline verification ---------------------------------------------


def test_verify_node():
    rep = verify_curve(NODE, NODE_G)
    assert rep.passed
    assert rep.values["poincare"] == rep.values["euler"] == rep.values["alexander"] == "1"


def test_verify_tacnode():
    rep = verify_curve(TACNODE, TACNODE_G)
    assert rep.passed and rep.values["alexander"] == "1 + 1*t1^1*t2^1"


def test_verify_cusp():
    rep = verify_curve(CUSP, graph_from_branch((2, 3)))
    assert rep.passed
    assert {c.name for c in rep.checks} == {
        "poincare_equals_zeta",
        "euler_equals_poincare",
        "integral_diagonal_equals_zeta",
    }


def test_verify_reports_mismatch_without_raising():
    rep = verify_curve(TACNODE, NODE_G)
    assert not rep.passed
    failing = [c for c in rep.checks if not c.passed]
    assert failing and all(c.first_discrepancy is not None for c in failing)
    doc = rep.to_dict()
    assert doc["passed"] is False and any(c["status"] == "FAIL" for c in doc["checks"])


def test_verify_branch_count_mismatch():
    rep = verify_curve(NODE, graph_from_branch((2, 3)))
    assert not rep.passed and rep.checks[0].name == "branch_count"
