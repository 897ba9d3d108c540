"""Poincare series of a curve from jet data, the Euler characteristic series of
the projectivized extended semigroup, and their comparison with the
resolution-graph invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import MarginError, PrecisionError, SingCurveError
from .graph import DualGraph, acampo_zeta, alexander_polynomial, solve_multiplicities
from .jets import (
    CurveModel,
    c_of_v,
    fiber_report,
    intersection_multiplicity,
    jet_subspace_dim,
    precision_cap,
    sufficient_jet_degree,
)
from .series import (
    IntPolynomial,
    MultiIndex,
    TruncatedSeries,
    as_index,
    exact_divide,
    specialize_diagonal,
)

DIAGONAL_WINDOW = 60


def _box(lo, hi):
    return (MultiIndex(p) for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))


@dataclass(frozen=True)
class LaurentWindow:
    """c(v) = dim J(v)/J(v+1) on the box lo <= v <= hi."""

    r: int
    lo: MultiIndex
    hi: MultiIndex
    values: dict = field(compare=False)
    jet_degree: int = 0

    def c(self, v):
        return self.values[as_index(v, self.r)]


def _c_table(curve, lo, hi, n):
    one = MultiIndex.ones(curve.r)
    return {v: jet_subspace_dim(curve, v, n) - jet_subspace_dim(curve, v + one, n) for v in _box(lo, hi)}


def build_laurent_window(curve: CurveModel, lo, hi, n: int | None = None) -> LaurentWindow:
    """Tabulate c(v) on the box and check that every negative direction has stabilized.

    A single jet degree N >= max(hi) serves the whole box; the table is
    recomputed at N + 1 and must not change. Each lo_i must be negative,
    and the shell v_i = lo_i must match the shell v_i = lo_i - 1.
    """
    r = curve.r
    lo, hi = as_index(lo, r), as_index(hi, r)
    if not (lo.leq(MultiIndex.zeros(r)) and MultiIndex.zeros(r).leq(hi)):
        raise ValueError(f"window [{lo}, {hi}] must contain the origin")
    n = sufficient_jet_degree(hi) if n is None else n
    cap = precision_cap()
    while True:
        if n + 1 > cap:
            raise PrecisionError(f"jet degree {n + 1} exceeds cap {cap}", {"n": n, "cap": cap})
        table = _c_table(curve, lo, hi, n)
        if table == _c_table(curve, lo, hi, n + 1):
            break
        n += 1
    for v, c in table.items():
        if c < 0:
            raise ArithmeticError(f"negative c({tuple(v)}) = {c}")
    one = MultiIndex.ones(r)
    for i in range(r):
        if lo[i] > -1:
            raise MarginError(f"window has no negative shell along axis {i + 1}: lower lo")
        # the outermost shell must agree with one more shell beyond the window
        step = MultiIndex.unit(r, i)
        for v in _box(lo, hi):
            if v[i] == lo[i]:
                u = v - step
                beyond = jet_subspace_dim(curve, u, n) - jet_subspace_dim(curve, u + one, n)
                if table[v] != beyond:
                    raise MarginError(f"c not yet stable along axis {i + 1} at {tuple(v)}: widen lo")
    return LaurentWindow(r, lo, hi, table, n)


def p_prime(lw: LaurentWindow) -> IntPolynomial:
    """L * prod (t_i - 1), certified to vanish on the boundary shells of the window."""
    r = lw.r
    coeffs = {}
    shifts = [
        (MultiIndex(1 if i in s else 0 for i in range(r)), (-1) ** (r - len(s)))
        for k in range(r + 1)
        for s in itertools.combinations(range(r), k)
    ]
    lo1 = lw.lo + MultiIndex.ones(r)
    for w in _box(lo1, lw.hi):
        coeffs[w] = sum(sign * lw.values[w - s] for s, sign in shifts)
    for w, c in coeffs.items():
        if c and any(w[i] in (lo1[i], lw.hi[i]) for i in range(r)):
            raise MarginError(f"P' has coefficient {c} on the window boundary at {tuple(w)}")
    return IntPolynomial(r, coeffs)


def poincare_from_jets(lw: LaurentWindow):
    """P_C = P' / (t_1...t_r - 1) as a polynomial (r > 1), or the series sum c(v) t^v (r = 1)."""
    r = lw.r
    if r == 1:
        p_prime(lw)  # support certificate
        return TruncatedSeries(1, (lw.hi[0],), {v: c for v, c in lw.values.items() if v[0] >= 0})
    pp = p_prime(lw)
    den = IntPolynomial.monomial(r, MultiIndex.ones(r)) - 1
    return exact_divide(pp, den)


def x_series(curve: CurveModel, hi, n: int | None = None):
    """sum chi(P F_v) t^v over 0 <= v <= hi; a certified polynomial for r > 1."""
    r = curve.r
    hi = as_index(hi, r)
    n = sufficient_jet_degree(hi) if n is None else n
    coeffs = {v: fiber_report(curve, v, n).chi_pf for v in _box(MultiIndex.zeros(r), hi)}
    if r == 1:
        return TruncatedSeries(1, hi, coeffs)
    for v, c in coeffs.items():
        if c and any(v[i] == hi[i] for i in range(r)):
            raise MarginError(f"X_C has coefficient {c} on the window boundary at {tuple(v)}")
    return IntPolynomial(r, coeffs)


def euler_integral(curve: CurveModel, hi, mode: str = "multivariate", n: int | None = None):
    """Integral of t^{v(g)} (multivariate) or t^{|v(g)|} (diagonal) over P O with respect to chi.

    Each level set {v(g) = v} is cylindric over k-jets and fibres over
    P F_v with affine-space fibres, so the integral is the windowed sum of
    chi(P F_v) t^v.
    """
    xs = x_series(curve, hi, n)
    if mode == "multivariate":
        return xs
    if mode == "diagonal":
        return specialize_diagonal(xs)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Window sizing


def graph_window(graph: DualGraph) -> MultiIndex:
    """Upper window corner: total multiplicity at each branch's arrow vertex, plus 2."""
    table = solve_multiplicities(graph)
    return MultiIndex(table.total(graph.arrow_vertex(i)) + 2 for i in range(1, graph.r + 1))


def branch_conductor(curve: CurveModel, i: int) -> int:
    """Conductor of the semigroup of branch i, read off c(v) along that branch alone."""
    single = CurveModel((curve.branches[i],))
    mult = single.branches[0].order()
    run, v = 0, 0
    while run < mult:
        if c_of_v(single, (v,)):
            run += 1
        else:
            run = 0
        v += 1
        if v > precision_cap():
            raise MarginError("branch conductor not found below the precision cap")
    return v - mult


def curve_window(curve: CurveModel) -> MultiIndex:
    """Conductor vector kappa_i = c(C_i) + sum_j (C_i . C_j), plus 2."""
    out = []
    for i in range(curve.r):
        k = branch_conductor(curve, i)
        for j in range(curve.r):
            if j != i:
                k += intersection_multiplicity(curve.branches[i], curve.branches[j])
        out.append(k + 2)
    return MultiIndex(out)


# ---------------------------------------------------------------------------
# Cross-pipeline verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    window: list
    first_discrepancy: list | None = None
    lhs: str = ""
    rhs: str = ""
    error: str | None = None

    def to_dict(self):
        return {
            "name": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "window": self.window,
            "first_discrepancy": self.first_discrepancy,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "error": self.error,
        }


@dataclass
class VerificationReport:
    r: int
    lo: list
    hi: list
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "r": self.r,
            "window": {"lo": self.lo, "hi": self.hi},
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "values": self.values,
        }


def _compare(name, a, b, window):
    if isinstance(a, IntPolynomial) and isinstance(b, IntPolynomial):
        diff = a - b
        first = list(diff.support()[0]) if not diff.is_zero() else None
    else:
        first = a.first_discrepancy(b)
        first = list(first) if first is not None else None
    return CheckResult(name, first is None, list(window), first, a.to_text(), b.to_text())


def verify_curve(curve: CurveModel, graph: DualGraph, lo=None, hi=None, diagonal_window=DIAGONAL_WINDOW):
    """Compare the graph invariants with the jet-side invariants of a paired curve.

    Failures become report entries; nothing is raised for a mismatch.
    """
    r = curve.r
    if graph.r != r:
        rep = VerificationReport(r, [], [])
        rep.checks.append(
            CheckResult("branch_count", False, [], error=f"curve has {r} branches, graph {graph.r}")
        )
        return rep
    lo = as_index(lo if lo is not None else (-2,) * r, r)
    hi = as_index(hi if hi is not None else graph_window(graph), r)
    rep = VerificationReport(r, list(lo), list(hi))
    zeta = acampo_zeta(graph)
    try:
        lw = fit_laurent_window(curve, lo, hi)
        hi = lw.hi
        rep.hi = list(hi)
        p_jets = poincare_from_jets(lw)
        xs = x_series(curve, hi, lw.jet_degree)
    except SingCurveError as exc:
        rep.checks.append(CheckResult("jet_pipeline", False, list(hi), error=f"{type(exc).__name__}: {exc}"))
        return rep
    delta = alexander_polynomial(graph)
    rep.values = {"poincare": p_jets.to_text(), "euler": xs.to_text(), "zeta": zeta.to_text()}
    if r == 1:
        zs = zeta.expand(hi)
        rep.values["alexander"] = delta.to_text()
        rep.checks.append(_compare("poincare_equals_zeta", p_jets, zs, hi))
        rep.checks.append(_compare("euler_equals_poincare", xs, p_jets, hi))
        rep.checks.append(_compare("integral_diagonal_equals_zeta", euler_integral(curve, hi, "diagonal", lw.jet_degree), zs, hi))
    else:
        rep.values["alexander"] = delta.to_text()
        rep.checks.append(_compare("alexander_equals_poincare", delta, p_jets, hi))
        rep.checks.append(_compare("euler_equals_poincare", xs, p_jets, hi))
        rep.checks.append(_compare("alexander_equals_euler", delta, xs, hi))
        w = (diagonal_window,)
        zs = zeta.expand(w)
        rep.checks.append(_compare("alexander_diagonal_equals_zeta", specialize_diagonal(delta).to_series(w), zs, w))
        rep.checks.append(_compare("integral_diagonal_equals_zeta", specialize_diagonal(xs).to_series(w), zs, w))
    return rep


def fit_laurent_window(curve, lo, hi, attempts=4):
    """Build the Laurent window, widening it by (-1, +2) per axis on MarginError."""
    r = curve.r
    for _ in range(attempts):
        try:
            lw = build_laurent_window(curve, lo, hi)
            p_prime(lw)
            x_series(curve, hi, lw.jet_degree)
            return lw
        except MarginError:
            lo = as_index(lo, r) - MultiIndex.ones(r)
            hi = as_index(hi, r) + MultiIndex((2,) * r)
    return build_laurent_window(curve, lo, hi)
