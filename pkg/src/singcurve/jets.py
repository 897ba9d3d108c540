"""Valuations of germs along parameterized branches and jet-space linear algebra.

For a multi-index v, J(v) is the space of germs g with v_i(g) >= v_i on
every branch. Modulo m^{N+1} it is cut out by the linear conditions
"coefficient of tau^e in g(phi_i(tau)) vanishes for e < v_i", so its
dimension is (number of monomials of degree <= N) minus a rank.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import FixtureError, PrecisionError
from .series import INFINITY, MultiIndex, as_index

DEFAULT_PRECISION_CAP = 160


def precision_cap() -> int:
    """Upper bound for jet degrees and truncation orders in the precision ladder."""
    raw = os.environ.get("SINGCURVE_PRECISION_CAP")
    return int(raw) if raw else DEFAULT_PRECISION_CAP


def _rational(c):
    if isinstance(c, (list, tuple)):
        return Fraction(int(c[0]), int(c[1]))
    if isinstance(c, float):
        raise FixtureError(f"floating-point coefficient {c!r}; use an int or 'p/q'")
    return Fraction(c)


def _poly_mul(a, b, order):
    out = [Fraction(0)] * order
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: order - i]):
                if y:
                    out[i + j] += x * y
    return out


@dataclass(frozen=True)
class BranchParam:
    """tau -> (x(tau), y(tau)) with exact rational coefficients.

    ``x`` and ``y`` are sorted tuples of (exponent, coefficient).
    ``trunc_order`` None means the parameterization is an exact polynomial;
    otherwise coefficients from tau^M on are unknown and queries at order
    M/2 or beyond raise PrecisionError.
    """

    x: tuple
    y: tuple
    trunc_order: int | None = None

    def __post_init__(self):
        for name in ("x", "y"):
            terms: dict = {}
            for e, c in getattr(self, name):
                e, c = int(e), _rational(c)
                if e < 0:
                    raise FixtureError("parameterization exponents must be non-negative")
                terms[e] = terms.get(e, 0) + c
            object.__setattr__(self, name, tuple(sorted((e, c) for e, c in terms.items() if c)))
        if self.order() is None:
            raise FixtureError("branch parameterization is identically zero")
        if any(e == 0 for e, _ in self.x + self.y):
            raise FixtureError("branch must pass through the origin (no constant terms)")

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(map(tuple, d.get("x", []))), tuple(map(tuple, d.get("y", []))), d.get("trunc_order"))

    def to_dict(self):
        def enc(c):
            return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        out = {"x": [[e, enc(c)] for e, c in self.x], "y": [[e, enc(c)] for e, c in self.y]}
        if self.trunc_order is not None:
            out["trunc_order"] = self.trunc_order
        return out

    def order(self):
        exps = [e for e, _ in self.x + self.y]
        return min(exps) if exps else None

    def degree(self):
        return max(e for e, _ in self.x + self.y)

    def dense(self, coord, order):
        out = [Fraction(0)] * order
        for e, c in getattr(self, coord):
            if e < order:
                out[e] = c
        return out

    def check_order(self, order):
        """Refuse to read coefficients the truncation does not certify."""
        if self.trunc_order is not None and 2 * order > self.trunc_order:
            raise PrecisionError(
                f"query needs tau-order {order} but truncation order is {self.trunc_order}",
                {"needed": order, "trunc_order": self.trunc_order},
            )


@lru_cache(maxsize=None)
def _power(branch: BranchParam, coord: str, k: int, order: int):
    if k == 0:
        return tuple([Fraction(1)] + [Fraction(0)] * (order - 1))
    base = branch.dense(coord, order)
    return tuple(_poly_mul(list(_power(branch, coord, k - 1, order)), base, order))


@lru_cache(maxsize=None)
def monomial_series(branch: BranchParam, i: int, j: int, order: int):
    """First ``order`` tau-coefficients of x^i y^j along the branch."""
    return tuple(_poly_mul(list(_power(branch, "x", i, order)), list(_power(branch, "y", j, order)), order))


@dataclass(frozen=True)
class Germ:
    """Polynomial in x, y with rational coefficients: {(i, j): c}."""

    coeffs: tuple  # sorted ((i, j), c) with c != 0

    def __init__(self, coeffs=None):
        terms: dict = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for (i, j), c in items:
            terms[(int(i), int(j))] = terms.get((int(i), int(j)), 0) + _rational(c)
        object.__setattr__(self, "coeffs", tuple(sorted((k, c) for k, c in terms.items() if c)))

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    def as_dict(self):
        return dict(self.coeffs)

    def degree(self):
        return max((i + j for (i, j), _ in self.coeffs), default=-1)

    def min_degree(self):
        return min((i + j for (i, j), _ in self.coeffs), default=None)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        d = self.as_dict()
        for k, c in other.coeffs:
            d[k] = d.get(k, 0) + c
        return Germ(d)

    def __neg__(self):
        return Germ({k: -c for k, c in self.coeffs})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Germ({k: c * other for k, c in self.coeffs})
        d: dict = {}
        for (i1, j1), c1 in self.coeffs:
            for (i2, j2), c2 in other.coeffs:
                k = (i1 + i2, j1 + j2)
                d[k] = d.get(k, 0) + c1 * c2
        return Germ(d)

    __rmul__ = __mul__


def compose(g: Germ, b: BranchParam, order: int):
    out = [Fraction(0)] * order
    for (i, j), c in g.coeffs:
        for e, m in enumerate(monomial_series(b, i, j, order)):
            if m:
                out[e] += c * m
    return out


def order_and_leading(g: Germ, b: BranchParam):
    """(v, a) with g(phi(tau)) = a tau^v + ...; (INFINITY, None) if g vanishes on the branch."""
    if b.trunc_order is None:
        order = max(g.degree(), 0) * b.degree() + 1
    else:
        order = b.trunc_order
    series = compose(g, b, order)
    first = next((e for e, c in enumerate(series) if c), None)
    if first is None:
        return INFINITY, None
    if b.trunc_order is not None:
        b.check_order(first + 1)
    return first, series[first]


def valuation(g: Germ, curve: "CurveModel") -> MultiIndex:
    return MultiIndex(order_and_leading(g, b)[0] for b in curve.branches)


def leading_coefficients(g: Germ, curve: "CurveModel"):
    return tuple(order_and_leading(g, b)[1] for b in curve.branches)


# ---------------------------------------------------------------------------
# Curves


def _monomials(n):
    return [(i, d - i) for d in range(n + 1) for i in range(d, -1, -1)]


def implicit_equation(b: BranchParam, max_degree: int = 12) -> Germ | None:
    """Lowest-degree nonzero polynomial vanishing on the branch (to the certified order)."""
    for d in range(1, max_degree + 1):
        mons = _monomials(d)
        if b.trunc_order is None:
            order = d * b.degree() + 1
        else:
            order = b.trunc_order // 2
        cols = [monomial_series(b, i, j, order) for i, j in mons]
        rows = [[col[e] for col in cols] for e in range(order)]
        basis = linalg.nullspace(rows, len(mons))
        if basis:
            return Germ({m: c for m, c in zip(mons, basis[0]) if c})
    return None


@dataclass(frozen=True)
class CurveModel:
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise FixtureError("a curve needs at least one branch")
        for i, j in itertools.combinations(range(self.r), 2):
            mult = intersection_multiplicity(self.branches[i], self.branches[j])
            if mult == INFINITY:
                raise FixtureError(f"branches {i + 1} and {j + 1} coincide")

    @property
    def r(self):
        return len(self.branches)

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(tuple(BranchParam.from_dict(b) for b in d["branches"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"bad curve record: {exc}") from exc

    def to_dict(self):
        return {"branches": [b.to_dict() for b in self.branches]}


def intersection_multiplicity(bi: BranchParam, bj: BranchParam):
    """(C_i . C_j) as the order of the equation of C_j along C_i."""
    f = implicit_equation(bj)
    if f is None:
        raise PrecisionError("no implicit equation found for branch")
    return order_and_leading(f, bi)[0]


# ---------------------------------------------------------------------------
# Jet spaces


@lru_cache(maxsize=None)
def _constraint_rows(branch: BranchParam, n: int, count: int):
    """Rows 'coefficient of tau^e vanishes', e < count, over monomials of degree <= n."""
    if count <= 0:
        return ()
    branch.check_order(count)
    cols = [monomial_series(branch, i, j, count) for i, j in _monomials(n)]
    return tuple(tuple(col[e] for col in cols) for e in range(count))


@lru_cache(maxsize=None)
def _jet_dim(curve: CurveModel, counts: tuple, n: int) -> int:
    rows = []
    for b, k in zip(curve.branches, counts):
        rows.extend(_constraint_rows(b, n, k))
    return len(_monomials(n)) - linalg.rank(rows)


def jet_subspace_dim(curve: CurveModel, v, n: int) -> int:
    """dim {g : deg g <= n, v_i(g) >= v_i for all i}; non-positive v_i impose nothing."""
    v = as_index(v, curve.r)
    if not v.is_finite():
        raise ValueError("jet_subspace_dim needs a finite multi-index")
    if n < 0:
        raise ValueError("jet degree must be non-negative")
    return _jet_dim(curve, tuple(max(a, 0) for a in v), n)


def sufficient_jet_degree(v) -> int:
    # m^{N+1} lies in J(v + 1) once N >= max v_i, since every branch has order >= 1
    return max(max(v), 0) + 1


def c_of_v(curve: CurveModel, v, n: int | None = None) -> int:
    """dim J(v)/J(v+1), confirmed stable between jet degrees N and N+1."""
    v = as_index(v, curve.r)
    n = sufficient_jet_degree(v) if n is None else n
    one = MultiIndex.ones(curve.r)
    cap = precision_cap()
    prev = None
    while n <= cap:
        cur = jet_subspace_dim(curve, v, n) - jet_subspace_dim(curve, v + one, n)
        if cur == prev:
            return cur
        prev = cur
        n += 1
    raise PrecisionError(f"c({tuple(v)}) did not stabilize below jet degree {cap}", {"cap": cap, "v": tuple(v)})


@dataclass(frozen=True)
class FiberReport:
    v: MultiIndex
    dims: dict  # frozenset of branch indices (1-based) -> dimension
    chi_pf: int
    cv: int


def fiber_report(curve: CurveModel, v, n: int | None = None) -> FiberReport:
    """Dimensions of Im j_v cut by coordinate hyperplanes, and chi of its projectivized torus part.

    chi(P(V minus hyperplanes)) = sum_I (-1)^|I| dim(V & H_I), using
    chi(P(C^k)) = k.
    """
    v = as_index(v, curve.r)
    if not v.is_finite() or any(a < 0 for a in v):
        raise ValueError("fiber_report needs a finite non-negative multi-index")
    r = curve.r
    n = sufficient_jet_degree(v) if n is None else n
    if n > precision_cap():
        raise PrecisionError(f"jet degree {n} exceeds cap {precision_cap()}", {"n": n})
    top = jet_subspace_dim(curve, v + MultiIndex.ones(r), n)
    dims = {}
    chi = 0
    for size in range(r + 1):
        for subset in itertools.combinations(range(r), size):
            shifted = MultiIndex(a + (1 if i in subset else 0) for i, a in enumerate(v))
            d = jet_subspace_dim(curve, shifted, n) - top
            dims[frozenset(i + 1 for i in subset)] = d
            chi += (-1) ** size * d
    return FiberReport(v, dims, chi, dims[frozenset()])


def random_germ(rng: random.Random, min_degree: int, max_degree: int, terms: int = 4, coeff: int = 5) -> Germ:
    mons = [(i, d - i) for d in range(min_degree, max_degree + 1) for i in range(d + 1)]
    picked = rng.sample(mons, min(terms, len(mons)))
    return Germ({m: rng.choice([c for c in range(-coeff, coeff + 1) if c]) for m in picked})


def jet_determinacy_check(curve: CurveModel, g: Germ, v=None, samples: int = 100, seed: int = 0):
    """Perturb g by random h in m^k, k = 1 + max finite v_i; valuations and leading coefficients must survive.

    Returns (ok, counterexample) where counterexample is the first failing h.
    Branches on which g vanishes identically are not compared.
    """
    base = [order_and_leading(g, b) for b in curve.branches]
    actual = MultiIndex(o for o, _ in base)
    if v is not None and as_index(v, curve.r) != actual:
        raise ValueError(f"v(g) is {actual}, not {v}")
    finite = [i for i, (o, _) in enumerate(base) if o != INFINITY]
    if not finite:
        return True, None
    k = 1 + max(base[i][0] for i in finite)
    rng = random.Random(seed)
    for _ in range(samples):
        h = random_germ(rng, k, k + 2)
        pert = g + h
        for i in finite:
            if order_and_leading(pert, curve.branches[i]) != base[i]:
                return False, h
    return True, None
