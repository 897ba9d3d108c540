"""Exact integer arithmetic for multi-indices, truncated power series,
Laurent polynomials and formal products of the form prod (1 - t^m)^e.

Every pipeline in the package reduces its answer to one of these objects,
so comparisons between pipelines are exact coefficient comparisons.
Coefficients are Python ints throughout; nothing here ever rounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import singledispatch
from typing import Iterable, Mapping

from .errors import ArityError, DegenerateFactorError, NotDivisibleError

INFINITY = math.inf


class MultiIndex(tuple):
    """Exponent vector in Z^r; entries are ints or INFINITY.

    ``+`` and ``-`` act componentwise (not as tuple concatenation).
    Tuple ordering (lexicographic) is kept for sorting; the componentwise
    partial order is :meth:`leq`.
    """

    def __new__(cls, entries=()):
        if isinstance(entries, int):
            entries = (entries,)
        vals = []
        for e in entries:
            if e == INFINITY:
                vals.append(INFINITY)
            else:
                if e != int(e):
                    raise ValueError(f"non-integral exponent {e!r}")
                vals.append(int(e))
        if not vals:
            raise ArityError("a multi-index needs at least one entry")
        return super().__new__(cls, vals)

    @classmethod
    def zeros(cls, r):
        return cls((0,) * r)

    @classmethod
    def ones(cls, r):
        return cls((1,) * r)

    @classmethod
    def unit(cls, r, i):
        return cls(tuple(1 if j == i else 0 for j in range(r)))

    @property
    def r(self):
        return len(self)

    def is_finite(self):
        return all(e != INFINITY for e in self)

    def norm(self):
        """Sum of entries (INFINITY if any entry is infinite)."""
        return sum(self) if self.is_finite() else INFINITY

    def leq(self, other):
        _check_arity(self.r, len(other))
        return all(a <= b for a, b in zip(self, other))

    def __add__(self, other):
        other = MultiIndex(other)
        _check_arity(self.r, other.r)
        return MultiIndex(a + b for a, b in zip(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        other = MultiIndex(other)
        _check_arity(self.r, other.r)
        if not other.is_finite():
            raise ValueError("cannot subtract an infinite multi-index")
        return MultiIndex(a - b for a, b in zip(self, other))

    def __mul__(self, k):
        return MultiIndex(a * k if a != INFINITY else INFINITY for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        inner = ", ".join("inf" if e == INFINITY else str(e) for e in self)
        return f"MultiIndex({inner})"


def _check_arity(r1, r2):
    if r1 != r2:
        raise ArityError(f"arity mismatch: {r1} vs {r2}")


def as_index(v, r=None) -> MultiIndex:
    """Coerce an int or a sequence to a MultiIndex, checking arity if given."""
    mi = v if isinstance(v, MultiIndex) else MultiIndex(v)
    if r is not None:
        _check_arity(r, mi.r)
    return mi


def _box(lo, hi):
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def _var_names(r):
    return ["t"] if r == 1 else [f"t{i + 1}" for i in range(r)]


def _monomial_text(exp, names):
    parts = [f"{n}^{e}" for n, e in zip(names, exp) if e != 0]
    return "*".join(parts)


def _terms_text(terms: Mapping, r: int) -> str:
    if not terms:
        return "0"
    names = _var_names(r)
    out = []
    for exp in sorted(terms):
        mono = _monomial_text(exp, names)
        c = terms[exp]
        out.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(out)


# ---------------------------------------------------------------------------
# Truncated power series


class TruncatedSeries:
    """Power series with integer coefficients known on the box 0 <= v <= window.

    Coefficients outside the window are discarded at construction.
    Instances are treated as immutable.
    """

    __slots__ = ("r", "window", "_coeffs")

    def __init__(self, r: int, window, coeffs: Mapping | None = None):
        window = as_index(window, r)
        if not window.is_finite() or any(b < 0 for b in window):
            raise ValueError(f"window must be finite and non-negative, got {window}")
        self.r = r
        self.window = window
        clean = {}
        for k, c in (coeffs or {}).items():
            k = as_index(k, r)
            if c and k.is_finite() and all(0 <= a <= b for a, b in zip(k, window)):
                clean[k] = int(c)
        self._coeffs = clean

    @classmethod
    def one(cls, r, window):
        return cls(r, window, {MultiIndex.zeros(r): 1})

    @classmethod
    def from_exponents(cls, r, window, exponents: Iterable):
        """Characteristic series sum t^v over the given exponents."""
        coeffs = {}
        for v in exponents:
            v = as_index(v, r)
            coeffs[v] = coeffs.get(v, 0) + 1
        return cls(r, window, coeffs)

    def coeff(self, v) -> int:
        return self._coeffs.get(as_index(v, self.r), 0)

    def items(self):
        return sorted(self._coeffs.items())

    def support(self):
        return sorted(self._coeffs)

    def restrict(self, window) -> "TruncatedSeries":
        window = as_index(window, self.r)
        if not window.leq(self.window):
            raise ValueError(f"{window} is not a sub-window of {self.window}")
        return TruncatedSeries(self.r, window, self._coeffs)

    def common_window(self, other):
        _check_arity(self.r, other.r)
        return MultiIndex(min(a, b) for a, b in zip(self.window, other.window))

    def first_discrepancy(self, other):
        """Lex-first exponent in the common window where coefficients differ."""
        w = self.common_window(other)
        a, b = self.restrict(w)._coeffs, other.restrict(w)._coeffs
        bad = [k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0)]
        return min(bad) if bad else None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.r != other.r:
            return False
        return self.first_discrepancy(other) is None

    __hash__ = None

    def __add__(self, other):
        w = self.common_window(other)
        out = dict(self.restrict(w)._coeffs)
        for k, c in other.restrict(w)._coeffs.items():
            out[k] = out.get(k, 0) + c
        return TruncatedSeries(self.r, w, out)

    def __neg__(self):
        return TruncatedSeries(self.r, self.window, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return series_mul(self, other, self.common_window(other))

    def to_text(self) -> str:
        return _terms_text(self._coeffs, self.r)

    def __repr__(self):
        return f"TruncatedSeries(r={self.r}, window={tuple(self.window)}, {self.to_text()})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries, window) -> TruncatedSeries:
    """Cauchy product of two series, truncated to ``window``."""
    _check_arity(a.r, b.r)
    window = as_index(window, a.r)
    if not window.leq(a.common_window(b)):
        raise ValueError(f"window {window} exceeds the operands' windows")
    out: dict = {}
    bitems = b.items()
    for ka, ca in a.items():
        if not ka.leq(window):
            continue
        for kb, cb in bitems:
            k = ka + kb
            if k.leq(window):
                out[k] = out.get(k, 0) + ca * cb
    return TruncatedSeries(a.r, window, out)


# ---------------------------------------------------------------------------
# Laurent polynomials


class IntPolynomial:
    """Laurent polynomial in r variables with integer coefficients.

    ``terms`` maps finite exponent vectors (entries may be negative) to
    nonzero ints.
    """

    __slots__ = ("r", "_terms")

    def __init__(self, r: int, terms: Mapping | None = None):
        self.r = r
        clean = {}
        for k, c in (terms or {}).items():
            k = as_index(k, r)
            if not k.is_finite():
                # t^inf is the zero monomial
                continue
            c = int(c)
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        self._terms = clean

    @classmethod
    def constant(cls, r, c=1):
        return cls(r, {MultiIndex.zeros(r): c})

    @classmethod
    def monomial(cls, r, exp, c=1):
        return cls(r, {as_index(exp, r): c})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, v) -> int:
        return self._terms.get(as_index(v, self.r), 0)

    def is_zero(self):
        return not self._terms

    def support(self):
        return sorted(self._terms)

    def leading(self):
        """Lex-largest term as (exponent, coefficient)."""
        k = max(self._terms)
        return k, self._terms[k]

    def trailing(self):
        k = min(self._terms)
        return k, self._terms[k]

    def min_exponents(self):
        return MultiIndex(min(k[i] for k in self._terms) for i in range(self.r))

    def max_exponents(self):
        return MultiIndex(max(k[i] for k in self._terms) for i in range(self.r))

    def is_polynomial(self):
        return all(e >= 0 for k in self._terms for e in k)

    def _coerce(self, other):
        if isinstance(other, int):
            return IntPolynomial.constant(self.r, other)
        _check_arity(self.r, other.r)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return IntPolynomial(self.r, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self.r, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return IntPolynomial(self.r, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = IntPolynomial.constant(self.r)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(self.r, other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.r == other.r and self._terms == other._terms

    def __hash__(self):
        return hash((self.r, frozenset(self._terms.items())))

    def to_series(self, window) -> TruncatedSeries:
        if not self.is_polynomial():
            raise ValueError("Laurent polynomial with negative exponents has no series expansion")
        return TruncatedSeries(self.r, window, self._terms)

    def to_text(self) -> str:
        return _terms_text(self._terms, self.r)

    def __repr__(self):
        return f"IntPolynomial(r={self.r}, {self.to_text()})"


def exact_divide(num: IntPolynomial, den: IntPolynomial) -> IntPolynomial:
    """Quotient q with q * den == num, or NotDivisibleError.

    Long division on lex-leading terms. In the Laurent ring every monomial
    divides every other, so termination needs a bound: Newton polytopes add
    under multiplication, so every exponent of an exact quotient lies in the
    box [min(num) - min(den), max(num) - max(den)], and its lex-smallest
    exponent is trailing(num) - trailing(den).
    """
    _check_arity(num.r, den.r)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return IntPolynomial(num.r)
    lead_exp, lead_c = den.leading()
    floor = num.trailing()[0] - den.trailing()[0]
    box_lo = num.min_exponents() - den.min_exponents()
    box_hi = num.max_exponents() - den.max_exponents()
    rem = num
    quotient: dict = {}
    while not rem.is_zero():
        rexp, rc = rem.leading()
        qexp = rexp - lead_exp
        if rc % lead_c or qexp < floor or not (box_lo.leq(qexp) and qexp.leq(box_hi)):
            raise NotDivisibleError(f"{num.to_text()} is not divisible by {den.to_text()}")
        qc = rc // lead_c
        quotient[qexp] = qc
        rem = rem - IntPolynomial.monomial(num.r, qexp, qc) * den
    return IntPolynomial(num.r, quotient)


# ---------------------------------------------------------------------------
# Product forms


@dataclass(frozen=True)
class ProductForm:
    """coefficient * t^shift * prod_k (1 - t^{m_k})^{e_k}.

    Factors with equal m are merged and zero exponents dropped on
    construction; factor order is canonical (sorted by m). Two product
    forms are compared only through expansion.
    """

    r: int
    factors: tuple = ()
    coefficient: int = 1
    shift: MultiIndex | None = None

    def __post_init__(self):
        merged: dict = {}
        for m, e in self.factors:
            m = as_index(m, self.r)
            merged[m] = merged.get(m, 0) + int(e)
        object.__setattr__(
            self, "factors", tuple(sorted((m, e) for m, e in merged.items() if e != 0))
        )
        shift = MultiIndex.zeros(self.r) if self.shift is None else as_index(self.shift, self.r)
        object.__setattr__(self, "shift", shift)

    def __mul__(self, other: "ProductForm") -> "ProductForm":
        _check_arity(self.r, other.r)
        return ProductForm(
            self.r,
            self.factors + other.factors,
            self.coefficient * other.coefficient,
            self.shift + other.shift,
        )

    def numerator(self):
        return [(m, e) for m, e in self.factors if e > 0]

    def denominator(self):
        return [(m, -e) for m, e in self.factors if e < 0]

    def expand(self, window) -> TruncatedSeries:
        return expand_product_form(self, window)

    def to_text(self) -> str:
        def fmt(m):
            return "[" + ", ".join(str(x) for x in m) + "]"

        head = f"[{self.coefficient}, {fmt(self.shift)}] * PROD"
        body = " ".join(f"(1 - t^{fmt(m)})^{e}" for m, e in self.factors)
        return f"{head} {body}" if body else head


def expand_product_form(pf: ProductForm, window) -> TruncatedSeries:
    """Expand a product form to the box window.

    (1 - t^m)^{-1} is applied as a running sum along m, which is exact
    because every factor has m >= 0, m != 0.
    """
    r = pf.r
    window = as_index(window, r)
    for m, _ in pf.factors:
        if not m.is_finite() or any(a < 0 for a in m):
            raise DegenerateFactorError(f"factor exponent {m} must be finite and non-negative")
        if all(a == 0 for a in m):
            raise DegenerateFactorError("factor (1 - t^0) is degenerate")
    points = sorted(_box(MultiIndex.zeros(r), window))
    dense = {p: 0 for p in points}
    if pf.shift.is_finite() and pf.shift in dense:
        dense[pf.shift] = pf.coefficient
    elif pf.shift.is_finite() and any(a < 0 for a in pf.shift):
        raise ValueError("negative prefactor shift has no power-series expansion")
    for m, e in pf.factors:
        for _ in range(abs(e)):
            if e > 0:
                for p in reversed(points):
                    q = tuple(a - b for a, b in zip(p, m))
                    if all(a >= 0 for a in q):
                        dense[p] -= dense[q]
            else:
                for p in points:
                    q = tuple(a - b for a, b in zip(p, m))
                    if all(a >= 0 for a in q):
                        dense[p] += dense[q]
    return TruncatedSeries(r, window, dense)


def symmetric_power_series(c: int, bound: int) -> TruncatedSeries:
    """sum_k chi(S^k X) t^k for a space X with chi(X) = c, i.e. (1 - t)^{-c}.

    The k-th coefficient is the generalised binomial c(c+1)...(c+k-1)/k!,
    which also covers c <= 0.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    coeffs = {}
    term = 1
    for k in range(bound + 1):
        coeffs[(k,)] = term
        term = term * (c + k) // (k + 1)
    return TruncatedSeries(1, (bound,), coeffs)


@singledispatch
def specialize_diagonal(obj):
    """Substitute t_i := t for every variable."""
    raise TypeError(f"cannot specialize {type(obj).__name__}")


@specialize_diagonal.register
def _(obj: IntPolynomial):
    out: dict = {}
    for k, c in obj.items():
        out[(k.norm(),)] = out.get((k.norm(),), 0) + c
    return IntPolynomial(1, out)


@specialize_diagonal.register
def _(obj: ProductForm):
    return ProductForm(
        1,
        tuple(((m.norm(),), e) for m, e in obj.factors),
        obj.coefficient,
        (obj.shift.norm(),),
    )


@specialize_diagonal.register
def _(obj: TruncatedSeries):
    # only total degrees up to min(window) are complete after specialization
    bound = min(obj.window)
    out: dict = {}
    for k, c in obj.items():
        d = k.norm()
        if d <= bound:
            out[(d,)] = out.get((d,), 0) + c
    return TruncatedSeries(1, (bound,), out)
