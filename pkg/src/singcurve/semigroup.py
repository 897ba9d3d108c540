"""Semigroups of values of plane branches and semigroups of pole orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .errors import InvalidCharExponents, NotCofinite
from .series import IntPolynomial, ProductForm, TruncatedSeries


@dataclass(frozen=True)
class CharExponents:
    """Characteristic (Puiseux) exponents (beta_0, ..., beta_s), beta_0 the multiplicity."""

    beta: tuple

    def __post_init__(self):
        beta = tuple(int(b) for b in self.beta)
        object.__setattr__(self, "beta", beta)
        if not beta or beta[0] < 1:
            raise InvalidCharExponents(f"need a positive multiplicity, got {beta}")
        if any(b <= a for a, b in zip(beta, beta[1:])):
            raise InvalidCharExponents(f"exponents must strictly increase: {beta}")
        e = self.gcd_sequence()
        if any(b >= a for a, b in zip(e, e[1:])):
            raise InvalidCharExponents(f"gcd sequence {e} does not strictly decrease")
        if e[-1] != 1:
            raise InvalidCharExponents(f"gcd of {beta} is {e[-1]}, not 1")

    @property
    def s(self):
        """Number of Puiseux pairs."""
        return len(self.beta) - 1

    def gcd_sequence(self):
        out, g = [], 0
        for b in self.beta:
            g = gcd(g, b)
            out.append(g)
        return tuple(out)


@dataclass(frozen=True)
class BranchSemigroupData:
    """Generators beta-bar, star multiplicities alpha-bar = (n_j + 1) beta-bar_j."""

    gens: tuple
    star: tuple
    n: tuple
    conductor: int
    char_exponents: CharExponents | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SemigroupAtInfinity:
    delta: tuple
    conductor: int


@dataclass(frozen=True)
class RationalForm:
    """P(t) = Q(t) + t^c / (1 - t), Q the members below the conductor c."""

    below_conductor: IntPolynomial
    conductor: int

    def numerator(self) -> IntPolynomial:
        """N(t) with P(t) = N(t) / (1 - t)."""
        one_minus_t = IntPolynomial(1, {(0,): 1, (1,): -1})
        return self.below_conductor * one_minus_t + IntPolynomial.monomial(1, (self.conductor,))

    def expand(self, bound) -> TruncatedSeries:
        coeffs = dict(self.below_conductor.terms)
        for i in range(self.conductor, bound + 1):
            coeffs[(i,)] = coeffs.get((i,), 0) + 1
        return TruncatedSeries(1, (bound,), coeffs)

    def to_text(self):
        return f"({self.below_conductor.to_text()}) + t^{self.conductor}/(1 - t)"


def _check_gens(gens):
    gens = tuple(int(g) for g in gens)
    if not gens or any(g < 1 for g in gens):
        raise NotCofinite(f"generators must be positive integers: {gens}")
    if reduce(gcd, gens) != 1:
        raise NotCofinite(f"gcd{gens} != 1, the semigroup is not cofinite")
    return gens


def _membership(gens, bound):
    member = [False] * (bound + 1)
    member[0] = True
    for v in range(1, bound + 1):
        member[v] = any(g <= v and member[v - g] for g in gens)
    return member


def enumerate_semigroup(gens, bound: int):
    """Members of <gens> up to ``bound`` and the certified conductor.

    The bound is extended internally until a run of max(gens) consecutive
    members certifies the conductor; the returned list still stops at
    ``bound``.
    """
    gens = _check_gens(gens)
    width = max(gens)
    limit = max(bound, 2 * width)
    while True:
        member = _membership(gens, limit + width)
        run_start, run = None, 0
        for v, ok in enumerate(member):
            if ok:
                if run == 0:
                    run_start = v
                run += 1
                if run >= width + 1:
                    break
            else:
                run = 0
        if run >= width + 1:
            conductor = run_start
            break
        limit *= 2
    elements = [v for v in range(bound + 1) if v >= conductor or member[v]]
    return elements, conductor


def gaps(gens):
    _, c = enumerate_semigroup(gens, 0)
    member = _membership(tuple(gens), c)
    return [v for v in range(c) if not member[v]]


def branch_data_from_char_exponents(ce) -> BranchSemigroupData:
    if not isinstance(ce, CharExponents):
        ce = CharExponents(tuple(ce))
    beta, e = ce.beta, ce.gcd_sequence()
    gens = [beta[0]]
    if ce.s >= 1:
        gens.append(beta[1])
    for j in range(1, ce.s):
        gens.append((e[j - 1] // e[j]) * gens[j] + beta[j + 1] - beta[j])
    n = tuple(e[j - 1] // e[j] - 1 for j in range(1, ce.s + 1))
    star = tuple((n[j - 1] + 1) * gens[j] for j in range(1, ce.s + 1))
    _, conductor = enumerate_semigroup(gens, 0)
    data = BranchSemigroupData(tuple(gens), star, n, conductor, ce)
    _verify_unique_representation(data)
    return data


def _representations(v, data):
    """All (k_0, ..., k_s) with k_0 >= 0, 0 <= k_j <= n_j summing to v."""
    gens, n = data.gens, data.n
    out = []

    def rec(j, rest, acc):
        if j == 0:
            if rest % gens[0] == 0:
                out.append((rest // gens[0],) + tuple(reversed(acc)))
            return
        for k in range(n[j - 1] + 1):
            if k * gens[j] > rest:
                break
            rec(j - 1, rest - k * gens[j], acc + [k])

    rec(len(gens) - 1, v, [])
    return out


def _verify_unique_representation(data):
    member = _membership(data.gens, data.conductor + max(data.gens))
    for v in range(len(member)):
        reps = _representations(v, data)
        if len(reps) != (1 if member[v] else 0):
            raise InvalidCharExponents(
                f"unique representation fails at v={v}: {reps} (gens {data.gens}, n {data.n})"
            )


def unique_representation(v: int, data: BranchSemigroupData):
    """(k_0, ..., k_s) with v = sum k_j gens_j, 0 <= k_j <= n_j for j >= 1; None if v is a gap."""
    if v < 0:
        raise ValueError("v must be non-negative")
    reps = _representations(v, data)
    return reps[0] if reps else None


def poincare_closed_form(data: BranchSemigroupData) -> ProductForm:
    """prod_j (1 - t^{alpha_j}) / prod_j (1 - t^{beta_j})."""
    factors = [((a,), 1) for a in data.star] + [((b,), -1) for b in data.gens]
    return ProductForm(1, tuple(factors))


def semigroup_series(gens, bound: int) -> TruncatedSeries:
    elements, _ = enumerate_semigroup(gens, bound)
    return TruncatedSeries.from_exponents(1, (bound,), elements)


def semigroup_at_infinity(delta) -> SemigroupAtInfinity:
    delta = _check_gens(delta)
    _, c = enumerate_semigroup(delta, 0)
    return SemigroupAtInfinity(delta, c)


def free_product_form(delta) -> ProductForm | None:
    """Closed form when <delta> is free: n_j delta_j in <delta_0..delta_{j-1}>, n_j = e_{j-1}/e_j."""
    e = []
    g = 0
    for d in delta:
        g = gcd(g, d)
        e.append(g)
    factors = [((delta[0],), -1)]
    for j in range(1, len(delta)):
        nj = e[j - 1] // e[j]
        if nj == 1:
            return None
        prev = delta[:j]
        target = nj * delta[j]
        # membership in a numerical semigroup scaled by e_{j-1}
        scaled = [d // e[j - 1] for d in prev]
        if target % e[j - 1] or not _membership(tuple(scaled), target // e[j - 1])[-1]:
            return None
        factors += [((target,), 1), ((delta[j],), -1)]
    return ProductForm(1, tuple(factors))


def poincare_at_infinity(gamma: SemigroupAtInfinity, window: int):
    """Series of Gamma to ``window``, its rational form, and the free product form (or None)."""
    elements, c = enumerate_semigroup(gamma.delta, max(window, gamma.conductor))
    below = IntPolynomial(1, {(v,): 1 for v in elements if v < c})
    series = TruncatedSeries.from_exponents(1, (window,), [v for v in elements if v <= window])
    return series, RationalForm(below, c), free_product_form(gamma.delta)
