"""Dual graphs of embedded resolutions of plane curve germs.

A graph is a weighted tree: vertices are exceptional curves E_sigma with
their self-intersection numbers, edges are intersection points, and arrows
mark where the strict transforms of the branches meet the divisor.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import MalformedGraph, NonPolynomialError, NotDivisibleError, SynthesisError
from .semigroup import BranchSemigroupData, CharExponents, branch_data_from_char_exponents
from .series import IntPolynomial, MultiIndex, ProductForm, exact_divide


@dataclass(frozen=True)
class DualGraph:
    r: int
    vertices: tuple  # ((id, self_int), ...) in insertion order
    edges: tuple  # ((a, b), ...) with a < b, sorted
    arrows: tuple  # ((vertex, branch), ...) sorted by branch

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((int(v), int(s)) for v, s in self.vertices))
        object.__setattr__(
            self, "edges", tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.edges))
        )
        object.__setattr__(
            self, "arrows", tuple(sorted(((int(v), int(b)) for v, b in self.arrows), key=lambda x: x[1]))
        )
        self._validate()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dict(cls, d) -> "DualGraph":
        try:
            return cls(
                r=int(d["r"]),
                vertices=tuple((v["id"], v["self_int"]) for v in d["vertices"]),
                edges=tuple(tuple(e) for e in d.get("edges", [])),
                arrows=tuple((a["vertex"], a["branch"]) for a in d.get("arrows", [])),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedGraph(f"bad graph record: {exc}") from exc

    def to_dict(self):
        return {
            "r": self.r,
            "vertices": [{"id": v, "self_int": s} for v, s in self.vertices],
            "edges": [list(e) for e in self.edges],
            "arrows": [{"vertex": v, "branch": b} for v, b in self.arrows],
        }

    # -- queries ----------------------------------------------------------

    @property
    def ids(self):
        return [v for v, _ in self.vertices]

    def self_int(self, v):
        return dict(self.vertices)[v]

    def neighbors(self, v):
        return sorted([b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v])

    def degree(self, v):
        return len(self.neighbors(v))

    def arrows_at(self, v):
        return [b for w, b in self.arrows if w == v]

    def arrow_vertex(self, branch):
        return next(v for v, b in self.arrows if b == branch)

    def intersection_matrix(self):
        ids = self.ids
        pos = {v: i for i, v in enumerate(ids)}
        a = [[0] * len(ids) for _ in ids]
        for v, s in self.vertices:
            a[pos[v]][pos[v]] = s
        for x, y in self.edges:
            a[pos[x]][pos[y]] = a[pos[y]][pos[x]] = 1
        return a

    def _validate(self):
        ids = self.ids
        if not ids:
            raise MalformedGraph("graph has no vertices")
        if len(set(ids)) != len(ids):
            raise MalformedGraph("duplicate vertex ids")
        idset = set(ids)
        for a, b in self.edges:
            if a not in idset or b not in idset or a == b:
                raise MalformedGraph(f"bad edge {(a, b)}")
        if len(set(self.edges)) != len(self.edges):
            raise MalformedGraph("duplicate edges")
        if len(self.edges) != len(ids) - 1:
            raise MalformedGraph(f"{len(ids)} vertices but {len(self.edges)} edges: not a tree")
        seen, stack = {ids[0]}, [ids[0]]
        adj = defaultdict(list)
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != idset:
            raise MalformedGraph("graph is not connected")
        for v, b in self.arrows:
            if v not in idset:
                raise MalformedGraph(f"arrow on unknown vertex {v}")
        labels = sorted(b for _, b in self.arrows)
        if labels != list(range(1, self.r + 1)):
            raise MalformedGraph(f"arrow labels {labels} do not match branches 1..{self.r}")
        minors = linalg.leading_minors(self.intersection_matrix())
        for k, m in enumerate(minors, start=1):
            if m == 0 or (m > 0) != (k % 2 == 0):
                raise MalformedGraph(f"intersection matrix not negative definite (minor {k} = {m})", row=k)


@dataclass(frozen=True)
class MultiplicityTable:
    """m_i^sigma for every vertex sigma and branch i."""

    r: int
    values: dict  # vertex -> tuple of r ints

    def vector(self, v) -> MultiIndex:
        return MultiIndex(self.values[v])

    def total(self, v) -> int:
        return sum(self.values[v])


def solve_multiplicities(g: DualGraph) -> MultiplicityTable:
    """Solve A m^(i) = -(arrow incidence of branch i) for each branch, exactly."""
    if g.r < 1:
        raise MalformedGraph("a graph without arrows has no multiplicities")
    ids = g.ids
    a = g.intersection_matrix()
    columns = []
    for branch in range(1, g.r + 1):
        rhs = [-1 if v == g.arrow_vertex(branch) else 0 for v in ids]
        sol = linalg.solve(a, rhs)
        for i, x in enumerate(sol):
            if x.denominator != 1 or x <= 0:
                raise MalformedGraph(
                    f"multiplicity of branch {branch} on vertex {ids[i]} is {x}", row=ids[i]
                )
        sol = [int(x) for x in sol]
        # residual certificate
        for i, row in enumerate(a):
            res = sum(c * m for c, m in zip(row, sol)) - rhs[i]
            if res:
                raise MalformedGraph(f"nonzero residual {res} at vertex {ids[i]}", row=ids[i])
        columns.append(sol)
    return MultiplicityTable(g.r, {v: tuple(col[i] for col in columns) for i, v in enumerate(ids)})


def linear_system_rows(g: DualGraph, table: MultiplicityTable):
    """Row-wise residuals A m^(i) + e_arrow(i); all zero for a consistent table."""
    out = {}
    for v in g.ids:
        res = []
        for i in range(g.r):
            s = g.self_int(v) * table.values[v][i]
            s += sum(table.values[w][i] for w in g.neighbors(v))
            s += 1 if g.arrow_vertex(i + 1) == v else 0
            res.append(s)
        out[v] = tuple(res)
    return out


def euler_smooth_parts(g: DualGraph) -> dict:
    """chi of E_sigma minus its intersection points with the rest of the total transform."""
    return {v: 2 - g.degree(v) - len(g.arrows_at(v)) for v in g.ids}


def essential_points(g: DualGraph) -> dict:
    """Number of intersection points on E_sigma whose side of the tree carries an arrow."""
    out = {}
    for v in g.ids:
        count = len(g.arrows_at(v))
        for w in g.neighbors(v):
            if _side_has_arrow(g, w, v):
                count += 1
        out[v] = count
    return out


def _side_has_arrow(g, start, blocked):
    seen, stack = {blocked, start}, [start]
    while stack:
        x = stack.pop()
        if g.arrows_at(x):
            return True
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def acampo_zeta(g: DualGraph) -> ProductForm:
    """Monodromy zeta function prod (1 - t^{m^sigma})^{-chi}, m^sigma the total multiplicity."""
    table = solve_multiplicities(g)
    chi = euler_smooth_parts(g)
    return ProductForm(1, tuple(((table.total(v),), -chi[v]) for v in g.ids if chi[v]))


def alexander_product(g: DualGraph) -> ProductForm:
    table = solve_multiplicities(g)
    chi = euler_smooth_parts(g)
    return ProductForm(g.r, tuple((table.vector(v), -chi[v]) for v in g.ids if chi[v]))


def alexander_polynomial(g: DualGraph):
    """Multivariable Alexander polynomial of the link (r > 1).

    For r = 1 the product is Delta(t)/(1 - t) and is returned as a
    ProductForm without expansion.
    """
    pf = alexander_product(g)
    if g.r == 1:
        return pf
    r = g.r
    one = IntPolynomial.constant(r)
    poly = one
    for m, e in pf.numerator():
        poly = poly * (one - IntPolynomial.monomial(r, m)) ** e
    for m, e in pf.denominator():
        for _ in range(e):
            try:
                poly = exact_divide(poly, one - IntPolynomial.monomial(r, m))
            except NotDivisibleError as exc:
                raise NonPolynomialError(f"product does not reduce to a polynomial: {exc}") from exc
    if not poly.is_polynomial() or poly.coeff(MultiIndex.zeros(r)) != 1:
        raise NonPolynomialError(f"Alexander polynomial not normalized: {poly.to_text()}")
    return poly


def alexander_one_variable(g: DualGraph) -> IntPolynomial:
    """Delta(t) = (1 - t) * zeta(t) for an irreducible germ, as a polynomial."""
    if g.r != 1:
        raise ValueError("one-variable Alexander polynomial is defined here for r = 1 only")
    pf = alexander_product(g)
    one = IntPolynomial.constant(1)
    poly = one - IntPolynomial.monomial(1, (1,))
    for m, e in pf.numerator():
        poly = poly * (one - IntPolynomial.monomial(1, m)) ** e
    for m, e in pf.denominator():
        for _ in range(e):
            try:
                poly = exact_divide(poly, one - IntPolynomial.monomial(1, m))
            except NotDivisibleError as exc:
                raise NonPolynomialError(str(exc)) from exc
    return poly


# ---------------------------------------------------------------------------
# Blowups


def _next_id(g):
    return max(g.ids) + 1


def blowup_free_point(g: DualGraph, sigma: int) -> DualGraph:
    """Blow up a point of E_sigma lying on no other component."""
    if sigma not in g.ids:
        raise KeyError(sigma)
    new = _next_id(g)
    verts = tuple((v, s - 1 if v == sigma else s) for v, s in g.vertices) + ((new, -1),)
    return DualGraph(g.r, verts, g.edges + ((sigma, new),), g.arrows)


def blowup_edge(g: DualGraph, edge) -> DualGraph:
    """Blow up the intersection point E_a & E_b."""
    a, b = sorted(edge)
    if (a, b) not in g.edges:
        raise KeyError(edge)
    new = _next_id(g)
    verts = tuple((v, s - 1 if v in (a, b) else s) for v, s in g.vertices) + ((new, -1),)
    edges = tuple(e for e in g.edges if e != (a, b)) + ((a, new), (b, new))
    return DualGraph(g.r, verts, edges, g.arrows)


# ---------------------------------------------------------------------------
# Synthesis from characteristic exponents


def _order(ps):
    return next((i for i, c in enumerate(ps) if c), None)


def _divide(num, den):
    """num / den for truncated series with ord(num) >= ord(den)."""
    a = _order(den)
    n = [Fraction(c) for c in num[a:]]
    d = [Fraction(c) for c in den[a:]]
    prec = min(len(n), len(d))
    q = []
    for k in range(prec):
        c = n[k] - sum(q[j] * d[k - j] for j in range(max(0, k - len(d) + 1), k))
        q.append(c / d[0])
    return q


def _simulate_resolution(beta, prec):
    u = [0] * prec
    v = [0] * prec
    u[beta[0]] = 1
    for b in beta[1:]:
        v[b] += 1
    selfint: dict = {}
    edges: list = []
    axes = [None, None]
    last = 0
    while True:
        a, b = _order(u), _order(v)
        if a is None:
            raise SynthesisError("precision exhausted", None)
        if b is None:
            b = len(v) + 1
            if b <= a:
                raise SynthesisError("precision exhausted", None)
        last += 1
        divs = [d for d in axes if d is not None]
        for d in divs:
            selfint[d] -= 1
        if len(divs) == 2:
            edges.remove(tuple(sorted(divs)))
        edges += [(d, last) for d in divs]
        selfint[last] = -1
        if a <= b:
            v1 = _divide(v, u) if _order(v) is not None else [0] * (len(v) - a)
            c = v1[0] if v1 else 0
            if c:
                v1[0] = 0
                axes = [last, None]
            else:
                axes = [last, axes[1]]
            v = v1
            u = u[: len(v1)] if len(u) > len(v1) else u
        else:
            u = _divide(u, v)
            v = v[: len(u)]
            axes = [axes[0], last]
        divs = [d for d in axes if d is not None]
        if len(divs) == 1:
            coord = u if axes[0] is not None else v
            if _order(coord) == 1:
                return selfint, edges, divs[0]
        if len(u) < 2 or len(v) < 2:
            raise SynthesisError("precision exhausted", None)


def graph_from_branch(data) -> DualGraph:
    """Minimal embedded resolution graph of a branch with the given characteristic exponents.

    The branch x = tau^b0, y = sum_{j>=1} tau^bj is blown up point by point;
    free points become :func:`blowup_free_point`, satellite points
    :func:`blowup_edge`. The result is checked against the semigroup data.
    """
    if isinstance(data, BranchSemigroupData):
        ce = data.char_exponents
    else:
        ce = data if isinstance(data, CharExponents) else CharExponents(tuple(data))
        data = branch_data_from_char_exponents(ce)
    if ce is None:
        raise SynthesisError("semigroup data carries no characteristic exponents")
    # each blowup consumes its multiplicity in tau-order; the ladder covers any shortfall
    prec = data.conductor + ce.beta[-1] + 16
    for _ in range(6):
        try:
            selfint, edges, arrow = _simulate_resolution(ce.beta, prec)
            break
        except SynthesisError:
            prec *= 2
    else:
        raise SynthesisError(f"could not resolve {ce.beta} within precision {prec}")
    g = DualGraph(1, tuple(sorted(selfint.items())), tuple(edges), ((arrow, 1),))
    _check_synthesis(g, data)
    return g


def _check_synthesis(g, data):
    table = solve_multiplicities(g)
    chi = euler_smooth_parts(g)
    dead = sorted(table.total(v) for v in g.ids if chi[v] == 1)
    stars = sorted(table.total(v) for v in g.ids if chi[v] == -1)
    other = [v for v in g.ids if chi[v] not in (1, -1, 0)]
    if dead != sorted(data.gens) or stars != sorted(data.star) or other:
        raise SynthesisError(
            f"synthesized graph has dead ends {dead}, stars {stars}; "
            f"expected {list(data.gens)}, {list(data.star)}"
        )
