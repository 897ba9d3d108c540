"""Exact linear algebra over Q.

Rational entries are scaled to integer rows first; elimination is then
fraction-free (Bareiss), so no Fraction objects are created in the hot loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _integer_row(row):
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def rank(rows) -> int:
    """Rank of a matrix given as a list of rows (ints or Fractions)."""
    mat = [_integer_row(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rk = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rk, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rk], mat[pivot] = mat[pivot], mat[rk]
        p = mat[rk][col]
        for i in range(rk + 1, len(mat)):
            a = mat[i][col]
            row_i, row_k = mat[i], mat[rk]
            # Bareiss step: exact division by the previous pivot
            mat[i] = [(p * row_i[j] - a * row_k[j]) // prev for j in range(ncols)]
        prev = p
        rk += 1
        if rk == len(mat):
            break
    return rk


def rank_reduced(rows) -> int:
    """Rank via gcd-normalised integer elimination; cross-check for :func:`rank`."""
    mat = [_integer_row(r) for r in rows if any(r)]
    rk = 0
    while mat:
        col = min(next(j for j, x in enumerate(r) if x) for r in mat)
        pivots = [r for r in mat if r[col]]
        piv = pivots[0]
        rest = []
        for r in mat:
            if r is piv:
                continue
            if r[col]:
                r = [piv[col] * x - r[col] * y for x, y in zip(r, piv)]
            if any(r):
                g = 0
                for x in r:
                    g = gcd(g, x)
                rest.append([x // g for x in r])
        rk += 1
        mat = rest
    return rk


def det(matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(matrix) -> list[int]:
    n = len(matrix)
    return [det([row[:k] for row in matrix[:k]]) for k in range(1, n + 1)]


def solve(matrix, rhs) -> list[Fraction]:
    """Unique solution of a nonsingular square system, exactly."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        aug[k] = [x / pk for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n] for row in aug]


def nullspace(rows, ncols) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} from the reduced row echelon form."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        p = mat[rk][col]
        mat[rk] = [x / p for x in mat[rk]]
        for i in range(len(mat)):
            if i != rk and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis
