"""Exact linear algebra over the scalar field Q(a).

Matrices are lists of rows of Scalars.  Used wherever coefficients live in the
field model of R: field-coefficient cohomology of nerves and the function-class
linear systems of quotient presentations.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .coeff import Scalar

_ZERO = Scalar.of(0)
_ONE = Scalar.of(1)


def smat(rows) -> List[List[Scalar]]:
    return [[Scalar.of(x) for x in row] for row in rows]


def rref(M) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form and the pivot column indices."""
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if not A[i][col].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = _ONE / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and not A[i][col].is_zero():
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M) -> List[List[Scalar]]:
    """Basis of the kernel, one vector per free column, deterministic order."""
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[_ONE if i == j else _ZERO for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [_ZERO] * n
        v[free] = _ONE
        for r, col in enumerate(pivots):
            v[col] = -R[r][free]
        basis.append(v)
    return basis


def solve(M, b) -> Optional[List[Scalar]]:
    """One exact solution of M x = b, or None when inconsistent."""
    m = len(M)
    n = len(M[0]) if m else 0
    aug = [list(row) + [Scalar.of(bv)] for row, bv in zip(M, b)]
    R, pivots = rref(aug)
    for row in R:
        if all(x.is_zero() for x in row[:n]) and not row[n].is_zero():
            return None
    x = [_ZERO] * n
    for r, col in enumerate(pivots):
        if col < n:
            x[col] = R[r][n]
    return x


def column_span_coords(columns, v) -> Optional[List[Scalar]]:
    """Coordinates of v in the span of the given column vectors, or None."""
    if not columns:
        return [] if all(Scalar.of(x).is_zero() for x in v) else None
    M = [[columns[j][i] for j in range(len(columns))] for i in range(len(v))]
    return solve(M, v)
