"""Finite-dimensional polynomial function classes with affine group actions.

A ``FunctionClass`` models the smooth functions a presentation actually needs:
polynomial maps of bounded total degree on the nebula domain, valued in the
scalar-field model of R.  Affine precomposition (translations, reflections)
never raises the total degree, so the class is closed under every action the
gallery uses.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Dict, Sequence, Tuple

from .coeff import RAlphaGroup, Scalar
from .errors import ClassError
from .exprs import format_poly_terms, parse_poly_terms

Expo = Tuple[int, ...]


class AffineMap:
    """x |-> A x + b with exact scalar entries."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = tuple(tuple(Scalar.of(x) for x in row) for row in a)
        self.b = tuple(Scalar.of(x) for x in b)
        n = len(self.b)
        if len(self.a) != n or any(len(row) != n for row in self.a):
            raise ClassError("affine map has inconsistent dimensions")

    @property
    def dim(self):
        return len(self.b)

    @staticmethod
    def identity(n: int) -> "AffineMap":
        return AffineMap(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], [0] * n
        )

    @staticmethod
    def translation(b) -> "AffineMap":
        n = len(b)
        return AffineMap(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], b
        )

    def apply(self, point: Sequence[Scalar]):
        return tuple(
            sum((aij * x for aij, x in zip(row, point)), Scalar.of(0)) + bi
            for row, bi in zip(self.a, self.b)
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x |-> self(other(x))."""
        n = self.dim
        a = [
            [
                sum((self.a[i][k] * other.a[k][j] for k in range(n)), Scalar.of(0))
                for j in range(n)
            ]
            for i in range(n)
        ]
        b = [
            sum((self.a[i][k] * other.b[k] for k in range(n)), Scalar.of(0))
            + self.b[i]
            for i in range(n)
        ]
        return AffineMap(a, b)

    def inverse(self) -> "AffineMap":
        n = self.dim
        # Gauss-Jordan over the scalar field
        aug = [
            [self.a[i][j] for j in range(n)]
            + [Scalar.of(1 if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if piv is None:
                raise ClassError("affine map is not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = Scalar.of(1) / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        ainv = [row[n:] for row in aug]
        binv = [
            -sum((ainv[i][k] * self.b[k] for k in range(n)), Scalar.of(0))
            for i in range(n)
        ]
        return AffineMap(ainv, binv)

    def __eq__(self, other):
        return (
            isinstance(other, AffineMap) and self.a == other.a and self.b == other.b
        )

    def __hash__(self):
        return hash((self.a, self.b))

    def is_identity(self):
        return self == AffineMap.identity(self.dim)

    def __repr__(self):
        return f"AffineMap(a={self.a}, b={self.b})"


def monomial_basis(n: int, max_degree: int):
    """All exponent tuples of total degree <= max_degree, graded lex order."""
    basis = []
    for d in range(max_degree + 1):
        degs = set()
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            degs.add(tuple(e))
        basis.extend(sorted(degs))
    return basis


class FunctionClass:
    """Polynomials of total degree <= max_degree in n variables."""

    def __init__(self, n: int, max_degree: int, group=None):
        group = group or RAlphaGroup()
        if group.tag != "R(alpha)":
            raise ClassError("function classes must be scalar-valued")
        self.n = n
        self.max_degree = max_degree
        self.group = group
        self.basis = monomial_basis(n, max_degree)

    @property
    def dimension(self):
        return len(self.basis)

    def zero(self) -> "FunctionElement":
        return FunctionElement(self, {})

    def monomial(self, e: Expo, coeff=1) -> "FunctionElement":
        return FunctionElement(self, {tuple(e): Scalar.of(coeff)})

    def parse(self, text: str) -> "FunctionElement":
        return FunctionElement(self, parse_poly_terms(text, self.n))

    def from_coordinates(self, coords) -> "FunctionElement":
        terms = {
            e: Scalar.of(c) for e, c in zip(self.basis, coords) if Scalar.of(c)
        }
        return FunctionElement(self, terms)

    def widen(self, extra: int) -> "FunctionClass":
        return FunctionClass(self.n, self.max_degree + extra, self.group)

    def random(self, rng) -> "FunctionElement":
        return self.from_coordinates([self.group.random(rng) for _ in self.basis])

    def __eq__(self, other):
        return (
            isinstance(other, FunctionClass)
            and self.n == other.n
            and self.max_degree == other.max_degree
        )

    def __hash__(self):
        return hash((self.n, self.max_degree))

    def __repr__(self):
        return f"FunctionClass(n={self.n}, D={self.max_degree})"


class FunctionElement:
    """A polynomial in its class, stored sparsely by monomial."""

    __slots__ = ("cls", "terms")

    def __init__(self, cls: FunctionClass, terms: Dict[Expo, Scalar]):
        clean = {}
        for e, c in terms.items():
            c = Scalar.of(c)
            if c.is_zero():
                continue
            if len(e) != cls.n:
                raise ClassError(f"monomial {e} has wrong arity for {cls!r}")
            if sum(e) > cls.max_degree:
                raise ClassError(
                    f"monomial {e} exceeds max degree {cls.max_degree}"
                )
            clean[tuple(e)] = c
        self.cls = cls
        self.terms = clean

    def in_class(self, cls: FunctionClass) -> "FunctionElement":
        if cls.n != self.cls.n:
            raise ClassError("cannot move between classes of different arity")
        return FunctionElement(cls, self.terms)

    def _join(self, other: "FunctionElement") -> FunctionClass:
        if self.cls.n != other.cls.n:
            raise ClassError("arity mismatch")
        return self.cls if self.cls.max_degree >= other.cls.max_degree else other.cls

    def __add__(self, other):
        cls = self._join(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Scalar.of(0)) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return FunctionElement(cls, out)

    def __neg__(self):
        return FunctionElement(self.cls, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "FunctionElement":
        s = Scalar.of(s)
        return FunctionElement(self.cls, {e: c * s for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def coordinates(self):
        """Coefficient vector in the monomial basis of the class."""
        return [self.terms.get(e, Scalar.of(0)) for e in self.cls.basis]

    def evaluate(self, point: Sequence):
        pt = [Scalar.of(x) for x in point]
        total = Scalar.of(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                for _ in range(k):
                    v = v * x
            total = total + v
        return total

    def compose_affine(self, phi: AffineMap) -> "FunctionElement":
        """Coefficients of y |-> self(phi(y)), computed exactly."""
        n = self.cls.n
        if phi.dim != n:
            raise ClassError("affine map has wrong dimension for this class")
        # linear images of each variable, as sparse polynomials
        images = []
        for i in range(n):
            img = {}
            for j in range(n):
                if not phi.a[i][j].is_zero():
                    e = tuple(1 if k == j else 0 for k in range(n))
                    img[e] = phi.a[i][j]
            if not phi.b[i].is_zero():
                img[(0,) * n] = phi.b[i]
            images.append(img)

        def mul(p, q):
            out = {}
            for e1, c1 in p.items():
                for e2, c2 in q.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(e, Scalar.of(0)) + c1 * c2
                    if s.is_zero():
                        out.pop(e, None)
                    else:
                        out[e] = s
            return out

        # powers of each variable image, shared across terms
        maxdeg = [0] * n
        for e in self.terms:
            for i, k in enumerate(e):
                maxdeg[i] = max(maxdeg[i], k)
        powers = []
        for i in range(n):
            ps = [{(0,) * n: Scalar.of(1)}]
            for _ in range(maxdeg[i]):
                ps.append(mul(ps[-1], images[i]))
            powers.append(ps)

        result = {}
        for e, c in self.terms.items():
            term = {(0,) * n: c}
            for i, k in enumerate(e):
                if k:
                    term = mul(term, powers[i][k])
            for ee, cc in term.items():
                s = result.get(ee, Scalar.of(0)) + cc
                if s.is_zero():
                    result.pop(ee, None)
                else:
                    result[ee] = s
        return FunctionElement(self.cls, result)

    def __eq__(self, other):
        return (
            isinstance(other, FunctionElement)
            and self.cls.n == other.cls.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.cls.n, frozenset(self.terms.items())))

    def __str__(self):
        return format_poly_terms(self.terms)

    def __repr__(self):
        return f"FunctionElement({self})"


def act(phi: AffineMap, h: FunctionElement) -> FunctionElement:
    """The precomposition action: (act(phi, h))(y) = h(phi(y))."""
    return h.compose_affine(phi)


def coordinates(h: FunctionElement):
    return h.coordinates()
