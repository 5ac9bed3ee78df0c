"""Affine maps, polynomial function classes, and the precomposition action."""

import random
from fractions import Fraction

import pytest

from diffcech.coeff import ALPHA, Scalar
from diffcech.errors import ClassError
from diffcech.funclass import (
    AffineMap,
    FunctionClass,
    FunctionElement,
    act,
    monomial_basis,
)


def _random_affine(rng, n):
    """A random invertible affine map (unit upper triangular times diagonal)."""
    a = [[Scalar.of(0)] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = Scalar.of(rng.choice([1, -1, 2]))
        for j in range(i + 1, n):
            a[i][j] = Scalar.of(rng.randrange(-2, 3))
    b = [Scalar.of(rng.randrange(-3, 4)) + ALPHA * rng.randrange(-1, 2)
         for _ in range(n)]
    return AffineMap(a, b)


def _random_point(rng, n):
    return [Scalar.of(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)))
            for _ in range(n)]


class TestAffineMap:
    def test_identity_and_translation(self):
        phi = AffineMap.translation([Scalar.of(2)])
        assert tuple(phi.apply([Scalar.of(3)])) == (Scalar.of(5),)
        assert AffineMap.identity(2).is_identity()

    def test_compose_matches_pointwise(self):
        rng = random.Random(2)
        for _ in range(20):
            n = rng.randrange(1, 3)
            phi, psi = _random_affine(rng, n), _random_affine(rng, n)
            p = _random_point(rng, n)
            assert phi.compose(psi).apply(p) == phi.apply(psi.apply(p))

    def test_inverse(self):
        rng = random.Random(4)
        for _ in range(20):
            n = rng.randrange(1, 3)
            phi = _random_affine(rng, n)
            p = _random_point(rng, n)
            assert tuple(phi.inverse().apply(phi.apply(p))) == tuple(p)


class TestMonomialBasis:
    def test_counts(self):
        # dim of polynomials of degree <= D in n variables is C(n + D, D)
        assert len(monomial_basis(1, 3)) == 4
        assert len(monomial_basis(2, 2)) == 6
        assert len(monomial_basis(3, 1)) == 4

    def test_graded_order(self):
        basis = monomial_basis(2, 2)
        degrees = [sum(e) for e in basis]
        assert degrees == sorted(degrees)


class TestFunctionElement:
    def test_parse_and_format(self):
        cls = FunctionClass(1, 3)
        h = cls.parse("x0^2 - 2*x0 + 1")
        assert cls.parse(str(h)) == h

    def test_square_expansion_under_shift(self):
        # (x + a)^2 composed with x -> x + 1 is (x + 1 + a)^2
        cls = FunctionClass(1, 2)
        h = cls.parse("(x0 + a)^2")
        shifted = act(AffineMap.translation([Scalar.of(1)]), h)
        assert shifted == cls.parse("(x0 + 1 + a)^2")

    def test_act_agrees_with_evaluation(self):
        rng = random.Random(6)
        for _ in range(25):
            n = rng.randrange(1, 3)
            cls = FunctionClass(n, 3)
            h = cls.random(rng)
            phi = _random_affine(rng, n)
            p = _random_point(rng, n)
            assert act(phi, h).evaluate(p) == h.evaluate(phi.apply(p))

    def test_act_is_contravariant(self):
        # h o (phi o psi) = (h o phi) o psi
        rng = random.Random(8)
        for _ in range(20):
            n = rng.randrange(1, 3)
            cls = FunctionClass(n, 3)
            h = cls.random(rng)
            phi, psi = _random_affine(rng, n), _random_affine(rng, n)
            assert act(phi.compose(psi), h) == act(psi, act(phi, h))

    def test_act_is_linear(self):
        rng = random.Random(10)
        cls = FunctionClass(1, 3)
        for _ in range(20):
            h1, h2 = cls.random(rng), cls.random(rng)
            phi = _random_affine(rng, 1)
            assert act(phi, h1 + h2) == act(phi, h1) + act(phi, h2)
            assert act(phi, h1.scale(ALPHA)) == act(phi, h1).scale(ALPHA)

    def test_coordinates_round_trip(self):
        rng = random.Random(12)
        cls = FunctionClass(2, 2)
        for _ in range(10):
            h = cls.random(rng)
            assert cls.from_coordinates(h.coordinates()) == h

    def test_degree_bound_enforced(self):
        cls = FunctionClass(1, 2)
        with pytest.raises(ClassError):
            FunctionElement(cls, {(3,): Scalar.of(1)})

    def test_widen(self):
        cls = FunctionClass(1, 2)
        wide = cls.widen(1)
        assert wide.max_degree == 3
        h = cls.parse("x0^2 + a")
        assert h.in_class(wide).in_class(cls) == h
