"""Haar averaging over finite translation groupoids.

For a quotient by a finite group K of order N, the normalized invariant
density is uniform, so the averaging operator is
delta(u)(h) = (1/N) sum_{gamma in K} h(u.gamma).  Averaging the last slot of
a degree-k cocycle f produces g with dg = (-1)^k f, an explicit certificate
that H^k vanishes with real coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .cech import Cochain, CocycleError, _k_tuples, coboundary, is_cocycle
from .coeff import GroupElement, RAlphaGroup, Scalar
from .errors import DegreeError, ParseError
from .funclass import FunctionElement, act


class FiniteTranslationGroupoid:
    """The translation groupoid M x K of a finite-group quotient."""

    def __init__(self, pres):
        if pres.kind != "quotient" or not pres.is_finite():
            raise ParseError("Haar averaging needs a finite-group quotient")
        self.pres = pres
        self.order = pres.k_order()
        self.weight = Fraction(1, self.order)

    def __repr__(self):
        return f"FiniteTranslationGroupoid(|K|={self.order})"


def haar_average(g: FiniteTranslationGroupoid, u, h: FunctionElement):
    """delta(u)(h) = (1/N) sum_gamma h(u.gamma), exact."""
    pres = g.pres
    total = Scalar.of(0)
    for gamma in pres.k_elements():
        total = total + h.evaluate(pres.act_point(u, gamma))
    return GroupElement(RAlphaGroup(), total * Scalar.of(g.weight))


def haar_average_function(g: FiniteTranslationGroupoid,
                          h: FunctionElement) -> FunctionElement:
    """The averaged function u |-> delta(u)(h), computed symbolically."""
    pres = g.pres
    total = h.cls.zero()
    for gamma in pres.k_elements():
        total = total + act(pres.affine_of(gamma), h)
    return total.scale(Scalar.of(g.weight))


def trivializing_homotopy(g: FiniteTranslationGroupoid, f: Cochain,
                          k=None) -> Cochain:
    """g(u0,...,u_{k-1}) = delta(u0)(f(u0,...,u_{k-1},.)); dg = (-1)^k f."""
    pres = g.pres
    if f.pres != pres:
        raise ParseError("cocycle lives on a different presentation")
    if f.group.tag != "R(alpha)":
        raise ParseError("averaging needs the R model coefficients")
    k = f.degree if k is None else k
    if k != f.degree or k < 1:
        raise DegreeError(f"expected a cocycle of positive degree, got {k}")
    chk = is_cocycle(f)
    if not chk:
        raise CocycleError(f"not a cocycle: {chk.location} -> {chk.detail}")
    w = Scalar.of(g.weight)
    table = {}
    for kt in _k_tuples(pres, k - 1):
        total = pres.function_class().zero()
        for gamma in pres.k_elements():
            total = total + f.q_value(kt + (gamma,))
        table[kt] = total.scale(w)
    gch = (Cochain.function(pres, table[()]) if k == 1
           else Cochain.table(pres, k - 1, table))
    check = coboundary(gch) - f.scale_int((-1) ** k)
    for kt, v in check.payload.items():
        if not v.is_zero():
            raise CocycleError(
                f"homotopy identity failed at {kt}: {v}"
            )
    return gch
