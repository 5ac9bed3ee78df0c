"""Group cohomology dictionary for quotient presentations.

Degree-1 Cech data on M/K corresponds to crossed homomorphisms
kappa: K -> C(M), kappa(k+k') = kappa(k) + kappa(k').k, via
kappa_f(k)(y) = f(y, y.k); coboundaries correspond to principal crossed
homomorphisms kappa(k) = alpha.k - alpha.  H1 is crossed modulo principal,
computed exactly inside the declared function class.
"""

from __future__ import annotations

from typing import Dict

from .cech import (
    Cochain,
    CohomologyReport,
    CocycleError,
    _crossed_single,
    _field_cohomology_from_matrices,
    crossed_value,
    is_cocycle,
)
from .coeff import RAlphaGroup, Scalar
from .errors import FreenessError, ParseError
from .funclass import FunctionElement, act
from . import linalg


class CrossedHom:
    """A crossed homomorphism, stored by its values on the generators."""

    def __init__(self, pres, values: Dict[int, FunctionElement]):
        if pres.kind != "quotient":
            raise ParseError("crossed homomorphisms need a quotient presentation")
        self.pres = pres
        self.values = {i: values.get(i, pres.function_class().zero())
                       for i in range(pres.rank)}

    def value(self, k) -> FunctionElement:
        """kappa(k) for an arbitrary group element, via the crossed law."""
        return crossed_value(self.pres, self.values, k)

    def is_valid(self) -> bool:
        """Generator compatibility and torsion consistency, symbolically."""
        p = self.pres
        for i in range(p.rank):
            gi = p.generators[i]
            for j in range(i + 1, p.rank):
                gj = p.generators[j]
                lhs = self.values[i] + act(gi.affine, self.values[j])
                rhs = self.values[j] + act(gj.affine, self.values[i])
                if not (lhs - rhs).is_zero():
                    return False
            if gi.torsion:
                # the unreduced sum over the cyclic orbit must vanish
                total = _crossed_single(p, self.values[i], i, gi.torsion)
                if not total.is_zero():
                    return False
        return True

    def __add__(self, other: "CrossedHom") -> "CrossedHom":
        if self.pres != other.pres:
            raise ParseError("crossed homomorphisms on different presentations")
        return CrossedHom(self.pres,
                          {i: v + other.values[i]
                           for i, v in self.values.items()})

    def __neg__(self) -> "CrossedHom":
        return CrossedHom(self.pres, {i: -v for i, v in self.values.items()})

    def __sub__(self, other: "CrossedHom") -> "CrossedHom":
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, CrossedHom) and self.pres == other.pres
                and self.values == other.values)

    def to_dict(self) -> dict:
        return {"values": {f"g{i + 1}": str(v)
                           for i, v in sorted(self.values.items())}}

    def __repr__(self):
        inner = ", ".join(f"g{i + 1} -> {v}"
                          for i, v in sorted(self.values.items()))
        return f"CrossedHom({inner})"


def crossed_from_cocycle(f: Cochain) -> CrossedHom:
    """Read off kappa_f(k)(y) = f(y, y.k) on the generators."""
    pres = f.pres
    if pres.kind != "quotient" or f.degree != 1:
        raise ParseError("expected a degree-1 cochain on a quotient")
    chk = is_cocycle(f)
    if not chk:
        raise CocycleError(f"not a cocycle: {chk.location} -> {chk.detail}")
    values = {
        i: f.q_value((tuple(1 if j == i else 0 for j in range(pres.rank)),))
        for i in range(pres.rank)
    }
    return CrossedHom(pres, values)


def cocycle_from_crossed(beta: CrossedHom) -> Cochain:
    """f_beta(y1, y2) = beta(k(y1,y2))(y1); needs a free action."""
    pres = beta.pres
    if not pres.free:
        raise FreenessError(
            "the inverse dictionary needs a free action (arrow map undefined)"
        )
    if pres.is_finite():
        table = {(kt,): beta.value(kt) for kt in pres.k_elements()}
        return Cochain.table(pres, 1, table)
    return Cochain.crossed(pres, dict(beta.values))


def principal_crossed(pres, alpha: FunctionElement) -> CrossedHom:
    """kappa(k) = alpha.k - alpha."""
    return CrossedHom(pres, {
        i: act(g.affine, alpha) - alpha
        for i, g in enumerate(pres.generators)
    })


def h1_group(pres) -> CohomologyReport:
    """H1(K, C(M)) within the function class: crossed modulo principal.

    Cocycles are degree-D crossed data; principality is tested one degree up
    (witness potentials live in the widened class).
    """
    if pres.kind != "quotient":
        raise ParseError("h1_group needs a quotient presentation")
    cls = pres.function_class()
    wide = cls.widen(1)
    dim = wide.dimension
    r = pres.rank
    group = RAlphaGroup()

    zero = Scalar.of(0)
    top = [j for j, e in enumerate(wide.basis) if sum(e) > cls.max_degree]

    # constraint rows in the ambient space (wide coordinates per generator):
    # generator-pair compatibility, torsion sums, and "stay in class D"
    rows = []
    mono_elems = [wide.monomial(e) for e in wide.basis]

    def transform(phi_elems):
        # coordinates of each transformed monomial
        return [elem.in_class(wide).coordinates() for elem in phi_elems]

    ident = transform(mono_elems)
    for i in range(r):
        gi = pres.generators[i]
        acted_i = transform([act(gi.affine, m) for m in mono_elems])
        for j in range(i + 1, r):
            gj = pres.generators[j]
            acted_j = transform([act(gj.affine, m) for m in mono_elems])
            # h_i + h_j.g_i - h_j - h_i.g_j = 0
            for out in range(dim):
                row = [zero] * (r * dim)
                for t in range(dim):
                    row[i * dim + t] += ident[t][out] - acted_j[t][out]
                    row[j * dim + t] += acted_i[t][out] - ident[t][out]
                rows.append(row)
        if gi.torsion:
            # sum over the cyclic orbit of g_i applied to h_i
            phi = pres.affine_of(pres.k_identity())
            total = [[zero] * dim for _ in range(dim)]
            for step in range(gi.torsion):
                acted = transform([act(phi, m) for m in mono_elems])
                for t in range(dim):
                    for out in range(dim):
                        total[t][out] += acted[t][out]
                phi = gi.affine.compose(phi)
            for out in range(dim):
                row = [zero] * (r * dim)
                for t in range(dim):
                    row[i * dim + t] = total[t][out]
                rows.append(row)
    # degree policy: cocycle data lives in the unwidened class
    for i in range(r):
        for j in top:
            row = [zero] * (r * dim)
            row[i * dim + j] = Scalar.of(1)
            rows.append(row)
    if not rows:
        rows = [[zero] * (r * dim)]
    A_s = rows

    # principal crossed homomorphisms with potentials in the wide class,
    # intersected with the degree-D subspace
    P_cols = []
    for m in mono_elems:
        ph = principal_crossed(pres, m)
        col = []
        for i in range(r):
            col.extend(ph.values[i].in_class(wide).coordinates())
        P_cols.append(col)
    if P_cols and top:
        P_top = [[P_cols[j][i * dim + t] for j in range(len(P_cols))]
                 for i in range(r) for t in top]
        combos = linalg.nullspace(P_top)
    else:
        combos = [[Scalar.of(1) if i == j else zero
                   for i in range(len(P_cols))] for j in range(len(P_cols))]
    B_cols = []
    for combo in combos:
        col = [zero] * (r * dim)
        for j, c in enumerate(combo):
            if not c.is_zero():
                for t in range(r * dim):
                    col[t] = col[t] + P_cols[j][t] * c
        B_cols.append(col)

    def to_vector(c: Cochain):
        out = []
        for i in range(r):
            val = c.q_value((tuple(1 if j == i else 0 for j in range(r)),))
            out.extend(val.in_class(wide).coordinates())
        return out

    def from_vector(v):
        values = {
            i: wide.from_coordinates(v[i * dim : (i + 1) * dim])
            for i in range(r)
        }
        if pres.is_finite():
            table = {(kt,): crossed_value(pres, values, kt)
                     for kt in pres.k_elements()}
            return Cochain.table(pres, 1, table)
        return Cochain.crossed(pres, values)

    note = (f"crossed mod principal; class (n={cls.n}, D={cls.max_degree}), "
            f"witnesses at D={wide.max_degree}")
    return _field_cohomology_from_matrices(pres, 1, group, A_s, B_cols,
                                           to_vector, from_vector, note)
