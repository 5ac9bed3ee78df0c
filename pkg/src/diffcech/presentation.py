"""Finite presentations of diffeological spaces.

Two kinds are representable: good-cover nerves (locally constant data, one
coefficient value per alive chart tuple) and quotients of a contractible
nebula domain by a finitely generated abelian group acting affinely.  Both
carry the simplicial structure of the iterated fiber products of the nebula:
alive tuples, degeneracy maps dropping one factor, and morphisms induced by
refinements.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import Scalar
from .errors import CompatibilityError, DegreeError, ParseError
from .funclass import AffineMap, FunctionClass


class FiniteNerve:
    """Nerve of a good cover, given by its abstract simplicial complex.

    ``faces`` holds every alive support set (including singletons); an ordered
    tuple with repeats is alive iff its support is a face.  In alternating
    mode only strictly increasing tuples index cochain values.
    """

    kind = "nerve"

    def __init__(self, charts, faces, k_max: int, alternating: bool = True,
                 name: Optional[str] = None):
        self.charts = list(charts)
        self.k_max = k_max
        self.alternating = alternating
        self.name = name
        self.faces = frozenset(frozenset(f) for f in faces)
        self._tuple_cache: Dict[int, List[Tuple[int, ...]]] = {}
        self._validate()

    def _validate(self):
        n = len(self.charts)
        for f in self.faces:
            if not f:
                raise ParseError("empty face in nerve")
            for i in f:
                if not (0 <= i < n):
                    raise ParseError(f"face {sorted(f)} references unknown chart {i}")
        for i in range(n):
            if frozenset([i]) not in self.faces:
                raise ParseError(f"missing singleton face [{i}]")
        for f in self.faces:
            if len(f) > 1:
                for i in f:
                    sub = f - {i}
                    if sub not in self.faces:
                        raise ParseError(
                            f"alive tuple {sorted(f)} is not face-closed: "
                            f"missing face {sorted(sub)}"
                        )

    @staticmethod
    def from_facets(nchart: int, facets, k_max: int, alternating: bool = True,
                    name: Optional[str] = None) -> "FiniteNerve":
        faces = set()
        for facet in facets:
            fs = frozenset(facet)
            stack = [fs]
            while stack:
                f = stack.pop()
                if f and f not in faces:
                    faces.add(f)
                    for i in f:
                        stack.append(f - {i})
        for i in range(nchart):
            faces.add(frozenset([i]))
        return FiniteNerve(list(range(nchart)), faces, k_max, alternating, name)

    def is_alive(self, tup) -> bool:
        return frozenset(tup) in self.faces

    def tuples(self, k: int) -> List[Tuple[int, ...]]:
        """Alive (k+1)-tuples in lexicographic order."""
        if k < 0:
            return [()]
        if k > self.k_max:
            raise DegreeError(f"degree {k} exceeds k_max={self.k_max}")
        if k not in self._tuple_cache:
            n = len(self.charts)
            if self.alternating:
                out = [
                    t
                    for t in product(range(n), repeat=k + 1)
                    if all(t[i] < t[i + 1] for i in range(k))
                    and frozenset(t) in self.faces
                ]
            else:
                out = [
                    t
                    for t in product(range(n), repeat=k + 1)
                    if frozenset(t) in self.faces
                ]
            self._tuple_cache[k] = out
        return self._tuple_cache[k]

    def degeneracy(self, k: int, i: int, tup: Tuple[int, ...]) -> Tuple[int, ...]:
        """Drop the i-th factor of an alive (k+1)-tuple."""
        if not (0 <= i <= k):
            raise DegreeError(f"degeneracy index {i} out of range for degree {k}")
        return tup[:i] + tup[i + 1 :]

    def components(self) -> List[List[int]]:
        """Connected components of the chart intersection graph."""
        n = len(self.charts)
        seen, comps = set(), []
        adj = {i: set() for i in range(n)}
        for f in self.faces:
            for i in f:
                adj[i] |= f
        for i in range(n):
            if i in seen:
                continue
            comp, stack = [], [i]
            while stack:
                j = stack.pop()
                if j in seen:
                    continue
                seen.add(j)
                comp.append(j)
                stack.extend(adj[j] - seen)
            comps.append(sorted(comp))
        return comps

    def __eq__(self, other):
        return (
            isinstance(other, FiniteNerve)
            and self.charts == other.charts
            and self.faces == other.faces
            and self.k_max == other.k_max
            and self.alternating == other.alternating
        )

    def __hash__(self):
        return hash((tuple(map(str, self.charts)), self.faces, self.k_max,
                     self.alternating))

    def __repr__(self):
        return (
            f"FiniteNerve({self.name or len(self.charts)} charts, "
            f"k_max={self.k_max}, alternating={self.alternating})"
        )


class Generator:
    """One generator of the acting group: torsion order and affine map."""

    __slots__ = ("torsion", "affine")

    def __init__(self, torsion: int, affine: AffineMap):
        self.torsion = torsion  # 0 means infinite order
        self.affine = affine

    def __eq__(self, other):
        return (
            isinstance(other, Generator)
            and self.torsion == other.torsion
            and self.affine == other.affine
        )

    def __hash__(self):
        return hash((self.torsion, self.affine))


class GroupQuotient:
    """Quotient of a contractible nebula domain R^n by an affine K-action."""

    kind = "quotient"

    def __init__(self, dim: int, generators: Sequence[Generator], free: bool,
                 function_class_degree: int = 1, name: Optional[str] = None):
        self.dim = dim
        self.generators = list(generators)
        self.free = free
        self.function_class_degree = function_class_degree
        self.name = name
        self._affine_cache: Dict[Tuple[int, ...], AffineMap] = {}
        self._validate()

    def _validate(self):
        for g in self.generators:
            if g.affine.dim != self.dim:
                raise ParseError("generator affine map has wrong dimension")
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1 :]:
                if g.affine.compose(h.affine) != h.affine.compose(g.affine):
                    raise ParseError("generator affine maps do not commute")
            if g.torsion:
                comp = AffineMap.identity(self.dim)
                for _ in range(g.torsion):
                    comp = g.affine.compose(comp)
                if not comp.is_identity():
                    raise ParseError(
                        f"torsion order {g.torsion} not satisfied by affine map"
                    )

    # -- the acting group K -------------------------------------------
    @property
    def rank(self):
        return len(self.generators)

    def k_identity(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def k_canonical(self, k) -> Tuple[int, ...]:
        k = tuple(int(x) for x in k)
        if len(k) != self.rank:
            raise ParseError(f"group element {k} has wrong rank")
        return tuple(
            x % g.torsion if g.torsion else x for x, g in zip(k, self.generators)
        )

    def k_add(self, k1, k2):
        return self.k_canonical(tuple(a + b for a, b in zip(k1, k2)))

    def k_neg(self, k):
        return self.k_canonical(tuple(-a for a in k))

    def is_finite(self) -> bool:
        return all(g.torsion for g in self.generators)

    def k_order(self) -> int:
        if not self.is_finite():
            raise DegreeError("acting group is infinite")
        n = 1
        for g in self.generators:
            n *= g.torsion
        return n

    def k_elements(self) -> List[Tuple[int, ...]]:
        if not self.is_finite():
            raise DegreeError("acting group is infinite")
        return [
            self.k_canonical(k)
            for k in product(*[range(g.torsion) for g in self.generators])
        ] if self.generators else [()]

    def affine_of(self, k) -> AffineMap:
        """The affine action of the group element with exponent vector k."""
        k = self.k_canonical(k)
        if k not in self._affine_cache:
            phi = AffineMap.identity(self.dim)
            for g, n in zip(self.generators, k):
                step = g.affine if n >= 0 else g.affine.inverse()
                for _ in range(abs(n)):
                    phi = step.compose(phi)
            self._affine_cache[k] = phi
        return self._affine_cache[k]

    def act_point(self, point, k):
        return self.affine_of(k).apply(point)

    def function_class(self, degree: Optional[int] = None) -> FunctionClass:
        return FunctionClass(self.dim, degree if degree is not None
                             else self.function_class_degree)

    def random_point(self, rng):
        from .coeff import ALPHA

        return tuple(
            Scalar.of(rng.randrange(-5, 6))
            + ALPHA * rng.randrange(-2, 3)
            for _ in range(self.dim)
        )

    def random_k(self, rng):
        return self.k_canonical(
            tuple(
                rng.randrange(g.torsion) if g.torsion else rng.randrange(-4, 5)
                for g in self.generators
            )
        )

    # -- simplicial structure -----------------------------------------
    def degeneracy_point(self, k: int, i: int, point):
        """Degeneracy on a point (y; kappa_1..kappa_k) of the k-fold product."""
        y, ks = point
        if not (0 <= i <= k) or len(ks) != k:
            raise DegreeError(f"degeneracy index {i} out of range for degree {k}")
        if i == 0:
            if k == 0:
                raise DegreeError("no degeneracies on degree 0")
            k1 = ks[0]
            return (self.act_point(y, k1),
                    tuple(self.k_add(kj, self.k_neg(k1)) for kj in ks[1:]))
        return (y, ks[: i - 1] + ks[i:])

    def __eq__(self, other):
        return (
            isinstance(other, GroupQuotient)
            and self.dim == other.dim
            and self.generators == other.generators
            and self.free == other.free
            and self.function_class_degree == other.function_class_degree
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.generators), self.free,
                     self.function_class_degree))

    def __repr__(self):
        return (
            f"GroupQuotient({self.name or ''} dim={self.dim}, "
            f"rank={self.rank}, free={self.free}, "
            f"D={self.function_class_degree})"
        )


class PresentationMorphism:
    """A refinement-style map between presentations.

    Nerve to nerve: a chart index map compatible with alive tuples.  Quotient
    to quotient: an affine map of nebula domains plus a group homomorphism
    intertwining the actions (checked symbolically on generators).
    """

    def __init__(self, source, target, index_map=None, affine=None,
                 hom=None, name: Optional[str] = None):
        self.source = source
        self.target = target
        self.index_map = index_map
        self.affine = affine
        self.hom = hom  # list of target K-elements, one per source generator
        self.name = name
        self._validate()

    def _validate(self):
        s, t = self.source, self.target
        if s.kind == "nerve" and t.kind == "nerve":
            if self.index_map is None or len(self.index_map) != len(s.charts):
                raise CompatibilityError("nerve morphism needs a full index map")
            for f in s.faces:
                image = frozenset(self.index_map[i] for i in f)
                if image not in t.faces:
                    raise CompatibilityError(
                        f"index map sends alive tuple {sorted(f)} to dead tuple "
                        f"{sorted(image)}"
                    )
        elif s.kind == "quotient" and t.kind == "quotient":
            if self.affine is None or self.hom is None:
                raise CompatibilityError(
                    "quotient morphism needs an affine map and a homomorphism"
                )
            if s.dim != t.dim:
                raise CompatibilityError("quotient morphism must preserve dimension")
            for g, img in zip(s.generators, self.hom):
                img = t.k_canonical(img)
                # F(y . g) = F(y) . hom(g), checked as affine map equality
                lhs = self.affine.compose(g.affine)
                rhs = t.affine_of(img).compose(self.affine)
                if lhs != rhs:
                    raise CompatibilityError(
                        "morphism does not intertwine the group actions"
                    )
        else:
            raise CompatibilityError(
                f"unsupported morphism kind {s.kind} -> {t.kind}"
            )

    @staticmethod
    def identity(pres) -> "PresentationMorphism":
        if pres.kind == "nerve":
            return PresentationMorphism(
                pres, pres, index_map=list(range(len(pres.charts))), name="id"
            )
        return PresentationMorphism(
            pres, pres, affine=AffineMap.identity(pres.dim),
            hom=[pres.k_canonical(
                tuple(1 if j == i else 0 for j in range(pres.rank)))
                for i in range(pres.rank)],
            name="id",
        )

    def map_tuple(self, tup):
        return tuple(self.index_map[i] for i in tup)

    def map_k(self, k) -> Tuple[int, ...]:
        """Image of a source group element under the homomorphism."""
        out = self.target.k_identity()
        for n, img in zip(k, self.hom):
            out = self.target.k_add(
                out, self.target.k_canonical(tuple(n * x for x in img))
            )
        return out

    def __repr__(self):
        return f"PresentationMorphism({self.name or ''})"


def common_refinement(q, r, joint: Optional[FiniteNerve] = None):
    """A presentation refining both q and r, with the two refinement maps.

    Identical presentations refine themselves.  For distinct nerves the caller
    must declare compatibility by passing ``joint``: a nerve over the disjoint
    union of the two chart sets (q charts first) recording which mixed
    intersections are alive.  The result is the pairwise-intersection cover.
    """
    if q == r:
        return q, PresentationMorphism.identity(q), PresentationMorphism.identity(q)
    if q.kind != "nerve" or r.kind != "nerve":
        raise CompatibilityError("common refinement of distinct presentations "
                                 "is only supported for nerves")
    if q.alternating != r.alternating:
        raise CompatibilityError("nerves must share the alternating flag")
    if joint is None:
        raise CompatibilityError(
            "distinct nerves need caller-declared joint cover data"
        )
    na, nb = len(q.charts), len(r.charts)
    if len(joint.charts) != na + nb:
        raise CompatibilityError(
            "joint nerve must cover both chart sets (q charts first)"
        )
    pairs = [
        (a, b)
        for a in range(na)
        for b in range(nb)
        if frozenset([a, na + b]) in joint.faces
    ]
    index = {p: i for i, p in enumerate(pairs)}
    k_max = min(q.k_max, r.k_max)
    faces = set()
    for size in range(1, k_max + 2):
        from itertools import combinations

        for combo in combinations(range(len(pairs)), size):
            support = frozenset()
            for ci in combo:
                a, b = pairs[ci]
                support |= {a, na + b}
            if support in joint.faces:
                faces.add(frozenset(combo))
    s = FiniteNerve([f"{q.charts[a]}&{r.charts[b]}" for a, b in pairs], faces,
                    k_max, q.alternating,
                    name=f"refine({q.name or 'Q'},{r.name or 'R'})")
    mq = PresentationMorphism(s, q, index_map=[pairs[i][0] for i in range(len(pairs))],
                              name="to_q")
    mr = PresentationMorphism(s, r, index_map=[pairs[i][1] for i in range(len(pairs))],
                              name="to_r")
    return s, mq, mr


def circle_arc_nerve(arcs, k_max: int = 4, alternating: bool = True,
                     name: Optional[str] = None) -> FiniteNerve:
    """Nerve of a cover of the circle R/Z by open arcs (start, length).

    Arcs are given with exact rational endpoints; intersections are computed
    on the circle, so joint nerves of two arc covers are available for common
    refinements.
    """
    from fractions import Fraction

    arcs = [(Fraction(s), Fraction(l)) for s, l in arcs]
    if any(l <= 0 or l >= 1 for _, l in arcs):
        raise ParseError("arc lengths must lie strictly between 0 and 1")

    def intervals(arc):
        s, l = arc
        s %= 1
        if s + l <= 1:
            return [(s, s + l)]
        return [(s, Fraction(1)), (Fraction(0), s + l - 1)]

    def nonempty_intersection(sel):
        segs = [intervals(arcs[i]) for i in sel]
        # brute force over lifted segment choices
        for choice in product(*segs):
            lo = max(a for a, _ in choice)
            hi = min(b for _, b in choice)
            if lo < hi:
                return True
        return False

    n = len(arcs)
    faces = set()
    for size in range(1, min(n, k_max + 2) + 1):
        from itertools import combinations

        for combo in combinations(range(n), size):
            if all(frozenset(c) in faces
                   for c in combinations(combo, size - 1)) or size == 1:
                if nonempty_intersection(combo):
                    faces.add(frozenset(combo))
    return FiniteNerve(list(range(n)), faces, k_max, alternating, name)


def joint_circle_nerve(arcs_q, arcs_r, k_max: int = 4) -> FiniteNerve:
    """Joint cover nerve for two arc covers of the circle (q arcs first)."""
    return circle_arc_nerve(list(arcs_q) + list(arcs_r), k_max,
                            alternating=True, name="joint")
