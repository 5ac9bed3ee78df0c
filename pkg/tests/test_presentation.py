"""Nerve and quotient presentations: validation, simplicial identities, maps."""

import random
from fractions import Fraction

import pytest

from diffcech import gallery
from diffcech.coeff import ALPHA, Scalar
from diffcech.errors import CompatibilityError, DegreeError, ParseError
from diffcech.funclass import AffineMap
from diffcech.presentation import (
    FiniteNerve,
    Generator,
    GroupQuotient,
    PresentationMorphism,
    circle_arc_nerve,
    common_refinement,
    joint_circle_nerve,
)


class TestFiniteNerve:
    def test_face_closure_required(self):
        with pytest.raises(ParseError, match="not face-closed"):
            FiniteNerve(["U0", "U1", "U2"],
                        {frozenset([0]), frozenset([1]), frozenset([2]),
                         frozenset([0, 1, 2]), frozenset([0, 1]),
                         frozenset([0, 2])},
                        k_max=4)

    def test_from_facets_closes_downward(self):
        n = FiniteNerve.from_facets(3, [(0, 1, 2)], k_max=4)
        assert frozenset([1, 2]) in n.faces
        assert frozenset([0]) in n.faces

    def test_tuples_ordering_and_alternating(self):
        n = FiniteNerve.from_facets(3, [(0, 1, 2)], k_max=4)
        assert n.tuples(1) == [(0, 1), (0, 2), (1, 2)]
        for t in n.tuples(2):
            assert list(t) == sorted(set(t))

    def test_full_mode_allows_repeats(self):
        n = FiniteNerve.from_facets(2, [(0, 1)], k_max=3, alternating=False)
        assert (0, 0) in n.tuples(1)
        assert (1, 0) in n.tuples(1)

    def test_degree_cap(self):
        n = FiniteNerve.from_facets(1, [(0,)], k_max=2)
        with pytest.raises(DegreeError):
            n.tuples(3)

    def test_components(self):
        n = FiniteNerve.from_facets(4, [(0, 1), (2, 3)], k_max=4)
        assert n.components() == [[0, 1], [2, 3]]

    def test_simplicial_identity(self):
        # d_i d_j = d_{j-1} d_i for i < j on every alive tuple
        n = gallery.get_presentation("rp2")
        for k in (1, 2):
            for t in n.tuples(k + 1):
                for j in range(1, k + 2):
                    for i in range(j):
                        left = n.degeneracy(k, i, n.degeneracy(k + 1, j, t))
                        right = n.degeneracy(k, j - 1,
                                             n.degeneracy(k + 1, i, t))
                        assert left == right


class TestGroupQuotient:
    def test_noncommuting_generators_rejected(self):
        flip = Generator(2, AffineMap([[Scalar.of(-1)]], [Scalar.of(0)]))
        shift = Generator(0, AffineMap.translation([Scalar.of(1)]))
        with pytest.raises(ParseError, match="commute"):
            GroupQuotient(1, [flip, shift], free=False,
                          function_class_degree=2)

    def test_torsion_identity_enforced(self):
        # an order-2 label on a translation is inconsistent
        shift = Generator(2, AffineMap.translation([Scalar.of(1)]))
        with pytest.raises(ParseError):
            GroupQuotient(1, [shift], free=False, function_class_degree=2)

    def test_canonical_torsion_reduction(self):
        z2 = gallery.get_presentation("z2-reflection")
        assert z2.k_canonical((5,)) == (1,)
        assert z2.k_add((1,), (1,)) == (0,)

    def test_action_is_a_homomorphism(self):
        it = gallery.get_presentation("irrational-torus")
        rng = random.Random(3)
        for _ in range(20):
            k1, k2 = it.random_k(rng), it.random_k(rng)
            y = it.random_point(rng)
            both = it.act_point(it.act_point(y, k1), k2)
            assert both == it.act_point(y, it.k_add(k1, k2))

    def test_translation_action_value(self):
        it = gallery.get_presentation("irrational-torus")
        y = (Scalar.of(0),)
        assert it.act_point(y, (2, 3)) == (Scalar.of(2) + ALPHA * 3,)

    def test_simplicial_identity_on_points(self):
        rng = random.Random(5)
        for name in ("irrational-torus", "z2-reflection"):
            pres = gallery.get_presentation(name)
            for k in (1, 2):
                for _ in range(10):
                    pt = (pres.random_point(rng),
                          tuple(pres.random_k(rng) for _ in range(k + 1)))
                    for j in range(1, k + 2):
                        for i in range(j):
                            left = pres.degeneracy_point(
                                k, i, pres.degeneracy_point(k + 1, j, pt))
                            right = pres.degeneracy_point(
                                k, j - 1, pres.degeneracy_point(k + 1, i, pt))
                            assert left == right

    def test_finite_enumeration(self):
        z2 = gallery.get_presentation("z2-reflection")
        assert z2.is_finite() and z2.k_order() == 2
        it = gallery.get_presentation("irrational-torus")
        assert not it.is_finite()
        with pytest.raises(DegreeError):
            it.k_elements()


class TestMorphisms:
    def test_nerve_morphism_checks_tuples(self):
        c3 = gallery.get_presentation("circle3")
        # a target whose charts never meet cannot receive the arc overlaps
        disjoint = FiniteNerve.from_facets(2, [(0,), (1,)], k_max=4)
        with pytest.raises(CompatibilityError):
            PresentationMorphism(c3, disjoint, index_map=[0, 1, 0])

    def test_double_cover_is_compatible(self):
        m = gallery.circle_double_cover()
        assert m.map_tuple((0, 5)) == (0, 2)

    def test_quotient_morphism_intertwines(self):
        m = gallery.line_to_irrational_torus()
        assert m.map_k(()) == (0, 0)
        # a non-equivariant map is rejected
        it = gallery.get_presentation("irrational-torus")
        crz = gallery.get_presentation("circle-rz")
        with pytest.raises(CompatibilityError):
            PresentationMorphism(
                crz, it,
                affine=AffineMap([[Scalar.of(2)]], [Scalar.of(0)]),
                hom=[(1, 0)],
            )

    def test_identity_refinement(self):
        c3 = gallery.get_presentation("circle3")
        s, mq, mr = common_refinement(c3, c3)
        assert s == c3
        assert mq.map_tuple((0, 1)) == (0, 1)


class TestCircleNerves:
    def test_three_arc_cover(self):
        arcs = [(Fraction(j, 3), Fraction(5, 12)) for j in range(3)]
        n = circle_arc_nerve(arcs, k_max=4)
        assert n.tuples(1) == [(0, 1), (0, 2), (1, 2)]
        assert n.tuples(2) == []

    def test_six_arc_cover_adjacency(self):
        arcs = [(Fraction(j, 6), Fraction(5, 24)) for j in range(6)]
        n = circle_arc_nerve(arcs, k_max=4)
        assert n.tuples(1) == [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]

    def test_common_refinement_covers_circle(self):
        s, mq, mr = gallery.circle_refinement()
        assert s.kind == "nerve"
        assert len(s.charts) == 12
        # both refinement maps send alive tuples to alive tuples
        for t in s.tuples(1):
            assert mq.target.is_alive(sorted(set(mq.map_tuple(t))))
            assert mr.target.is_alive(sorted(set(mr.map_tuple(t))))

    def test_distinct_nerves_need_joint_data(self):
        c3 = gallery.get_presentation("circle3")
        c6 = gallery.get_presentation("circle6")
        with pytest.raises(CompatibilityError):
            common_refinement(c3, c6)
