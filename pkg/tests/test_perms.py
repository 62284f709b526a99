import random

import pytest

from picn.perms import (
    DomainError,
    Permutation,
    PermutationGroup,
    all_subgroups,
    contains_conjugate_of,
    iota_generators,
    is_conjugate_subgroup,
    parse_cycles,
    subgroup_classes_in,
    sylow_subgroup,
)


def P(text, degree):
    return parse_cycles(text, degree)


class TestParseCycles:
    def test_identity(self):
        assert parse_cycles("()", 6).is_identity()
        assert parse_cycles("", 6).is_identity()

    def test_iota1_example(self):
        # images of (1,2)(5,6) on 6 points
        assert parse_cycles("(1,2)(5,6)", 6).images == [2, 1, 3, 4, 6, 5]

    def test_four_cycle(self):
        g = parse_cycles("(1,2,5,6)", 6)
        assert g(1) == 2 and g(2) == 5 and g(5) == 6 and g(6) == 1
        assert g(3) == 3 and g(4) == 4

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(50):
            images = list(range(8))
            rng.shuffle(images)
            g = Permutation(images)
            assert parse_cycles(g.print_cycles(), 8) == g

    def test_overlapping_left_to_right(self):
        # (1,2) applied first, then (2,3): 1 -> 2 -> 3
        g = parse_cycles("(1,2)(2,3)", 3)
        assert g(1) == 3 and g(2) == 1 and g(3) == 2

    def test_errors(self):
        with pytest.raises(DomainError):
            parse_cycles("(1,7)", 6)
        with pytest.raises(DomainError):
            parse_cycles("(1,2", 6)
        with pytest.raises(DomainError):
            parse_cycles("(1,1)", 6)


class TestPermutation:
    def test_group_axioms(self):
        rng = random.Random(13)
        perms = []
        for _ in range(6):
            images = list(range(7))
            rng.shuffle(images)
            perms.append(Permutation(images))
        for a in perms:
            assert (a * a.inverse()).is_identity()
            for b in perms:
                for c in perms:
                    assert (a * b) * c == a * (b * c)

    def test_composition_convention(self):
        # (p * q)(x) = p(q(x))
        p = P("(1,2)", 3)
        q = P("(2,3)", 3)
        assert (p * q)(3) == p(2) == 1

    def test_order_and_cycle_type(self):
        g = P("(1,2,3)(4,5)", 6)
        assert g.order() == 6
        assert g.cycle_type() == (3, 2, 1)

    def test_conjugate_by(self):
        g = P("(1,2)", 4)
        w = P("(1,3)(2,4)", 4)
        assert g.conjugate_by(w) == P("(3,4)", 4)


class TestEnumerateElements:
    def test_single_transposition(self):
        assert PermutationGroup([P("(1,2)", 4)]).order() == 2

    def test_s3(self):
        assert PermutationGroup([P("(1,2,3)", 3), P("(1,2)", 3)]).order() == 6

    def test_klein_four(self):
        g = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        assert g.order() == 4

    def test_sn_orders(self):
        import math

        for n in range(2, 7):
            assert PermutationGroup.symmetric(n).order() == math.factorial(n)

    def test_closure_idempotent(self):
        g = PermutationGroup([P("(1,2,3,4)", 5), P("(1,2)", 5)])
        first = g.elements()
        assert g.elements() is first
        closed = {a * b for a in first for b in first}
        assert closed == set(first)
        assert {a.inverse() for a in first} == set(first)


class TestIotaGenerators:
    def test_111(self):
        i1, i2 = iota_generators(1, 1, 1)
        assert i1 == P("(1,2)(5,6)", 6)
        assert i2 == P("(3,4)(5,6)", 6)

    def test_211(self):
        i1, i2 = iota_generators(2, 1, 1)
        assert i1 == P("(1,2)(3,4)(7,8)", 8)
        assert i2 == P("(5,6)(7,8)", 8)

    def test_003(self):
        i1, i2 = iota_generators(0, 0, 3)
        assert i1 == i2 == P("(1,2)(3,4)(5,6)", 6)
        assert PermutationGroup([i1, i2]).order() == 2

    def test_commuting_involutions_of_order_at_most_4(self):
        for triple in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (0, 1, 2), (2, 0, 1), (3, 2, 1)]:
            i1, i2 = iota_generators(*triple)
            assert (i1 * i1).is_identity()
            assert (i2 * i2).is_identity()
            assert i1 * i2 == i2 * i1
            assert PermutationGroup([i1, i2]).order() <= 4

    def test_domain(self):
        with pytest.raises(DomainError):
            iota_generators(1, 0, 0)


class TestOddOrbit:
    def test_fixed_point_free_involution(self):
        assert not PermutationGroup([P("(1,2)(3,4)(5,6)", 6)]).has_odd_orbit()

    def test_three_cycle_with_fixed_points(self):
        assert PermutationGroup([P("(1,2,3)", 6)]).has_odd_orbit()

    def test_k0_at_degree_8(self):
        g = PermutationGroup([P("(1,2)(3,4)(5,6)(7,8)", 8), P("(1,3)(2,4)(5,7)(6,8)", 8)])
        assert not g.has_odd_orbit()
        assert g.orbit_sizes() == (4, 4)


class TestConjugacy:
    def test_simple_witness(self):
        g1 = PermutationGroup([P("(1,2)", 4)])
        g2 = PermutationGroup([P("(3,4)", 4)])
        w = is_conjugate_subgroup(g1, g2)
        assert w is not None
        assert {g.conjugate_by(w) for g in g1.elements()} == set(g2.elements())

    def test_distinct_cycle_types(self):
        g1 = PermutationGroup([P("(1,2)", 4)])
        g2 = PermutationGroup([P("(1,2)(3,4)", 4)])
        assert is_conjugate_subgroup(g1, g2) is None

    def test_two_a5_classes_in_s8(self):
        a5_nat = PermutationGroup([P("(1,2,3)", 8), P("(1,2,3,4,5)", 8)])
        # PSL(2,5) acting on the projective line over F5, then 2 fixed points
        a5_six = PermutationGroup([P("(1,2,3,4,5)", 8), P("(1,6)(2,5)", 8)])
        assert a5_nat.order() == 60
        assert a5_six.order() == 60
        assert a5_nat.orbit_sizes() == (5, 1, 1, 1)
        assert a5_six.orbit_sizes() == (6, 1, 1)
        assert is_conjugate_subgroup(a5_nat, a5_six) is None

    def test_equivalence_on_random_subgroups_of_s5(self):
        rng = random.Random(42)
        s5 = sorted(PermutationGroup.symmetric(5).elements())
        groups = []
        while len(groups) < 8:
            gens = rng.sample(s5, 2)
            g = PermutationGroup(gens, 5)
            if g.order() < 120:
                groups.append(g)
        for g in groups:
            w = is_conjugate_subgroup(g, g)
            assert w is not None  # reflexive
        for g1 in groups:
            for g2 in groups:
                w = is_conjugate_subgroup(g1, g2)
                if w is None:
                    continue
                conj = {x.conjugate_by(w) for x in g1.elements()}
                assert conj == set(g2.elements())
                # symmetric witness
                wi = w.inverse()
                assert {x.conjugate_by(wi) for x in g2.elements()} == set(g1.elements())

    def test_transitive_witness(self):
        g1 = PermutationGroup([P("(1,2)", 5)])
        g2 = PermutationGroup([P("(2,3)", 5)])
        g3 = PermutationGroup([P("(4,5)", 5)])
        w12 = is_conjugate_subgroup(g1, g2)
        w23 = is_conjugate_subgroup(g2, g3)
        w = w23 * w12
        assert {x.conjugate_by(w) for x in g1.elements()} == set(g3.elements())


class TestContainsConjugate:
    def test_contains(self):
        s4 = PermutationGroup.symmetric(4)
        v4 = PermutationGroup([P("(1,2)", 4), P("(3,4)", 4)])
        assert contains_conjugate_of(s4, v4) is not None

    def test_not_contains(self):
        a4 = PermutationGroup([P("(1,2,3)", 4), P("(1,2)(3,4)", 4)])
        assert a4.order() == 12
        c2 = PermutationGroup([P("(1,2)", 4)])
        assert contains_conjugate_of(a4, c2) is None


class TestSylow:
    def test_s4(self):
        s4 = PermutationGroup.symmetric(4)
        assert sylow_subgroup(s4, 2).order() == 8
        assert sylow_subgroup(s4, 3).order() == 3

    def test_s6(self):
        s6 = PermutationGroup.symmetric(6)
        assert sylow_subgroup(s6, 2).order() == 16
        assert sylow_subgroup(s6, 3).order() == 9
        assert sylow_subgroup(s6, 5).order() == 5


class TestSubgroupSweep:
    def test_subgroups_of_s3(self):
        s3 = PermutationGroup.symmetric(3)
        assert len(all_subgroups(s3)) == 6
        assert len(subgroup_classes_in(s3)) == 4

    def test_subgroups_of_s4(self):
        s4 = PermutationGroup.symmetric(4)
        assert len(all_subgroups(s4)) == 30
        assert len(subgroup_classes_in(s4)) == 11
