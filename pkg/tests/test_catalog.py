import pytest

from picn.catalog import (
    SubgroupClassCatalog,
    brute_force_classes,
    perfect_subgroups,
    read_catalog,
    subgroup_conjugacy_classes,
    write_catalog,
)
from picn.perms import DomainError, PermutationGroup, is_conjugate_subgroup


class TestPerfectSeeds:
    def test_orders_and_orbits(self):
        seeds = perfect_subgroups(8)
        facts = sorted((g.order(), g.orbit_sizes()) for g in seeds)
        assert (60, (5, 1, 1, 1)) in facts
        assert (60, (6, 1, 1)) in facts
        assert (360, (6, 1, 1)) in facts
        assert (2520, (7, 1)) in facts
        assert (20160, (8,)) in facts
        assert (168, (7, 1)) in facts
        assert (168, (8,)) in facts
        assert (1344, (8,)) in facts
        assert len(seeds) == 8

    def test_seeds_are_perfect(self):
        # commutator closure has full order
        for g in perfect_subgroups(6):
            elems = sorted(g.elements())
            comms = {a * b * a.inverse() * b.inverse() for a in elems for b in elems}
            assert PermutationGroup(sorted(comms), g.degree).order() == g.order()


class TestSmallDegrees:
    def test_degree_4_both_methods(self):
        assert len(subgroup_conjugacy_classes(4)) == 11
        assert len(brute_force_classes(4)) == 11

    def test_degree_5_both_methods(self):
        assert len(subgroup_conjugacy_classes(5)) == 19
        assert len(brute_force_classes(5)) == 19

    def test_no_two_reps_conjugate_degree_5(self):
        cat = subgroup_conjugacy_classes(5)
        for i in range(len(cat)):
            for j in range(i + 1, len(cat)):
                assert is_conjugate_subgroup(cat[i], cat[j]) is None

    def test_deterministic_order(self):
        a = subgroup_conjugacy_classes(5)
        b = subgroup_conjugacy_classes(5)
        assert [g.elements() for g in a] == [g.elements() for g in b]

    def test_classes_sorted_by_order(self):
        cat = subgroup_conjugacy_classes(5)
        orders = [g.order() for g in cat]
        assert orders == sorted(orders)

    def test_every_subgroup_of_s4_is_covered(self):
        from picn.perms import all_subgroups

        cat = subgroup_conjugacy_classes(4)
        subs = all_subgroups(PermutationGroup.symmetric(4))
        for sub in subs:
            assert any(is_conjugate_subgroup(sub, rep) is not None for rep in cat)

    def test_degree_too_large(self):
        with pytest.raises(DomainError):
            subgroup_conjugacy_classes(9)
        with pytest.raises(DomainError):
            brute_force_classes(7)


class TestTextFormat:
    def test_round_trip(self, tmp_path):
        cat = subgroup_conjugacy_classes(4)
        path = tmp_path / "s4.cat"
        write_catalog(cat, path)
        loaded = read_catalog(path)
        assert loaded.degree == 4
        assert loaded.provenance == "imported-file"
        assert len(loaded) == len(cat)
        for a, b in zip(cat, loaded):
            assert a.elements() == b.elements()

    def test_comments_and_header(self, tmp_path):
        path = tmp_path / "toy.cat"
        path.write_text(
            "# a comment line\ndegree: 4\n# another\nV4: (1,2)(3,4); (1,3)(2,4)  # inline\nC2: (1,2)\n",
            encoding="utf-8",
        )
        cat = read_catalog(path)
        assert len(cat) == 2
        assert cat[0].order() == 4
        assert cat[1].order() == 2

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.cat"
        path.write_text("V4: (1,2)(3,4)\n", encoding="utf-8")
        with pytest.raises(DomainError):
            read_catalog(path)
