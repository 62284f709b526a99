import json

import pytest

from picn.catalog import subgroup_conjugacy_classes
from picn.exact import AbelianInvariants
from picn.lattice import h1, restrict
from picn.perms import PermutationGroup, contains_conjugate_of, parse_cycles
from picn.picard import build_picard
from picn.survey import (
    StepFailure,
    classify,
    cycle_types,
    cyclic_sweep,
    funnel_counts,
    minimal_obstructed_groups,
    minimal_obstructed_subgroup,
    representative_of_cycle_type,
    survey_run,
    verify_prop_cohomo,
)

Z2 = AbelianInvariants((2,))

import functools


@functools.lru_cache(maxsize=None)
def catalog6():
    return subgroup_conjugacy_classes(6)


@functools.lru_cache(maxsize=None)
def reports6():
    return classify(6, catalog6(), with_h1=True, workers=1)


class TestVerifyProp:
    def test_111(self):
        witness = verify_prop_cohomo(1, 1, 1)
        assert witness.h1_M == Z2
        assert witness.tau_action_table["e0"] == "-e0"
        assert len(witness.q_sigma_basis) == 3  # e0, e1, e2 at n = 6

    def test_n8_triples(self):
        for triple in [(2, 1, 1), (1, 2, 1), (1, 1, 2)]:
            witness = verify_prop_cohomo(*triple)
            assert witness.h1_M == Z2

    def test_zero_zero_m(self):
        witness = verify_prop_cohomo(0, 0, 3)
        assert witness.h1_Q_sigma == Z2  # the quotient keeps cohomology
        assert witness.h1_M.is_trivial()  # the lattice itself does not

    def test_w_v_pairs_show_up(self):
        witness = verify_prop_cohomo(1, 1, 2)  # n = 8, one w/v pair
        names = [name for name, _ in witness.q_sigma_basis]
        assert "w3" in names and "v3" in names
        assert witness.tau_action_table["w3"] == "v3"

    def test_free_pairing_in_n_sigma(self):
        witness = verify_prop_cohomo(1, 1, 1)
        # at n = 6 the deep labels are the six 2-subsets of {1..4};
        # sigma = (1,2)(3,4) has two fixed labels and two swapped pairs
        assert len(witness.n_sigma_basis) == 4

    def test_mixed_zero_triple_aborts_with_step(self):
        # sigma = (1,2) fixes deep labels that tau moves to themselves:
        # freeness of N^sigma fails and the pipeline must say where
        with pytest.raises(StepFailure) as info:
            verify_prop_cohomo(1, 0, 2)
        assert info.value.step == 4


class TestClassifyN6:
    def test_catalog_size(self):
        assert len(catalog6()) == 56

    def test_obstructed_classes_contain_gprime(self):
        # every class with nonvanishing H^1 contains the pair group; the
        # converse fails (see the regression case below), matching the
        # subgroup-quantified reading of the criterion
        gprime = minimal_obstructed_subgroup(6)
        obstructed = [r for r in reports6() if not r.h1_M.is_trivial()]
        assert obstructed, "the pair group class itself must appear"
        for r in obstructed:
            assert contains_conjugate_of(r.group, gprime) is not None, r.group
            assert r.h1_M == Z2

    def test_h1_not_monotone_under_containment(self):
        # <(1,2),(3,4),(5,6)> contains the obstructed Klein group yet has
        # vanishing H^1 of its own: only the subgroup-quantified criterion
        # propagates upward
        full = next(
            r
            for r in reports6()
            if r.order == 8
            and r.flags["contains_Gprime"]
            and r.h1_M.is_trivial()
        )
        assert full.h1_M.is_trivial()

    def test_h1_Q_always_zero_or_z2(self):
        for r in reports6():
            assert str(r.h1_Q) in ("0", "Z/2"), r.group

    def test_h1_M_always_zero_or_z2(self):
        for r in reports6():
            assert str(r.h1_M) in ("0", "Z/2"), r.group

    def test_funnel_partition(self):
        counts = funnel_counts(reports6())
        staged = sum(v for k, v in counts.items() if k != "remainder-total")
        assert staged == 56

    def test_stages_disjoint_and_ordered(self):
        for r in reports6():
            if r.stage == "contains-obstructed-pair-group":
                assert r.flags["contains_Gprime"]
            elif r.stage == "fixes-point":
                assert not r.flags["contains_Gprime"] and r.flags["fixes_point"]
            elif r.stage == "fixes-pair":
                assert not r.flags["fixes_point"] and r.flags["fixes_pair"]

    def test_minimal_obstructed_n6(self):
        minimal = minimal_obstructed_groups(6, catalog6())
        assert len(minimal) == 1
        group, val = minimal[0]
        assert val == Z2
        gprime = minimal_obstructed_subgroup(6)
        from picn.perms import is_conjugate_subgroup

        assert is_conjugate_subgroup(group, gprime) is not None

    def test_no_cyclic_class_obstructed(self):
        for r in reports6():
            if len([g for g in r.group.generators]) == 1 or r.order == 1:
                assert r.h1_M.is_trivial()

    def test_criterion_failure_propagates_upward(self):
        # the subgroup-quantified criterion is monotone: a class containing
        # an obstructed class fails it, whatever its own H^1 does
        from picn.lattice import h1_test
        from picn.picard import build_picard
        from picn.lattice import restrict

        m = build_picard(6)
        gprime = minimal_obstructed_subgroup(6)
        for r in reports6():
            if r.order <= 16 and r.flags["contains_Gprime"]:
                ok, witness = h1_test(r.group, restrict(m, r.group, verify=False),
                                      include_dual=False)
                assert not ok, r.group
                assert witness is not None


class TestCyclicSweep:
    def test_cycle_type_count(self):
        assert len(cycle_types(6)) == 11
        assert len(cycle_types(8)) == 22

    def test_representative(self):
        g = representative_of_cycle_type((3, 2, 1), 6)
        assert g.cycle_type() == (3, 2, 1)

    def test_n6_all_vanish(self):
        rows, counterexamples = cyclic_sweep(6)
        assert len(rows) == 11
        assert counterexamples == []

    def test_q_distinguishes(self):
        # same sweep logic applied to the quotient finds the nonzero class
        from picn.lattice import h1_cyclic
        from picn.picard import NQPair

        pair = NQPair(build_picard(6))
        g = parse_cycles("(1,2)(3,4)(5,6)", 6)
        assert h1_cyclic(g, pair.Q) == Z2


class TestSurveyRun:
    def test_json_document(self, tmp_path):
        out = tmp_path / "survey6.json"
        doc = survey_run(6, catalog6(), out_path=out, with_h1=False)
        assert doc["meta"]["n"] == 6
        assert doc["meta"]["catalog_size"] == 56
        loaded = json.loads(out.read_text())
        assert loaded["funnel"] == doc["funnel"]
        assert (tmp_path / "survey6.csv").exists()
        csv_text = (tmp_path / "survey6.csv").read_text()
        assert csv_text.count("\n") == 57  # header + 56 classes

    def test_deterministic_across_workers(self):
        from picn.catalog import SubgroupClassCatalog

        slim = SubgroupClassCatalog(6, catalog6().classes[:20], catalog6().provenance)
        a = classify(6, slim, with_h1=True, workers=1)
        b = classify(6, slim, with_h1=True, workers=2)
        assert [r.to_json_dict() for r in a] == [r.to_json_dict() for r in b]
