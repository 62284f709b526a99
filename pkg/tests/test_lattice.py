import numpy as np
import pytest

from picn import exact
from picn.exact import AbelianInvariants
from picn.lattice import (
    GLattice,
    c2_decomposition,
    dual_module,
    fixed_sublattice,
    h1,
    h1_cyclic,
    h1_test,
    h1_via_sylow,
    h2_cyclic,
    natural_module,
    permutation_basis_search,
    permutation_module,
    regular_module,
    restrict,
    sign_module,
    trivial_module,
)
from picn.perms import Permutation, PermutationGroup, parse_cycles, subgroup_classes_in

Z2 = AbelianInvariants((2,))
ZERO = AbelianInvariants()


def P(text, degree):
    return parse_cycles(text, degree)


def c2(degree=2, cycles="(1,2)"):
    return PermutationGroup([P(cycles, degree)], degree)


def brute_force_h1(group, lattice):
    """Oracle: H^1 from the untruncated cocycle complex, all |G|^2 conditions.

    Unknowns are the full 1-cochain f: G -> M; kernel and image taken with
    dense matrices.  Only usable for tiny groups.
    """
    elems = sorted(group.elements())
    r = lattice.rank
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems) * r
    rows = []
    for g in elems:
        ag = lattice.matrix(g)
        for h in elems:
            block = np.zeros((r, n), dtype=np.int64)
            # (delta f)(g, h) = g f(h) - f(gh) + f(g)
            block[:, idx[h] * r : (idx[h] + 1) * r] += np.asarray(ag, dtype=np.int64)
            block[:, idx[g * h] * r : (idx[g * h] + 1) * r] -= np.eye(r, dtype=np.int64)
            block[:, idx[g] * r : (idx[g] + 1) * r] += np.eye(r, dtype=np.int64)
            rows.append(block)
    zmat = exact.kernel(exact.intmat(np.vstack(rows).tolist()))
    bmat = np.vstack([np.asarray(lattice.matrix(g)) - np.eye(r, dtype=np.int64) for g in elems])
    y = exact.solve_int(zmat, exact.intmat(bmat.tolist()))
    assert y is not None
    return exact.cokernel_invariants(y, ambient_rank=zmat.shape[1])


class TestConstructors:
    def test_trivial_module(self):
        m = trivial_module(c2(), 3)
        assert m.rank == 3
        m.verify_relations()

    def test_natural_s6(self):
        s6 = PermutationGroup.symmetric(6)
        m = natural_module(s6)
        assert m.rank == 6
        assert all(sorted(int(x) for x in np.asarray(m.matrix(g)).ravel()) == [0] * 30 + [1] * 6
                   for g in s6.generators)

    def test_regular_c2xc2(self):
        g = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        m = regular_module(g)
        assert m.rank == 4
        m.verify_relations()

    def test_bad_action_rejected(self):
        g = PermutationGroup([P("(1,2,3)", 3)])
        # claims the 3-cycle acts as a transposition: not a homomorphism
        with pytest.raises(Exception):
            permutation_module(g, {g.generators[0]: P("(1,2)", 2)}, 2)

    def test_matrix_by_word(self):
        s4 = PermutationGroup.symmetric(4)
        m = natural_module(s4)
        g = P("(1,3,2,4)", 4)
        mat = m.matrix(g)
        v = exact.matvec(mat, [1, 2, 3, 4])
        # basis vector e_i maps to e_{g(i)}: coordinate j of the image is v[g^{-1}(j)]
        assert [int(x) for x in v] == [4, 3, 1, 2]

    def test_json_round_trip(self):
        g = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        m = regular_module(g)
        text = m.to_json()
        m2 = GLattice.from_json(text)
        assert m2.to_json() == text
        for s in g.generators:
            assert np.array_equal(m.matrix(s), m2.matrix(s))


class TestDual:
    def test_permutation_module_self_dual(self):
        g = c2(4, "(1,2)(3,4)")
        m = natural_module(g)
        d = dual_module(m)
        for s in g.generators:
            assert np.array_equal(m.matrix(s), d.matrix(s))

    def test_sign_self_dual(self):
        g = c2()
        m = sign_module(g, {g.generators[0]: -1})
        d = dual_module(m)
        assert np.array_equal(d.matrix(g.generators[0]), m.matrix(g.generators[0]))

    def test_double_dual_identity(self):
        g = PermutationGroup([P("(1,2,3)", 3)])
        mat = exact.intmat([[0, -1], [1, -1]])  # order 3 in GL_2(Z)
        m = GLattice(g, 2, {g.generators[0]: mat})
        dd = dual_module(dual_module(m))
        assert np.array_equal(dd.matrix(g.generators[0]), mat)


class TestTateCyclic:
    def test_h1_regular_vanishes(self):
        g = c2()
        m = regular_module(g)
        assert h1_cyclic(g.generators[0], m) == ZERO

    def test_h1_sign_is_z2(self):
        g = c2()
        m = sign_module(g, {g.generators[0]: -1})
        assert h1_cyclic(g.generators[0], m) == Z2

    def test_h2_trivial_module(self):
        g = c2()
        m = trivial_module(g, 1)
        assert h2_cyclic(g.generators[0], m) == Z2

    def test_h2_regular(self):
        g = c2()
        m = regular_module(g)
        assert h2_cyclic(g.generators[0], m) == ZERO

    def test_any_permuted_basis_h1_zero(self):
        for text, deg in [("(1,2,3)", 3), ("(1,2)(3,4,5)", 5), ("(1,2,3,4,5,6)", 6)]:
            g = PermutationGroup([P(text, deg)], deg)
            assert h1_cyclic(g.generators[0], natural_module(g)) == ZERO


class TestH1FullComplex:
    def test_matches_brute_force_on_small_modules(self):
        cases = []
        v4 = PermutationGroup([P("(1,2)", 4), P("(3,4)", 4)])
        cases.append((v4, natural_module(v4)))
        cases.append((v4, regular_module(v4)))
        s3 = PermutationGroup.symmetric(3)
        cases.append((s3, natural_module(s3)))
        sign = sign_module(v4, {v4.generators[0]: -1, v4.generators[1]: -1})
        cases.append((v4, sign))
        for group, mod in cases:
            assert h1(group, mod) == brute_force_h1(group, mod)

    def test_matches_cyclic_path(self):
        # same value out of the complex and out of the Tate fast path
        for text, deg in [("(1,2)", 2), ("(1,2,3)", 3), ("(1,2,3,4)", 4), ("(1,2)(3,4,5)", 5)]:
            g = PermutationGroup([P(text, deg)], deg)
            for mod in (natural_module(g), regular_module(g)):
                gen = g.generators[0]
                # force the complex route by passing a redundant generating set
                g2 = PermutationGroup([gen, gen * gen], deg)
                mod2 = permutation_module(
                    g2, {s: s for s in g2.generators}, deg
                )
                assert h1(g2, mod2) == h1_cyclic(gen, mod)

    def test_sign_module_of_v4(self):
        v4 = PermutationGroup([P("(1,2)", 4), P("(3,4)", 4)])
        m = sign_module(v4, {v4.generators[0]: -1, v4.generators[1]: 1})
        assert h1(v4, m) == brute_force_h1(v4, m)

    def test_shapiro_s6_transitive_module(self):
        # H^1(G, Z[S6/S5]) = 0 for assorted subgroups of S6
        s6 = PermutationGroup.symmetric(6)
        m = natural_module(s6)
        for spec in ["(1,2)(3,4)", "(1,2,3,4,5,6)", "(1,2,5,6)", "(1,2)(3,4)(5,6)"]:
            g = PermutationGroup([P(spec, 6)], 6)
            assert h1_cyclic(g.generators[0], m) == ZERO
        v4 = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        assert h1(v4, restrict(m, v4)) == ZERO


class TestFixedSublattice:
    def test_trivial_group_full(self):
        g = c2()
        m = regular_module(g)
        f = fixed_sublattice(m, [])
        assert f.shape == (2, 2)

    def test_c2_swap(self):
        g = c2()
        m = natural_module(g)
        f = fixed_sublattice(m, g.generators[0])
        assert f.shape == (2, 1)
        assert sorted(int(x) for x in f.ravel()) == [1, 1]

    def test_saturation(self):
        # (1,2) acting on Z^2 by swap: fixed lattice spanned by (1,1), and the
        # quotient by it must be torsion-free
        g = c2()
        m = natural_module(g)
        f = fixed_sublattice(m, g.generators[0])
        assert exact.snf_diagonal(f) == [1]


class TestRestrict:
    def test_restrict_to_trivial(self):
        g = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        m = regular_module(g)
        t = restrict(m, PermutationGroup.trivial(6))
        assert t.rank == m.rank
        for s in t.group.generators:
            assert np.array_equal(t.matrix(s), exact.identity(4))

    def test_regular_v4_to_c2_is_free(self):
        g = PermutationGroup([P("(1,2)", 4), P("(3,4)", 4)])
        m = regular_module(g)
        sub = PermutationGroup([g.generators[0]], 4)
        r = restrict(m, sub)
        assert h1_cyclic(sub.generators[0], r) == ZERO
        assert h2_cyclic(sub.generators[0], r) == ZERO
        a, b, c = c2_decomposition(r)
        assert (a, b, c) == (0, 0, 2)  # Z[C2]^2


class TestC2Decomposition:
    def test_trivial_rank1(self):
        g = c2()
        assert c2_decomposition(trivial_module(g, 1)) == (1, 0, 0)

    def test_sign(self):
        g = c2()
        assert c2_decomposition(sign_module(g, {g.generators[0]: -1})) == (0, 1, 0)

    def test_regular(self):
        g = c2()
        assert c2_decomposition(regular_module(g)) == (0, 0, 1)

    def test_direct_sum_model(self):
        # Z^2 + Z^- + Z[C2]: block-diagonal action
        g = c2()
        s = g.generators[0]
        mat = exact.intmat(
            [
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, -1, 0, 0],
                [0, 0, 0, 0, 1],
                [0, 0, 0, 1, 0],
            ]
        )
        m = GLattice(g, 5, {s: mat})
        assert c2_decomposition(m) == (2, 1, 1)
        assert h1_cyclic(s, m) == Z2
        assert h2_cyclic(s, m) == AbelianInvariants((2, 2))

    def test_wrong_group_rejected(self):
        g = PermutationGroup([P("(1,2,3)", 3)])
        with pytest.raises(Exception):
            c2_decomposition(natural_module(g))


class TestH1Test:
    def test_permutation_module_passes(self):
        v4 = PermutationGroup([P("(1,2)", 4), P("(3,4)", 4)])
        ok, witness = h1_test(v4, regular_module(v4))
        assert ok and witness is None

    def test_sign_fails_with_witness(self):
        g = c2()
        ok, witness = h1_test(g, sign_module(g, {g.generators[0]: -1}))
        assert not ok
        assert witness.order() == 2


class TestSylowCertification:
    def test_s3_natural(self):
        s3 = PermutationGroup.symmetric(3)
        val, details = h1_via_sylow(s3, natural_module(s3))
        assert val == ZERO
        assert set(details) == {2, 3}

    def test_nonzero_part_reported(self):
        g = c2()
        val, details = h1_via_sylow(g, sign_module(g, {g.generators[0]: -1}))
        assert val is None
        assert details[2] == Z2


class TestPermutationBasisSearch:
    def test_regular_v4_certified(self):
        v4 = PermutationGroup([P("(1,2)(5,6)", 6), P("(3,4)(5,6)", 6)])
        m = regular_module(v4)
        report = permutation_basis_search(m)
        assert report.status == "certified"
        assert report.summands[0][2] == 1  # one copy of Z[G]
        assert report.summands[0][1] == 4

    def test_sign_not_permutation(self):
        g = c2()
        report = permutation_basis_search(sign_module(g, {g.generators[0]: -1}))
        assert report.status == "not-permutation"
        assert "trace" in report.obstruction or "H^1" in report.obstruction

    def test_mixed_module_summands(self):
        # Z + Z[C2] with permuted basis, shuffled by a unimodular conjugation
        g = c2()
        s = g.generators[0]
        base = exact.intmat([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        u = exact.intmat([[1, 2, 0], [0, 1, 1], [0, 0, 1]])
        ui = exact.integer_inverse(u)
        assert ui is not None
        mat = exact.matmul(exact.matmul(u, base), ui)
        m = GLattice(g, 3, {s: mat})
        # seed with images of unit vectors and their orbit sums
        seeds = [exact.identity(3)[:, i] for i in range(3)]
        seeds += [exact.matvec(u, v) for v in np.eye(3, dtype=np.int64).T]
        report = permutation_basis_search(m, seeds=seeds)
        assert report.status == "certified"
        sizes = sorted(size for _, size, mult in report.summands for _ in range(mult))
        assert sizes == [1, 2]
