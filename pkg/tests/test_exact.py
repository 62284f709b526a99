import itertools
import random
from math import gcd

import numpy as np
import pytest

from picn import exact
from picn.exact import (
    AbelianInvariants,
    RowEchelonAccumulator,
    cokernel_invariants,
    column_hnf,
    identity,
    integer_inverse,
    intmat,
    is_unimodular,
    kernel,
    lattice_equal,
    lattice_index,
    matmul,
    smith_normal_form,
    snf_diagonal,
    solve_int,
)


def minors_gcd_invariants(a):
    """Oracle: invariant factors via gcds of k x k minors (exact, Fraction-free)."""
    a = [[int(x) for x in row] for row in np.asarray(a)]
    m, n = len(a), len(a[0]) if a else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                sub = [[a[r][c] for c in cols] for r in rows]
                g = gcd(g, _det(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * _det(minor)
    return total


class TestSmithNormalForm:
    def test_identity(self):
        d, l, r = smith_normal_form(identity(3))
        assert np.array_equal(d, identity(3))

    def test_diag_2_3(self):
        d, _, _ = smith_normal_form(intmat([[2, 0], [0, 3]]))
        assert [int(d[i, i]) for i in range(2)] == [1, 6]

    def test_2x2_derived(self):
        # gcd of entries 2, gcd of 2x2 minors 8: invariant factors (2, 8/2)
        a = intmat([[2, 4], [6, 8]])
        assert minors_gcd_invariants(a) == [2, 4]
        d, _, _ = smith_normal_form(a)
        assert [int(d[i, i]) for i in range(2)] == [2, 4]

    def test_round_trip_random(self):
        rng = random.Random(2024)
        for trial in range(200):
            m = rng.randint(1, 30)
            n = rng.randint(1, 30)
            a = intmat([[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)])
            d, l, r = smith_normal_form(a)
            assert np.array_equal(matmul(matmul(l, a), r), d), f"trial {trial}"
            assert is_unimodular(l) and is_unimodular(r)
            diag = [int(d[i, i]) for i in range(min(m, n))]
            for x, y in zip(diag, diag[1:]):
                if x != 0:
                    assert y % x == 0 or y == 0
            assert not np.any(d[~np.eye(*d.shape, dtype=bool)] != 0)

    def test_against_minor_oracle(self):
        rng = random.Random(99)
        for _ in range(40):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            expected = [v for v in minors_gcd_invariants(a)]
            got = snf_diagonal(intmat(a))
            assert got == [v for v in expected if v != 0][: len(got)] or got == expected

    def test_big_entries_promote(self):
        a = intmat([[2**40, 1], [1, 2**40]])
        d, l, r = smith_normal_form(a)
        assert np.array_equal(matmul(matmul(l, a), r), d)
        assert [int(d[i, i]) for i in range(2)] == [1, 2**80 - 1]


class TestCokernel:
    def test_zero_matrix(self):
        inv = cokernel_invariants(intmat([[0, 0], [0, 0]]))
        assert inv == AbelianInvariants((), 2)

    def test_diag_1_2(self):
        assert cokernel_invariants(intmat([[1, 0], [0, 2]])) == AbelianInvariants((2,))

    def test_z2_plus_z(self):
        assert cokernel_invariants(intmat([[2, 0], [0, 0]])) == AbelianInvariants((2,), 1)

    def test_rendering(self):
        assert str(AbelianInvariants()) == "0"
        assert str(AbelianInvariants((2,))) == "Z/2"
        assert str(AbelianInvariants((2, 4))) == "Z/2+Z/4"
        assert str(AbelianInvariants((), 1)) == "Z"
        assert str(AbelianInvariants((), 3)) == "Z^3"
        assert str(AbelianInvariants((2,), 1)) == "Z/2+Z"


class TestKernel:
    def test_simple(self):
        k = kernel(intmat([[1, 1, 1]]))
        assert k.shape == (3, 2)
        assert not np.any(matmul(intmat([[1, 1, 1]]), k) != 0)

    def test_saturated(self):
        # kernel of [2 -2] is spanned by (1,1), not (2,2)
        k = kernel(intmat([[2, -2]]))
        assert k.shape == (2, 1)
        assert sorted(abs(int(x)) for x in k.ravel()) == [1, 1]

    def test_random_kernels(self):
        rng = random.Random(5)
        for _ in range(60):
            m, n = rng.randint(1, 8), rng.randint(1, 8)
            a = intmat([[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
            k = kernel(a)
            if k.shape[1]:
                assert not np.any(matmul(a, k) != 0)
            assert exact.rank(a) + k.shape[1] == n
            # saturation: the kernel columns extend to a basis iff SNF is all ones
            if k.shape[1]:
                assert snf_diagonal(k) == [1] * k.shape[1]

    def test_tall_matrix_goes_through_accumulator(self):
        rng = random.Random(6)
        base = [[rng.randint(-4, 4) for _ in range(6)] for _ in range(3)]
        rows = []
        for _ in range(40):
            c = [rng.randint(-3, 3) for _ in range(3)]
            rows.append([sum(c[i] * base[i][j] for i in range(3)) for j in range(6)])
        a = intmat(rows)
        k = kernel(a)
        assert not np.any(matmul(a, k) != 0)
        assert exact.rank(a) + k.shape[1] == 6


class TestAccumulator:
    def test_rank_matches(self):
        rng = random.Random(11)
        a = [[rng.randint(-5, 5) for _ in range(7)] for _ in range(20)]
        acc = RowEchelonAccumulator(7)
        acc.add_block(intmat(a))
        assert acc.rank == exact.rank(intmat(a))
        # same solution space
        k1 = kernel(acc.matrix())
        k2 = kernel(intmat(a))
        assert lattice_equal(k1, k2)


class TestHNF:
    def test_canonical_under_column_ops(self):
        rng = random.Random(3)
        for _ in range(40):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            a = intmat([[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
            u = identity(n)
            # random unimodular column mix
            for _ in range(10):
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    u[:, i] += rng.randint(-3, 3) * u[:, j]
            b = matmul(a, u)
            assert lattice_equal(a, b)

    def test_distinguishes_lattices(self):
        a = intmat([[1, 0], [0, 1]])
        b = intmat([[1, 0], [0, 2]])
        assert not lattice_equal(a, b)

    def test_index(self):
        ambient = identity(2)
        sub = intmat([[1, 1], [1, -1]])
        assert lattice_index(sub, ambient) == 2
        assert lattice_index(intmat([[2, 0], [0, 1]]), ambient) == 2
        assert lattice_index(ambient, sub) is None


class TestSolve:
    def test_exact_solution(self):
        a = intmat([[2, 0], [0, 3]])
        b = intmat([[4], [9]])
        x = solve_int(a, b)
        assert np.array_equal(matmul(a, x), b)

    def test_no_integer_solution(self):
        a = intmat([[2]])
        assert solve_int(a, intmat([[3]])) is None

    def test_inconsistent(self):
        a = intmat([[1], [1]])
        assert solve_int(a, intmat([[1], [2]])) is None

    def test_inverse(self):
        u = intmat([[1, 2], [0, 1]])
        ui = integer_inverse(u)
        assert np.array_equal(matmul(u, ui), identity(2))
        assert integer_inverse(intmat([[2, 0], [0, 1]])) is None


class TestUnimodular:
    def test_basic(self):
        assert is_unimodular(intmat([[1, 5], [0, -1]]))
        assert not is_unimodular(intmat([[2, 0], [0, 1]]))
        assert not is_unimodular(intmat([[1, 0]]))
