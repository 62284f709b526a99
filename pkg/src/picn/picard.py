"""The Picard lattice of the moduli space of n-pointed rational curves.

Basis and boundary dictionary come from the iterated-blowup model of
P^{n-3}: the basis is {H, E_J} with H the hyperplane pullback and E_J the
exceptional classes, J a subset of {1..n-1} of size 1..n-4.  Boundary
divisor classes D_I (I a subset of {1..n} with both sides of size >= 2,
D_I = D_{I^c}) are expressed in this basis and are permuted by relabeling
points, which is how the symmetric-group action is transported to the
whole lattice.
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from math import comb

import numpy as np

from . import exact
from .lattice import GLattice, InternalCheckError
from .perms import DomainError, Permutation, PermutationGroup, parse_cycles

__all__ = [
    "picard_rank",
    "boundary_labels",
    "canonical_boundary_label",
    "boundary_class",
    "PicardModule",
    "build_picard",
    "NQPair",
    "build_NQ",
    "splitting_section",
    "losev_manin_lattice",
]


def picard_rank(n: int) -> int:
    return 2 ** (n - 1) - comb(n, 2) - 1


def kapranov_labels(n: int) -> list:
    """E-labels: subsets of {1..n-1} of size 1..n-4, sorted by (size, tuple)."""
    out = []
    for k in range(1, n - 3):
        for combo in itertools.combinations(range(1, n), k):
            out.append(frozenset(combo))
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


def canonical_boundary_label(n: int, subset) -> frozenset:
    """Canonical representative of {D_I = D_{I^c}}: the side containing n."""
    s = frozenset(subset)
    if any(p < 1 or p > n for p in s):
        raise DomainError(f"label {sorted(s)} is not a subset of 1..{n}")
    if n not in s:
        s = frozenset(range(1, n + 1)) - s
    if not (2 <= len(s) <= n - 2):
        raise DomainError(f"boundary label needs 2 <= |I|, |I^c|; got |I| = {len(s)}")
    return s


def boundary_labels(n: int) -> list:
    """All canonical boundary labels, sorted by (size, tuple)."""
    rest = range(1, n)
    out = []
    for k in range(1, n - 2):
        for combo in itertools.combinations(rest, k):
            out.append(frozenset(combo) | {n})
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


class PicardModule(GLattice):
    """Pic of the n-pointed space as a lattice with the full relabeling action.

    Attributes: ``n``, ``basis_labels`` ("H" then E-label frozensets),
    ``boundary`` mapping canonical boundary labels to coordinate vectors.
    """

    def __init__(self, n: int):
        if n < 5:
            raise DomainError("need n >= 5")
        if n > 12:
            raise DomainError("n > 12 unsupported (dense rank grows past 2000)")
        self.n = n
        rank = picard_rank(n)
        self.rank = rank  # needed by the boundary builders before GLattice.__init__
        self.e_labels = kapranov_labels(n)
        self.basis_labels = ["H"] + self.e_labels
        self.e_index = {lab: i + 1 for i, lab in enumerate(self.e_labels)}
        self._bnd_labels = boundary_labels(n)
        self.boundary = {}
        for lab in self._bnd_labels:
            self.boundary[lab] = self._boundary_vector(lab)
        # H = D_{{3..n}} + sum of D_{J u {n}} over nonempty J in {3..n-1},
        # |J| <= n-4; this exact lift defines the action on H
        self._h_terms = [canonical_boundary_label(n, range(3, n + 1))]
        pool = range(3, n)
        for k in range(1, n - 3):
            for combo in itertools.combinations(pool, k):
                self._h_terms.append(frozenset(combo) | {n})
        hvec = exact.zeros(rank, 1).ravel()
        for lab in self._h_terms:
            hvec += self.boundary[lab]
        if not (hvec[0] == 1 and not np.any(hvec[1:] != 0)):
            raise InternalCheckError("hyperplane lift through boundary classes failed")
        group = PermutationGroup.symmetric(n)
        self._cache = OrderedDict()
        self._cache_cap = 256
        gen_matrices = {g: self._build_matrix(g) for g in group.generators}
        super().__init__(group, rank, gen_matrices, matrix_fn=self._build_matrix, name=f"Pic(n={n})")
        self._verify_generators()

    def _boundary_vector(self, label: frozenset) -> np.ndarray:
        n = self.n
        vec = exact.zeros(self.rank, 1).ravel()
        core = label - {n}
        if len(label) <= n - 3:
            vec[self.e_index[core]] = 1
            return vec
        # |I| = n-2: H minus every exceptional class inside I
        vec[0] = 1
        for k in range(1, n - 3):
            for combo in itertools.combinations(sorted(core), k):
                vec[self.e_index[frozenset(combo)]] = -1
        return vec

    def boundary_class(self, subset) -> np.ndarray:
        return self.boundary[canonical_boundary_label(self.n, subset)].copy()

    def label_image(self, g: Permutation, label: frozenset) -> frozenset:
        return canonical_boundary_label(self.n, (g(p) for p in label))

    def label_permutation(self, g: Permutation) -> dict:
        return {lab: self.label_image(g, lab) for lab in self._bnd_labels}

    def _build_matrix(self, g: Permutation) -> np.ndarray:
        cached = self._cache.get(g)
        if cached is not None:
            self._cache.move_to_end(g)
            return cached
        n = self.n
        m = exact.zeros(self.rank, self.rank)
        for lab, col in self.e_index.items():
            image = self.label_image(g, lab | {n})
            m[:, col] = self.boundary[image]
        hcol = exact.zeros(self.rank, 1).ravel()
        for term in self._h_terms:
            hcol += self.boundary[self.label_image(g, term)]
        m[:, 0] = hcol
        self._cache[g] = m
        if len(self._cache) > self._cache_cap:
            self._cache.popitem(last=False)
        return m

    def _verify_generators(self):
        """Equivariance on every boundary class, for both group generators.

        This pins the action: matrices defined through boundary images
        compose correctly on all of S_n once they permute the boundary
        vectors the same way they permute labels.
        """
        bmat = np.column_stack([self.boundary[lab] for lab in self._bnd_labels])
        col_of = {lab: i for i, lab in enumerate(self._bnd_labels)}
        for g in self.group.generators:
            lhs = exact.matmul(self.matrix(g), bmat)
            perm = [col_of[self.label_image(g, lab)] for lab in self._bnd_labels]
            rhs = bmat[:, perm]
            if not np.array_equal(lhs, rhs):
                raise InternalCheckError(f"boundary equivariance fails for {g.print_cycles()}")

    def boundary_matrix(self) -> np.ndarray:
        return np.column_stack([self.boundary[lab] for lab in self._bnd_labels])

    def boundary_label_list(self) -> list:
        return list(self._bnd_labels)


def build_picard(n: int) -> PicardModule:
    return PicardModule(n)


class NQPair:
    """The boundary-blowdown exact sequence 0 -> N -> M -> Q -> 0.

    N carries the permutation action on boundary labels with both sides of
    size >= 3; Q is realized inside Z^n (basis g_1..g_n permuted by the
    group) as the even-coordinate-sum sublattice with basis
    b_i = g_i + g_n (i < n), b_n = 2 g_n.
    """

    def __init__(self, picard: PicardModule):
        self.picard = picard
        n = picard.n
        self.n = n
        self.n_labels = [lab for lab in picard.boundary_label_list() if 3 <= len(lab) <= n - 3]
        if len(self.n_labels) != picard.rank - n:
            raise InternalCheckError("boundary label count mismatch for N")
        self._n_index = {lab: i for i, lab in enumerate(self.n_labels)}
        group = picard.group
        self.N = GLattice(
            group,
            len(self.n_labels),
            {g: self._n_matrix(g) for g in group.generators},
            matrix_fn=self._n_matrix,
            name=f"N(n={n})",
        )
        if self.n_labels:
            self.embedding_N = np.column_stack([picard.boundary[lab] for lab in self.n_labels])
        else:
            self.embedding_N = exact.zeros(picard.rank, 0)
        self.Q = GLattice(
            group,
            n,
            {g: self._q_matrix(g) for g in group.generators},
            matrix_fn=self._q_matrix,
            name=f"Q(n={n})",
        )
        self.projection = self._projection_matrix()
        self._verify()

    def _n_matrix(self, g: Permutation) -> np.ndarray:
        m = exact.zeros(len(self.n_labels), len(self.n_labels))
        for lab, col in self._n_index.items():
            m[self._n_index[self.picard.label_image(g, lab)], col] = 1
        return m

    def _q_coords(self, avec) -> np.ndarray:
        """Coordinates in the basis b of an even-sum vector of Z^n."""
        n = self.n
        out = exact.zeros(n, 1).ravel()
        out[: n - 1] = avec[: n - 1]
        rest = int(avec[n - 1]) - int(np.sum(avec[: n - 1]))
        if rest % 2 != 0:
            raise InternalCheckError("vector is not in the even-sum sublattice")
        out[n - 1] = rest // 2
        return out

    def _q_matrix(self, g: Permutation) -> np.ndarray:
        n = self.n
        m = exact.zeros(n, n)
        for i in range(1, n):
            avec = exact.zeros(n, 1).ravel()
            avec[g(i) - 1] += 1
            avec[g(n) - 1] += 1
            m[:, i - 1] = self._q_coords(avec)
        avec = exact.zeros(n, 1).ravel()
        avec[g(n) - 1] = 2
        m[:, n - 1] = self._q_coords(avec)
        return m

    def _pair_image(self, label: frozenset):
        """For a boundary label with a 2-element side, that side; else None."""
        n = self.n
        if len(label) == 2:
            return tuple(sorted(label))
        if len(label) == n - 2:
            return tuple(sorted(frozenset(range(1, n + 1)) - label))
        return None

    def _projection_matrix(self) -> np.ndarray:
        pic = self.picard
        n = self.n
        cols = []
        # H projects to g_1 + ... + g_{n-1} + (n-3) g_n
        avec = np.ones(n, dtype=np.int64)
        avec[n - 1] = n - 3
        cols.append(self._q_coords(avec))
        for lab in pic.e_labels:
            pair = self._pair_image(lab | {n})
            avec = exact.zeros(n, 1).ravel()
            if pair is not None:
                avec[pair[0] - 1] += 1
                avec[pair[1] - 1] += 1
            cols.append(self._q_coords(avec))
        return np.column_stack(cols)

    def q_vector_in_ambient(self, qcoords) -> np.ndarray:
        """Expand b-coordinates into Z^n = Z[group/point-stabilizer]."""
        n = self.n
        out = exact.zeros(n, 1).ravel()
        for i in range(n - 1):
            out[i] += qcoords[i]
            out[n - 1] += qcoords[i]
        out[n - 1] += 2 * qcoords[n - 1]
        return out

    def _verify(self):
        pic = self.picard
        n = self.n
        # the projection kills N
        if np.any(exact.matmul(self.projection, self.embedding_N) != 0):
            raise InternalCheckError("projection does not kill N")
        # equivariance of the projection and surjectivity onto Q
        for g in pic.group.generators:
            lhs = exact.matmul(self.projection, pic.matrix(g))
            rhs = exact.matmul(self.Q.matrix(g), self.projection)
            if not np.array_equal(lhs, rhs):
                raise InternalCheckError("projection is not equivariant")
        hnf = exact.column_hnf(self.projection)
        if hnf.shape != (n, n) or not np.array_equal(hnf, exact.identity(n)):
            raise InternalCheckError("projection is not surjective onto Q")
        # index 2 inside the ambient permutation lattice
        bmat = np.column_stack([self.q_vector_in_ambient(exact.identity(n)[:, i]) for i in range(n)])
        if exact.lattice_index(bmat, exact.identity(n)) != 2:
            raise InternalCheckError("Q does not sit with index 2 in Z^n")

    def pair_class_image(self, i1: int, i2: int) -> np.ndarray:
        """Image of the boundary class D_{i1 i2} in ambient Z^n coordinates."""
        lab = canonical_boundary_label(self.n, {i1, i2})
        vec = self.picard.boundary[lab]
        return self.q_vector_in_ambient(exact.matvec(self.projection, vec))


def build_NQ(n: int) -> NQPair:
    return NQPair(build_picard(n))


def splitting_section(nq: NQPair) -> np.ndarray:
    """Equivariant section of the projection for odd n, as a matrix Q -> M.

    On the quotient generators: H gains every deep exceptional class with
    coefficient (|I| - 1), E_i gains the deep classes through i, where deep
    means (n-1)/2 <= |I| <= n-4.  Verified: projection o s = id and
    s commutes with both group generators; either failing is an error.
    """
    pic = nq.picard
    n = pic.n
    if n % 2 == 0:
        raise DomainError("the splitting section needs odd n (the size range (n-1)/2.. is not integral)")
    lo, hi = (n - 1) // 2, n - 4
    rank = pic.rank

    def deep_labels():
        for lab, idx in pic.e_index.items():
            if lo <= len(lab) <= hi:
                yield lab, idx

    s_h = exact.zeros(rank, 1).ravel()
    s_h[0] = 1
    for lab, idx in deep_labels():
        s_h[idx] = len(lab) - 1
    s_e = {}
    for i in range(1, n):
        vec = exact.zeros(rank, 1).ravel()
        vec[pic.e_index[frozenset([i])]] = 1
        for lab, idx in deep_labels():
            if i in lab:
                vec[idx] += 1
        s_e[i] = vec
    # convert from the generators (H, E_1..E_{n-1}) to the basis b of Q:
    # b_i = image(E_i) for i < n, and b_n = sum(images(E_i)) - image(H)
    cols = [s_e[i] for i in range(1, n)]
    last = exact.zeros(rank, 1).ravel()
    for i in range(1, n):
        last += s_e[i]
    last -= s_h
    cols.append(last)
    section = np.column_stack(cols)
    if not np.array_equal(exact.matmul(nq.projection, section), exact.identity(n)):
        raise InternalCheckError("section identity projection o s = id fails")
    for g in pic.group.generators:
        lhs = exact.matmul(pic.matrix(g), section)
        rhs = exact.matmul(section, nq.Q.matrix(g))
        if not np.array_equal(lhs, rhs):
            raise InternalCheckError(f"section is not equivariant for {g.print_cycles()}")
    return section


def losev_manin_lattice(n: int) -> GLattice:
    """Character lattice of the torus of the two-point toric contraction.

    Rank n-3; the subgroup permuting {1..n-2} acts through the zero-sum
    sublattice of its permutation module, and swapping the two special
    points n-1, n acts by a global sign.
    """
    if n < 5:
        raise DomainError("need n >= 5")
    gens = [parse_cycles("(1,2)", n)]
    if n - 2 > 2:
        gens.append(Permutation([*range(1, n - 2), 0, n - 2, n - 1]))
    gens.append(parse_cycles(f"({n - 1},{n})", n))
    group = PermutationGroup(gens, n, name=f"S{n - 2}xS2")
    rank = n - 3

    def matrix_fn(g: Permutation) -> np.ndarray:
        for p in range(1, n - 1):
            if not 1 <= g(p) <= n - 2:
                raise DomainError(f"{g.print_cycles()} does not preserve the special pair")
        sign = -1 if g(n - 1) == n else 1
        m = exact.zeros(rank, rank)
        for i in range(1, rank + 1):
            # p_i = e_i - e_{i+1} maps to e_{g(i)} - e_{g(i+1)}
            a, b = g(i), g(i + 1)
            flip = 1
            if a > b:
                a, b = b, a
                flip = -1
            for t in range(a, b):
                m[t - 1, i - 1] += flip * sign
        return m

    return GLattice(group, rank, {g: matrix_fn(g) for g in gens}, matrix_fn=matrix_fn,
                    name=f"LM(n={n})")
