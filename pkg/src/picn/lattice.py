"""G-lattices: free Z-modules with a finite group acting by unimodular
integer matrices, and their low-degree cohomology.

H^1 is computed from the full-element inhomogeneous cocycle complex
C^0 = M, C^1 = maps(G, M), C^2 = maps(G x G, M).  A 1-cochain is eliminated
down to its values on the generators by walking a Cayley BFS tree (each
tree edge is itself one of the cocycle conditions), the remaining
conditions become an integer linear system, and conditions for (s, g) with
s a generator force all (g, h) conditions by induction on word length.
Cyclic groups get the Tate fast path ker(Norm)/im(g-1), cross-checked
against the complex in the test suite.
"""

from __future__ import annotations

import json

import numpy as np

from . import exact
from .exact import AbelianInvariants
from .perms import (
    DomainError,
    GroupTooLargeError,
    Permutation,
    PermutationGroup,
    parse_cycles,
    subgroup_classes_in,
    sylow_subgroup,
)

__all__ = [
    "GLattice",
    "permutation_module",
    "trivial_module",
    "regular_module",
    "sign_module",
    "dual_module",
    "restrict",
    "fixed_sublattice",
    "norm_matrix",
    "h1",
    "h1_cyclic",
    "h2_cyclic",
    "h1_test",
    "h1_via_sylow",
    "c2_decomposition",
    "DecompositionReport",
    "permutation_basis_search",
    "InternalCheckError",
]

H1_ELEMENT_CAP = 10_000


class InternalCheckError(RuntimeError):
    """A structural invariant failed; aborting is mandatory."""


class GLattice:
    """Free Z-module of finite rank with a group acting by unimodular
    matrices given on the generators.

    ``matrix_fn``, when provided, evaluates the action on arbitrary group
    elements directly; otherwise elements are factored into generator words
    along a BFS tree.
    """

    def __init__(self, group: PermutationGroup, rank: int, gen_matrices, matrix_fn=None, name=None):
        self.group = group
        self.rank = int(rank)
        self.name = name
        self._matrix_fn = matrix_fn
        self._gen = {}
        for g, m in gen_matrices.items():
            m = np.asarray(m)
            if m.shape != (rank, rank):
                raise DomainError(f"action matrix for {g.print_cycles()} is not {rank}x{rank}")
            self._gen[g] = m
        for g in group.generators:
            if g not in self._gen:
                if matrix_fn is None:
                    raise DomainError(f"no action matrix for generator {g.print_cycles()}")
                self._gen[g] = np.asarray(matrix_fn(g))
        self._factor = None  # element -> (parent, generator, forward?) BFS tree

    def matrix(self, g: Permutation) -> np.ndarray:
        if g in self._gen:
            return self._gen[g]
        if g.is_identity():
            return exact.identity(self.rank)
        if self._matrix_fn is not None:
            return np.asarray(self._matrix_fn(g))
        if self._factor is None:
            self._build_factor_table()
        if g not in self._factor:
            raise DomainError(f"{g.print_cycles()} is not in the acting group")
        parent, s = self._factor[g]
        return exact.matmul(self._gen[s], self.matrix(parent))

    def _build_factor_table(self):
        table = {}
        ident = Permutation.identity(self.group.degree)
        table[ident] = None
        frontier = [ident]
        gens = [g for g in self.group.generators if not g.is_identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = s * x
                    if y not in table:
                        table[y] = (x, s)
                        nxt.append(y)
            frontier = nxt
        self._factor = table

    def generator_matrices(self) -> dict:
        return dict(self._gen)

    def verify_relations(self, cap: int = 10_000):
        """Check the generator matrices define a homomorphism by verifying
        matrix(s) @ matrix(g) == matrix(s*g) over the whole element list."""
        elements = sorted(self.group.elements(cap=cap))
        mats = {g: self.matrix(g) for g in elements}
        for g in elements:
            for s in self.group.generators:
                lhs = exact.matmul(mats[s], mats[g])
                if not np.array_equal(lhs, mats[s * g]):
                    raise InternalCheckError(
                        f"action is not a homomorphism at ({s.print_cycles()}, {g.print_cycles()})"
                    )
        for g in elements:
            if not exact.is_unimodular(mats[g]):
                raise InternalCheckError(f"action of {g.print_cycles()} is not unimodular")

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "group": {
                "degree": self.group.degree,
                "generators": [g.print_cycles() for g in self.group.generators],
            },
            "action": {
                g.print_cycles(): [int(x) for x in np.asarray(self.matrix(g)).ravel()]
                for g in self.group.generators
            },
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, **kwargs)

    @staticmethod
    def from_json_dict(data: dict) -> "GLattice":
        degree = data["group"]["degree"]
        rank = data["rank"]
        gens = [parse_cycles(s, degree) for s in data["group"]["generators"]]
        group = PermutationGroup(gens, degree)
        gen_matrices = {}
        for g, s in zip(gens, data["group"]["generators"]):
            flat = data["action"][s]
            gen_matrices[g] = exact.intmat([flat[i * rank : (i + 1) * rank] for i in range(rank)])
        return GLattice(group, rank, gen_matrices)

    @staticmethod
    def from_json(text: str) -> "GLattice":
        return GLattice.from_json_dict(json.loads(text))

    def __repr__(self):
        return f"GLattice<rank {self.rank} under {self.group!r}>"


def _perm_matrix(perm: Permutation) -> np.ndarray:
    n = perm.degree
    m = exact.zeros(n, n)
    for i in range(n):
        m[perm.tup[i], i] = 1
    return m


def permutation_module(group: PermutationGroup, action, index_size: int | None = None, name=None) -> GLattice:
    """G-lattice with basis permuted by the group.

    ``action`` maps group elements to permutations of the index set; a dict
    may give it on the generators only.  When values beyond the generators
    are supplied they are checked against the generated homomorphism.
    """
    if callable(action):
        act = {g: action(g) for g in group.generators}
        extra = {}
    else:
        act = dict(action)
        extra = {g: p for g, p in act.items() if g not in group.generators}
    images = {}
    for g in group.generators:
        if g not in act:
            raise DomainError(f"action missing generator {g.print_cycles()}")
        images[g] = act[g]
    size = index_size if index_size is not None else images[group.generators[0]].degree
    # extend along a BFS tree and verify consistency: this is the relator check
    ident = Permutation.identity(group.degree)
    full = {ident: Permutation.identity(size)}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in group.generators:
                y = s * x
                val = images[s] * full[x]
                if y in full:
                    if full[y] != val:
                        raise DomainError("action is not a homomorphism")
                else:
                    full[y] = val
                    nxt.append(y)
        frontier = nxt
    for g, p in extra.items():
        if g not in full or full[g] != p:
            raise DomainError("action is not a homomorphism")
    gen_matrices = {g: _perm_matrix(images[g]) for g in group.generators}
    return GLattice(group, size, gen_matrices, name=name)


def trivial_module(group: PermutationGroup, rank: int) -> GLattice:
    ident = Permutation.identity(rank)
    return permutation_module(group, {g: ident for g in group.generators}, rank, name=f"Z^{rank}")


def natural_module(group: PermutationGroup) -> GLattice:
    """Z[points]: the group permuting the standard basis of Z^degree."""
    return permutation_module(group, {g: g for g in group.generators}, group.degree, name="natural")


def regular_module(group: PermutationGroup) -> GLattice:
    """Z[G] with the left regular action."""
    elements = sorted(group.elements())
    index = {g: i for i, g in enumerate(elements)}

    def left_mult(s):
        return Permutation([index[s * g] for g in elements])

    return permutation_module(group, {s: left_mult(s) for s in group.generators}, len(elements), name="Z[G]")


def sign_module(group: PermutationGroup, signs) -> GLattice:
    """Rank-1 module where generator g acts by signs[g] (+1 or -1)."""
    return GLattice(group, 1, {g: exact.intmat([[signs[g]]]) for g in group.generators})


def dual_module(lattice: GLattice) -> GLattice:
    """Dual action: g acts by transpose of the inverse, i.e. matrix(g^{-1})^T."""
    gen_matrices = {g: np.ascontiguousarray(lattice.matrix(g.inverse()).T) for g in lattice.group.generators}
    fn = None
    if lattice._matrix_fn is not None:
        fn = lambda g: np.ascontiguousarray(lattice.matrix(g.inverse()).T)
    return GLattice(lattice.group, lattice.rank, gen_matrices, matrix_fn=fn,
                    name=f"{lattice.name}*" if lattice.name else None)


def restrict(lattice: GLattice, subgroup: PermutationGroup, verify: bool = None) -> GLattice:
    """Same underlying lattice, action restricted to a subgroup."""
    if subgroup.degree != lattice.group.degree:
        raise DomainError("degree mismatch")
    if not lattice.group.is_full_symmetric:
        for g in subgroup.generators:
            if g not in lattice.group.elements():
                raise DomainError(f"{g.print_cycles()} is not in the acting group")
    gen_matrices = {g: lattice.matrix(g) for g in subgroup.generators}
    fn = lattice._matrix_fn
    restricted = GLattice(subgroup, lattice.rank, gen_matrices, matrix_fn=fn, name=lattice.name)
    if verify is None:
        verify = subgroup.order() <= 64
    if verify:
        restricted.verify_relations()
    return restricted


def fixed_sublattice(lattice: GLattice, sub=None) -> np.ndarray:
    """Columns form a saturated Z-basis of the common fixed sublattice.

    ``sub`` may be a subgroup, an element, a list of elements, or None for
    the full acting group.
    """
    if sub is None:
        gens = list(lattice.group.generators)
    elif isinstance(sub, Permutation):
        gens = [sub]
    elif isinstance(sub, PermutationGroup):
        gens = list(sub.generators)
    else:
        gens = list(sub)
    blocks = []
    ident = exact.identity(lattice.rank)
    for g in gens:
        if g.is_identity():
            continue
        blocks.append(lattice.matrix(g) - ident)
    if not blocks:
        return exact.identity(lattice.rank)
    stacked = np.vstack([exact._to_object(b) for b in blocks]) if any(
        b.dtype == object for b in blocks
    ) else np.vstack(blocks)
    return exact.kernel(stacked)


def norm_matrix(g: Permutation, lattice: GLattice) -> np.ndarray:
    """Sum of matrix(g^i) over the cyclic group generated by g."""
    m = g.order()
    total = exact.identity(lattice.rank)
    power = Permutation.identity(g.degree)
    for _ in range(m - 1):
        power = g * power
        term = lattice.matrix(power)
        if total.dtype == object or term.dtype == object or (
            exact._maxabs(total) + exact._maxabs(term) >= exact._INT64_SAFE
        ):
            total = exact._to_object(total) + exact._to_object(term)
        else:
            total = total + term
    return total


def h1_cyclic(g: Permutation, lattice: GLattice) -> AbelianInvariants:
    """Tate H^1 of the cyclic group <g>: ker(Norm) / im(g - 1)."""
    norm = norm_matrix(g, lattice)
    ker = exact.kernel(norm)
    if ker.shape[1] == 0:
        return AbelianInvariants()
    delta = lattice.matrix(g) - exact.identity(lattice.rank)
    y = exact.solve_int(ker, delta)
    if y is None:
        raise InternalCheckError("im(g-1) not contained in ker(Norm)")
    inv = exact.cokernel_invariants(y, ambient_rank=ker.shape[1])
    if inv.free_rank != 0:
        raise InternalCheckError("H^1 of a finite cyclic group came out infinite")
    return inv


def h2_cyclic(g: Permutation, lattice: GLattice) -> AbelianInvariants:
    """Tate H^2 of <g>: fixed sublattice modulo the norm image."""
    fixed = fixed_sublattice(lattice, g)
    if fixed.shape[1] == 0:
        return AbelianInvariants()
    norm = norm_matrix(g, lattice)
    y = exact.solve_int(fixed, norm)
    if y is None:
        raise InternalCheckError("Norm image not contained in the fixed sublattice")
    inv = exact.cokernel_invariants(y, ambient_rank=fixed.shape[1])
    return AbelianInvariants(inv.torsion, 0)


def _pruned_generators(group: PermutationGroup) -> list:
    gens = []
    for g in group.generators:
        if not g.is_identity() and g not in gens:
            gens.append(g)
    order = group.order()
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for i in range(len(gens)):
            rest = gens[:i] + gens[i + 1 :]
            if PermutationGroup(rest, group.degree).order() == order:
                gens = rest
                changed = True
                break
    return gens


def h1(group: PermutationGroup, lattice: GLattice, cap: int = H1_ELEMENT_CAP,
       cyclic_fast_path: bool = True) -> AbelianInvariants:
    """H^1(G, M) from the full-element cocycle complex.

    ker(delta^1) is computed by eliminating 1-cochain values along a Cayley
    BFS tree; the surviving unknowns are the cocycle's generator values.
    Cyclic groups normally take the Tate route; disabling it keeps the
    complex computation as an independent cross-check.
    """
    if group.order() == 1:
        return AbelianInvariants()
    if group.order() > cap:
        raise GroupTooLargeError(f"group of order {group.order()} exceeds the H^1 cap {cap}")
    gens = _pruned_generators(group)
    if len(gens) == 1 and cyclic_fast_path:
        return h1_cyclic(gens[0], lattice)
    r = lattice.rank
    k = len(gens)
    gen_index = {s: i for i, s in enumerate(gens)}
    amats = [lattice.matrix(s) for s in gens]
    ainvs = [lattice.matrix(s.inverse()) for s in gens]
    ident = Permutation.identity(group.degree)
    eye = exact.identity(r)

    def xblock(i):
        b = exact.zeros(r, k * r)
        b[:, i * r : (i + 1) * r] = eye
        return b

    xblocks = [xblock(i) for i in range(k)]
    acc = exact.RowEchelonAccumulator(k * r)
    fmat = {ident: exact.zeros(r, k * r)}
    level_of = {ident: 0}
    by_level = {0: [ident]}
    consumed = set()  # (generator index, source element) pairs already encoded
    frontier = [ident]
    level = 0
    while frontier:
        nxt = []
        for g in sorted(frontier):
            fg = fmat[g]
            for i, s in enumerate(gens):
                h = s * g
                if h not in fmat:
                    fmat[h] = xblocks[i] + exact.matmul(amats[i], fg)
                    level_of[h] = level + 1
                    by_level.setdefault(level + 1, []).append(h)
                    consumed.add((i, g))
                    nxt.append(h)
                elif (i, g) not in consumed:
                    consumed.add((i, g))
                    block = xblocks[i] + exact.matmul(amats[i], fg) - fmat[h]
                    acc.add_block(block)
                h2 = s.inverse() * g
                if h2 not in fmat:
                    fmat[h2] = exact.matmul(ainvs[i], fg - xblocks[i])
                    level_of[h2] = level + 1
                    by_level.setdefault(level + 1, []).append(h2)
                    consumed.add((i, h2))
                    nxt.append(h2)
        # conditions only ever touch neighbours in the symmetric Cayley
        # graph, so everything two levels down is finished
        stale = by_level.pop(level - 1, [])
        for e in stale:
            del fmat[e]
        level += 1
        frontier = nxt
    conditions = acc.matrix()
    zker = exact.kernel(conditions) if conditions.size else exact.identity(k * r)
    if zker.shape[1] == 0:
        return AbelianInvariants()
    coboundary = np.vstack([exact._to_object(m) - exact._to_object(eye) for m in amats])
    y = exact.solve_int(zker, exact.intmat(coboundary.tolist()))
    if y is None:
        raise InternalCheckError("coboundaries do not lie in the cocycle lattice")
    inv = exact.cokernel_invariants(y, ambient_rank=zker.shape[1])
    if inv.free_rank != 0:
        raise InternalCheckError("H^1 of a finite group came out infinite")
    return inv


def h1_via_sylow(group: PermutationGroup, lattice: GLattice):
    """Certified H^1(G, M) = 0 when every Sylow restriction vanishes.

    Returns (AbelianInvariants(), details) on success and (None, details)
    when some Sylow part is nonzero (no exact value for G is derived then).
    Sound because restriction to a Sylow p-subgroup is injective on the
    p-primary part of H^1.
    """
    order = group.order()
    details = {}
    primes = set()
    m = order
    for p in (2, 3, 5, 7, 11, 13):
        while m % p == 0:
            primes.add(p)
            m //= p
    if m != 1:
        raise DomainError(f"unexpected large prime factor in group order {order}")
    nonzero = False
    for p in sorted(primes):
        syl = sylow_subgroup(group, p)
        val = h1(syl, restrict(lattice, syl, verify=False))
        details[p] = val
        if any(t % p == 0 for t in val.torsion):
            nonzero = True
    if nonzero:
        return None, details
    return AbelianInvariants(), details


def h1_test(group: PermutationGroup, lattice: GLattice, include_dual: bool = True, cap: int = H1_ELEMENT_CAP):
    """(H1) criterion: H^1(G', M) and H^1(G', M*) vanish for all subgroups.

    One representative per conjugacy class of subgroups is tested (conjugate
    subgroups have isomorphic cohomology).  Returns (ok, witness) where the
    witness is a failing subgroup or None.
    """
    dual = dual_module(lattice) if include_dual else None
    for sub in subgroup_classes_in(group):
        if sub.order() == 1:
            continue
        sub_m = restrict(lattice, sub, verify=False)
        if not h1(sub, sub_m, cap=cap).is_trivial():
            return False, sub
        if dual is not None:
            sub_d = restrict(dual, sub, verify=False)
            if not h1(sub, sub_d, cap=cap).is_trivial():
                return False, sub
    return True, None


def c2_decomposition(lattice: GLattice):
    """Multiplicities (a, b, c) of Z, Z^-, Z[C2] for an order-2 action.

    a = F2-dimension of the Tate H^0 (fixed modulo norms), b = F2-dimension
    of H^1, c = (rank - a - b)/2.  Every C2-lattice is such a sum, so a
    parity failure means a bug and aborts.
    """
    gens = [g for g in lattice.group.generators if not g.is_identity()]
    if lattice.group.order() != 2:
        raise DomainError("c2_decomposition needs an acting group of order 2")
    sigma = gens[0]
    a = h2_cyclic(sigma, lattice).two_torsion_dim()
    b = h1_cyclic(sigma, lattice).two_torsion_dim()
    if (lattice.rank - a - b) % 2 != 0:
        raise InternalCheckError("C2-decomposition parity violated")
    c = (lattice.rank - a - b) // 2
    return a, b, c


class DecompositionReport:
    """Outcome of a permutation-basis search."""

    def __init__(self, status, summands=None, witness=None, obstruction=None, nodes=0):
        assert status in ("certified", "not-permutation", "unknown")
        self.status = status
        self.summands = summands or []  # list of (stabilizer description, orbit size, multiplicity)
        self.witness = witness  # unimodular change of basis, columns = permuted basis
        self.obstruction = obstruction
        self.nodes = nodes

    def summand_string(self) -> str:
        return ", ".join(f"{desc} x{mult}" for desc, _, mult in self.summands)

    def __repr__(self):
        return f"DecompositionReport({self.status}, {self.summands})"


def _orbit_of_vector(lattice: GLattice, vec, elements):
    """Orbit of a column vector under the group; None if a sign clash occurs."""
    seen = {}
    for g in elements:
        w = exact.matvec(lattice.matrix(g), vec)
        key = tuple(int(x) for x in w)
        neg = tuple(-int(x) for x in w)
        if neg in seen:
            return None
        seen[key] = w
    return [seen[k] for k in sorted(seen)]


def permutation_basis_search(lattice: GLattice, budget: int = 20000, seeds=None):
    """Semi-decision search for a basis permuted by the group.

    Candidate vectors are the group orbits of the seed vectors (unit vectors
    by default; callers pass distinguished vectors such as boundary
    classes).  Orbits must be finite and sign-free; the search selects a
    union of orbits of total size = rank whose matrix is unimodular.
    "unknown" is a legal outcome (budget exhausted).
    """
    group = lattice.group
    r = lattice.rank
    elements = sorted(group.elements())
    # certified obstructions first: negative trace, fixed-rank mismatch, H^1
    for g in elements:
        tr = int(np.trace(lattice.matrix(g)))
        if tr < 0:
            return DecompositionReport("not-permutation",
                                       obstruction=f"trace of {g.print_cycles()} is {tr} < 0")
    for sub in subgroup_classes_in(group):
        fr = fixed_sublattice(lattice, sub).shape[1]
        avg = sum(int(np.trace(lattice.matrix(g))) for g in sub.elements())
        if avg % sub.order() != 0 or avg // sub.order() != fr:
            return DecompositionReport(
                "not-permutation",
                obstruction=(
                    f"fixed rank {fr} under <{';'.join(g.print_cycles() for g in sub.generators)}>"
                    f" does not match the Burnside orbit count {avg}/{sub.order()}"
                ),
            )
        if sub.order() > 1:
            inv = h1(sub, restrict(lattice, sub, verify=False))
            if not inv.is_trivial():
                return DecompositionReport(
                    "not-permutation",
                    obstruction=f"H^1 = {inv} for <{';'.join(g.print_cycles() for g in sub.generators)}>",
                )
    if seeds is None:
        seeds = [exact.identity(r)[:, i] for i in range(r)]
    orbits = []
    seen_orbit = set()
    for v in seeds:
        orb = _orbit_of_vector(lattice, np.asarray(v), elements)
        if orb is None:
            continue
        key = frozenset(tuple(int(x) for x in w) for w in orb)
        if key in seen_orbit:
            continue
        seen_orbit.add(key)
        orbits.append(orb)
    orbits.sort(key=lambda o: (-len(o), [tuple(int(x) for x in w) for w in o]))
    sizes = [len(o) for o in orbits]
    suffix = [0] * (len(orbits) + 1)
    for i in range(len(orbits) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    nodes = [0]
    chosen = []

    def search(i, total, basis_cols):
        if total == r:
            return list(chosen)
        if i == len(orbits) or total + suffix[i] < r:
            return None
        nodes[0] += 1
        if nodes[0] > budget:
            raise TimeoutError
        if total + sizes[i] <= r:
            cols = basis_cols + orbits[i]
            stacked = np.column_stack(cols)
            # partial basis must stay primitive (all invariant factors 1),
            # otherwise no unimodular completion exists
            if exact.snf_diagonal(stacked) == [1] * len(cols):
                chosen.append(i)
                result = search(i + 1, total + sizes[i], cols)
                if result is not None:
                    return result
                chosen.pop()
        return search(i + 1, total, basis_cols)

    try:
        picked = search(0, 0, [])
    except TimeoutError:
        return DecompositionReport("unknown", nodes=nodes[0])
    if picked is None:
        return DecompositionReport("unknown", nodes=nodes[0])
    # certify: change of basis conjugates every generator to a permutation matrix
    cols = []
    stabs = []
    for i in picked:
        cols.extend(orbits[i])
    witness = exact.intmat(np.column_stack(cols).tolist())
    winv = exact.integer_inverse(witness)
    if winv is None:
        raise InternalCheckError("selected basis is not unimodular")
    col_keys = {tuple(int(x) for x in c): idx for idx, c in enumerate(cols)}
    for s in group.generators:
        conj = exact.matmul(exact.matmul(winv, lattice.matrix(s)), witness)
        for j, c in enumerate(cols):
            img = exact.matvec(lattice.matrix(s), c)
            tgt = col_keys.get(tuple(int(x) for x in img))
            if tgt is None:
                raise InternalCheckError("selected basis is not closed under the action")
            expected = exact.zeros(len(cols), 1).ravel()
            expected[tgt] = 1
            if not np.array_equal(np.asarray(conj[:, j]).ravel(), expected):
                raise InternalCheckError("witness conjugation is not the expected permutation")
    # summands: orbit size + stabilizer of the first vector in each orbit
    summands = {}
    for i in picked:
        first = orbits[i][0]
        key_first = tuple(int(x) for x in first)
        stab_gens = [g for g in elements
                     if tuple(int(x) for x in exact.matvec(lattice.matrix(g), first)) == key_first]
        stab = PermutationGroup(stab_gens, group.degree)
        desc = f"Z[G/H] with |H|={stab.order()}, H=<{' '.join(g.print_cycles() for g in sorted(stab.elements()))}>"
        key = (len(orbits[i]), tuple(sorted(g.tup for g in stab.elements())))
        if key not in summands:
            summands[key] = [desc, len(orbits[i]), 0]
        summands[key][2] += 1
    report = DecompositionReport(
        "certified",
        summands=[tuple(v) for _, v in sorted(summands.items())],
        witness=witness,
        nodes=nodes[0],
    )
    return report
