"""Permutations of {1..n}, finitely generated subgroups, and conjugacy tests.

Points are 1-based in all user-facing data (cycle strings, image lists);
internally a permutation is a 0-based tuple ``p`` with ``p[i]`` the image
of ``i``.
"""

from __future__ import annotations

import itertools
import re
from functools import reduce
from math import gcd

__all__ = [
    "Permutation",
    "PermutationGroup",
    "parse_cycles",
    "iota_generators",
    "DomainError",
    "GroupTooLargeError",
]


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class GroupTooLargeError(RuntimeError):
    """Group enumeration exceeded the configured element cap."""


class Permutation:
    """An element of S_n, immutable and hashable."""

    __slots__ = ("tup",)

    def __init__(self, images0, degree=None):
        tup = tuple(images0)
        if degree is not None and len(tup) != degree:
            raise DomainError(f"expected degree {degree}, got {len(tup)} images")
        if sorted(tup) != list(range(len(tup))):
            raise DomainError("images are not a bijection")
        object.__setattr__(self, "tup", tup)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @property
    def degree(self) -> int:
        return len(self.tup)

    @property
    def images(self) -> list:
        """1-based image list: entry i is the image of point i+1."""
        return [i + 1 for i in self.tup]

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.tup[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(x) = p(q(x))."""
        p, q = self.tup, other.tup
        return Permutation(p[qi] for qi in q)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.tup)
        for i, j in enumerate(self.tup):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.cycle_type(), 1)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.tup))

    def cycles(self) -> list:
        """Nontrivial cycles as tuples of 1-based points, canonically ordered."""
        seen = [False] * len(self.tup)
        out = []
        for i in range(len(self.tup)):
            if seen[i] or self.tup[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.tup[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple:
        """Cycle lengths including fixed points, sorted descending."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def conjugate_by(self, w: "Permutation") -> "Permutation":
        """w * self * w^{-1}."""
        wt, st = w.tup, self.tup
        out = [0] * len(st)
        for i in range(len(st)):
            out[wt[i]] = wt[st[i]]
        return Permutation(out)

    def print_cycles(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.tup == other.tup

    def __hash__(self):
        return hash(self.tup)

    def __lt__(self, other):
        return self.tup < other.tup

    def __repr__(self):
        return f"Permutation({self.print_cycles()!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of cycles such as ``(1,2)(5,6)`` over {1..degree}.

    Overlapping cycles compose left-to-right: in ``(1,2)(2,3)`` the cycle
    ``(1,2)`` is applied first.  ``()`` and the empty string denote the
    identity.
    """
    stripped = text.replace(" ", "")
    if stripped in ("", "()"):
        return Permutation.identity(degree)
    if not re.fullmatch(r"(\([^()]*\))+", stripped):
        raise DomainError(f"malformed cycle string: {text!r}")
    images = list(range(degree))

    def apply_cycle(points):
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1

    total = [0] * degree
    perms = []
    for m in _CYCLE_RE.finditer(stripped):
        body = m.group(1)
        if not body:
            continue
        try:
            points = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise DomainError(f"malformed cycle string: {text!r}")
        if any(p < 1 or p > degree for p in points):
            raise DomainError(f"point out of range 1..{degree} in {text!r}")
        if len(set(points)) != len(points):
            raise DomainError(f"repeated point within a cycle in {text!r}")
        imgs = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            imgs[a - 1] = b - 1
        perms.append(Permutation(imgs))
    del total
    result = Permutation.identity(degree)
    for p in perms:  # left-to-right: earlier cycles act first
        result = p * result
    return result


def iota_generators(n1: int, n2: int, n3: int):
    """The commuting involution pair attached to a triple (n1, n2, n3).

    With n = 2(n1+n2+n3), the first involution is the product of the
    transpositions (2i-1, 2i) for i in {1..n1} and {n1+n2+1..n1+n2+n3};
    the second runs over i in {n1+1..n1+n2+n3}.
    """
    if min(n1, n2, n3) < 0:
        raise DomainError("parts must be nonnegative")
    n = 2 * (n1 + n2 + n3)
    if n < 6:
        raise DomainError(f"need 2(n1+n2+n3) >= 6, got {n}")

    def pair_product(indices):
        images = list(range(n))
        for i in indices:
            images[2 * i - 2], images[2 * i - 1] = images[2 * i - 1], images[2 * i - 2]
        return Permutation(images)

    iota1 = pair_product(list(range(1, n1 + 1)) + list(range(n1 + n2 + 1, n1 + n2 + n3 + 1)))
    iota2 = pair_product(range(n1 + 1, n1 + n2 + n3 + 1))
    return iota1, iota2


class PermutationGroup:
    """Subgroup of S_n given by generators; the element set is lazily closed."""

    DEFAULT_CAP = 10_000_000

    def __init__(self, generators, degree=None, name=None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise DomainError("degree required for a generator-free group")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise DomainError("mixed degrees among generators")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name
        self.is_full_symmetric = False  # set by the symmetric() constructor
        self._elements = None

    @staticmethod
    def from_cycles(specs, degree: int, name=None) -> "PermutationGroup":
        return PermutationGroup([parse_cycles(s, degree) for s in specs], degree, name=name)

    @staticmethod
    def symmetric(degree: int) -> "PermutationGroup":
        if degree == 1:
            group = PermutationGroup([], degree=1, name="S1")
        else:
            gens = [parse_cycles("(1,2)", degree)]
            if degree > 2:
                gens.append(Permutation([*range(1, degree), 0]))
            group = PermutationGroup(gens, degree, name=f"S{degree}")
        group.is_full_symmetric = True
        return group

    @staticmethod
    def trivial(degree: int) -> "PermutationGroup":
        return PermutationGroup([], degree=degree, name="1")

    def elements(self, cap: int | None = None) -> frozenset:
        """Closure of the generators under product; BFS orbit of the identity."""
        if self._elements is None:
            cap = cap or self.DEFAULT_CAP
            ident = Permutation.identity(self.degree)
            seen = {ident.tup: ident}
            frontier = [ident]
            gens = [g for g in self.generators if not g.is_identity()]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = g * x
                        if y.tup not in seen:
                            seen[y.tup] = y
                            nxt.append(y)
                if len(seen) > cap:
                    raise GroupTooLargeError(f"group exceeds cap {cap}")
                frontier = nxt
            self._elements = frozenset(seen.values())
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self.elements()

    def contains_group(self, other: "PermutationGroup") -> bool:
        elems = self.elements()
        return all(g in elems for g in other.generators)

    def orbits(self) -> list:
        """Orbits on {1..n} as sorted tuples of 1-based points, sorted."""
        parent = list(range(self.degree))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for g in self.generators:
            for i, j in enumerate(g.tup):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        buckets = {}
        for i in range(self.degree):
            buckets.setdefault(find(i), []).append(i + 1)
        return sorted(tuple(b) for b in buckets.values())

    def orbit_sizes(self) -> tuple:
        return tuple(sorted((len(o) for o in self.orbits()), reverse=True))

    def has_odd_orbit(self) -> bool:
        """True iff some orbit on {1..n} has odd cardinality."""
        return any(len(o) % 2 == 1 for o in self.orbits())

    def fixed_points(self) -> list:
        return [o[0] for o in self.orbits() if len(o) == 1]

    def invariant_pairs(self) -> list:
        """Invariant 2-element subsets (unions of orbits of total size 2)."""
        orbs = self.orbits()
        pairs = [o for o in orbs if len(o) == 2]
        fixed = [o[0] for o in orbs if len(o) == 1]
        pairs += [tuple(sorted(c)) for c in itertools.combinations(fixed, 2)]
        return sorted(pairs)

    def cycle_type_histogram(self) -> tuple:
        """Sorted (cycle_type, count) pairs over all elements; conjugacy invariant."""
        counts = {}
        for g in self.elements():
            ct = g.cycle_type()
            counts[ct] = counts.get(ct, 0) + 1
        return tuple(sorted(counts.items()))

    def fingerprint(self) -> tuple:
        """Cheap S_n-conjugacy invariant used to bucket subgroups."""
        return (self.order(), self.orbit_sizes(), self.cycle_type_histogram())

    def point_profiles(self) -> list:
        """Per-point conjugacy-invariant colors: profile[i] for point i+1."""
        profiles = [{} for _ in range(self.degree)]
        for g in self.elements():
            seen = [False] * self.degree
            for i in range(self.degree):
                if seen[i]:
                    continue
                length = 0
                j = i
                cyc = []
                while not seen[j]:
                    seen[j] = True
                    cyc.append(j)
                    j = g.tup[j]
                    length += 1
                for j in cyc:
                    profiles[j][length] = profiles[j].get(length, 0) + 1
        return [tuple(sorted(p.items())) for p in profiles]

    def subgroup(self, generators, name=None) -> "PermutationGroup":
        sub = PermutationGroup(generators, self.degree, name=name)
        if not self.contains_group(sub):
            raise DomainError("generators do not lie in the group")
        return sub

    def normalizer_in(self, ambient_elements) -> list:
        """Elements w of the ambient iterable with w G w^{-1} = G."""
        elems = self.elements()
        gens = self.generators
        return [w for w in ambient_elements if all(g.conjugate_by(w) in elems for g in gens)]

    def key(self) -> tuple:
        """Deterministic total-order key: (order, orbit sizes, sorted elements)."""
        return (self.order(), self.orbit_sizes(), tuple(sorted(g.tup for g in self.elements())))

    def __eq__(self, other):
        return (
            isinstance(other, PermutationGroup)
            and self.degree == other.degree
            and self.elements() == other.elements()
        )

    def __hash__(self):
        return hash((self.degree, self.elements()))

    def __repr__(self):
        gens = " ".join(g.print_cycles() for g in self.generators)
        return f"PermutationGroup<deg {self.degree} | {gens}>"


def _compatible_images(g1: PermutationGroup, g2: PermutationGroup):
    """Per-point candidate image sets from point profiles, or None if impossible."""
    p1 = g1.point_profiles()
    p2 = g2.point_profiles()
    if sorted(p1) != sorted(p2):
        return None
    candidates = []
    for i in range(g1.degree):
        cand = [j for j in range(g2.degree) if p2[j] == p1[i]]
        candidates.append(cand)
    return candidates


def sylow_subgroup(group: PermutationGroup, p: int) -> PermutationGroup:
    """A Sylow p-subgroup, grown through normalizers of partial p-subgroups."""
    order = group.order()
    target = 1
    while order % p == 0:
        target *= p
        order //= p
    if target == 1:
        return PermutationGroup.trivial(group.degree)
    elements = sorted(group.elements())
    current = None
    for g in elements:
        o = g.order()
        if o % p == 0:
            current = group.subgroup([g ** (o // p)])
            break
    while current.order() < target:
        normalizer = current.normalizer_in(elements)
        cur_elems = current.elements()
        grown = False
        for y in normalizer:
            if y in cur_elems:
                continue
            # order of the coset y*current in the quotient
            o = 1
            z = y
            while z not in cur_elems:
                z = y * z
                o += 1
            if o % p == 0:
                x = y ** (o // p)
                current = group.subgroup(list(current.generators) + [x])
                grown = True
                break
        if not grown:  # cannot happen for a genuine p-subgroup below Sylow order
            raise RuntimeError("sylow growth stalled")
    return current


def all_subgroups(group: PermutationGroup, cap: int | None = None) -> list:
    """Every subgroup of the group, by closure sweep.

    Starts from the cyclic subgroups and repeatedly adjoins single elements;
    every subgroup is reached since any chain of generators realizes it.
    Exponential in general: intended for |group| into the low thousands.
    """
    elements = sorted(group.elements())
    degree = group.degree
    ident = Permutation.identity(degree)
    triv = PermutationGroup([], degree=degree)
    seen = {frozenset([ident]): triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for sub in frontier:
            sub_elems = sub.elements()
            for g in elements:
                if g in sub_elems:
                    continue
                new = PermutationGroup(list(sub.generators) + [g], degree)
                key = new.elements()
                if key not in seen:
                    seen[key] = new
                    nxt.append(new)
                    if cap is not None and len(seen) > cap:
                        raise GroupTooLargeError(f"more than {cap} subgroups")
        frontier = nxt
    return sorted(seen.values(), key=lambda h: h.key())


def subgroup_classes_in(group: PermutationGroup, cap: int | None = None) -> list:
    """One representative per conjugacy class (in the group) of subgroups."""
    subs = all_subgroups(group, cap=cap)
    elements = sorted(group.elements())
    seen = set()
    reps = []
    for sub in subs:
        key = sub.elements()
        if key in seen:
            continue
        reps.append(sub)
        for w in elements:
            seen.add(frozenset(g.conjugate_by(w) for g in key))
    return reps


def _transporter_search(gens, target_tups, n, candidates=None):
    """Backtracking over base-point images: find w with w g w^{-1} in the
    target element set for every g in gens.

    Points inside generator supports are assigned first; as soon as a
    generator's support is fully mapped its conjugate is a complete
    permutation and is tested, pruning early.  Points outside every support
    are filled greedily at the end (they cannot affect any conjugate).
    Returns the witness images (0-based list) or None.
    """
    gens = [g for g in gens if not g.is_identity()]
    supports = [[i for i in range(n) if g.tup[i] != i] for g in gens]
    order = []
    checkpoints = {}  # position in `order` after which generator k is testable
    placed = set()
    for k, supp in enumerate(supports):
        for i in supp:
            if i not in placed:
                placed.add(i)
                order.append(i)
        if supp:
            checkpoints.setdefault(len(order) - 1, []).append(k)
    free = [i for i in range(n) if i not in placed]
    images = [-1] * n
    used = [False] * n

    def conj_ok(k):
        g = gens[k].tup
        out = list(range(n))
        for i in supports[k]:
            out[images[i]] = images[g[i]]
        return tuple(out) in target_tups

    def extend(pos):
        if pos == len(order):
            it = iter(j for j in range(n) if not used[j])
            for i in free:
                images[i] = next(it)
            return list(images)
        i = order[pos]
        cand = candidates[i] if candidates is not None else range(n)
        for j in cand:
            if used[j]:
                continue
            images[i] = j
            used[j] = True
            if all(conj_ok(k) for k in checkpoints.get(pos, ())):
                w = extend(pos + 1)
                if w is not None:
                    return w
            used[j] = False
        images[i] = -1
        return None

    return extend(0)


def is_conjugate_subgroup(g1: PermutationGroup, g2: PermutationGroup):
    """A witness w with w g1 w^{-1} = g2 as element sets, or None.

    Backtracking over point images, pruned by order, orbit sizes, cycle-type
    histogram, and per-point cycle profiles.
    """
    if g1.degree != g2.degree:
        raise DomainError("degrees differ")
    if g1.fingerprint() != g2.fingerprint():
        return None
    if g1.elements() == g2.elements():
        return Permutation.identity(g1.degree)
    candidates = _compatible_images(g1, g2)
    if candidates is None:
        return None
    target = {g.tup for g in g2.elements()}
    # conjugating the generators into g2 conjugates all of g1 into g2;
    # equal orders then force equality of the element sets
    images = _transporter_search(g1.generators, target, g1.degree, candidates)
    return Permutation(images) if images is not None else None


def contains_conjugate_of(big: PermutationGroup, small: PermutationGroup):
    """A witness w with w . small . w^{-1} contained in big, or None."""
    if big.degree != small.degree:
        raise DomainError("degrees differ")
    if big.order() % small.order() != 0:
        return None
    hist_small = dict(small.cycle_type_histogram())
    hist_big = dict(big.cycle_type_histogram())
    if any(hist_big.get(ct, 0) < cnt for ct, cnt in hist_small.items()):
        return None
    target = {g.tup for g in big.elements()}
    images = _transporter_search(small.generators, target, big.degree)
    return Permutation(images) if images is not None else None
