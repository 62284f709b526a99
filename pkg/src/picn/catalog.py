"""Conjugacy-class catalogs of subgroups of small symmetric groups.

Production method: cyclic extension seeded with the perfect subgroups.
Every non-perfect subgroup has a normal subgroup of prime index, so
extending class representatives by prime-order elements of their
normalizer quotients reaches every class once all perfect classes are
seeded.  The independent oracle (degrees <= 6) is a closure sweep that
adjoins one element at a time starting from the trivial group.
"""

from __future__ import annotations

import re
from math import factorial

from .perms import (
    DomainError,
    Permutation,
    PermutationGroup,
    is_conjugate_subgroup,
    parse_cycles,
)

__all__ = [
    "SubgroupClassCatalog",
    "subgroup_conjugacy_classes",
    "brute_force_classes",
    "perfect_subgroups",
    "write_catalog",
    "read_catalog",
]

# Perfect subgroups by minimal support: every perfect subgroup of S_n for
# n <= 8 is conjugate to one of these padded with fixed points.  The affine
# group AGL(3,2) is included: it is perfect (its translation subgroup has no
# coinvariants) and reachable no other way.
_PERFECT_SEEDS = [
    ("A5", 5, ["(1,2,3)", "(1,2,3,4,5)"], 60),
    ("A5t6", 6, ["(1,2,3,4,5)", "(1,6)(2,5)"], 60),
    ("A6", 6, ["(1,2,3)", "(2,3,4,5,6)"], 360),
    ("A7", 7, ["(1,2,3)", "(1,2,3,4,5,6,7)"], 2520),
    ("PSL27t7", 7, ["(1,2,4,3,6,7,5)", "(2,3)(6,7)"], 168),
    ("A8", 8, ["(1,2,3)", "(2,3,4,5,6,7,8)"], 20160),
    ("PSL27t8", 8, ["(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"], 168),
    ("AGL32", 8, ["(1,2)(3,4)(5,6)(7,8)", "(2,3,5,4,7,8,6)", "(3,4)(7,8)"], 1344),
]


def perfect_subgroups(degree: int) -> list:
    """Nontrivial perfect subgroup class representatives at this degree."""
    if degree > 8:
        raise DomainError("perfect seed data stops at degree 8")
    out = []
    for name, support, gens, order in _PERFECT_SEEDS:
        if support <= degree:
            group = PermutationGroup.from_cycles(gens, degree, name=name)
            if group.order() != order:
                raise RuntimeError(f"seed {name} has wrong order {group.order()}")
            out.append(group)
    return out


class SubgroupClassCatalog:
    """One representative per conjugacy class of subgroups of S_degree."""

    def __init__(self, degree: int, classes, provenance: str):
        assert provenance in ("exhaustive", "cyclic-extension", "imported-file")
        self.degree = degree
        self.classes = list(classes)
        self.provenance = provenance

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    def sort(self):
        self.classes.sort(key=_class_sort_key)

    def __repr__(self):
        return f"SubgroupClassCatalog<degree {self.degree}, {len(self.classes)} classes, {self.provenance}>"


def _class_sort_key(group: PermutationGroup):
    return (
        group.order(),
        group.orbit_sizes(),
        group.cycle_type_histogram(),
        tuple(sorted(g.tup for g in group.elements())),
    )


def canonical_class_rep(group: PermutationGroup, conjugators=None) -> PermutationGroup:
    """Minimize (order, orbit sizes, sorted element list) over a bounded
    set of conjugating elements; ties by the lexicographic element list."""
    if conjugators is None:
        if factorial(group.degree) <= 720:
            conjugators = sorted(PermutationGroup.symmetric(group.degree).elements())
        else:
            conjugators = [Permutation.identity(group.degree)]
    best = None
    best_key = None
    for w in conjugators:
        elems = sorted(g.conjugate_by(w).tup for g in group.elements())
        key = tuple(elems)
        if best_key is None or key < best_key:
            best_key = key
            best = PermutationGroup(
                [g.conjugate_by(w) for g in group.generators], group.degree, name=group.name
            )
    return best


def _fingerprint(order, orbit_sizes, hist):
    return (order, orbit_sizes, hist)


def _group_with_elements(generators, degree, elements):
    g = PermutationGroup(generators, degree)
    g._elements = frozenset(elements)
    return g


def subgroup_conjugacy_classes(degree: int, method: str = "cyclic-extension",
                               progress=None) -> SubgroupClassCatalog:
    """Catalog of subgroup classes of S_degree.

    method "cyclic-extension" works for degree <= 8; "exhaustive" is the
    closure-sweep oracle for degree <= 6.
    """
    if method == "exhaustive":
        if degree > 6:
            raise DomainError("exhaustive enumeration supported only for degree <= 6")
        return brute_force_classes(degree)
    if method != "cyclic-extension":
        raise DomainError(f"unknown method {method!r}")
    if degree > 8:
        raise DomainError("cyclic extension supported only for degree <= 8")

    sym = PermutationGroup.symmetric(degree)
    all_elements = sorted(sym.elements())
    ident = Permutation.identity(degree)

    classes = []  # list of PermutationGroup
    buckets = {}  # fingerprint -> list of class indices

    def register(group) -> bool:
        """Add the class of `group` if new; returns True when added."""
        fp = _fingerprint(group.order(), group.orbit_sizes(), group.cycle_type_histogram())
        bucket = buckets.setdefault(fp, [])
        for idx in bucket:
            if is_conjugate_subgroup(classes[idx], group) is not None:
                return False
        bucket.append(len(classes))
        classes.append(group)
        return True

    register(_group_with_elements([ident], degree, [ident]))
    for seed in perfect_subgroups(degree):
        register(seed)

    # extensions of the trivial class are the prime-order cyclic classes;
    # enumerate them directly instead of walking 1-element cosets
    seen_cyclic = set()
    for g in all_elements:
        o = g.order()
        if o < 2 or any(o % p == 0 and o != p for p in (2, 3, 5, 7)):
            continue
        elems = frozenset(g ** i for i in range(o))
        if elems in seen_cyclic:
            continue
        seen_cyclic.add(elems)
        register(_group_with_elements([g], degree, elems))
    del seen_cyclic

    # cyclic extensions, processing classes in order of increasing size so
    # every prime-index normal subgroup is already represented
    processed = {0}
    full_order = factorial(degree)
    while True:
        todo = [i for i in range(len(classes)) if i not in processed]
        if not todo:
            break
        idx = min(todo, key=lambda i: (classes[i].order(), i))
        processed.add(idx)
        group = classes[idx]
        if progress:
            progress(f"extending class {idx} (order {group.order()}); {len(classes)} classes so far")
        if group.order() == full_order:
            continue
        n_elems = group.elements()
        gens = list(group.generators)
        normalizer = group.normalizer_in(all_elements)
        if len(normalizer) == len(n_elems):
            continue
        coset_id = {}
        reps = []
        for w in normalizer:
            if w in coset_id:
                continue
            cid = len(reps)
            reps.append(w)
            for h in n_elems:
                coset_id[h * w] = cid
        seen_cyclic_sets = set()
        for rep in reps:
            if rep in n_elems:
                continue
            # order of the coset in the normalizer quotient
            o = 1
            z = rep
            ids = [coset_id[rep]]
            while z not in n_elems:
                z = rep * z
                o += 1
                ids.append(coset_id[z])
            if any(o % p == 0 and o != p for p in (2, 3, 5, 7)):
                continue
            key = frozenset(ids[:-1])
            if key in seen_cyclic_sets:
                continue
            seen_cyclic_sets.add(key)
            new_elems = set()
            power = ident
            for _ in range(o):
                for h in n_elems:
                    new_elems.add(h * power)
                power = rep * power
            register(_group_with_elements(gens + [rep], degree, new_elems))
    if factorial(degree) <= 720:
        classes = [canonical_class_rep(c) for c in classes]
    catalog = SubgroupClassCatalog(degree, classes, "cyclic-extension")
    catalog.sort()
    return catalog


def brute_force_classes(degree: int) -> SubgroupClassCatalog:
    """Oracle: closure sweep over class representatives.

    Extending a representative by one element and extending a conjugate
    give conjugate results, so sweeping class reps with all single-element
    adjunctions reaches every class (any subgroup is a chain of one-element
    adjunctions from the trivial group).
    """
    if degree > 6:
        raise DomainError("oracle supported only for degree <= 6")
    sym = PermutationGroup.symmetric(degree)
    all_elements = sorted(sym.elements())
    ident = Permutation.identity(degree)

    classes = []
    buckets = {}

    def register(group) -> bool:
        fp = _fingerprint(group.order(), group.orbit_sizes(), group.cycle_type_histogram())
        bucket = buckets.setdefault(fp, [])
        for idx in bucket:
            if is_conjugate_subgroup(classes[idx], group) is not None:
                return False
        bucket.append(len(classes))
        classes.append(group)
        return True

    register(_group_with_elements([ident], degree, [ident]))
    frontier = [classes[0]]
    while frontier:
        nxt = []
        for group in frontier:
            elems = group.elements()
            seen_local = set()
            for g in all_elements:
                if g in elems:
                    continue
                new = PermutationGroup(list(group.generators) + [g], degree)
                key = new.elements()
                if key in seen_local:
                    continue
                seen_local.add(key)
                if register(new):
                    nxt.append(new)
        frontier = nxt
    classes = [canonical_class_rep(c) for c in classes]
    catalog = SubgroupClassCatalog(degree, classes, "exhaustive")
    catalog.sort()
    return catalog


_HEADER_RE = re.compile(r"^degree:\s*(\d+)\s*$")


def write_catalog(catalog: SubgroupClassCatalog, path):
    """One class per line: `NAME: gen1; gen2; ...` in cycle notation."""
    lines = [f"# subgroup class catalog ({catalog.provenance})", f"degree: {catalog.degree}"]
    for i, group in enumerate(catalog.classes):
        name = group.name or f"class{i:04d}"
        gens = "; ".join(g.print_cycles() for g in group.generators)
        lines.append(f"{name}: {gens}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_catalog(path) -> SubgroupClassCatalog:
    degree = None
    classes = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = _HEADER_RE.match(line)
            if m:
                degree = int(m.group(1))
                continue
            if degree is None:
                raise DomainError("catalog file must start with a `degree: N` header")
            if ":" not in line:
                raise DomainError(f"malformed catalog line: {raw!r}")
            name, gens = line.split(":", 1)
            perms = [parse_cycles(tok, degree) for tok in gens.split(";") if tok.strip()]
            if not perms:
                perms = [Permutation.identity(degree)]
            classes.append(PermutationGroup(perms, degree, name=name.strip()))
    if degree is None:
        raise DomainError("catalog file has no degree header")
    return SubgroupClassCatalog(degree, classes, "imported-file")
