"""Partition combinatorics and Schubert calculus for generic torus orbits.

Schur-functor dimensions d_n, the alternating sums m_k giving the
intersection numbers of a generic torus-orbit closure against Schubert
cycles, Littlewood-Richardson products in the cohomology of a
Grassmannian, and the positive complementary-pair expansion of the orbit
class.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .perms import DomainError

__all__ = [
    "Partition",
    "dim_schur",
    "m_k",
    "iterated_difference",
    "klyachko_pairing",
    "lr_coefficient",
    "CohomologyClass",
    "schubert_product",
    "schubert_class",
    "generic_orbit_class",
    "orbit_pairing",
]


class Partition:
    """Weakly decreasing nonnegative parts, trailing zeros trimmed."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts are not weakly decreasing: {parts}")
        if any(p < 0 for p in parts):
            raise DomainError(f"negative part in {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def height(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the height."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def fits_box(self, rows: int, cols: int) -> bool:
        return self.height <= rows and (not self.parts or self.parts[0] <= cols)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def contains(self, other: "Partition") -> bool:
        return all(self.part(i + 1) >= p for i, p in enumerate(other.parts))

    def complement(self, rows: int, cols: int) -> "Partition":
        """Complement inside a rows x cols rectangle."""
        if not self.fits_box(rows, cols):
            raise DomainError(f"{self} does not fit in {rows}x{cols}")
        return Partition(cols - self.part(rows - i) for i in range(rows))

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return (self.weight, self.parts) < (other.weight, other.parts)

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_in_box(rows: int, cols: int):
    """All partitions fitting in a rows x cols rectangle."""
    def rec(remaining_rows, maxpart):
        yield ()
        if remaining_rows == 0:
            return
        for first in range(1, maxpart + 1):
            for rest in rec(remaining_rows - 1, first):
                yield (first,) + rest

    for parts in rec(rows, cols):
        yield Partition(parts)


def _weyl_dimension(n: int, lam: Partition) -> Fraction:
    parts = [lam.part(i) for i in range(1, n + 1)]
    value = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            value *= Fraction(parts[i] - parts[j] + j - i, j - i)
    return value


def _hook_content_dimension(n: int, lam: Partition) -> Fraction:
    value = Fraction(1)
    conj = lam.conjugate()
    for a, row in enumerate(lam.parts, start=1):
        for b in range(1, row + 1):
            hook = (row - b) + (conj.part(b) - a) + 1
            value *= Fraction(n - a + b, hook)
    return value


def dim_schur(n: int, lam: Partition) -> int:
    """Dimension of the degree-|lam| Schur functor of an n-dim space.

    Computed twice, by the Weyl product over index pairs and by
    hook-and-content; a mismatch aborts.
    """
    if n < 0:
        raise DomainError("need n >= 0")
    if n < lam.height:
        return 0
    weyl = _weyl_dimension(n, lam)
    hook = _hook_content_dimension(n, lam)
    if weyl != hook:
        raise RuntimeError(f"dimension formulas disagree for n={n}, {lam}: {weyl} vs {hook}")
    if weyl.denominator != 1:
        raise RuntimeError(f"non-integral dimension for n={n}, {lam}")
    return int(weyl)


def m_k(k: int, lam: Partition) -> int:
    """Alternating binomial sum of Schur dimensions.

    Sum over i of (-1)^i C(|lam|+1, i) d_{k-i}(lam); binomials with upper
    index below i vanish, matching the sum running to i = k regardless.
    """
    if k < 0:
        raise DomainError("need k >= 0")
    total = 0
    for i in range(k + 1):
        total += (-1) ** i * comb(lam.weight + 1, i) * dim_schur(k - i, lam)
    return total


def iterated_difference(coeffs, d: int, x: int) -> int:
    """(d+1)-th iterated difference of the polynomial at x.

    ``coeffs`` lists the coefficients of 1, x, x^2, ...; the result is zero
    whenever the polynomial degree is at most d.
    """
    def f(t):
        return sum(c * t**e for e, c in enumerate(coeffs))

    return sum((-1) ** i * comb(d + 1, i) * f(x - i) for i in range(d + 2))


def klyachko_pairing(p: int, q: int, lam: Partition) -> int:
    """Intersection number of the generic torus-orbit class with a Schubert
    cycle of complementary degree: equals m_p(lam)."""
    if lam.weight != p + q - 1:
        raise DomainError(f"need |lam| = p+q-1 = {p + q - 1}, got {lam.weight}")
    if not lam.fits_box(p, q):
        raise DomainError(f"{lam} does not fit in the {p}x{q} box")
    value = m_k(p, lam)
    if value < 0:
        raise RuntimeError(f"negative intersection number {value} for {lam}")
    return value


_LR_CACHE = {}


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Littlewood-Richardson coefficient c^nu_{lam, mu}.

    Counts column-strict skew tableaux of shape nu/lam and content mu whose
    reverse reading word is a lattice word.
    """
    if lam.weight + mu.weight != nu.weight:
        return 0
    if not (nu.contains(lam) and nu.contains(mu)):
        return 0
    key = (lam.parts, mu.parts, nu.parts)
    cached = _LR_CACHE.get(key)
    if cached is not None:
        return cached
    rows = nu.height
    cells = []  # reverse reading order: rows top to bottom, right to left
    for r in range(1, rows + 1):
        lo, hi = lam.part(r), nu.part(r)
        for c in range(hi, lo, -1):
            cells.append((r, c))
    values = {}
    counts = [0] * (mu.height + 1)
    total = 0

    def place(i):
        nonlocal total
        if i == len(cells):
            total += 1
            return
        r, c = cells[i]
        right = values.get((r, c + 1))
        above = values.get((r - 1, c)) if lam.part(r - 1) < c <= nu.part(r - 1) else None
        vmax = right if right is not None else mu.height
        vmin = (above + 1) if above is not None else 1
        for v in range(vmin, vmax + 1):
            if counts[v] >= mu.part(v):
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            values[(r, c)] = v
            place(i + 1)
            counts[v] -= 1
        values.pop((r, c), None)

    place(0)
    _LR_CACHE[key] = total
    return total


class CohomologyClass:
    """Integer combination of Schubert classes in the cohomology of
    Gr(p, p+q); keys fit in the p x q box and zero coefficients vanish."""

    __slots__ = ("box", "coeffs")

    def __init__(self, box, coeffs=None):
        p, q = box
        self.box = (int(p), int(q))
        clean = {}
        for lam, c in (coeffs or {}).items():
            if not isinstance(lam, Partition):
                lam = Partition(lam)
            if not lam.fits_box(p, q):
                raise DomainError(f"{lam} does not fit the {p}x{q} box")
            if c:
                clean[lam] = int(c)
        self.coeffs = clean

    def coefficient(self, lam) -> int:
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return self.coeffs.get(lam, 0)

    def is_homogeneous(self):
        degrees = {lam.weight for lam in self.coeffs}
        return len(degrees) <= 1

    def degree(self):
        degrees = {lam.weight for lam in self.coeffs}
        if len(degrees) != 1:
            raise DomainError("class is not homogeneous")
        return degrees.pop()

    def __add__(self, other):
        if self.box != other.box:
            raise DomainError("box mismatch")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return CohomologyClass(self.box, out)

    def __neg__(self):
        return CohomologyClass(self.box, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int):
        return CohomologyClass(self.box, {k: scalar * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        return schubert_product(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, CohomologyClass)
            and self.box == other.box
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.box, tuple(sorted((k.parts, v) for k, v in self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for lam in sorted(self.coeffs):
            c = self.coeffs[lam]
            name = "s" + ("".join(str(p) for p in lam.parts) or "0")
            terms.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(terms)


def schubert_class(box, lam) -> CohomologyClass:
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    return CohomologyClass(box, {lam: 1})


def schubert_product(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Cup product: Littlewood-Richardson expansion, discarding partitions
    outside the box."""
    if a.box != b.box:
        raise DomainError("box mismatch")
    p, q = a.box
    out = {}
    for lam, ca in a.coeffs.items():
        for mu, cb in b.coeffs.items():
            weight = lam.weight + mu.weight
            if weight > p * q:
                continue
            for nu in partitions_in_box(p, q):
                if nu.weight != weight:
                    continue
                c = lr_coefficient(lam, mu, nu)
                if c:
                    out[nu] = out.get(nu, 0) + ca * cb * c
    return CohomologyClass(a.box, out)


def generic_orbit_class(p: int, q: int) -> CohomologyClass:
    """Class of the closure of a generic maximal-torus orbit in Gr(p, p+q):
    the sum of products of complementary pairs inside the
    (p-1) x (q-1) rectangle."""
    if p < 1 or q < 1:
        raise DomainError("need p, q >= 1")
    box = (p, q)
    total = CohomologyClass(box)
    for lam in partitions_in_box(p - 1, q - 1):
        tilde = lam.complement(p - 1, q - 1)
        total = total + schubert_product(schubert_class(box, lam), schubert_class(box, tilde))
    if total.coeffs:
        if not total.is_homogeneous() or total.degree() != (p - 1) * (q - 1):
            raise RuntimeError("orbit class is not homogeneous of the expected degree")
        if any(c <= 0 for c in total.coeffs.values()):
            raise RuntimeError("orbit class has a nonpositive coefficient")
    return total


def orbit_pairing(p: int, q: int, lam: Partition) -> int:
    """Poincare pairing of the orbit class against a Schubert class of
    complementary degree: the coefficient of the box complement."""
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    if lam.weight != p + q - 1:
        raise DomainError("pairing needs |lam| = p + q - 1")
    if not lam.fits_box(p, q):
        raise DomainError(f"{lam} does not fit the {p}x{q} box")
    orbit = generic_orbit_class(p, q)
    return orbit.coefficient(lam.complement(p, q))
