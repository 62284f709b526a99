"""Equivariant Picard lattices of moduli of pointed rational curves.

Subpackages: permutations and subgroup catalogs, exact integer linear
algebra, G-lattices with low-degree cohomology, the Picard lattice with its
boundary dictionary, Schubert calculus for generic torus orbits, and the
classification surveys tying them together.
"""

from .exact import AbelianInvariants
from .perms import Permutation, PermutationGroup, iota_generators, parse_cycles
from .lattice import GLattice
from .picard import NQPair, build_NQ, build_picard, losev_manin_lattice, splitting_section
from .schubert import CohomologyClass, Partition

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "Permutation",
    "PermutationGroup",
    "iota_generators",
    "parse_cycles",
    "GLattice",
    "NQPair",
    "build_NQ",
    "build_picard",
    "losev_manin_lattice",
    "splitting_section",
    "CohomologyClass",
    "Partition",
    "__version__",
]
