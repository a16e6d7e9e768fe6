"""Local cohomology of monomial ideals and subspace arrangements, computed exactly."""

__version__ = "0.1.0"

from .field_linalg import GF, QQ, FieldSpec, Matrix, kernel_basis, rank
from .monomials import (Monomial, MonomialIdeal, SignVector, alexander_dual, face_ideal,
                        minimal_primes, parse_ideal, radical)
from .poset import AffineSubspace, poset_from_ideal, poset_from_subspaces, strict_upset_complex
from .homology import SimplicialComplex, reduced_homology_dims
from .cech import graded_lc_dim, multiplication_map, straightness_check
from .koszul import graded_betti, verify_dual_identity
from .invariants import (characteristic_cycle, complement_betti, cross_validate,
                         extension_analysis, hypercube, multiplicities)
