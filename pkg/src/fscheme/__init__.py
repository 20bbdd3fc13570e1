"""Full spectra, structure sheaves and localizations of finite rings."""

from .errors import FSchemeError
from .ring import (FiniteRing, RingAutomorphism, RingHom, make_galois_field, make_group_algebra,
                   make_matrix_ring, make_product, make_upper_triangular, make_zmod)
from .ideals import TwoSidedIdeal, ideal_generated, jacobson_radical, quotient
from .localization import FractionRing, localize
from .spectrum import FullSpectrum, FullyInvertibleSubset, fully_invertible_subsets
from .sheaf import structure_sheaf, verify_sheaf_condition
from .space import FSpace, classify_affinity

__all__ = [
    "FSchemeError", "FiniteRing", "RingAutomorphism", "RingHom", "make_galois_field",
    "make_group_algebra", "make_matrix_ring", "make_product", "make_upper_triangular",
    "make_zmod", "TwoSidedIdeal", "ideal_generated", "jacobson_radical", "quotient",
    "FractionRing", "localize", "FullSpectrum", "FullyInvertibleSubset",
    "fully_invertible_subsets", "structure_sheaf", "verify_sheaf_condition", "FSpace",
    "classify_affinity",
]
