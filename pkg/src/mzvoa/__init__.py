"""Exact computations in the Heisenberg vertex operator algebra M(1), its
C_2 quotient, commutative vertex algebras and Mathieu-Zhao subspaces."""

from .c2 import c2_reduce, cn_spanning_set, poisson_bracket, poisson_product
from .commva import DerivationAlgebra, LaurentElement, WindowOverflow, laurent_radical_member
from .findim import AlgebraHom, FinDimAlgebra, Subspace, hom_preimage, mz_verdict, nilradical
from .fock import FockElement, Heisenberg, ValidationError, WeightBoundExceeded, make_monomial, weight
from .mzvertex import SubspaceSpec, f_map, image_member, poly_radical_member, string_product, vertex_radical_member
from .parsing import ParseError, format_element, parse_element, parse_fock, parse_laurent, parse_poly
from .poly import PolyElement
from .verdict import BoundOverflow, Verdict

__all__ = [
    "AlgebraHom", "BoundOverflow", "DerivationAlgebra", "FinDimAlgebra", "FockElement", "Heisenberg",
    "LaurentElement", "ParseError", "PolyElement", "Subspace", "SubspaceSpec", "ValidationError", "Verdict",
    "WeightBoundExceeded", "WindowOverflow", "c2_reduce", "cn_spanning_set", "f_map", "format_element",
    "hom_preimage", "image_member", "laurent_radical_member", "make_monomial", "mz_verdict", "nilradical",
    "parse_element", "parse_fock", "parse_laurent", "parse_poly", "poisson_bracket", "poisson_product",
    "poly_radical_member", "string_product", "vertex_radical_member", "weight",
]
