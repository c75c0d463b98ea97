"""Exact computations with Cayley algebras and G2-type Lie algebras over GF(p) and GF(p)(t)."""

from .fields import Field, PrimeField, RationalFunctionField, make_field, parse_field_spec
from .linalg import Subspace, kernel_basis, rank, rref, solve
from .algkit import StructureTable, derivation_algebra, is_simple, quotient

__version__ = "0.1.0"

__all__ = [
    "Field",
    "PrimeField",
    "RationalFunctionField",
    "StructureTable",
    "Subspace",
    "derivation_algebra",
    "is_simple",
    "kernel_basis",
    "make_field",
    "parse_field_spec",
    "quotient",
    "rank",
    "rref",
    "solve",
]
