"""Outer derivations of group algebras via the Cayley complex of the adjoint-action groupoid."""

__version__ = "0.1.0"

from .complex import build_component, d0_matrix, d1_matrix
from .derivations import derivation_dims
from .group_engine import FiniteGroupTable, FreeAbelianGroup, enumerate_finite, free_abelian_backend
from .presentation import Presentation, parse_presentation
from .verify import verify_group

__all__ = [
    "FiniteGroupTable",
    "FreeAbelianGroup",
    "Presentation",
    "build_component",
    "d0_matrix",
    "d1_matrix",
    "derivation_dims",
    "enumerate_finite",
    "free_abelian_backend",
    "parse_presentation",
    "verify_group",
]
