"""Exact construction and verification of Lie color and Hom-Lie color algebras."""

from .algebra import Element, EvenMap, GradedAlgebra, GradedBasis, mult_eval, apply_map, skew_complete
from .grading import BiCharacter, GroupSpec, SigmaForm
from .corpus import build

__all__ = [
    "BiCharacter",
    "Element",
    "EvenMap",
    "GradedAlgebra",
    "GradedBasis",
    "GroupSpec",
    "SigmaForm",
    "apply_map",
    "build",
    "mult_eval",
    "skew_complete",
]
