"""Exact computations with periodic algebras generated by the integers."""

from .algebra import (
    Element,
    PeriodicAlgebra,
    StructureMatrix,
    balanced_product,
    closed_form_balanced,
    make_algebra,
    mul_basis,
    mul_elem,
    residue_span_is_ideal,
    residue_span_is_subalgebra,
)
from .analysis import (
    Fingerprint,
    cor_c1_check,
    derived_series,
    fingerprint,
    is_lie,
    is_perfect,
    lower_central_series,
    right_nilpotency_check,
    solvability_via_F1,
)
from .classify import classification_report, family_match, named_algebra
from .fields import GF, QQ, Field, FieldElement, residue_of
from .leibniz import enumerate_leibniz, is_leibniz, leibniz_element_check, leibniz_residue_check
from .transforms import BasisTransform, apply_residue_shift, inflate, isomorphism_search, scale, shift

__version__ = "0.1.0"
