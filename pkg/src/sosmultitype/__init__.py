"""Exact commutator multitype, boundary systems and normalization for sums of squares domains."""
from __future__ import annotations

from .algebra import CoordChange, GaussianRational, HoloPoly, MixedPoly, expand_squares, substitute
from .engine import EngineOptions, MultitypeResult, boundary_system_ideal, compute, crossterm_verdict
from .errors import (CandidateBoundExceeded, HolomorphyViolation, MultitypeError, NormalizationFailure,
                     NotAdmissible, ParseError, RequiresPreNormalization, TorsionDetected, ZeroPivot)
from .machinery import ListSpec, VectorField, derivative_ideal, levi_product, script_L_partial_r
from .normalizer import lemma_shear, normalize_boundary_system, torsion_check
from .oracle import brute_commutator_entry, brute_multitype, direct_L_partial_r
from .parser import DomainSpec, format_spec, parse
from .weights import Weight, is_distinguished, is_weight, model_extract

__all__ = [
    "CoordChange", "GaussianRational", "HoloPoly", "MixedPoly", "expand_squares", "substitute",
    "EngineOptions", "MultitypeResult", "boundary_system_ideal", "compute", "crossterm_verdict",
    "CandidateBoundExceeded", "HolomorphyViolation", "MultitypeError", "NormalizationFailure",
    "NotAdmissible", "ParseError", "RequiresPreNormalization", "TorsionDetected", "ZeroPivot",
    "ListSpec", "VectorField", "derivative_ideal", "levi_product", "script_L_partial_r",
    "lemma_shear", "normalize_boundary_system", "torsion_check",
    "brute_commutator_entry", "brute_multitype", "direct_L_partial_r",
    "DomainSpec", "format_spec", "parse",
    "Weight", "is_distinguished", "is_weight", "model_extract",
]
