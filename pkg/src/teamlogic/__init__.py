"""Team semantics toolkit: evaluation, closure analysis, characteristic
formula synthesis and uniform definability checks over finite domains."""

from .closure import ClosureReport, Cls, check_closure, in_class, random_formula, random_property
from .definability import (
    Context,
    PropertyFunction,
    apply_context,
    check_uniform,
    class_members,
    search_context,
)
from .evaluate import EvaluationError
from .formula import Formula
from .fragments import FragmentId, in_fragment
from .kernels import BACKEND
from .modal import KripkeModel, gap_model, mextension, msat
from .parser import ParseError, parse, to_text
from .prop import entails, equivalent, extension, sat
from .synth import (
    Logic,
    SynthesisError,
    chi_D,
    chi_F,
    chi_t,
    chi_U,
    chi_v,
    gamma,
    synthesize,
    verify_completeness,
    xi,
)
from .teams import Domain, Property, all_properties, all_teams, all_valuations, union_all

__all__ = [
    "BACKEND",
    "ClosureReport",
    "Cls",
    "Context",
    "Domain",
    "EvaluationError",
    "Formula",
    "FragmentId",
    "KripkeModel",
    "Logic",
    "ParseError",
    "Property",
    "PropertyFunction",
    "SynthesisError",
    "all_properties",
    "all_teams",
    "all_valuations",
    "apply_context",
    "check_closure",
    "check_uniform",
    "chi_D",
    "chi_F",
    "chi_U",
    "chi_t",
    "chi_v",
    "class_members",
    "entails",
    "equivalent",
    "extension",
    "gamma",
    "gap_model",
    "in_class",
    "in_fragment",
    "mextension",
    "msat",
    "parse",
    "random_formula",
    "random_property",
    "sat",
    "search_context",
    "synthesize",
    "to_text",
    "union_all",
    "verify_completeness",
    "xi",
]
