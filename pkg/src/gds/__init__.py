"""Generalized Dedekind symbols on the cusp sets of the groups Delta(u^2, 2t)."""
from .classical import classical_symbol, cotangent_check, dedekind_sum, sawtooth
from .cochain import CochainContext, StabilizerError, chi, epsilon, make_context, phi, symbol_of_word
from .exactfield import (
    INFINITY,
    RATIONAL,
    FieldMismatch,
    FieldSpec,
    FieldValue,
    ParseError,
    approx,
    floor,
    parse,
    parse_point,
    sign,
)
from .fuchsian import (
    ConstraintViolation,
    GroupParams,
    Letter,
    ProjMatrix,
    Word,
    free_reduce,
    generators,
    make_params,
    mobius_apply,
    word_to_matrix,
)
from .reduction import NotReduced, ReductionConfig, ReductionResult, dedekind_symbol, height, reduce_cusp

__version__ = "0.1.0"
