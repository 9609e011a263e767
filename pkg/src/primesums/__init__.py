"""Exact complete exponential sums over prime fields and checks of their bounds."""
from primesums._backend import BACKEND
from primesums.characters import CharacterSpec, character, chi_eval
from primesums.expsums import (
    SumValue,
    batch_S_all_s,
    eval_S,
    eval_T,
    gauss_sum,
    max_abs_S,
    reduce_exponent,
    spectrum,
)
from primesums.prime_field import FieldContext, build_field_context

__all__ = [
    "BACKEND",
    "CharacterSpec",
    "FieldContext",
    "SumValue",
    "batch_S_all_s",
    "build_field_context",
    "character",
    "chi_eval",
    "eval_S",
    "eval_T",
    "gauss_sum",
    "max_abs_S",
    "reduce_exponent",
    "spectrum",
]
