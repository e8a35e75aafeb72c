"""Context-adaptive Burrows-Wheeler transforms.

Forward transform through a suffix tree, inversion and pattern counting for
general, plus-minus and local ordering schemes, toehold locate for local
schemes, and a dynamic program for the run-minimizing scheme.
"""
from .base import (EMPTY, CabwtError, CapExceededError, InvalidSymbolError, InvalidTransformError,
                   MissingTerminatorError, NotApplicableError, NotPrimitiveError, OracleTooLargeError,
                   Range, SchemeFormatError, TransformOutput)
from .general import GeneralIndex, RangeX, count, invert
from .kernels import BACKEND
from .local import LocalIndex, build_local, count_and_locate, count_local, invert_local, locate, step_right
from .oracle import oracle_min_runs, oracle_range, oracle_transform
from .orderings import (Alphabet, Permutation, abwt, bwt, constant, explicit, plus_minus,
                        position_mod_k, preset, scheme_from_text, scheme_to_text)
from .pm import PmIndex, count_pm, invert_pm
from .rank import IndexedSequence, run_count
from .runs import minimize
from .suffix_index import transform

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "BACKEND", "CabwtError", "CapExceededError", "EMPTY", "GeneralIndex", "IndexedSequence",
    "InvalidSymbolError", "InvalidTransformError", "LocalIndex", "MissingTerminatorError",
    "NotApplicableError", "NotPrimitiveError", "OracleTooLargeError", "Permutation", "PmIndex", "Range",
    "RangeX", "SchemeFormatError", "TransformOutput", "abwt", "build_local", "bwt", "constant", "count",
    "count_and_locate", "count_local", "count_pm", "explicit", "invert", "invert_local", "invert_pm",
    "locate", "minimize", "oracle_min_runs", "oracle_range", "oracle_transform", "plus_minus",
    "position_mod_k", "preset", "run_count", "scheme_from_text", "scheme_to_text", "step_right",
    "transform",
]
