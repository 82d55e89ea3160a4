"""Checkers: explicit fixpoint evaluation, witnesses, and the brute-force oracle."""

from .backend import available_backends, default_backend
from .evaluator import (
    EvalOutcome,
    eval_atl,
    eval_ctl,
    evaluate,
    evaluate_kripke,
    pre_coalition,
    run_atl_explicit,
    run_ctl_explicit,
)
from .oracle import oracle_atl
from .results import VerificationResult
from .statesets import StateSet
from .witness import MemorylessStrategy, extract_witness

__all__ = [
    "EvalOutcome",
    "MemorylessStrategy",
    "StateSet",
    "VerificationResult",
    "available_backends",
    "default_backend",
    "eval_atl",
    "eval_ctl",
    "evaluate",
    "evaluate_kripke",
    "extract_witness",
    "oracle_atl",
    "pre_coalition",
    "run_atl_explicit",
    "run_ctl_explicit",
]
