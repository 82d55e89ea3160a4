"""Model structures, the line-oriented text format, and graph export."""

from .dot import export_dot
from .structures import (
    Coalition,
    ConcurrentGameStructure,
    KripkeStructure,
    ModelDocument,
    available_actions,
    cgs_of_kripke,
    kripke_of_cgs,
    validate_cgs,
    validate_kripke,
)
from .textfmt import parse_model_text, serialize_model

__all__ = [
    "Coalition",
    "ConcurrentGameStructure",
    "KripkeStructure",
    "ModelDocument",
    "available_actions",
    "cgs_of_kripke",
    "export_dot",
    "kripke_of_cgs",
    "parse_model_text",
    "serialize_model",
    "validate_cgs",
    "validate_kripke",
]
