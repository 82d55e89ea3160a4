"""Formula ASTs, parsing, printing and the desugaring pass."""

from .ast import (
    FALSE,
    FULL_COALITION,
    TRUE,
    And,
    Atom,
    CoalitionMod,
    FalseF,
    Finally,
    Formula,
    FullCoalition,
    Globally,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    PathFormula,
    Quant,
    TrueF,
    Until,
    agents_of,
    atoms_of,
    depth,
    node_count,
    walk,
)
from .desugar import desugar, is_desugared
from .parser import format_formula, parse_formula

__all__ = [
    "And",
    "Atom",
    "CoalitionMod",
    "FALSE",
    "FULL_COALITION",
    "FalseF",
    "Finally",
    "Formula",
    "FullCoalition",
    "Globally",
    "Iff",
    "Implies",
    "Next",
    "Not",
    "Or",
    "PathFormula",
    "Quant",
    "TRUE",
    "TrueF",
    "Until",
    "agents_of",
    "atoms_of",
    "depth",
    "desugar",
    "format_formula",
    "is_desugared",
    "node_count",
    "parse_formula",
    "walk",
]
