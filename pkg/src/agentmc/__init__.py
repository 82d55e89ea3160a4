"""Model checking for multi-agent systems.

Models are concurrent game structures (agents act simultaneously; the joint
action fixes the successor) or plain Kripke structures; properties are
written in a branching-time syntax with path quantifiers (E, A) and
coalition modalities (<A0, A1>, [A0]).  A registry maps (model class, logic
class, method) triples to checkers and picks the method from the model's
state count, falling back to whatever is registered.

The fixpoint kernels run either as a compiled extension or as pure Python;
see agentmc.checkers.backend.
"""

from .checkers import (
    MemorylessStrategy,
    StateSet,
    VerificationResult,
    eval_atl,
    eval_ctl,
    evaluate,
    extract_witness,
    oracle_atl,
    pre_coalition,
)
from .errors import (
    AgentmcError,
    DuplicateTriple,
    NoCapableChecker,
    ParseError,
    RegistryFrozen,
    RegistryNotFrozen,
    SizeGuardExceeded,
    UnknownAgent,
    UnknownAtom,
    UnknownModelClass,
    ValidationError,
    Violation,
)
from .kernel import (
    CheckerDescriptor,
    LogicBranch,
    LogicClassId,
    Method,
    ModelBranch,
    ModelClassId,
    Registry,
    SelectionPolicy,
    SelectionTrace,
    classify_formula,
    default_registry,
    logic_class,
    model_class,
    verify,
)
from .logics import (
    agents_of,
    atoms_of,
    desugar,
    format_formula,
    parse_formula,
)
from .models import (
    Coalition,
    ConcurrentGameStructure,
    KripkeStructure,
    ModelDocument,
    available_actions,
    cgs_of_kripke,
    export_dot,
    kripke_of_cgs,
    parse_model_text,
    serialize_model,
    validate_cgs,
    validate_kripke,
)

__version__ = "0.1.0"

__all__ = [
    "AgentmcError",
    "CheckerDescriptor",
    "Coalition",
    "ConcurrentGameStructure",
    "DuplicateTriple",
    "KripkeStructure",
    "LogicBranch",
    "LogicClassId",
    "MemorylessStrategy",
    "Method",
    "ModelBranch",
    "ModelClassId",
    "ModelDocument",
    "NoCapableChecker",
    "ParseError",
    "Registry",
    "RegistryFrozen",
    "RegistryNotFrozen",
    "SelectionPolicy",
    "SelectionTrace",
    "SizeGuardExceeded",
    "StateSet",
    "UnknownAgent",
    "UnknownAtom",
    "UnknownModelClass",
    "ValidationError",
    "VerificationResult",
    "Violation",
    "agents_of",
    "atoms_of",
    "available_actions",
    "cgs_of_kripke",
    "classify_formula",
    "default_registry",
    "desugar",
    "eval_atl",
    "eval_ctl",
    "evaluate",
    "export_dot",
    "extract_witness",
    "format_formula",
    "kripke_of_cgs",
    "logic_class",
    "model_class",
    "oracle_atl",
    "parse_formula",
    "parse_model_text",
    "pre_coalition",
    "serialize_model",
    "validate_cgs",
    "validate_kripke",
    "verify",
    "__version__",
]
