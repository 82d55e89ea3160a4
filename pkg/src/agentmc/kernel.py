"""Extensible core: class identifiers, the checker registry, and dispatch.

Model classes and logic classes are open-ended identifier sets; the four
model ids (LTS, Kripke, CGS, IS) and four logic ids (LTL, CTL, ATL, SL) are
known here with fixed branches, and custom ids may be registered alongside
them.  Checkers are registered per (model class, logic class, method) triple;
selection prefers the method the state-count policy names and falls back to
whatever is registered, recording the substitution in a SelectionTrace.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from time import perf_counter
from typing import Callable, Mapping

from .errors import (
    DuplicateTriple,
    NoCapableChecker,
    RegistryFrozen,
    RegistryNotFrozen,
    UnknownAgent,
    UnknownAtom,
    UnknownModelClass,
)
from .logics import CoalitionMod, Formula, agents_of, atoms_of, parse_formula, walk

log = logging.getLogger(__name__)


class ModelBranch(enum.Enum):
    MONOLITHIC = "monolithic"
    MULTI_AGENT = "multi-agent"


class LogicBranch(enum.Enum):
    TEMPORAL = "temporal"
    STRATEGIC = "strategic"


class Method(enum.Enum):
    EXPLICIT = "Explicit"
    IMPLICIT = "Implicit"
    ABSTRACT = "Abstract"


_KNOWN_MODEL_BRANCHES = {
    "LTS": ModelBranch.MONOLITHIC,
    "Kripke": ModelBranch.MONOLITHIC,
    "CGS": ModelBranch.MULTI_AGENT,
    "IS": ModelBranch.MULTI_AGENT,
}

_KNOWN_LOGIC_BRANCHES = {
    "LTL": LogicBranch.TEMPORAL,
    "CTL": LogicBranch.TEMPORAL,
    "ATL": LogicBranch.STRATEGIC,
    "SL": LogicBranch.STRATEGIC,
}

# which checker logics can serve a formula of a given logic, most specific first
_SERVES = {
    "CTL": ("CTL", "ATL", "SL"),
    "ATL": ("ATL", "SL"),
    "LTL": ("LTL", "SL"),
    "SL": ("SL",),
}


@dataclass(frozen=True)
class ModelClassId:
    id: str
    branch: ModelBranch

    def __post_init__(self):
        known = _KNOWN_MODEL_BRANCHES.get(self.id)
        if known is not None and known != self.branch:
            raise ValueError(
                "model class %r belongs to the %s branch" % (self.id, known.value)
            )


@dataclass(frozen=True)
class LogicClassId:
    id: str
    branch: LogicBranch

    def __post_init__(self):
        known = _KNOWN_LOGIC_BRANCHES.get(self.id)
        if known is not None and known != self.branch:
            raise ValueError(
                "logic class %r belongs to the %s branch" % (self.id, known.value)
            )


def model_class(id: str) -> ModelClassId:
    """The canonical ModelClassId for a known id."""
    return ModelClassId(id, _KNOWN_MODEL_BRANCHES[id])


def logic_class(id: str) -> LogicClassId:
    """The canonical LogicClassId for a known id."""
    return LogicClassId(id, _KNOWN_LOGIC_BRANCHES[id])


@dataclass(frozen=True)
class CheckerDescriptor:
    """A runnable checker for one (model class, logic class, method) cell."""

    id: str
    model_class: ModelClassId
    logic_class: LogicClassId
    method: Method
    run: Callable = field(compare=False)


@dataclass(frozen=True)
class SelectionPolicy:
    """State-count thresholds; a model prefers Explicit below explicit_max_states,
    Implicit below implicit_max_states, Abstract from there up."""

    explicit_max_states: int = 50
    implicit_max_states: int = 100

    def __post_init__(self):
        if not (0 < self.explicit_max_states < self.implicit_max_states):
            raise ValueError(
                "thresholds must satisfy 0 < explicit_max_states < implicit_max_states"
            )

    def preferred_method(self, state_count: int) -> Method:
        if state_count < self.explicit_max_states:
            return Method.EXPLICIT
        if state_count < self.implicit_max_states:
            return Method.IMPLICIT
        return Method.ABSTRACT


@dataclass(frozen=True)
class SelectionTrace:
    """How a checker was chosen, including any fallback from the preferred method."""

    model_class: str
    logic_class: str
    state_count: int
    preferred_method: Method
    used_method: Method
    fallback_applied: bool
    note: str = ""

    def __post_init__(self):
        if self.fallback_applied != (self.preferred_method != self.used_method):
            raise ValueError("fallback_applied must reflect preferred vs used")


def classify_formula(f: Formula) -> LogicClassId:
    """Minimal logic class: ATL when any coalition modality occurs, else CTL.

    Propositional formulas classify as CTL.  An empty coalition still counts
    as a coalition modality; only E/A quantifiers (or no modality at all)
    stay in CTL.
    """
    for node in walk(f):
        if isinstance(node, CoalitionMod):
            return logic_class("ATL")
    return logic_class("CTL")


class Registry:
    """Insertion-ordered store of model classes, logic classes and checkers.

    Mutable until freeze(); selection and verification require a frozen
    registry so results cannot change behind a caller's back.
    """

    def __init__(self):
        self._model_classes = {}
        self._logic_classes = {}
        self._checkers = []
        self._by_triple = {}
        self._frozen = False

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def model_classes(self) -> tuple:
        return tuple(self._model_classes.values())

    @property
    def logic_classes(self) -> tuple:
        return tuple(self._logic_classes.values())

    @property
    def checkers(self) -> tuple:
        return tuple(self._checkers)

    def _guard_mutable(self):
        if self._frozen:
            raise RegistryFrozen("registry is frozen")

    def register_model_class(self, mc: ModelClassId) -> "Registry":
        self._guard_mutable()
        if mc.id in self._model_classes:
            raise ValueError("model class %r already registered" % mc.id)
        self._model_classes[mc.id] = mc
        return self

    def register_logic_class(self, lc: LogicClassId) -> "Registry":
        self._guard_mutable()
        if lc.id in self._logic_classes:
            raise ValueError("logic class %r already registered" % lc.id)
        self._logic_classes[lc.id] = lc
        return self

    def register_checker(self, d: CheckerDescriptor) -> "Registry":
        self._guard_mutable()
        if d.model_class.id not in self._model_classes:
            raise ValueError("model class %r not registered" % d.model_class.id)
        if d.logic_class.id not in self._logic_classes:
            raise ValueError("logic class %r not registered" % d.logic_class.id)
        key = (d.model_class.id, d.logic_class.id, d.method)
        if key in self._by_triple:
            raise DuplicateTriple(
                "checker already registered for (%s, %s, %s)"
                % (key[0], key[1], key[2].value)
            )
        self._by_triple[key] = d
        self._checkers.append(d)
        return self

    def freeze(self) -> "Registry":
        self._frozen = True
        return self

    def classify_model(self, doc) -> ModelClassId:
        """The registered id for doc's model class; UnknownModelClass otherwise."""
        mc = self._model_classes.get(doc.model_class.id)
        if mc is None:
            raise UnknownModelClass(
                doc.model_class.id, known=tuple(self._model_classes)
            )
        return mc

    def select_checker(
        self,
        model_class: ModelClassId,
        logic_class: LogicClassId,
        state_count: int,
        policy: SelectionPolicy | None = None,
        method_override: Method | None = None,
    ) -> tuple:
        """Pick a checker; returns (descriptor, SelectionTrace).

        The preferred method comes from the policy; when no checker is
        registered for it, the remaining methods are tried in the fixed order
        Explicit, Implicit, Abstract, and the substitution is recorded in the
        trace and logged as a warning.
        """
        if not self._frozen:
            raise RegistryNotFrozen("freeze() the registry before selection")
        policy = policy if policy is not None else SelectionPolicy()
        serves = _SERVES.get(logic_class.id, (logic_class.id,))
        capable = [
            d
            for d in self._checkers
            if d.model_class.id == model_class.id and d.logic_class.id in serves
        ]
        if not capable:
            raise NoCapableChecker(
                "no checker serves model class %r with logic %r"
                % (model_class.id, logic_class.id)
            )
        preferred = policy.preferred_method(state_count)
        if method_override is not None:
            order = [method_override]
        else:
            order = [preferred] + [
                m
                for m in (Method.EXPLICIT, Method.IMPLICIT, Method.ABSTRACT)
                if m != preferred
            ]
        for method in order:
            for logic_id in serves:
                d = self._by_triple.get((model_class.id, logic_id, method))
                if d is None:
                    continue
                fallback = method != preferred
                if method_override is not None and fallback:
                    note = "method %s forced by caller (policy preferred %s)" % (
                        method.value,
                        preferred.value,
                    )
                elif fallback:
                    note = (
                        "no %s checker registered for (%s, %s); fell back to %s"
                        % (
                            preferred.value,
                            model_class.id,
                            logic_id,
                            method.value,
                        )
                    )
                    log.warning(note)
                else:
                    note = ""
                trace = SelectionTrace(
                    model_class=model_class.id,
                    logic_class=logic_class.id,
                    state_count=state_count,
                    preferred_method=preferred,
                    used_method=method,
                    fallback_applied=fallback,
                    note=note,
                )
                return d, trace
        raise NoCapableChecker(
            "no checker for model class %r, logic %r under the requested method"
            % (model_class.id, logic_class.id)
        )


def verify(
    registry: Registry,
    model_text: str,
    formula_text: str,
    policy: SelectionPolicy | None = None,
    method_override: Method | None = None,
):
    """Parse, classify, dispatch and check; returns a VerificationResult.

    Raises ParseError, ValidationError, UnknownModelClass, UnknownAtom,
    UnknownAgent or NoCapableChecker; anything else escaping is a bug.
    """
    from .checkers import extract_witness
    from .checkers.results import VerificationResult
    from .models import ConcurrentGameStructure
    from .models.textfmt import parse_model_text

    t0 = perf_counter()
    doc = parse_model_text(model_text)
    mc = registry.classify_model(doc)
    f = parse_formula(formula_text)
    lc = classify_formula(f)
    payload = doc.payload

    missing_atoms = atoms_of(f) - payload.atoms
    if missing_atoms:
        raise UnknownAtom(missing_atoms, payload.atoms)
    if isinstance(payload, ConcurrentGameStructure):
        missing_agents = agents_of(f) - set(payload.agents)
        if missing_agents:
            raise UnknownAgent(missing_agents, payload.agents)

    descriptor, trace = registry.select_checker(
        mc, lc, payload.state_count, policy, method_override
    )
    outcome = descriptor.run(payload, f)

    sat = outcome.sat
    per_initial = {
        s: (payload.state_index[s] in sat.members)
        for s in payload.states
        if s in payload.initial
    }
    overall = all(per_initial.values())

    witness = None
    if overall and isinstance(payload, ConcurrentGameStructure):
        witness = extract_witness(payload, f, run=outcome)

    satisfying = tuple(
        s for s in payload.states if payload.state_index[s] in sat.members
    )
    return VerificationResult(
        per_initial=per_initial,
        overall=overall,
        satisfaction_set=sat,
        satisfying_states=satisfying,
        method=trace.used_method,
        trace=trace,
        witness=witness,
        elapsed_seconds=perf_counter() - t0,
    )


def default_registry() -> Registry:
    """The stock frozen registry: all known classes, explicit checkers."""
    from .checkers.evaluator import run_atl_explicit, run_ctl_explicit

    reg = Registry()
    for mid in ("LTS", "Kripke", "CGS", "IS"):
        reg.register_model_class(model_class(mid))
    for lid in ("LTL", "CTL", "ATL", "SL"):
        reg.register_logic_class(logic_class(lid))
    reg.register_checker(
        CheckerDescriptor(
            id="explicit-fixpoint-atl",
            model_class=model_class("CGS"),
            logic_class=logic_class("ATL"),
            method=Method.EXPLICIT,
            run=run_atl_explicit,
        )
    )
    reg.register_checker(
        CheckerDescriptor(
            id="explicit-fixpoint-ctl",
            model_class=model_class("Kripke"),
            logic_class=logic_class("CTL"),
            method=Method.EXPLICIT,
            run=run_ctl_explicit,
        )
    )
    return reg.freeze()
