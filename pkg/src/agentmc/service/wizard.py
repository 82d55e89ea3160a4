"""Guided model-building sessions: a phase machine over a draft CGS.

A session walks Agents -> States -> Actions -> Transitions -> Review ->
Formula -> Done.  Each step submits the data for its own phase; submitting a
step for an earlier phase is a back-edit that truncates everything downstream
(data, recorded steps and any stored result).  Submitting a step for a later
phase than the session has reached is a PhaseMismatch.

The recorded step list is the effective linear history: replaying it through
a fresh session reproduces the draft exactly.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from ..errors import ValidationError
from ..models.structures import (
    ConcurrentGameStructure,
    ModelDocument,
    rows_to_transitions,
    validate_cgs,
)

PHASES = ("Agents", "States", "Actions", "Transitions", "Review", "Formula", "Done")

STEP_PHASE = {
    "agents": "Agents",
    "states": "States",
    "actions": "Actions",
    "transitions": "Transitions",
    "review": "Review",
    "formula": "Formula",
}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class WizardError(Exception):
    """Service-level error with an HTTP status and a stable code."""

    status = 400
    code = "bad_request"

    def __init__(self, message: str, **extra):
        super().__init__(message)
        self.message = message
        self.extra = dict(extra)


class BadStep(WizardError):
    status = 400
    code = "bad_request"


class PhaseMismatch(WizardError):
    status = 409
    code = "phase_mismatch"


@dataclass
class WizardSession:
    id: str
    phase: str = "Agents"
    agents: list = field(default_factory=list)
    states: list = field(default_factory=list)
    initial: list = field(default_factory=list)
    atoms: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    last_result: dict | None = None
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)

    def to_view(self) -> dict:
        return {
            "id": self.id,
            "phase": self.phase,
            "draft": {
                "agents": list(self.agents),
                "states": list(self.states),
                "initial": list(self.initial),
                "atoms": list(self.atoms),
                "labels": {s: list(a) for s, a in self.labels.items()},
                "actions": {a: list(x) for a, x in self.actions.items()},
                "rows": [dict(r) for r in self.rows],
            },
            "steps": [dict(s) for s in self.steps],
            "last_result": self.last_result,
            "created": self.created,
            "updated": self.updated,
        }

    @classmethod
    def from_view(cls, view: dict) -> "WizardSession":
        draft = view.get("draft", {})
        return cls(
            id=view["id"],
            phase=view.get("phase", "Agents"),
            agents=list(draft.get("agents", ())),
            states=list(draft.get("states", ())),
            initial=list(draft.get("initial", ())),
            atoms=list(draft.get("atoms", ())),
            labels={s: list(a) for s, a in draft.get("labels", {}).items()},
            actions={a: list(x) for a, x in draft.get("actions", {}).items()},
            rows=[dict(r) for r in draft.get("rows", ())],
            steps=[dict(s) for s in view.get("steps", ())],
            last_result=view.get("last_result"),
            created=view.get("created", time.time()),
            updated=view.get("updated", time.time()),
        )


def _ident_list(value, what, allow_empty=False):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise BadStep("%s must be a list of strings" % what)
    if not value and not allow_empty:
        raise BadStep("%s must not be empty" % what)
    seen = set()
    for name in value:
        if not _IDENT.match(name):
            raise BadStep("%s contains invalid identifier %r" % (what, name))
        if name in seen:
            raise BadStep("%s contains duplicate %r" % (what, name))
        seen.add(name)
    return list(value)


def _dict_payload(payload):
    if not isinstance(payload, dict):
        raise BadStep("step payload must be a JSON object")
    return payload


def _apply_agents(session: WizardSession, payload: dict):
    agents = _ident_list(_dict_payload(payload).get("agents"), "agents")
    session.agents = agents
    session.states = []
    session.initial = []
    session.atoms = []
    session.labels = {}
    session.actions = {}
    session.rows = []


def _apply_states(session: WizardSession, payload: dict):
    payload = _dict_payload(payload)
    states = _ident_list(payload.get("states"), "states")
    initial = _ident_list(payload.get("initial"), "initial")
    atoms = _ident_list(payload.get("atoms", []), "atoms", allow_empty=True)
    for s in initial:
        if s not in states:
            raise BadStep("initial state %r is not a declared state" % s)
    labels_in = payload.get("labels", {})
    if not isinstance(labels_in, dict):
        raise BadStep("labels must map state names to atom lists")
    labels = {}
    for state, attached in labels_in.items():
        if state not in states:
            raise BadStep("label names unknown state %r" % state)
        attached = _ident_list(attached, "labels[%s]" % state, allow_empty=True)
        for atom in attached:
            if atom not in atoms:
                raise BadStep("label on %r names undeclared atom %r" % (state, atom))
        if attached:
            labels[state] = attached
    session.states = states
    session.initial = initial
    session.atoms = atoms
    session.labels = labels
    session.actions = {}
    session.rows = []


def _apply_actions(session: WizardSession, payload: dict):
    actions_in = _dict_payload(payload).get("actions")
    if not isinstance(actions_in, dict):
        raise BadStep("actions must map each agent to a list of action names")
    for agent in session.agents:
        if agent not in actions_in:
            raise BadStep("missing action list for agent %r" % agent)
    for agent in actions_in:
        if agent not in session.agents:
            raise BadStep("actions name unknown agent %r" % agent)
    session.actions = {
        agent: _ident_list(actions_in[agent], "actions[%s]" % agent)
        for agent in session.agents
    }
    session.rows = []


def _coerce_rows(session: WizardSession, payload: dict) -> list:
    rows_in = _dict_payload(payload).get("rows")
    if not isinstance(rows_in, list):
        raise BadStep("rows must be a list of {state, actions, target} objects")
    rows = []
    for i, row in enumerate(rows_in):
        if not isinstance(row, dict):
            raise BadStep("row %d is not an object" % i)
        state = row.get("state")
        vector = row.get("actions")
        target = row.get("target")
        if not isinstance(state, str) or not isinstance(target, str):
            raise BadStep("row %d needs string state and target" % i)
        if not isinstance(vector, list) or not all(isinstance(a, str) for a in vector):
            raise BadStep("row %d needs an action list" % i)
        if len(vector) != len(session.agents):
            raise BadStep(
                "row %d has %d actions for %d agents"
                % (i, len(vector), len(session.agents))
            )
        rows.append({"state": state, "actions": list(vector), "target": target})
    return rows


def build_document(session: WizardSession, rows=None) -> ModelDocument:
    """Assemble the draft into a validated CGS document.

    Raises ValidationError listing every violation; determinism duplicates
    carry the offending row's position as its line number.
    """
    from ..kernel import model_class

    use_rows = session.rows if rows is None else rows
    transitions, violations = rows_to_transitions(
        (r["state"], tuple(r["actions"]), r["target"], i + 1)
        for i, r in enumerate(use_rows)
    )
    g = ConcurrentGameStructure.build(
        agents=session.agents,
        states=session.states,
        initial=session.initial,
        atoms=session.atoms,
        label=session.labels,
        actions=session.actions,
        transitions=transitions,
    )
    violations = list(violations) + validate_cgs(g)
    if violations:
        raise ValidationError(violations)
    return ModelDocument(model_class=model_class("CGS"), payload=g)


def _apply_transitions(session: WizardSession, payload: dict):
    rows = _coerce_rows(session, payload)
    build_document(session, rows)
    session.rows = rows


def _apply_review(session: WizardSession, payload: dict):
    if _dict_payload(payload).get("confirm") is not True:
        raise BadStep("review expects {\"confirm\": true}")
    build_document(session)


def _apply_formula(session: WizardSession, payload: dict, registry, policy):
    from ..kernel import verify
    from ..models.textfmt import serialize_model

    formula = _dict_payload(payload).get("formula")
    if not isinstance(formula, str) or not formula.strip():
        raise BadStep("formula must be a non-empty string")
    doc = build_document(session)
    result = verify(registry, serialize_model(doc), formula, policy=policy)
    session.last_result = result.to_jsonable()


_APPLIERS = {
    "agents": _apply_agents,
    "states": _apply_states,
    "actions": _apply_actions,
    "transitions": _apply_transitions,
    "review": _apply_review,
    "formula": _apply_formula,
}


def apply_step(session: WizardSession, kind, payload, registry, policy) -> None:
    """Validate and apply one step, mutating the session only on success."""
    if kind not in STEP_PHASE:
        raise BadStep(
            "unknown step kind %r; expected one of %s"
            % (kind, ", ".join(sorted(STEP_PHASE)))
        )
    target = STEP_PHASE[kind]
    target_idx = PHASES.index(target)
    current_idx = PHASES.index(session.phase)
    if target_idx > current_idx:
        raise PhaseMismatch(
            "session is in phase %s; step %r belongs to phase %s"
            % (session.phase, kind, target)
        )
    if kind == "formula":
        _apply_formula(session, payload, registry, policy)
    else:
        _APPLIERS[kind](session, payload)
    session.steps = [
        s for s in session.steps if PHASES.index(STEP_PHASE[s["kind"]]) < target_idx
    ]
    session.steps.append({"kind": kind, "payload": payload})
    if kind != "formula":
        session.last_result = None
    session.phase = PHASES[target_idx + 1]
    session.updated = time.time()


def graph_of(session: WizardSession) -> str:
    from ..models.dot import export_dot

    return export_dot(build_document(session))
