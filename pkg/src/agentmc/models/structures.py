"""Model structures: concurrent game structures and Kripke structures.

Both are frozen dataclasses built through their build() classmethods, which
normalize the representation: the label map is total over states, Kripke
successor lists are deduplicated and kept in state declaration order, and the
transition table maps (state, joint action vector) to the unique successor.
Declaration order of states, agents and actions is significant everywhere;
iteration and serialization follow it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import UnknownAgent, Violation
from ..kernel import ModelClassId


@dataclass(frozen=True)
class Coalition:
    """A set of agent names; empty is allowed and means 'no one moves first'."""

    members: frozenset

    @classmethod
    def of(cls, *names) -> "Coalition":
        return cls(frozenset(names))

    def validate(self, g) -> None:
        extra = self.members - set(g.agents)
        if extra:
            raise UnknownAgent(extra, g.agents)


@dataclass(frozen=True)
class ConcurrentGameStructure:
    """A multi-agent transition system with one joint action per step.

    transitions maps (state, joint action vector) to the successor state; the
    vector lists one action per agent, in agent declaration order.  In every
    state, the available joint vectors form the full product of each agent's
    available actions there (validated, not assumed).
    """

    agents: tuple
    states: tuple
    initial: frozenset
    atoms: frozenset
    label: Mapping
    actions: Mapping
    transitions: Mapping

    @classmethod
    def build(cls, agents, states, initial, atoms, label, actions, transitions):
        agents = tuple(agents)
        states = tuple(states)
        full_label = {s: frozenset(label.get(s, ())) for s in states}
        for s, atoms_here in label.items():
            if s not in full_label:
                full_label[s] = frozenset(atoms_here)
        return cls(
            agents=agents,
            states=states,
            initial=frozenset(initial),
            atoms=frozenset(atoms),
            label=full_label,
            actions={a: tuple(acts) for a, acts in actions.items()},
            transitions={
                (s, tuple(vec)): t for (s, vec), t in transitions.items()
            },
        )

    @property
    def state_count(self) -> int:
        return len(self.states)

    @cached_property
    def state_index(self):
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def rows_by_state(self):
        """state -> list of (vector, target) in canonical order.

        Canonical order sorts vectors by per-agent action declaration index,
        falling back to the action name for undeclared actions so that even
        invalid structures iterate deterministically.
        """
        index = {
            agent: {act: i for i, act in enumerate(self.actions.get(agent, ()))}
            for agent in self.agents
        }

        def vec_key(vec):
            return tuple(
                (index.get(agent, {}).get(act, len(index.get(agent, {}))), act)
                for agent, act in zip(self.agents, vec)
            )

        rows = {s: [] for s in self.states}
        for (s, vec), target in self.transitions.items():
            if s in rows:
                rows[s].append((vec, target))
        for s in rows:
            rows[s].sort(key=lambda item: vec_key(item[0]))
        return rows

    @cached_property
    def avail(self):
        """state -> tuple over agent positions of available action tuples."""
        out = {}
        for s in self.states:
            per_agent = [dict() for _ in self.agents]
            for vec, _target in self.rows_by_state[s]:
                for i, act in enumerate(vec):
                    if i < len(per_agent):
                        per_agent[i].setdefault(act, None)
            ordered = []
            for i, agent in enumerate(self.agents):
                declared = self.actions.get(agent, ())
                used = per_agent[i]
                in_order = [a for a in declared if a in used]
                in_order += [a for a in used if a not in declared]
                ordered.append(tuple(in_order))
            out[s] = tuple(ordered)
        return out


@dataclass(frozen=True)
class KripkeStructure:
    """A transition system with unlabeled edges; edges maps state -> targets."""

    states: tuple
    initial: frozenset
    atoms: frozenset
    label: Mapping
    edges: Mapping

    @classmethod
    def build(cls, states, initial, atoms, label, edges):
        states = tuple(states)
        order = {s: i for i, s in enumerate(states)}
        full_label = {s: frozenset(label.get(s, ())) for s in states}
        for s, atoms_here in label.items():
            if s not in full_label:
                full_label[s] = frozenset(atoms_here)
        norm_edges = {}
        for s, targets in edges.items():
            unique = sorted(set(targets), key=lambda t: (order.get(t, len(order)), t))
            norm_edges[s] = tuple(unique)
        return cls(
            states=states,
            initial=frozenset(initial),
            atoms=frozenset(atoms),
            label=full_label,
            edges=norm_edges,
        )

    @property
    def state_count(self) -> int:
        return len(self.states)

    @cached_property
    def state_index(self):
        return {s: i for i, s in enumerate(self.states)}


@dataclass(frozen=True)
class ModelDocument:
    """A parsed model: the class identifier plus the class-specific payload."""

    model_class: ModelClassId
    payload: object

    @property
    def state_count(self) -> int:
        return self.payload.state_count


def available_actions(g: ConcurrentGameStructure, state, agent) -> tuple:
    """Actions agent can take in state, i.e. those some transition uses there."""
    if state not in g.state_index:
        raise ValueError("unknown state %r" % state)
    try:
        position = g.agents.index(agent)
    except ValueError:
        raise ValueError("unknown agent %r" % agent) from None
    return g.avail[state][position]


def _duplicates(items):
    seen, dups = set(), []
    for x in items:
        if x in seen:
            dups.append(x)
        seen.add(x)
    return dups


def validate_cgs(g: ConcurrentGameStructure) -> list:
    """All invariant violations of g, empty when g is well-formed."""
    out = []
    states = set(g.states)
    if not g.agents:
        out.append(Violation("agents-nonempty", "-", "model declares no agents"))
    if not g.states:
        out.append(Violation("states-nonempty", "-", "model declares no states"))
    for name in _duplicates(g.agents):
        out.append(Violation("duplicate-identifier", name, "duplicate agent %r" % name))
    for name in _duplicates(g.states):
        out.append(Violation("duplicate-identifier", name, "duplicate state %r" % name))
    for agent, acts in g.actions.items():
        if agent not in g.agents:
            out.append(
                Violation("unknown-agent", agent, "actions declared for unknown agent %r" % agent)
            )
        for name in _duplicates(acts):
            out.append(
                Violation(
                    "duplicate-identifier",
                    name,
                    "duplicate action %r for agent %r" % (name, agent),
                )
            )
    for agent in g.agents:
        if agent not in g.actions:
            out.append(
                Violation("missing-actions", agent, "agent %r declares no actions" % agent)
            )
    if not g.initial:
        out.append(Violation("initial-nonempty", "-", "no initial state declared"))
    for s in sorted(g.initial - states):
        out.append(Violation("initial-subset", s, "initial state %r is not a state" % s))
    for s in g.states:
        if s not in g.label:
            out.append(Violation("label-total", s, "state %r has no label entry" % s))
            continue
        for atom in sorted(g.label[s] - g.atoms):
            out.append(
                Violation("unknown-atom", atom, "state %r labeled with undeclared atom %r" % (s, atom))
            )
    for s in g.label:
        if s not in states:
            out.append(Violation("unknown-state", s, "label for unknown state %r" % s))
    n = len(g.agents)
    for (s, vec), target in g.transitions.items():
        where = "%s %s" % (s, " ".join(vec))
        if s not in states:
            out.append(Violation("unknown-state", s, "transition from unknown state %r" % s))
        if target not in states:
            out.append(
                Violation("unknown-state", target, "transition %s goes to unknown state %r" % (where, target))
            )
        if len(vec) != n:
            out.append(
                Violation(
                    "arity",
                    where,
                    "transition %s lists %d actions for %d agents" % (where, len(vec), n),
                )
            )
            continue
        for agent, act in zip(g.agents, vec):
            if act not in g.actions.get(agent, ()):
                out.append(
                    Violation(
                        "undeclared-action",
                        act,
                        "transition %s uses action %r not declared for agent %r" % (where, act, agent),
                    )
                )
    # totality and the product-of-availables closure, per state
    for s in g.states:
        rows = g.rows_by_state.get(s, [])
        if not rows:
            out.append(Violation("totality", s, "state %r has no outgoing transition" % s))
            continue
        have = {tuple(vec) for vec, _ in rows if len(vec) == n}
        avail = g.avail[s]
        if any(not acts for acts in avail):
            continue  # arity violations already reported above
        missing = _missing_vectors(have, avail)
        for vec in missing:
            out.append(
                Violation(
                    "product-closure",
                    s,
                    "state %r has no transition for joint action %s" % (s, " ".join(vec)),
                    detail=(s, vec),
                )
            )
    return out


def _missing_vectors(have, avail):
    missing = []
    from itertools import product

    for vec in product(*avail):
        if vec not in have:
            missing.append(vec)
    return missing


def validate_kripke(k: KripkeStructure) -> list:
    """All invariant violations of k, empty when k is well-formed."""
    out = []
    states = set(k.states)
    if not k.states:
        out.append(Violation("states-nonempty", "-", "model declares no states"))
    for name in _duplicates(k.states):
        out.append(Violation("duplicate-identifier", name, "duplicate state %r" % name))
    if not k.initial:
        out.append(Violation("initial-nonempty", "-", "no initial state declared"))
    for s in sorted(k.initial - states):
        out.append(Violation("initial-subset", s, "initial state %r is not a state" % s))
    for s in k.states:
        if s not in k.label:
            out.append(Violation("label-total", s, "state %r has no label entry" % s))
            continue
        for atom in sorted(k.label[s] - k.atoms):
            out.append(
                Violation("unknown-atom", atom, "state %r labeled with undeclared atom %r" % (s, atom))
            )
    for s in k.label:
        if s not in states:
            out.append(Violation("unknown-state", s, "label for unknown state %r" % s))
    for s, targets in k.edges.items():
        if s not in states:
            out.append(Violation("unknown-state", s, "edges from unknown state %r" % s))
        for t in targets:
            if t not in states:
                out.append(Violation("unknown-state", t, "edge %s -> %s goes to unknown state" % (s, t)))
    for s in k.states:
        if not k.edges.get(s):
            out.append(Violation("totality", s, "state %r has no outgoing edge" % s))
    return out


def rows_to_transitions(rows) -> tuple:
    """Fold (state, vector, target, line) rows into a transition map.

    Returns (transitions, violations); a repeated (state, vector) key is a
    determinism violation no matter whether the targets agree.
    """
    transitions = {}
    violations = []
    for state, vec, target, line in rows:
        key = (state, tuple(vec))
        if key in transitions:
            violations.append(
                Violation(
                    "determinism",
                    "%s %s" % (state, " ".join(vec)),
                    "duplicate transition for state %r and joint action %s"
                    % (state, " ".join(vec)),
                    line=line,
                )
            )
            continue
        transitions[key] = target
    return transitions, violations


def kripke_of_cgs(g: ConcurrentGameStructure) -> KripkeStructure:
    """Forget actions: edge s -> t iff some joint action moves s to t."""
    edges = {}
    for s in g.states:
        edges[s] = [target for _vec, target in g.rows_by_state[s]]
    return KripkeStructure.build(
        states=g.states,
        initial=g.initial,
        atoms=g.atoms,
        label=g.label,
        edges=edges,
    )


def cgs_of_kripke(k: KripkeStructure) -> ConcurrentGameStructure:
    """View a Kripke structure as a one-agent game: the agent picks the edge.

    The single agent is named _sys and its actions are the successor state
    names, so E corresponds to the full coalition and A to the empty one.
    """
    transitions = {}
    for s in k.states:
        for t in k.edges.get(s, ()):
            transitions[(s, (t,))] = t
    return ConcurrentGameStructure.build(
        agents=("_sys",),
        states=k.states,
        initial=k.initial,
        atoms=k.atoms,
        label=k.label,
        actions={"_sys": k.states},
        transitions=transitions,
    )
