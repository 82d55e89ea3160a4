"""Array form of a game structure, plus per-coalition transition grouping.

The fixpoint kernels never see names: states, agents and actions become
indices, transitions become flat int32 arrays sorted by (state, joint action
vector), and a coalition induces a grouping of each state's transitions by
the coalition's projection of the vector.  A state belongs to the
controllable predecessor of Q iff one of its groups has every target in Q.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnknownAgent, UnknownAtom
from ..logics import FullCoalition


class CoalitionView:
    """CSR grouping of transitions by coalition-projected action vector."""

    __slots__ = ("group_ptr", "group_state", "group_target", "group_vector")

    def __init__(self, group_ptr, group_state, group_target, group_vector):
        self.group_ptr = group_ptr
        self.group_state = group_state
        self.group_target = group_target
        self.group_vector = group_vector


class CompiledModel:
    """Index-based tables for one ConcurrentGameStructure."""

    def __init__(self, g):
        self.g = g
        self.n = len(g.states)
        self.m = len(g.agents)
        self.state_index = g.state_index
        self.action_index = {
            agent: {a: i for i, a in enumerate(g.actions.get(agent, ()))}
            for agent in g.agents
        }
        ptr = [0]
        actions = []
        targets = []
        for s in g.states:
            for vec, target in g.rows_by_state[s]:
                actions.append(
                    [self.action_index[agent][act] for agent, act in zip(g.agents, vec)]
                )
                targets.append(g.state_index[target])
            ptr.append(len(targets))
        self.trans_ptr = np.asarray(ptr, dtype=np.int32)
        if actions:
            self.trans_actions = np.asarray(actions, dtype=np.int32)
        else:
            self.trans_actions = np.zeros((0, self.m), dtype=np.int32)
        self.trans_target = np.asarray(targets, dtype=np.int32)
        self._atom_masks = {}
        self._views = {}

    def atom_mask(self, name):
        if name not in self.g.atoms:
            raise UnknownAtom([name], self.g.atoms)
        mask = self._atom_masks.get(name)
        if mask is None:
            mask = np.zeros(self.n, dtype=np.uint8)
            for i, s in enumerate(self.g.states):
                if name in self.g.label.get(s, ()):
                    mask[i] = 1
            self._atom_masks[name] = mask
        return mask

    def resolve_members(self, members) -> tuple:
        """Concrete member tuple in agent declaration order; checks names."""
        if isinstance(members, FullCoalition):
            return tuple(self.g.agents)
        wanted = set(members)
        unknown = wanted - set(self.g.agents)
        if unknown:
            raise UnknownAgent(unknown, self.g.agents)
        return tuple(a for a in self.g.agents if a in wanted)

    def coalition_view(self, members: tuple) -> CoalitionView:
        """Grouping for a concrete member tuple (declaration order)."""
        key = frozenset(members)
        view = self._views.get(key)
        if view is not None:
            return view
        positions = [self.g.agents.index(a) for a in members]
        group_ptr = [0]
        group_state = []
        group_target = []
        group_vector = []
        acts = self.trans_actions
        tgts = self.trans_target
        for s in range(self.n):
            start, end = int(self.trans_ptr[s]), int(self.trans_ptr[s + 1])
            buckets = {}
            order = []
            for t in range(start, end):
                sub = tuple(int(acts[t, p]) for p in positions)
                if sub not in buckets:
                    buckets[sub] = []
                    order.append(sub)
                buckets[sub].append(int(tgts[t]))
            for sub in order:
                group_state.append(s)
                group_vector.append(sub)
                group_target.extend(buckets[sub])
                group_ptr.append(len(group_target))
        view = CoalitionView(
            group_ptr=np.asarray(group_ptr, dtype=np.int32),
            group_state=np.asarray(group_state, dtype=np.int32),
            group_target=np.asarray(group_target, dtype=np.int32),
            group_vector=tuple(group_vector),
        )
        self._views[key] = view
        return view
