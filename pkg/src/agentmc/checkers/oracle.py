"""Brute-force reference semantics, independent of the fixpoint evaluator.

For every coalition modality the oracle enumerates all memoryless coalition
strategies (one sub-vector per state) and, for each, analyzes the induced
one-player graph where the adversary picks among the remaining completions.
Infinite behavior is decided by the graph's lassos: an until goal fails
where the adversary can reach a lasso avoiding the target (equivalently,
holds exactly on the monotone saturation of "target, or zone state whose
completions all succeed"); a globally goal fails exactly where a state
outside the zone is reachable; the box-until dual holds where no completion
path realizes the until.  The saturations are deliberately naive; the guard
keeps inputs small enough for the strategy enumeration to stay exhaustive.
"""

from __future__ import annotations

from itertools import product

from ..errors import SizeGuardExceeded, UnknownAgent, UnknownAtom
from ..logics import (
    And,
    Atom,
    CoalitionMod,
    Formula,
    FullCoalition,
    Globally,
    Next,
    Not,
    TrueF,
    Until,
    desugar,
)
from .statesets import StateSet

MAX_STATES = 7
MAX_AGENTS = 2
MAX_ACTIONS_PER_STATE = 3


def _guard(g):
    if len(g.states) > MAX_STATES:
        raise SizeGuardExceeded(
            "%d states exceed the oracle guard of %d" % (len(g.states), MAX_STATES)
        )
    if len(g.agents) > MAX_AGENTS:
        raise SizeGuardExceeded(
            "%d agents exceed the oracle guard of %d" % (len(g.agents), MAX_AGENTS)
        )
    for s in g.states:
        for acts in g.avail[s]:
            if len(acts) > MAX_ACTIONS_PER_STATE:
                raise SizeGuardExceeded(
                    "state %r offers %d actions to one agent, guard is %d"
                    % (s, len(acts), MAX_ACTIONS_PER_STATE)
                )


def _saturate(n, grow):
    """Smallest fixed set: start empty, add states per grow(), repeat."""
    inside = [False] * n
    changed = True
    while changed:
        changed = False
        for s in range(n):
            if not inside[s] and grow(s, inside):
                inside[s] = True
                changed = True
    return inside


def _until_verdicts(n, succ, phi, psi):
    # all plays reach psi through phi: psi states, plus phi states whose
    # every completion already succeeds; a lasso avoiding psi never enters
    return _saturate(
        n,
        lambda s, ok: s in psi or (s in phi and all(ok[t] for t in succ[s])),
    )


def _globally_verdicts(n, succ, zone):
    # all plays stay in zone <=> no state outside zone is reachable
    escapes = _saturate(
        n,
        lambda s, esc: s not in zone or any(esc[t] for t in succ[s]),
    )
    return [not e for e in escapes]


def _violate_verdicts(n, succ, phi, psi):
    # every play violates (phi U psi) <=> no completion path realizes it:
    # a realizing path runs through phi and ends in psi
    realizable = _saturate(
        n,
        lambda s, good: s in psi or (s in phi and any(good[t] for t in succ[s])),
    )
    return [not r for r in realizable]


class _Oracle:
    def __init__(self, g):
        self.g = g
        self.n = len(g.states)
        self.state_index = g.state_index
        self.memo = {}

    def sat(self, f) -> frozenset:
        cached = self.memo.get(f)
        if cached is not None:
            return cached
        if isinstance(f, TrueF):
            out = frozenset(range(self.n))
        elif isinstance(f, Atom):
            if f.name not in self.g.atoms:
                raise UnknownAtom([f.name], self.g.atoms)
            out = frozenset(
                i for i, s in enumerate(self.g.states) if f.name in self.g.label[s]
            )
        elif isinstance(f, Not):
            out = frozenset(range(self.n)) - self.sat(f.operand)
        elif isinstance(f, And):
            out = self.sat(f.left) & self.sat(f.right)
        elif isinstance(f, CoalitionMod):
            out = self.modal(f)
        else:
            raise ValueError("formula is not in core form: %r" % (f,))
        self.memo[f] = out
        return out

    def _members(self, members):
        g = self.g
        if isinstance(members, FullCoalition):
            return tuple(g.agents)
        wanted = set(members)
        unknown = wanted - set(g.agents)
        if unknown:
            raise UnknownAgent(unknown, g.agents)
        return tuple(a for a in g.agents if a in wanted)

    def modal(self, f: CoalitionMod) -> frozenset:
        g = self.g
        n = self.n
        members = self._members(f.members)
        positions = [g.agents.index(m) for m in members]

        # candidate sub-vectors and completion targets, per state index
        candidates = []
        targets = []
        for s in g.states:
            cands = list(product(*(g.avail[s][p] for p in positions)))
            candidates.append(cands)
            by_sub = {}
            for vec, target in g.rows_by_state[s]:
                sub = tuple(vec[p] for p in positions)
                by_sub.setdefault(sub, []).append(self.state_index[target])
            targets.append({sub: tuple(by_sub.get(sub, ())) for sub in cands})

        path = f.path
        if isinstance(path, Next):
            zone = self.sat(path.operand)

            def verdicts(succ):
                return [all(t in zone for t in succ[s]) for s in range(n)]

        elif isinstance(path, Globally):
            zone = self.sat(path.operand)

            def verdicts(succ):
                return _globally_verdicts(n, succ, zone)

        elif isinstance(path, Until):
            phi = self.sat(path.left)
            psi = self.sat(path.right)
            if f.kind == "box":

                def verdicts(succ):
                    return _violate_verdicts(n, succ, phi, psi)

            else:

                def verdicts(succ):
                    return _until_verdicts(n, succ, phi, psi)

        else:
            raise ValueError("unknown path operator: %r" % (path,))

        winning = set()
        for sigma in product(*candidates):
            succ = [targets[s][sigma[s]] for s in range(n)]
            oks = verdicts(succ)
            winning.update(s for s in range(n) if oks[s])
            if len(winning) == n:
                break
        if f.kind == "box" and isinstance(path, Until):
            # [A](f U g) holds where NO coalition strategy makes all plays
            # violate the until, i.e. outside the diamond of the negated goal
            return frozenset(range(n)) - winning
        return frozenset(winning)


def oracle_atl(g, f: Formula) -> StateSet:
    """Reference satisfaction set; raises SizeGuardExceeded on big inputs."""
    _guard(g)
    core = desugar(f)
    oracle = _Oracle(g)
    return StateSet(len(g.states), oracle.sat(core))
