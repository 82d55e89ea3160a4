"""Memoryless witness strategies for satisfied diamond modalities.

The strategy maps (state, member) to an action for every state, so it can be
played from anywhere; states outside the satisfaction set get the first
available action of each member.  Inside the set the choice is the first
joint sub-vector, in action declaration order, that makes progress:

    until      every completion stays in the set and the worst successor
               rank strictly drops (ranks come from the least fixpoint)
    globally   every completion stays inside the fixpoint zone
    next       every completion lands in the operand's satisfaction set
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional

from ..logics import CoalitionMod, Formula, desugar
from ..models.structures import Coalition
from .evaluator import EvalOutcome, evaluate


@dataclass(frozen=True)
class MemorylessStrategy:
    """A positional strategy: choice[(state, member)] = action."""

    coalition: Coalition
    choice: Mapping

    def action(self, state, member):
        return self.choice[(state, member)]

    def sub_vector(self, state, members) -> tuple:
        return tuple(self.choice[(state, m)] for m in members)


def _completions(g, state, members, sub):
    """Targets of transitions at state whose member projection equals sub."""
    positions = [g.agents.index(m) for m in members]
    wanted = dict(zip(positions, sub))
    out = []
    for vec, target in g.rows_by_state[state]:
        if all(vec[p] == a for p, a in wanted.items()):
            out.append(target)
    return out


def _candidates(g, state, members):
    """Member sub-vectors available at state, action declaration order."""
    per_member = []
    for m in members:
        position = g.agents.index(m)
        per_member.append(g.avail[state][position])
    return list(product(*per_member))


def extract_witness(
    g,
    f: Formula,
    state: str | None = None,
    run: Optional[EvalOutcome] = None,
) -> Optional[MemorylessStrategy]:
    """A winning memoryless strategy for f's top-level diamond modality.

    Returns None when the top of the desugared formula is not a diamond, or
    when a queried state lies outside the satisfaction set.  Passing the
    EvalOutcome of a previous evaluate() call reuses its fixpoint evidence.
    """
    core = desugar(f)
    if not isinstance(core, CoalitionMod) or core.kind != "diamond":
        return None
    if run is None or run.top is None or run.formula != core:
        run = evaluate(g, core)
    top = run.top
    members = top.members
    sat = run.sat

    if state is not None:
        if state not in g.state_index:
            raise ValueError("unknown state %r" % state)
        if g.state_index[state] not in sat.members:
            return None

    inf = float("inf")

    def rank_of(name):
        r = int(top.ranks[g.state_index[name]])
        return r if r >= 0 else inf

    choice = {}
    for s in g.states:
        candidates = _candidates(g, s, members)
        picked = candidates[0] if candidates else ()
        idx = g.state_index[s]
        if idx in sat.members and members:
            if top.kind == "until":
                my_rank = rank_of(s)
                if my_rank > 0:
                    best = None
                    best_worst = inf
                    for cand in candidates:
                        worst = 0.0
                        for t in _completions(g, s, members, cand):
                            worst = max(worst, rank_of(t))
                        if worst < best_worst:
                            best, best_worst = cand, worst
                    if best is None or best_worst >= my_rank:
                        raise RuntimeError(
                            "no rank-decreasing choice at %r; fixpoint evidence is broken" % s
                        )
                    picked = best
            elif top.kind == "globally":
                zone = top.zone
                for cand in candidates:
                    if all(
                        zone[g.state_index[t]]
                        for t in _completions(g, s, members, cand)
                    ):
                        picked = cand
                        break
                else:
                    raise RuntimeError(
                        "no zone-preserving choice at %r; fixpoint evidence is broken" % s
                    )
            elif top.kind == "next":
                zone = top.zone
                for cand in candidates:
                    if all(
                        zone[g.state_index[t]]
                        for t in _completions(g, s, members, cand)
                    ):
                        picked = cand
                        break
                else:
                    raise RuntimeError(
                        "no choice forces the operand at %r; evidence is broken" % s
                    )
            else:
                raise RuntimeError("unexpected top kind %r" % top.kind)
        for m, act in zip(members, picked):
            choice[(s, m)] = act
    return MemorylessStrategy(coalition=Coalition(frozenset(members)), choice=choice)
