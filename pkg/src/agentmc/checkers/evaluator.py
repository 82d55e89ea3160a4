"""Explicit fixpoint evaluation over concurrent game structures.

Semantics of the core modalities, over state sets:

    <A> X f        pre(A, [[f]])
    <A> G f        greatest fixpoint  Z = [[f]] & pre(A, Z)       from Z = [[f]]
    <A> (f U g)    least fixpoint     Z = [[g]] | ([[f]] & pre(A, Z))
    [A] (f U g)    least fixpoint     Z = [[g]] | ([[f]] & cpre(A, Z))

where pre(A, Q) holds in s iff the coalition can fix its part of the joint
action so that every completion by the others lands in Q, and cpre(A, Q) is
the complement dual NOT pre(A, NOT Q): however A moves, the others can steer
into Q.  Every fixpoint stabilizes within |states| + 1 applications; the
evaluator asserts that bound and records the counts per run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import UnknownAgent, UnknownAtom
from ..logics import (
    And,
    Atom,
    CoalitionMod,
    Formula,
    Globally,
    Next,
    Not,
    TrueF,
    Until,
    agents_of,
    atoms_of,
    desugar,
    walk,
)
from .backend import get_impl
from .compile import CompiledModel
from .statesets import StateSet


@dataclass
class TopModal:
    """Evidence kept from the top-level modality for witness extraction."""

    members: tuple
    kind: str  # "next" | "globally" | "until" | "box-until"
    sat_mask: np.ndarray
    ranks: Optional[np.ndarray] = None
    zone: Optional[np.ndarray] = None


@dataclass
class EvalOutcome:
    """Satisfaction set plus the run evidence the caller may want."""

    sat: StateSet
    formula: Formula  # the core form that was evaluated
    top: Optional[TopModal]
    fixpoint_iterations: tuple


class _Eval:
    def __init__(self, cm: CompiledModel, impl):
        self.cm = cm
        self.impl = impl
        self.memo = {}
        self.iterations = []

    def _check_bound(self, iters):
        bound = self.cm.n + 1
        if iters > bound:
            raise RuntimeError(
                "fixpoint took %d applications, bound is %d" % (iters, bound)
            )
        self.iterations.append(iters)

    def mask(self, f) -> np.ndarray:
        cached = self.memo.get(f)
        if cached is not None:
            return cached
        if isinstance(f, TrueF):
            out = np.ones(self.cm.n, dtype=np.uint8)
        elif isinstance(f, Atom):
            out = self.cm.atom_mask(f.name)
        elif isinstance(f, Not):
            out = (1 - self.mask(f.operand)).astype(np.uint8)
        elif isinstance(f, And):
            out = (self.mask(f.left) & self.mask(f.right)).astype(np.uint8)
        elif isinstance(f, CoalitionMod):
            out = self.modal(f).sat_mask
        else:
            raise ValueError("formula is not in core form: %r" % (f,))
        self.memo[f] = out
        return out

    def modal(self, f: CoalitionMod) -> TopModal:
        cm, impl = self.cm, self.impl
        members = cm.resolve_members(f.members)
        view = cm.coalition_view(members)
        path = f.path
        n = cm.n
        if isinstance(path, Next):
            if f.kind != "diamond":
                raise ValueError("box Next is not core form")
            q = self.mask(path.operand)
            out = np.zeros(n, dtype=np.uint8)
            impl.pre(view.group_ptr, view.group_state, view.group_target, n, q, out)
            return TopModal(members=members, kind="next", sat_mask=out, zone=q)
        if isinstance(path, Globally):
            if f.kind != "diamond":
                raise ValueError("box Globally is not core form")
            phi = self.mask(path.operand)
            z = np.zeros(n, dtype=np.uint8)
            iters = impl.globally_fixpoint(
                view.group_ptr, view.group_state, view.group_target, n, phi, z
            )
            self._check_bound(iters)
            return TopModal(members=members, kind="globally", sat_mask=z, zone=z)
        if isinstance(path, Until):
            phi = self.mask(path.left)
            psi = self.mask(path.right)
            rank = np.empty(n, dtype=np.int32)
            dual = 1 if f.kind == "box" else 0
            iters = impl.until_fixpoint(
                view.group_ptr,
                view.group_state,
                view.group_target,
                n,
                phi,
                psi,
                rank,
                dual,
            )
            self._check_bound(iters)
            sat_mask = (rank >= 0).astype(np.uint8)
            kind = "box-until" if dual else "until"
            return TopModal(members=members, kind=kind, sat_mask=sat_mask, ranks=rank)
        raise ValueError("unknown path operator: %r" % (path,))


def _precheck(g, core):
    missing = atoms_of(core) - g.atoms
    if missing:
        raise UnknownAtom(missing, g.atoms)
    unknown = agents_of(core) - set(g.agents)
    if unknown:
        raise UnknownAgent(unknown, g.agents)


def evaluate(g, f: Formula, backend: str | None = None) -> EvalOutcome:
    """Full evaluation of f over g; f is desugared here, so any shape works."""
    core = desugar(f)
    _precheck(g, core)
    cm = CompiledModel(g)
    ev = _Eval(cm, get_impl(backend))
    if isinstance(core, CoalitionMod):
        top = ev.modal(core)
        sat_mask = top.sat_mask
    else:
        top = None
        sat_mask = ev.mask(core)
    return EvalOutcome(
        sat=StateSet.from_mask(sat_mask),
        formula=core,
        top=top,
        fixpoint_iterations=tuple(ev.iterations),
    )


def eval_atl(g, f: Formula, backend: str | None = None) -> StateSet:
    """States of the game structure g satisfying f."""
    return evaluate(g, f, backend=backend).sat


def evaluate_kripke(k, f: Formula, backend: str | None = None) -> EvalOutcome:
    """Evaluation over a Kripke structure through its one-agent game view.

    E becomes the full (single-agent) coalition and A the empty one, which
    on the one-agent view coincide with path quantification.  State indices
    of the result match k.states.
    """
    from ..models.structures import cgs_of_kripke

    for node in walk(f):
        if isinstance(node, CoalitionMod):
            raise ValueError(
                "coalition modalities need a game structure; use eval_atl"
            )
    return evaluate(cgs_of_kripke(k), f, backend=backend)


def eval_ctl(k, f: Formula, backend: str | None = None) -> StateSet:
    """States of the Kripke structure k satisfying the CTL formula f."""
    return evaluate_kripke(k, f, backend=backend).sat


def pre_coalition(g, coalition, q: StateSet, backend: str | None = None) -> StateSet:
    """States where the coalition can force the next state into q.

    coalition may be any iterable of agent names (or a Coalition); q is a
    StateSet over g's state indices.
    """
    members = getattr(coalition, "members", coalition)
    cm = CompiledModel(g)
    resolved = cm.resolve_members(members)
    if q.size != cm.n:
        raise ValueError("state set is over %d states, model has %d" % (q.size, cm.n))
    view = cm.coalition_view(resolved)
    out = np.zeros(cm.n, dtype=np.uint8)
    get_impl(backend).pre(
        view.group_ptr, view.group_state, view.group_target, cm.n, q.to_mask(), out
    )
    return StateSet.from_mask(out)


def run_atl_explicit(g, f: Formula) -> EvalOutcome:
    """Checker entry point for (CGS, ATL, Explicit)."""
    return evaluate(g, f)


def run_ctl_explicit(k, f: Formula) -> EvalOutcome:
    """Checker entry point for (Kripke, CTL, Explicit)."""
    return evaluate_kripke(k, f)
