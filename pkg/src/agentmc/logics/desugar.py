"""Rewrite formulas into the evaluator's core form.

Core state formulas: true, atoms, negation, conjunction, and coalition
modalities of the shapes

    <A> X f      <A> G f      <A> (f U g)      [A] (f U g)

Everything else is eliminated: false and the derived boolean connectives by
the usual identities, F by (true U .), path quantifiers by coalition
modalities (E becomes the full coalition, A the empty one), [A] X and [A] G
by negating the dual diamond.  [A] (f U g) has no negation-of-diamond form
over the three core path operators, so it stays a core node; the evaluator
runs its least fixpoint against the complement-dual predecessor.

desugar() is idempotent, and preserves atoms_of and agents_of up to the
agents introduced by resolving FULL_COALITION against a model later.
"""

from __future__ import annotations

from .ast import (
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
    Quant,
    TrueF,
    Until,
)


def _not(f):
    return Not(f)


def _and(a, b):
    return And(a, b)


def _or(a, b):
    # a || b  ==  !(!a && !b)
    return Not(And(Not(a), Not(b)))


def _path(path):
    if isinstance(path, Next):
        return Next(desugar(path.operand))
    if isinstance(path, Finally):
        return Until(TRUE, desugar(path.operand))
    if isinstance(path, Globally):
        return Globally(desugar(path.operand))
    if isinstance(path, Until):
        return Until(desugar(path.left), desugar(path.right))
    raise TypeError("not a path formula: %r" % (path,))


def _diamond(members, path):
    return CoalitionMod("diamond", members, path)


def _box_for(members, path):
    """[A] path, rewritten through the dual diamond where one exists."""
    if isinstance(path, Next):
        # [A] X f == !<A> X !f
        return Not(_diamond(members, Next(Not(desugar(path.operand)))))
    if isinstance(path, Finally):
        # [A] F f == !<A> G !f
        return Not(_diamond(members, Globally(Not(desugar(path.operand)))))
    if isinstance(path, Globally):
        # [A] G f == !<A> (true U !f)
        return Not(_diamond(members, Until(TRUE, Not(desugar(path.operand)))))
    if isinstance(path, Until):
        # no diamond dual over {X, G, U}; kept as a core node
        return CoalitionMod("box", members, _path(path))
    raise TypeError("not a path formula: %r" % (path,))


def desugar(f: Formula) -> Formula:
    """Rewrite to core form; idempotent."""
    if isinstance(f, (TrueF, Atom)):
        return f
    if isinstance(f, FalseF):
        return Not(TRUE)
    if isinstance(f, Not):
        return Not(desugar(f.operand))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return _or(desugar(f.left), desugar(f.right))
    if isinstance(f, Implies):
        # a -> b  ==  !(a && !b)
        return Not(And(desugar(f.left), Not(desugar(f.right))))
    if isinstance(f, Iff):
        # a <-> b  ==  !(a && !b) && !(b && !a)
        a, b = desugar(f.left), desugar(f.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(f, Quant):
        members = FULL_COALITION if f.quantifier == "E" else ()
        return _diamond(members, _path(f.path))
    if isinstance(f, CoalitionMod):
        if f.kind == "diamond":
            return _diamond(f.members, _path(f.path))
        return _box_for(f.members, f.path)
    raise TypeError("not a formula: %r" % (f,))


def is_desugared(f: Formula) -> bool:
    """True when f is already in core form."""
    if isinstance(f, (TrueF, Atom)):
        return True
    if isinstance(f, Not):
        return is_desugared(f.operand)
    if isinstance(f, And):
        return is_desugared(f.left) and is_desugared(f.right)
    if isinstance(f, CoalitionMod):
        path = f.path
        if isinstance(path, Next) and f.kind == "diamond":
            return is_desugared(path.operand)
        if isinstance(path, Globally) and f.kind == "diamond":
            return is_desugared(path.operand)
        if isinstance(path, Until):
            return is_desugared(path.left) and is_desugared(path.right)
        return False
    return False
