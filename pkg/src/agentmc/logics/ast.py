"""Immutable formula trees.

State formulas and path formulas are separate node families: a path formula
(X, F, G, U) only ever appears directly under a path quantifier (E/A) or a
coalition modality (<...>/[...]).  All nodes are frozen dataclasses, so they
hash and compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class Formula:
    """Base class for state formulas."""

    __slots__ = ()


class PathFormula:
    """Base class for path formulas; never valid as a formula on its own."""

    __slots__ = ()


class FullCoalition:
    """Placeholder for the coalition of every agent of the model at hand.

    Produced by desugaring the E quantifier; resolved against a concrete
    model by the evaluator.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FULL_COALITION"


FULL_COALITION = FullCoalition()

Members = Union[tuple, FullCoalition]


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quant(Formula):
    """Path quantifier: 'E' (some path) or 'A' (all paths)."""

    quantifier: str
    path: PathFormula

    def __post_init__(self):
        if self.quantifier not in ("E", "A"):
            raise ValueError("quantifier must be 'E' or 'A'")


@dataclass(frozen=True)
class CoalitionMod(Formula):
    """Coalition modality: kind 'diamond' (<...>) or 'box' ([...]).

    members is a tuple of agent names without duplicates, or the
    FULL_COALITION marker after desugaring an E quantifier.
    """

    kind: str
    members: Members
    path: PathFormula

    def __post_init__(self):
        if self.kind not in ("diamond", "box"):
            raise ValueError("kind must be 'diamond' or 'box'")
        if not isinstance(self.members, FullCoalition):
            members = tuple(self.members)
            object.__setattr__(self, "members", members)
            if len(set(members)) != len(members):
                raise ValueError("duplicate coalition member")


@dataclass(frozen=True)
class Next(PathFormula):
    operand: Formula


@dataclass(frozen=True)
class Finally(PathFormula):
    operand: Formula


@dataclass(frozen=True)
class Globally(PathFormula):
    operand: Formula


@dataclass(frozen=True)
class Until(PathFormula):
    left: Formula
    right: Formula


TRUE = TrueF()
FALSE = FalseF()


def _children(node):
    if isinstance(node, (Not,)):
        return (node.operand,)
    if isinstance(node, (And, Or, Implies, Iff)):
        return (node.left, node.right)
    if isinstance(node, (Quant, CoalitionMod)):
        return (node.path,)
    if isinstance(node, (Next, Finally, Globally)):
        return (node.operand,)
    if isinstance(node, Until):
        return (node.left, node.right)
    return ()


def walk(f) -> Iterator:
    """Yield every node of the tree (state and path nodes), preorder."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(_children(node)))


def atoms_of(f) -> frozenset:
    """The set of atom names mentioned anywhere in the formula."""
    return frozenset(n.name for n in walk(f) if isinstance(n, Atom))


def agents_of(f) -> frozenset:
    """The set of agent names mentioned in coalition modalities."""
    names = set()
    for n in walk(f):
        if isinstance(n, CoalitionMod) and not isinstance(n.members, FullCoalition):
            names.update(n.members)
    return frozenset(names)


def node_count(f) -> int:
    return sum(1 for _ in walk(f))


def depth(f) -> int:
    """Height of the tree, counting both state and path nodes."""
    kids = _children(f)
    if not kids:
        return 1
    return 1 + max(depth(k) for k in kids)
