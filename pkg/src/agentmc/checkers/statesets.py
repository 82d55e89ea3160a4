"""Immutable sets of state indices, sized so complement is well-defined."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StateSet:
    """A subset of range(size); all set algebra stays within that universe."""

    size: int
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for i in self.members:
            if not (0 <= i < self.size):
                raise ValueError("state index %r outside range(%d)" % (i, self.size))

    @classmethod
    def empty(cls, size: int) -> "StateSet":
        return cls(size, frozenset())

    @classmethod
    def full(cls, size: int) -> "StateSet":
        return cls(size, frozenset(range(size)))

    @classmethod
    def from_mask(cls, mask) -> "StateSet":
        return cls(len(mask), frozenset(int(i) for i in np.flatnonzero(mask)))

    def to_mask(self):
        mask = np.zeros(self.size, dtype=np.uint8)
        for i in self.members:
            mask[i] = 1
        return mask

    def names(self, states) -> tuple:
        """Member names in declaration order of the given state tuple."""
        return tuple(s for i, s in enumerate(states) if i in self.members)

    def _check(self, other):
        if self.size != other.size:
            raise ValueError("state sets over different universes")

    def __contains__(self, i) -> bool:
        return i in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __or__(self, other) -> "StateSet":
        self._check(other)
        return StateSet(self.size, self.members | other.members)

    def __and__(self, other) -> "StateSet":
        self._check(other)
        return StateSet(self.size, self.members & other.members)

    def __sub__(self, other) -> "StateSet":
        self._check(other)
        return StateSet(self.size, self.members - other.members)

    def __invert__(self) -> "StateSet":
        return StateSet(self.size, frozenset(range(self.size)) - self.members)

    def complement(self) -> "StateSet":
        return ~self
