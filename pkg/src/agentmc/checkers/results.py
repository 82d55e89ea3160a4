"""Verification results and their stable JSON form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from ..kernel import Method, SelectionTrace
from .statesets import StateSet
from .witness import MemorylessStrategy


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of one verify() call.

    per_initial maps each initial state (declaration order) to its verdict;
    overall is their conjunction.  elapsed_seconds is wall time and is the
    one field two otherwise identical runs may differ in.
    """

    per_initial: Mapping
    overall: bool
    satisfaction_set: StateSet
    satisfying_states: tuple
    method: Method
    trace: SelectionTrace
    witness: Optional[MemorylessStrategy]
    elapsed_seconds: float

    def to_jsonable(self) -> dict:
        """A dict with a stable key set, ready for json.dumps."""
        witness = None
        if self.witness is not None:
            by_state = {}
            for (state, member), action in self.witness.choice.items():
                by_state.setdefault(state, {})[member] = action
            witness = {
                "coalition": sorted(self.witness.coalition.members),
                "choice": {s: dict(sorted(acts.items())) for s, acts in sorted(by_state.items())},
            }
        return {
            "overall": self.overall,
            "per_initial": dict(self.per_initial),
            "satisfying_states": list(self.satisfying_states),
            "method": self.method.value,
            "trace": {
                "model_class": self.trace.model_class,
                "logic_class": self.trace.logic_class,
                "state_count": self.trace.state_count,
                "preferred_method": self.trace.preferred_method.value,
                "used_method": self.trace.used_method.value,
                "fallback_applied": self.trace.fallback_applied,
                "note": self.trace.note,
            },
            "witness": witness,
            "elapsed_seconds": self.elapsed_seconds,
        }
