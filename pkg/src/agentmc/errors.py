"""Error types shared across the package.

Parsing problems carry a 1-based line and column.  Validation problems carry
the full list of invariant violations so callers can report them all at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class AgentmcError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AgentmcError):
    """Malformed model text or formula text."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        super().__init__(str(self))

    def __str__(self):
        text = "line %d, column %d: %s" % (self.line, self.column, self.message)
        if self.expected:
            text += " (expected: %s)" % ", ".join(sorted(self.expected))
        return text


@dataclass(frozen=True)
class Violation:
    """A single broken invariant, named so tests and callers can match on it."""

    invariant: str
    subject: str
    message: str
    line: int | None = None
    detail: Any = None


class ValidationError(AgentmcError):
    """A structure breaks one or more of its invariants."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        if not self.violations:
            raise ValueError("ValidationError needs at least one violation")
        super().__init__("; ".join(v.message for v in self.violations))


class UnknownAtom(AgentmcError):
    """A formula mentions an atom the model does not declare."""

    def __init__(self, names, known):
        self.names = tuple(sorted(names))
        self.known = frozenset(known)
        super().__init__(
            "unknown atom%s %s (model declares: %s)"
            % (
                "s" if len(self.names) != 1 else "",
                ", ".join(self.names),
                ", ".join(sorted(self.known)) or "none",
            )
        )


class UnknownAgent(AgentmcError):
    """A coalition names an agent the model does not declare."""

    def __init__(self, names, known):
        self.names = tuple(sorted(names))
        self.known = frozenset(known)
        super().__init__(
            "unknown agent%s %s (model declares: %s)"
            % (
                "s" if len(self.names) != 1 else "",
                ", ".join(self.names),
                ", ".join(sorted(self.known)) or "none",
            )
        )


class UnknownModelClass(AgentmcError):
    """A model names a class this build cannot handle."""

    def __init__(self, name, known=(), note=""):
        self.name = name
        self.known = tuple(known)
        message = "unknown model class %r" % name
        if self.known:
            message += " (supported: %s)" % ", ".join(self.known)
        if note:
            message += "; " + note
        super().__init__(message)


class DuplicateTriple(AgentmcError):
    """Two checkers registered for the same (model class, logic class, method)."""


class RegistryFrozen(AgentmcError):
    """Registration attempted after freeze()."""


class RegistryNotFrozen(AgentmcError):
    """Selection attempted before freeze()."""


class NoCapableChecker(AgentmcError):
    """No registered checker serves the requested model/logic pair."""


class SizeGuardExceeded(AgentmcError):
    """The brute-force oracle refuses inputs past its size guard."""
