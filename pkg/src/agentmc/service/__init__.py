"""HTTP backend for the guided wizard and the one-shot expert flow."""

from .app import create_app, main
from .store import SessionBusy, SessionStore, UnknownSession
from .wizard import (
    PHASES,
    BadStep,
    PhaseMismatch,
    WizardError,
    WizardSession,
    apply_step,
)

__all__ = [
    "PHASES",
    "BadStep",
    "PhaseMismatch",
    "SessionBusy",
    "SessionStore",
    "UnknownSession",
    "WizardError",
    "WizardSession",
    "apply_step",
    "create_app",
    "main",
]
