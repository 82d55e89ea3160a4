"""Kernel backend selection.

The compiled extension is preferred when the build produced it; the pure
Python twin is always available.  AGENTMC_BACKEND=python|cython overrides
the choice, and naming an unavailable backend fails at first use with a
clear message instead of silently degrading.
"""

from __future__ import annotations

import os

from . import _fixpoint_py

_BACKENDS = {"python": _fixpoint_py}

try:
    from . import _fixpoint as _fixpoint_ext
except ImportError:
    _fixpoint_ext = None
else:
    _BACKENDS["cython"] = _fixpoint_ext


def available_backends() -> tuple:
    return tuple(sorted(_BACKENDS))


def default_backend() -> str:
    forced = os.environ.get("AGENTMC_BACKEND")
    if forced:
        return forced
    return "cython" if "cython" in _BACKENDS else "python"


def get_impl(name: str | None = None):
    """The kernel module for name (or the default); raises on unknown names."""
    name = name or default_backend()
    impl = _BACKENDS.get(name)
    if impl is None:
        raise ValueError(
            "backend %r is not available (have: %s)"
            % (name, ", ".join(available_backends()))
        )
    return impl
