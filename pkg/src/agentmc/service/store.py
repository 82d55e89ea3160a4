"""Session persistence: an in-memory map with optional single-file JSON
write-through.  The file is rewritten atomically (temp file + rename) on
every mutation so a crash never leaves a torn store behind.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from pathlib import Path

from .wizard import WizardSession

DEFAULT_IDLE_EXPIRY_SECONDS = 24 * 60 * 60.0


class UnknownSession(KeyError):
    def __init__(self, session_id: str):
        super().__init__(session_id)
        self.session_id = session_id

    def __str__(self):
        return "unknown session %r" % self.session_id


class SessionBusy(Exception):
    def __init__(self, session_id: str):
        super().__init__("session %r has another request in flight" % session_id)
        self.session_id = session_id


class SessionStore:
    """Thread-safe store; path=None keeps sessions in memory only."""

    def __init__(self, path=None, idle_expiry_seconds=DEFAULT_IDLE_EXPIRY_SECONDS):
        self._path = Path(path) if path else None
        self._idle = float(idle_expiry_seconds)
        self._mu = threading.Lock()
        self._sessions: dict[str, WizardSession] = {}
        self._busy: dict[str, threading.Lock] = {}
        if self._path is not None and self._path.exists():
            raw = json.loads(self._path.read_text(encoding="utf-8"))
            for view in raw.get("sessions", ()):
                session = WizardSession.from_view(view)
                self._sessions[session.id] = session

    def _flush_locked(self):
        if self._path is None:
            return
        payload = {"sessions": [s.to_view() for s in self._sessions.values()]}
        tmp = self._path.with_name(self._path.name + ".tmp")
        tmp.write_text(json.dumps(payload), encoding="utf-8")
        os.replace(tmp, self._path)

    def _purge_locked(self, now: float):
        dead = [
            sid
            for sid, s in self._sessions.items()
            if now - s.updated > self._idle
        ]
        for sid in dead:
            del self._sessions[sid]
            self._busy.pop(sid, None)
        return bool(dead)

    def create(self) -> WizardSession:
        now = time.time()
        with self._mu:
            self._purge_locked(now)
            session = WizardSession(id=secrets.token_urlsafe(16))
            self._sessions[session.id] = session
            self._flush_locked()
            return session

    def get(self, session_id: str) -> WizardSession:
        now = time.time()
        with self._mu:
            self._purge_locked(now)
            try:
                return self._sessions[session_id]
            except KeyError:
                raise UnknownSession(session_id) from None

    def save(self, session: WizardSession) -> None:
        with self._mu:
            self._sessions[session.id] = session
            self._flush_locked()

    def claim(self, session_id: str):
        """Serialize mutations per session; raises SessionBusy when locked."""
        with self._mu:
            if session_id not in self._sessions:
                raise UnknownSession(session_id)
            lock = self._busy.setdefault(session_id, threading.Lock())
        if not lock.acquire(blocking=False):
            raise SessionBusy(session_id)
        return lock

    def __len__(self):
        with self._mu:
            return len(self._sessions)
