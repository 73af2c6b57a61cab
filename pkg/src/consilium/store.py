"""One JSON document per session under `<root>/sessions/`, written
atomically (temp file + rename). Per-session locks serialize mutations;
distinct sessions proceed independently.
"""

from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from pathlib import Path

from .errors import SessionNotFoundError
from .session import Session


def dumps_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root) / "sessions"
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def exists(self, session_id: str) -> bool:
        return self.path(session_id).is_file()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def save(self, session: Session) -> None:
        target = self.path(session.id)
        tmp = target.with_suffix(".json.tmp")
        tmp.write_text(dumps_doc(session.to_doc()), encoding="utf-8")
        os.replace(tmp, target)

    def load(self, session_id: str) -> Session:
        path = self.path(session_id)
        if not path.is_file():
            raise SessionNotFoundError(f"no session {session_id!r}")
        return Session.from_doc(json.loads(path.read_text(encoding="utf-8")))

    @contextmanager
    def mutate(self, session_id: str):
        """Load-mutate-save under the session's lock. The document is only
        rewritten when the body completes without raising."""
        with self._lock(session_id):
            session = self.load(session_id)
            yield session
            self.save(session)

    @contextmanager
    def read(self, session_id: str):
        with self._lock(session_id):
            yield self.load(session_id)
