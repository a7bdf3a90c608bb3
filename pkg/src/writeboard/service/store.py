"""One append-only JSON-lines file per session under the data directory."""

from __future__ import annotations

import os
import re
import secrets
from datetime import datetime
from pathlib import Path

from writeboard.core.model import Condition, utcnow
from writeboard.errors import StorageFailure, UnknownSession
from writeboard.service.events import EventKind, SessionEvent

_SAFE_ID = re.compile(r"^[A-Za-z0-9_-]+$")


class EventStore:
    def __init__(self, data_dir: Path | str):
        self.data_dir = Path(data_dir)
        try:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        except OSError as err:
            raise StorageFailure(f"cannot create data directory: {err}")
        self._last_seq: dict[str, int] = {}

    def _path(self, session_id: str) -> Path:
        if not _SAFE_ID.match(session_id):
            raise UnknownSession(f"invalid session id {session_id!r}")
        return self.data_dir / f"{session_id}.jsonl"

    def _write_line(self, path: Path, line: str, create: bool) -> None:
        try:
            with open(path, "x" if create else "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
        except OSError as err:
            raise StorageFailure(f"cannot append to {path.name}: {err}")

    def create(self, condition: Condition, at: datetime | None = None) -> str:
        """Open a new session log with its Created event; returns the unguessable id."""
        while True:
            session_id = secrets.token_urlsafe(16)
            if not self._path(session_id).exists():
                break
        event = SessionEvent(
            seq=1,
            at=at or utcnow(),
            kind=EventKind.CREATED,
            payload={"condition": condition.value},
        )
        self._write_line(self._path(session_id), event.to_json_line(), create=True)
        self._last_seq[session_id] = 1
        return session_id

    def append(
        self,
        session_id: str,
        kind: EventKind,
        payload: dict,
        at: datetime | None = None,
    ) -> SessionEvent:
        path = self._path(session_id)
        if session_id not in self._last_seq:
            self._last_seq[session_id] = len(self.events(session_id))
        event = SessionEvent(
            seq=self._last_seq[session_id] + 1,
            at=at or utcnow(),
            kind=kind,
            payload=payload,
        )
        self._write_line(path, event.to_json_line(), create=False)
        self._last_seq[session_id] = event.seq
        return event

    def events(self, session_id: str) -> list[SessionEvent]:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as err:
            raise StorageFailure(f"cannot read {path.name}: {err}")
        return [SessionEvent.from_json_line(line) for line in lines if line.strip()]

    def export_bytes(self, session_id: str) -> bytes:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id!r}")
        try:
            return path.read_bytes()
        except OSError as err:
            raise StorageFailure(f"cannot read {path.name}: {err}")

    def list_sessions(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.jsonl"))
