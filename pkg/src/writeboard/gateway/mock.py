"""Deterministic scripted transport for offline runs and every test.

A script is an ordered list of entries; each request takes the first
matching entry that is still live (entries are one-shot unless marked
``repeat``). Identical request sequences therefore produce byte-identical
replies. Every call is recorded so tests can assert on traffic, e.g. that a
visual-only session never triggers a follow-up call.

Script file layout (JSON, either a bare list or ``{"entries": [...]}``)::

    [
      {
        "match": {"task_kind": "ProgressEval", "contains": "optional substring"},
        "repeat": true,
        "response": {"content": "...", "reasoning": "step one\\nstep two"}
      },
      {"match": {}, "response": {"error": "unreachable"}}
    ]

``response.error`` may be "unreachable" (network failure) or "unauthorized".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from writeboard.errors import Unauthorized
from writeboard.gateway.client import Message, ProviderReply, TransportUnavailable
from writeboard.gateway.schemas import TaskKind


@dataclass
class ScriptEntry:
    response: dict
    match: dict = field(default_factory=dict)
    repeat: bool = False
    used: bool = False

    def matches(self, task_kind: TaskKind, transcript: str) -> bool:
        if self.used and not self.repeat:
            return False
        wanted_kind = self.match.get("task_kind")
        if wanted_kind is not None and wanted_kind != task_kind.value:
            return False
        needle = self.match.get("contains")
        if needle is not None and needle not in transcript:
            return False
        return True


@dataclass(frozen=True)
class RecordedCall:
    task_kind: TaskKind
    messages: tuple[Message, ...]
    temperature: float


class ScriptedTransport:
    """Transport that replays a fixed script instead of calling a provider."""

    def __init__(self, entries: Sequence[dict | ScriptEntry]):
        self.entries = [
            e if isinstance(e, ScriptEntry) else ScriptEntry(
                response=e["response"],
                match=e.get("match", {}),
                repeat=bool(e.get("repeat", False)),
            )
            for e in entries
        ]
        self.calls: list[RecordedCall] = []

    @classmethod
    def from_file(cls, path: Path | str) -> "ScriptedTransport":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = raw["entries"] if isinstance(raw, dict) else raw
        return cls(entries)

    def calls_of_kind(self, task_kind: TaskKind) -> list[RecordedCall]:
        return [c for c in self.calls if c.task_kind is task_kind]

    def complete(
        self, messages: Sequence[Message], task_kind: TaskKind, temperature: float
    ) -> ProviderReply:
        self.calls.append(RecordedCall(task_kind, tuple(dict(m) for m in messages), temperature))
        transcript = "\n".join(m.get("content", "") for m in messages)
        for entry in self.entries:
            if entry.matches(task_kind, transcript):
                entry.used = True
                error = entry.response.get("error")
                if error == "unreachable":
                    raise TransportUnavailable("scripted network failure")
                if error == "unauthorized":
                    raise Unauthorized("scripted credential rejection")
                return ProviderReply(
                    content=entry.response.get("content", ""),
                    reasoning=entry.response.get("reasoning"),
                )
        raise LookupError(
            f"mock script has no entry for a {task_kind.value} request "
            f"(call #{len(self.calls)})"
        )
