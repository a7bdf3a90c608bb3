from writeboard.service.events import EventKind, SessionEvent, parse_log, read_log, replay
from writeboard.service.runtime import SessionService
from writeboard.service.store import EventStore

__all__ = [
    "EventKind",
    "EventStore",
    "SessionEvent",
    "SessionService",
    "parse_log",
    "read_log",
    "replay",
]
