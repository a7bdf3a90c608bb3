"""Append-only session events and the pure fold that rebuilds session state.

Every mutation of a session is one immutable event; replaying the log always
reproduces the same ``WritingSession``. The fold re-validates every invariant
(phase order, goal locking, score ranges, window shape, explanation sealing),
so a log that folds cleanly is a session that was always legal; anything else
raises ``CorruptLog``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Sequence

from writeboard.core.model import (
    AbstractSection,
    ChatTurn,
    Condition,
    DialogueDimension,
    DialogueQualityReport,
    DraftVersion,
    Explanation,
    FollowUpExchange,
    GoalProfile,
    ProgressState,
    QualityDimension,
    ReflectionReport,
    Role,
    SessionPhase,
    WritingSession,
    advance_phase,
    compute_overlay,
    draft_digest,
)
from writeboard.errors import CorruptLog, WriteboardError
from writeboard.rubric.engine import RubricCriterion, total_score


class EventKind(Enum):
    CREATED = "Created"
    GOALS_SET = "GoalsSet"
    PHASE_ADVANCED = "PhaseAdvanced"
    DRAFT_SAVED = "DraftSaved"
    CHAT_TURN = "ChatTurn"
    PROGRESS_EVALUATED = "ProgressEvaluated"
    REFLECTION_EVALUATED = "ReflectionEvaluated"
    DIALOGUE_EVALUATED = "DialogueEvaluated"
    RUBRIC_JUDGED = "RubricJudged"
    EXPLANATION_VIEWED = "ExplanationViewed"
    FOLLOW_UP_ASKED = "FollowUpAsked"


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    at: datetime
    kind: EventKind
    payload: dict

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "seq": self.seq,
                "at": self.at.isoformat(),
                "kind": self.kind.value,
                "payload": self.payload,
            },
            ensure_ascii=False,
            separators=(",", ":"),
        )

    @classmethod
    def from_json_line(cls, line: str) -> "SessionEvent":
        try:
            raw = json.loads(line)
            return cls(
                seq=int(raw["seq"]),
                at=datetime.fromisoformat(raw["at"]),
                kind=EventKind(raw["kind"]),
                payload=raw["payload"],
            )
        except (ValueError, KeyError, TypeError) as err:
            raise CorruptLog(f"unreadable event line: {err}")


def _explanations_from_payload(
    session: WritingSession, payload: dict, expected_metrics: set[str]
) -> dict[str, Explanation]:
    entries = payload.get("explanations", [])
    if not session.explainable:
        if entries:
            raise CorruptLog("visual-only session carries explanation payloads")
        return {}
    built = {
        entry["metric"]: Explanation(
            metric_id=entry["metric"],
            reasoning_chain=tuple(entry["reasoning"]),
            suggestions=tuple(entry["suggestions"]),
        )
        for entry in entries
    }
    if set(built) != expected_metrics:
        raise CorruptLog(
            f"evaluation explanations cover {sorted(built)}, expected {sorted(expected_metrics)}"
        )
    return built


def _merged(session: WritingSession, new: dict[str, Explanation]) -> dict[str, Explanation]:
    merged = dict(session.explanations)
    merged.update(new)
    return merged


def _require_phase(session: WritingSession, *phases: SessionPhase) -> None:
    if session.phase not in phases:
        allowed = ", ".join(p.value for p in phases)
        raise CorruptLog(f"event not legal in phase {session.phase.value} (needs {allowed})")


def _apply(session: WritingSession | None, event: SessionEvent, session_id: str) -> WritingSession:
    payload = event.payload

    if event.kind is EventKind.CREATED:
        if session is not None:
            raise CorruptLog("second Created event")
        return WritingSession(
            session_id=session_id,
            condition=Condition(payload["condition"]),
            created_at=event.at,
        )
    if session is None:
        raise CorruptLog("log does not start with Created")

    if event.kind is EventKind.GOALS_SET:
        if session.phase is not SessionPhase.FORETHOUGHT:
            raise CorruptLog("goals may only be set during planning")
        goals = GoalProfile(
            expected_time_min=payload["expected_time_min"], **payload["targets"]
        )
        return replace(session, goals=goals)

    if event.kind is EventKind.PHASE_ADVANCED:
        return advance_phase(session, SessionPhase(payload["phase"]), at=event.at)

    if event.kind is EventKind.DRAFT_SAVED:
        _require_phase(session, SessionPhase.PERFORMANCE)
        version = DraftVersion(at=event.at, text=payload["text"])
        return replace(session, draft_versions=session.draft_versions + (version,))

    if event.kind is EventKind.CHAT_TURN:
        if session.phase is SessionPhase.CLOSED:
            raise CorruptLog("chat after session closed")
        turn = ChatTurn(role=Role(payload["role"]), text=payload["text"], at=event.at)
        return replace(session, chat_log=session.chat_log + (turn,))

    if event.kind is EventKind.PROGRESS_EVALUATED:
        _require_phase(session, SessionPhase.PERFORMANCE)
        state = ProgressState(
            per_section=payload["percent"],
            evaluated_at=event.at,
            draft_hash=payload["draft_hash"],
        )
        if state.draft_hash != draft_digest(session.latest_draft()):
            raise CorruptLog("progress evaluation does not match the stored draft")
        expected = {f"progress.{s.value}" for s in AbstractSection}
        new_expl = _explanations_from_payload(session, payload, expected)
        return replace(
            session,
            progress_history=session.progress_history + (state,),
            explanations=_merged(session, new_expl),
        )

    if event.kind is EventKind.REFLECTION_EVALUATED:
        _require_phase(session, SessionPhase.REFLECTION)
        assert session.goals is not None  # guaranteed: Reflection lies past Performance
        report = ReflectionReport(
            scores=payload["scores"],
            actual_time_min=payload["actual_time_min"],
            overlay=payload["overlay"],
        )
        if report.overlay != compute_overlay(session.goals, report.scores):
            raise CorruptLog("stored overlay is not scores minus goals")
        expected = {f"reflection.{d.value}" for d in QualityDimension}
        new_expl = _explanations_from_payload(session, payload, expected)
        return replace(session, reflection=report, explanations=_merged(session, new_expl))

    if event.kind is EventKind.DIALOGUE_EVALUATED:
        if session.phase is SessionPhase.CLOSED:
            raise CorruptLog("evaluation after session closed")
        report = DialogueQualityReport(
            scores=payload["scores"], window=tuple(payload["window"])
        )
        prompt_ids = [i for i, _ in session.student_prompts()]
        if list(report.window) != prompt_ids[-5:]:
            raise CorruptLog("window is not the most recent student prompts")
        expected = {f"dialogue.{d.value}" for d in DialogueDimension}
        new_expl = _explanations_from_payload(session, payload, expected)
        return replace(session, dialogue=report, explanations=_merged(session, new_expl))

    if event.kind is EventKind.RUBRIC_JUDGED:
        if session.phase is SessionPhase.CLOSED:
            raise CorruptLog("evaluation after session closed")
        if not session.latest_draft().strip():
            raise CorruptLog("rubric judged with no draft")
        score = total_score(payload["levels"])
        if score.total != payload["total"]:
            raise CorruptLog("stored rubric total does not match its levels")
        expected = {f"rubric.{c.value}" for c in RubricCriterion}
        new_expl = _explanations_from_payload(session, payload, expected)
        levels = {c.value: v for c, v in score.per_criterion.items()}
        return replace(session, rubric_levels=levels, explanations=_merged(session, new_expl))

    if event.kind is EventKind.EXPLANATION_VIEWED:
        if not session.explainable:
            raise CorruptLog("explanation viewed on a visual-only session")
        if payload["metric"] not in session.explanations:
            raise CorruptLog(f"viewed explanation {payload['metric']!r} does not exist")
        return session

    if event.kind is EventKind.FOLLOW_UP_ASKED:
        if not session.explainable:
            raise CorruptLog("follow-up on a visual-only session")
        metric = payload["metric"]
        explanation = session.explanations.get(metric)
        if explanation is None:
            raise CorruptLog(f"follow-up on unevaluated metric {metric!r}")
        exchange = FollowUpExchange(
            selected_text=payload["selected_text"],
            question=payload["question"],
            answer=payload["answer"],
            asked_at=event.at,
        )
        updated = explanation.with_follow_up(exchange)
        merged = dict(session.explanations)
        merged[metric] = updated
        return replace(session, explanations=merged)

    raise CorruptLog(f"unknown event kind {event.kind!r}")


def replay(session_id: str, events: Sequence[SessionEvent]) -> WritingSession:
    """Fold an event log into a session; deterministic and side-effect free."""
    if not events:
        raise CorruptLog(f"session {session_id!r} has an empty event log")
    session: WritingSession | None = None
    expected_seq = 1
    for event in events:
        if event.seq != expected_seq:
            raise CorruptLog(
                f"sequence gap in session {session_id!r}: expected {expected_seq}, found {event.seq}"
            )
        expected_seq += 1
        try:
            session = _apply(session, event, session_id)
        except CorruptLog:
            raise
        except (WriteboardError, ValueError, KeyError, TypeError) as err:
            raise CorruptLog(f"event {event.seq} ({event.kind.value}): {err}") from err
    assert session is not None
    return session


def parse_log(data: bytes | str) -> list[SessionEvent]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return [SessionEvent.from_json_line(line) for line in text.splitlines() if line.strip()]


def read_log(path: Path | str) -> WritingSession:
    """Replay one exported .jsonl event log; the filename stem is the session id."""
    path = Path(path)
    return replay(path.stem, parse_log(path.read_bytes()))
