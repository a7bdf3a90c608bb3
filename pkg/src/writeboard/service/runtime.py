"""Session orchestration: replay state, run an operation, append its events.

Requests touching one session are serialized by a per-session lock; distinct
sessions proceed concurrently. Timestamps are always taken server-side, so
the elapsed-writing-time measurement never trusts a client clock.
"""

from __future__ import annotations

import threading
from datetime import datetime
from typing import Callable

from writeboard.assess.metrics import MetricId
from writeboard.assess.pipeline import AssessmentPipeline, get_explanation
from writeboard.core.model import (
    AbstractSection,
    Condition,
    DialogueDimension,
    Explanation,
    FollowUpExchange,
    GoalProfile,
    QualityDimension,
    Role,
    SessionPhase,
    WritingSession,
    advance_phase,
    utcnow,
)
from writeboard.errors import EmptyDraft, GoalsLocked, WrongPhase
from writeboard.service.events import EventKind, replay
from writeboard.service.store import EventStore

DEFAULT_GOAL_REFERENCES: dict[str, str] = {
    QualityDimension.LOGICAL_COHERENCE.value: (
        "80+ means every claim follows from the previous one with explicit connectives; "
        "around 60, occasional jumps; below 40, the thread is hard to follow."
    ),
    QualityDimension.EXPRESSION_ACCURACY.value: (
        "80+ means precise, grammatical wording throughout; around 60, minor slips that "
        "do not obscure meaning; below 40, frequent errors."
    ),
    QualityDimension.STRUCTURE_COMPLETENESS.value: (
        "80+ means background, question, method, results and conclusion are all present "
        "and proportioned; around 60, one component thin or missing."
    ),
    QualityDimension.CONTENT_UNDERSTANDING.value: (
        "80+ means the summary shows real command of the source paper; around 60, "
        "mostly faithful with small misreadings; below 40, substantial misunderstanding."
    ),
}


def _explanation_entries(explanations: dict[str, Explanation]) -> list[dict]:
    return [
        {
            "metric": expl.metric_id,
            "reasoning": list(expl.reasoning_chain),
            "suggestions": list(expl.suggestions),
        }
        for expl in explanations.values()
    ]


class SessionService:
    def __init__(
        self,
        store: EventStore,
        pipeline: AssessmentPipeline,
        clock: Callable[[], datetime] | None = None,
        goal_references: dict[str, str] | None = None,
    ):
        self.store = store
        self.pipeline = pipeline
        self._clock = clock or utcnow
        self.goal_references = goal_references or dict(DEFAULT_GOAL_REFERENCES)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _state(self, session_id: str) -> WritingSession:
        return replay(session_id, self.store.events(session_id))

    # -- lifecycle -----------------------------------------------------------

    def create_session(self, condition: Condition) -> str:
        return self.store.create(condition, at=self._clock())

    def get_session(self, session_id: str) -> WritingSession:
        with self._lock(session_id):
            return self._state(session_id)

    def set_goals(self, session_id: str, goals: GoalProfile) -> None:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is not SessionPhase.FORETHOUGHT:
                raise GoalsLocked("goals are fixed once writing starts")
            self.store.append(
                session_id,
                EventKind.GOALS_SET,
                {
                    "expected_time_min": goals.expected_time_min,
                    "targets": {d.value: v for d, v in goals.targets().items()},
                },
                at=self._clock(),
            )

    def advance_phase(self, session_id: str, target: SessionPhase) -> WritingSession:
        with self._lock(session_id):
            state = self._state(session_id)
            at = self._clock()
            advanced = advance_phase(state, target, at=at)  # validates order + goals
            self.store.append(
                session_id, EventKind.PHASE_ADVANCED, {"phase": target.value}, at=at
            )
            return advanced

    def save_draft(self, session_id: str, text: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is not SessionPhase.PERFORMANCE:
                raise WrongPhase("drafts can only be saved while writing")
            event = self.store.append(
                session_id, EventKind.DRAFT_SAVED, {"text": text}, at=self._clock()
            )
            return {"version": len(state.draft_versions) + 1, "saved_at": event.at.isoformat()}

    # -- chat -----------------------------------------------------------------

    def chat(self, session_id: str, message: str) -> str:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is SessionPhase.CLOSED:
                raise WrongPhase("session is closed")
            self.store.append(
                session_id,
                EventKind.CHAT_TURN,
                {"role": Role.STUDENT.value, "text": message},
                at=self._clock(),
            )
            reply = self.pipeline.chat_reply(state.chat_log, message)
            self.store.append(
                session_id,
                EventKind.CHAT_TURN,
                {"role": Role.ASSISTANT.value, "text": reply},
                at=self._clock(),
            )
            return reply

    # -- assessments ------------------------------------------------------------

    def evaluate_progress(self, session_id: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is not SessionPhase.PERFORMANCE:
                raise WrongPhase("progress is evaluated while writing")
            at = self._clock()
            evaluation = self.pipeline.evaluate_progress(state.latest_draft(), at=at)
            payload = {
                "percent": {s.value: v for s, v in evaluation.state.per_section.items()},
                "draft_hash": evaluation.state.draft_hash,
                "template_version": evaluation.template_version,
                "judge_reasoning": list(evaluation.judge_reasoning),
                "explanations": _explanation_entries(evaluation.explanations)
                if state.explainable
                else [],
            }
            self.store.append(session_id, EventKind.PROGRESS_EVALUATED, payload, at=at)
            return {
                "evaluated_at": at.isoformat(),
                "bars": [
                    {"key": s.value, "label": s.label, "percent": evaluation.state.per_section[s]}
                    for s in AbstractSection
                ],
                "explanations_available": sorted(evaluation.explanations)
                if state.explainable
                else None,
            }

    def evaluate_reflection(self, session_id: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is not SessionPhase.REFLECTION:
                raise WrongPhase("reflection is evaluated after writing ends")
            assert state.goals is not None and state.performance_started_at is not None
            at = self._clock()
            elapsed_s = (at - state.performance_started_at).total_seconds()
            actual_time_min = max(0, int(elapsed_s // 60))
            evaluation = self.pipeline.evaluate_reflection(
                state.latest_draft(), state.goals, actual_time_min
            )
            report = evaluation.report
            payload = {
                "scores": {d.value: v for d, v in report.scores.items()},
                "actual_time_min": report.actual_time_min,
                "overlay": {d.value: v for d, v in report.overlay.items()},
                "template_version": evaluation.template_version,
                "judge_reasoning": list(evaluation.judge_reasoning),
                "explanations": _explanation_entries(evaluation.explanations)
                if state.explainable
                else [],
            }
            self.store.append(session_id, EventKind.REFLECTION_EVALUATED, payload, at=at)
            return {
                "scores": payload["scores"],
                "overlay": payload["overlay"],
                "time": {
                    "expected_min": state.goals.expected_time_min,
                    "actual_min": report.actual_time_min,
                    "delta_min": report.actual_time_min - state.goals.expected_time_min,
                },
                "explanations_available": sorted(evaluation.explanations)
                if state.explainable
                else None,
            }

    def evaluate_dialogue(self, session_id: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is SessionPhase.CLOSED:
                raise WrongPhase("session is closed")
            at = self._clock()
            evaluation = self.pipeline.evaluate_dialogue(state.chat_log)
            report = evaluation.report
            payload = {
                "scores": {d.value: v for d, v in report.scores.items()},
                "window": list(report.window),
                "template_version": evaluation.template_version,
                "judge_reasoning": list(evaluation.judge_reasoning),
                "explanations": _explanation_entries(evaluation.explanations)
                if state.explainable
                else [],
            }
            self.store.append(session_id, EventKind.DIALOGUE_EVALUATED, payload, at=at)
            return {
                "window": payload["window"],
                "bars": [
                    {"key": d.value, "label": d.label, "score": report.scores[d]}
                    for d in DialogueDimension
                ],
                "explanations_available": sorted(evaluation.explanations)
                if state.explainable
                else None,
            }

    def judge_rubric(self, session_id: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is SessionPhase.CLOSED:
                raise WrongPhase("session is closed")
            draft = state.latest_draft()
            if not draft.strip():
                raise EmptyDraft("save a draft before requesting a rubric judgement")
            at = self._clock()
            evaluation = self.pipeline.judge_rubric(draft)
            levels = {c.value: v for c, v in evaluation.score.per_criterion.items()}
            payload = {
                "levels": levels,
                "total": evaluation.score.total,
                "template_version": evaluation.template_version,
                "judge_reasoning": list(evaluation.judge_reasoning),
                "explanations": _explanation_entries(evaluation.explanations)
                if state.explainable
                else [],
            }
            self.store.append(session_id, EventKind.RUBRIC_JUDGED, payload, at=at)
            return {
                "levels": levels,
                "total": evaluation.score.total,
                "explanations_available": sorted(evaluation.explanations)
                if state.explainable
                else None,
            }

    # -- reads -------------------------------------------------------------------

    def dashboard(self, session_id: str) -> dict:
        with self._lock(session_id):
            state = self._state(session_id)
        targets = state.goals.targets() if state.goals else None
        reflection = state.reflection
        radar = []
        for dim in QualityDimension:
            radar.append(
                {
                    "key": dim.value,
                    "label": dim.label,
                    "target": targets[dim] if targets else None,
                    "actual": reflection.scores[dim] if reflection else None,
                    "delta": reflection.overlay[dim] if reflection else None,
                }
            )
        progress = state.latest_progress()
        view = {
            "session_id": state.session_id,
            "condition": state.condition.value,
            "phase": state.phase.value,
            "explainable": state.explainable,
            "goal_references": self.goal_references,
            "goals": {
                "expected_time_min": state.goals.expected_time_min,
                "targets": {d.value: v for d, v in targets.items()},
            }
            if state.goals and targets
            else None,
            "radar": radar,
            "overlay": {d.value: v for d, v in reflection.overlay.items()}
            if reflection
            else None,
            "time": {
                "expected_min": state.goals.expected_time_min,
                "actual_min": reflection.actual_time_min,
                "delta_min": reflection.actual_time_min - state.goals.expected_time_min,
            }
            if reflection and state.goals
            else None,
            "progress": {
                "evaluated_at": progress.evaluated_at.isoformat(),
                "bars": [
                    {"key": s.value, "label": s.label, "percent": progress.per_section[s]}
                    for s in AbstractSection
                ],
            }
            if progress
            else None,
            "dialogue": {
                "window": list(state.dialogue.window),
                "bars": [
                    {"key": d.value, "label": d.label, "score": state.dialogue.scores[d]}
                    for d in DialogueDimension
                ],
            }
            if state.dialogue
            else None,
            "explanations_available": sorted(state.explanations)
            if state.explainable
            else None,
        }
        return view

    def explanation(self, session_id: str, metric: MetricId) -> Explanation:
        with self._lock(session_id):
            state = self._state(session_id)
            found = get_explanation(state, metric)  # raises if sealed or unevaluated
            self.store.append(
                session_id,
                EventKind.EXPLANATION_VIEWED,
                {"metric": metric.dotted},
                at=self._clock(),
            )
            return found

    def follow_up(
        self, session_id: str, metric: MetricId, selected_text: str, question: str
    ) -> FollowUpExchange:
        with self._lock(session_id):
            state = self._state(session_id)
            if state.phase is SessionPhase.CLOSED:
                raise WrongPhase("session is closed")
            at = self._clock()
            exchange = self.pipeline.follow_up(state, metric, selected_text, question, at=at)
            self.store.append(
                session_id,
                EventKind.FOLLOW_UP_ASKED,
                {
                    "metric": metric.dotted,
                    "selected_text": exchange.selected_text,
                    "question": exchange.question,
                    "answer": exchange.answer,
                },
                at=at,
            )
            return exchange

    def export(self, session_id: str) -> bytes:
        with self._lock(session_id):
            return self.store.export_bytes(session_id)
