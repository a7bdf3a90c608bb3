"""Pure domain types for phased writing sessions.

Everything here is immutable after construction and free of I/O; state
changes happen by building a new value (``dataclasses.replace``) under the
service layer's per-session serialization.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Mapping, Union

from writeboard.errors import (
    DimensionMismatch,
    MissingGoals,
    PhaseOrderViolation,
    SelectionNotInExplanation,
)


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def draft_digest(text: str) -> str:
    """Stable content digest used to tie an evaluation to one draft version."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class SessionPhase(Enum):
    """Lifecycle phases, traversed strictly in order with no skips or reversals."""

    FORETHOUGHT = "Forethought"
    PERFORMANCE = "Performance"
    REFLECTION = "Reflection"
    CLOSED = "Closed"

    @property
    def index(self) -> int:
        return PHASE_ORDER.index(self)

    @property
    def successor(self) -> "SessionPhase | None":
        i = self.index + 1
        return PHASE_ORDER[i] if i < len(PHASE_ORDER) else None

    def reached(self, other: "SessionPhase") -> bool:
        return self.index >= other.index


PHASE_ORDER = (
    SessionPhase.FORETHOUGHT,
    SessionPhase.PERFORMANCE,
    SessionPhase.REFLECTION,
    SessionPhase.CLOSED,
)


class Condition(Enum):
    """Dashboard variant a session runs under.

    EXPLAINABLE exposes reasoning chains and follow-up dialogue on every
    score; VISUAL_ONLY permanently seals both and shows charts alone.
    """

    EXPLAINABLE = "Explainable"
    VISUAL_ONLY = "VisualOnly"


class QualityDimension(Enum):
    """The four scored writing-quality dimensions (goal setting and reflection)."""

    LOGICAL_COHERENCE = "logical_coherence"
    EXPRESSION_ACCURACY = "expression_accuracy"
    STRUCTURE_COMPLETENESS = "structure_completeness"
    CONTENT_UNDERSTANDING = "content_understanding"

    @property
    def label(self) -> str:
        return self.value.replace("_", " ").title()


class AbstractSection(Enum):
    """The five abstract sections whose drafting progress is tracked."""

    BACKGROUND = "Background"
    QUESTION = "Question"
    METHOD = "Method"
    RESULTS = "Results"
    CONCLUSION = "Conclusion"

    @property
    def label(self) -> str:
        return f"Research {self.value}"


class DialogueDimension(Enum):
    """The four dimensions scored over the student's recent prompts."""

    TASK_FOCUS = "TaskFocus"
    ACADEMIC_STANDARDS = "AcademicStandards"
    INDEPENDENT_THINKING = "IndependentThinking"
    QUESTIONING_STRATEGIES = "QuestioningStrategies"

    @property
    def label(self) -> str:
        return _DIALOGUE_LABELS[self]


_DIALOGUE_LABELS = {
    DialogueDimension.TASK_FOCUS: "Task Focus",
    DialogueDimension.ACADEMIC_STANDARDS: "Academic Standards",
    DialogueDimension.INDEPENDENT_THINKING: "Independent Thinking",
    DialogueDimension.QUESTIONING_STRATEGIES: "Questioning Strategies",
}


class Role(Enum):
    STUDENT = "student"
    ASSISTANT = "assistant"


ScoreMap = Mapping[Union[QualityDimension, str], int]


def _as_dimension_map(values: ScoreMap, what: str) -> dict[QualityDimension, int]:
    """Normalize a score map onto the four quality dimensions, exactly covered."""
    out: dict[QualityDimension, int] = {}
    for key, value in values.items():
        try:
            dim = key if isinstance(key, QualityDimension) else QualityDimension(key)
        except ValueError:
            raise DimensionMismatch(f"{what} has unknown dimension {key!r}")
        if dim in out:
            raise DimensionMismatch(f"{what} repeats dimension {dim.value!r}")
        out[dim] = int(value)
    missing = [d.value for d in QualityDimension if d not in out]
    if missing:
        raise DimensionMismatch(f"{what} missing dimensions: {', '.join(missing)}")
    return {d: out[d] for d in QualityDimension}


def _check_score_range(values: Mapping, what: str, lo: int = 0, hi: int = 100) -> None:
    for key, value in values.items():
        if not lo <= value <= hi:
            name = key.value if isinstance(key, Enum) else key
            raise ValueError(f"{what}[{name}] = {value} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class GoalProfile:
    """Self-set targets captured during planning: expected minutes plus four 0-100 scores."""

    expected_time_min: int
    logical_coherence: int
    expression_accuracy: int
    structure_completeness: int
    content_understanding: int

    def __post_init__(self):
        if self.expected_time_min < 1:
            raise ValueError(f"expected_time_min must be >= 1, got {self.expected_time_min}")
        _check_score_range(self.targets(), "goal target")

    def targets(self) -> dict[QualityDimension, int]:
        return {
            QualityDimension.LOGICAL_COHERENCE: self.logical_coherence,
            QualityDimension.EXPRESSION_ACCURACY: self.expression_accuracy,
            QualityDimension.STRUCTURE_COMPLETENESS: self.structure_completeness,
            QualityDimension.CONTENT_UNDERSTANDING: self.content_understanding,
        }


def compute_overlay(goals: "GoalProfile | ScoreMap", scores: ScoreMap) -> dict[QualityDimension, int]:
    """Per-dimension delta (actual minus target), unclamped.

    Both inputs must cover exactly the four quality dimensions; ``goals`` may
    be a GoalProfile or a plain score map.
    """
    target = goals.targets() if isinstance(goals, GoalProfile) else _as_dimension_map(goals, "goals")
    actual = _as_dimension_map(scores, "scores")
    return {d: actual[d] - target[d] for d in QualityDimension}


@dataclass(frozen=True)
class ProgressState:
    """Per-section completeness of one evaluated draft."""

    per_section: Mapping[AbstractSection, int]
    evaluated_at: datetime
    draft_hash: str

    def __post_init__(self):
        normalized: dict[AbstractSection, int] = {}
        for key, value in self.per_section.items():
            section = key if isinstance(key, AbstractSection) else AbstractSection(key)
            normalized[section] = int(value)
        missing = [s.value for s in AbstractSection if s not in normalized]
        if missing:
            raise ValueError(f"progress missing sections: {', '.join(missing)}")
        if len(normalized) != len(AbstractSection):
            raise ValueError("progress has unexpected extra sections")
        _check_score_range(normalized, "completeness")
        object.__setattr__(self, "per_section", {s: normalized[s] for s in AbstractSection})


@dataclass(frozen=True)
class ReflectionReport:
    """Final four-dimension scores with elapsed minutes and goal-delta overlay."""

    scores: Mapping[QualityDimension, int]
    actual_time_min: int
    overlay: Mapping[QualityDimension, int]

    def __post_init__(self):
        scores = _as_dimension_map(self.scores, "reflection scores")
        _check_score_range(scores, "reflection score")
        overlay = _as_dimension_map(self.overlay, "overlay")
        if self.actual_time_min < 0:
            raise ValueError("actual_time_min must be >= 0")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "overlay", overlay)

    @classmethod
    def build(cls, goals: GoalProfile, scores: ScoreMap, actual_time_min: int) -> "ReflectionReport":
        """Construct with the overlay derived from the goals, so the delta invariant holds."""
        normalized = _as_dimension_map(scores, "reflection scores")
        return cls(normalized, actual_time_min, compute_overlay(goals, normalized))


@dataclass(frozen=True)
class DialogueQualityReport:
    """Four-dimension quality scores over the most recent student prompts."""

    scores: Mapping[DialogueDimension, int]
    window: tuple[int, ...]

    def __post_init__(self):
        normalized: dict[DialogueDimension, int] = {}
        for key, value in self.scores.items():
            dim = key if isinstance(key, DialogueDimension) else DialogueDimension(key)
            normalized[dim] = int(value)
        if set(normalized) != set(DialogueDimension):
            raise ValueError("dialogue scores must cover exactly the four dimensions")
        _check_score_range(normalized, "dialogue score")
        if not 1 <= len(self.window) <= 5:
            raise ValueError(f"window must hold 1..5 prompt ids, got {len(self.window)}")
        object.__setattr__(self, "scores", {d: normalized[d] for d in DialogueDimension})
        object.__setattr__(self, "window", tuple(int(i) for i in self.window))


@dataclass(frozen=True)
class FollowUpExchange:
    """One question asked about a selected span of an explanation, with its answer."""

    selected_text: str
    question: str
    answer: str
    asked_at: datetime

    def __post_init__(self):
        if not self.selected_text:
            raise ValueError("selected_text must be nonempty")
        if not self.question.strip():
            raise ValueError("question must be nonempty")
        if not self.answer.strip():
            raise ValueError("answer must be nonempty")


@dataclass(frozen=True)
class Explanation:
    """Why a metric got its score: ordered reasoning steps, suggestions, follow-ups."""

    metric_id: str
    reasoning_chain: tuple[str, ...]
    suggestions: tuple[str, ...]
    follow_ups: tuple[FollowUpExchange, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "reasoning_chain", tuple(self.reasoning_chain))
        object.__setattr__(self, "suggestions", tuple(self.suggestions))
        object.__setattr__(self, "follow_ups", tuple(self.follow_ups))
        if not self.reasoning_chain or not all(s.strip() for s in self.reasoning_chain):
            raise ValueError("reasoning_chain must hold nonempty steps")
        if not self.suggestions or not all(s.strip() for s in self.suggestions):
            raise ValueError("suggestions must hold nonempty entries")

    def rendered_text(self) -> str:
        """The explanation as shown to the student; follow-up selections must be substrings of this."""
        return "\n".join(self.reasoning_chain + self.suggestions)

    def contains(self, selected_text: str) -> bool:
        return bool(selected_text) and selected_text in self.rendered_text()

    def with_follow_up(self, exchange: FollowUpExchange) -> "Explanation":
        if not self.contains(exchange.selected_text):
            raise SelectionNotInExplanation(
                f"selection is not a verbatim substring of explanation {self.metric_id!r}"
            )
        return replace(self, follow_ups=self.follow_ups + (exchange,))


@dataclass(frozen=True)
class DraftVersion:
    at: datetime
    text: str


@dataclass(frozen=True)
class ChatTurn:
    role: Role
    text: str
    at: datetime


@dataclass(frozen=True)
class WritingSession:
    """Full state of one student's writing task, reconstructed from its event log."""

    session_id: str
    condition: Condition
    created_at: datetime
    phase: SessionPhase = SessionPhase.FORETHOUGHT
    goals: GoalProfile | None = None
    draft_versions: tuple[DraftVersion, ...] = ()
    chat_log: tuple[ChatTurn, ...] = ()
    progress_history: tuple[ProgressState, ...] = ()
    reflection: ReflectionReport | None = None
    dialogue: DialogueQualityReport | None = None
    rubric_levels: Mapping[str, int] | None = None
    explanations: Mapping[str, Explanation] = field(default_factory=dict)
    performance_started_at: datetime | None = None

    @property
    def explainable(self) -> bool:
        return self.condition is Condition.EXPLAINABLE

    def latest_draft(self) -> str:
        return self.draft_versions[-1].text if self.draft_versions else ""

    def latest_progress(self) -> ProgressState | None:
        return self.progress_history[-1] if self.progress_history else None

    def student_prompts(self) -> list[tuple[int, str]]:
        """(prompt id, text) pairs; ids are 1-based positions in the chat log."""
        return [
            (i, turn.text)
            for i, turn in enumerate(self.chat_log, start=1)
            if turn.role is Role.STUDENT
        ]


def advance_phase(
    session: WritingSession,
    target: SessionPhase,
    at: datetime | None = None,
) -> WritingSession:
    """Move a session to the immediate next phase.

    Entering Performance requires goals and records the timestamp that later
    anchors the actual-time measurement.
    """
    expected = session.phase.successor
    if expected is None or target is not expected:
        raise PhaseOrderViolation(
            f"cannot advance from {session.phase.value} to {target.value}"
        )
    if target is SessionPhase.PERFORMANCE and session.goals is None:
        raise MissingGoals("set a goal profile before starting to write")
    changes: dict = {"phase": target}
    if target is SessionPhase.PERFORMANCE:
        changes["performance_started_at"] = at or utcnow()
    return replace(session, **changes)
