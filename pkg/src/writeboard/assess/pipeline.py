"""The four dashboard assessments plus explanation retrieval and follow-up.

Each assessment is one batched judge call (all sections or dimensions
together, for consistent cross-item reasoning), validated into core types.
Out-of-range judge scores become errors after the gateway's repair retry;
they are never clamped.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Mapping, Sequence

from writeboard.core.model import (
    AbstractSection,
    ChatTurn,
    Condition,
    DialogueDimension,
    DialogueQualityReport,
    Explanation,
    FollowUpExchange,
    GoalProfile,
    ProgressState,
    QualityDimension,
    ReflectionReport,
    Role,
    WritingSession,
    draft_digest,
    utcnow,
)
from writeboard.errors import (
    EmptyDraft,
    ExplainabilityDisabled,
    InvalidLevel,
    MetricNotEvaluated,
    NoPromptsYet,
    SchemaViolation,
    ScoreOutOfRange,
    SelectionNotInExplanation,
)
from writeboard.assess.metrics import MetricId, MetricKind
from writeboard.assess.templates_catalog import TemplateCatalog
from writeboard.gateway.client import Gateway, JudgeRequest
from writeboard.gateway.schemas import TaskKind
from writeboard.rubric.engine import (
    QUALITATIVE_CRITERIA,
    Rubric,
    RubricCriterion,
    RubricScore,
    score_length,
    total_score,
    word_count,
)

DIALOGUE_WINDOW = 5


@dataclass(frozen=True)
class ProgressEvaluation:
    state: ProgressState
    explanations: dict[str, Explanation]
    judge_reasoning: tuple[str, ...]
    template_version: str
    attempts: int


@dataclass(frozen=True)
class ReflectionEvaluation:
    report: ReflectionReport
    explanations: dict[str, Explanation]
    judge_reasoning: tuple[str, ...]
    template_version: str
    attempts: int


@dataclass(frozen=True)
class DialogueEvaluation:
    report: DialogueQualityReport
    explanations: dict[str, Explanation]
    judge_reasoning: tuple[str, ...]
    template_version: str
    attempts: int


@dataclass(frozen=True)
class RubricEvaluation:
    score: RubricScore
    explanations: dict[str, Explanation]
    judge_reasoning: tuple[str, ...]
    template_version: str
    attempts: int


def get_explanation(session: WritingSession, metric: MetricId) -> Explanation:
    """The stored explanation for the most recent evaluation of a metric."""
    if session.condition is not Condition.EXPLAINABLE:
        raise ExplainabilityDisabled("this session shows charts only")
    explanation = session.explanations.get(metric.dotted)
    if explanation is None:
        raise MetricNotEvaluated(f"{metric.dotted} has not been evaluated yet")
    return explanation


def metric_score(session: WritingSession, metric: MetricId) -> int | None:
    """Current numeric value behind a metric, if it has been evaluated."""
    if metric.kind is MetricKind.PROGRESS_SECTION:
        progress = session.latest_progress()
        return None if progress is None else progress.per_section[AbstractSection(metric.key)]
    if metric.kind is MetricKind.REFLECTION_DIMENSION:
        if session.reflection is None:
            return None
        return session.reflection.scores[QualityDimension(metric.key)]
    if metric.kind is MetricKind.DIALOGUE_DIMENSION:
        if session.dialogue is None:
            return None
        return session.dialogue.scores[DialogueDimension(metric.key)]
    if session.rubric_levels is None:
        return None
    return session.rubric_levels.get(metric.key)


class AssessmentPipeline:
    def __init__(
        self,
        gateway: Gateway,
        rubric: Rubric | None = None,
        templates: TemplateCatalog | None = None,
    ):
        self.gateway = gateway
        self.rubric = rubric or Rubric.load()
        self.templates = templates or TemplateCatalog()

    # -- helpers -----------------------------------------------------------

    def _invoke(self, request: JudgeRequest):
        try:
            return self.gateway.invoke(request)
        except SchemaViolation as violation:
            if any(reason.startswith("range:") for reason in violation.reasons):
                if request.task_kind is TaskKind.RUBRIC_JUDGE:
                    raise InvalidLevel(str(violation)) from violation
                raise ScoreOutOfRange(str(violation)) from violation
            raise

    @staticmethod
    def _explanations(kind: MetricKind, payload: Mapping[str, dict]) -> dict[str, Explanation]:
        out: dict[str, Explanation] = {}
        for key, item in payload.items():
            metric = MetricId(kind, key)
            out[metric.dotted] = Explanation(
                metric_id=metric.dotted,
                reasoning_chain=tuple(item["reasoning"]),
                suggestions=tuple(item["suggestions"]),
            )
        return out

    # -- assessments -------------------------------------------------------

    def evaluate_progress(self, draft: str, at: datetime | None = None) -> ProgressEvaluation:
        """Per-section completeness of the draft; a blank draft scores zero without a judge call."""
        at = at or utcnow()
        template = self.templates.get("progress_eval")
        if not draft.strip():
            state = ProgressState(
                per_section={s: 0 for s in AbstractSection},
                evaluated_at=at,
                draft_hash=draft_digest(draft),
            )
            explanations = {
                MetricId(MetricKind.PROGRESS_SECTION, s.value).dotted: Explanation(
                    metric_id=MetricId(MetricKind.PROGRESS_SECTION, s.value).dotted,
                    reasoning_chain=(
                        f"The draft is empty, so the {s.label} section cannot be assessed.",
                    ),
                    suggestions=(f"Start drafting the {s.label} section.",),
                )
                for s in AbstractSection
            }
            return ProgressEvaluation(state, explanations, (), template.version, attempts=0)

        request = JudgeRequest(
            task_kind=TaskKind.PROGRESS_EVAL,
            system_prompt=template.system,
            user_payload=template.render_user(draft=draft),
            schema_id="progress.v1",
        )
        response = self._invoke(request)
        state = ProgressState(
            per_section={s: response.structured[s.value]["completeness"] for s in AbstractSection},
            evaluated_at=at,
            draft_hash=draft_digest(draft),
        )
        return ProgressEvaluation(
            state=state,
            explanations=self._explanations(MetricKind.PROGRESS_SECTION, response.structured),
            judge_reasoning=response.reasoning_chain,
            template_version=template.version,
            attempts=response.attempts,
        )

    def evaluate_reflection(
        self, final_draft: str, goals: GoalProfile, actual_time_min: int
    ) -> ReflectionEvaluation:
        """Four-dimension final scores with the goal-delta overlay."""
        template = self.templates.get("reflection_eval")
        goal_lines = "\n".join(f"- {d.label}: {v}" for d, v in goals.targets().items())
        request = JudgeRequest(
            task_kind=TaskKind.REFLECTION_EVAL,
            system_prompt=template.system,
            user_payload=template.render_user(
                draft=final_draft,
                criteria=self.rubric.qualitative_fragments(),
                goals=goal_lines,
                expected_time_min=str(goals.expected_time_min),
                actual_time_min=str(actual_time_min),
            ),
            schema_id="reflection.v1",
        )
        response = self._invoke(request)
        scores = {d: response.structured[d.value]["score"] for d in QualityDimension}
        report = ReflectionReport.build(goals, scores, actual_time_min)
        return ReflectionEvaluation(
            report=report,
            explanations=self._explanations(MetricKind.REFLECTION_DIMENSION, response.structured),
            judge_reasoning=response.reasoning_chain,
            template_version=template.version,
            attempts=response.attempts,
        )

    def evaluate_dialogue(self, chat_log: Sequence[ChatTurn]) -> DialogueEvaluation:
        """Quality of the most recent student prompts (up to five, oldest first)."""
        prompts = [
            (i, turn.text)
            for i, turn in enumerate(chat_log, start=1)
            if turn.role is Role.STUDENT
        ]
        if not prompts:
            raise NoPromptsYet("no student prompts to evaluate")
        window = prompts[-DIALOGUE_WINDOW:]
        window_ids = tuple(i for i, _ in window)

        # context: the conversation from the first windowed prompt onward
        first_index = window_ids[0]
        context_lines = [
            f"{turn.role.value}: {turn.text}"
            for turn in chat_log[first_index - 1 :]
        ]
        window_lines = [f"{ordinal}. {text}" for ordinal, (_, text) in enumerate(window, start=1)]

        template = self.templates.get("dialogue_eval")
        request = JudgeRequest(
            task_kind=TaskKind.DIALOGUE_EVAL,
            system_prompt=template.system,
            user_payload=template.render_user(
                window="\n".join(window_lines),
                context="\n".join(context_lines),
            ),
            schema_id="dialogue.v1",
        )
        response = self._invoke(request)
        report = DialogueQualityReport(
            scores={d: response.structured[d.value]["score"] for d in DialogueDimension},
            window=window_ids,
        )
        return DialogueEvaluation(
            report=report,
            explanations=self._explanations(MetricKind.DIALOGUE_DIMENSION, response.structured),
            judge_reasoning=response.reasoning_chain,
            template_version=template.version,
            attempts=response.attempts,
        )

    def judge_rubric(self, final_draft: str) -> RubricEvaluation:
        """Seven-criterion rubric score; Length is computed locally, never judged."""
        if not final_draft.strip():
            raise EmptyDraft("cannot judge an empty draft")
        template = self.templates.get("rubric_judge")
        request = JudgeRequest(
            task_kind=TaskKind.RUBRIC_JUDGE,
            system_prompt=template.system,
            user_payload=template.render_user(
                draft=final_draft,
                criteria=self.rubric.qualitative_fragments(),
            ),
            schema_id="rubric.v1",
        )
        response = self._invoke(request)
        levels: dict[RubricCriterion, int] = {
            c: response.structured[c.value]["level"] for c in QUALITATIVE_CRITERIA
        }
        length_level = score_length(final_draft)
        levels[RubricCriterion.LENGTH] = length_level
        score = total_score(levels)

        explanations = self._explanations(MetricKind.RUBRIC_CRITERION, response.structured)
        words = word_count(final_draft)
        length_metric = MetricId(MetricKind.RUBRIC_CRITERION, RubricCriterion.LENGTH.value)
        length_rule = self.rubric.descriptors[RubricCriterion.LENGTH][3]
        explanations[length_metric.dotted] = Explanation(
            metric_id=length_metric.dotted,
            reasoning_chain=(
                f"The draft contains {words} words.",
                f"The full level requires {length_rule}; "
                + ("this draft is within that range." if length_level == 3
                   else "this draft falls outside that range."),
            ),
            suggestions=(
                "Keep the abstract between 250 and 300 words."
                if length_level == 3
                else f"Revise toward 250-300 words (currently {words}).",
            ),
        )
        return RubricEvaluation(
            score=score,
            explanations=explanations,
            judge_reasoning=response.reasoning_chain,
            template_version=template.version,
            attempts=response.attempts,
        )

    # -- explanation follow-up ----------------------------------------------

    def follow_up(
        self,
        session: WritingSession,
        metric: MetricId,
        selected_text: str,
        question: str,
        at: datetime | None = None,
    ) -> FollowUpExchange:
        """Ask the judge about a selected span of a stored explanation."""
        explanation = get_explanation(session, metric)
        if not question.strip():
            raise ValueError("question must be nonempty")
        if not explanation.contains(selected_text):
            raise SelectionNotInExplanation(
                f"selection is not a verbatim substring of the {metric.dotted} explanation"
            )
        score = metric_score(session, metric)
        template = self.templates.get("follow_up")
        request = JudgeRequest(
            task_kind=TaskKind.FOLLOW_UP,
            system_prompt=template.system,
            user_payload=template.render_user(
                metric=metric.dotted,
                score="unscored" if score is None else str(score),
                reasoning="\n".join(explanation.reasoning_chain),
                suggestions="\n".join(explanation.suggestions),
                selection=selected_text,
                question=question,
            ),
            schema_id="followup.v1",
        )
        response = self._invoke(request)
        return FollowUpExchange(
            selected_text=selected_text,
            question=question,
            answer=response.structured["answer"],
            asked_at=at or utcnow(),
        )

    def chat_reply(self, history: Sequence[ChatTurn], new_message: str) -> str:
        """One co-writing turn through the assistant."""
        template = self.templates.get("chat_assist")
        return self.gateway.chat(
            history=[(turn.role.value, turn.text) for turn in history],
            new_message=new_message,
            system_prompt=template.system,
        )
