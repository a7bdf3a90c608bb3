from datetime import datetime, timezone

import pytest
from hypothesis import given
from hypothesis import strategies as st

from writeboard.core.model import (
    AbstractSection,
    Condition,
    DialogueDimension,
    DialogueQualityReport,
    Explanation,
    FollowUpExchange,
    GoalProfile,
    PHASE_ORDER,
    ProgressState,
    QualityDimension,
    ReflectionReport,
    SessionPhase,
    WritingSession,
    advance_phase,
    compute_overlay,
    utcnow,
)
from writeboard.errors import (
    DimensionMismatch,
    MissingGoals,
    PhaseOrderViolation,
    SelectionNotInExplanation,
)

GOALS = GoalProfile(
    expected_time_min=30,
    logical_coherence=80,
    expression_accuracy=70,
    structure_completeness=60,
    content_understanding=90,
)


def fresh_session(condition=Condition.EXPLAINABLE, goals=None) -> WritingSession:
    return WritingSession(
        session_id="s1", condition=condition, created_at=utcnow(), goals=goals
    )


class TestPhases:
    def test_order_is_fixed(self):
        assert [p.value for p in PHASE_ORDER] == [
            "Forethought", "Performance", "Reflection", "Closed",
        ]
        assert SessionPhase.FORETHOUGHT.successor is SessionPhase.PERFORMANCE
        assert SessionPhase.CLOSED.successor is None

    def test_advance_to_successor_with_goals(self):
        session = fresh_session(goals=GOALS)
        advanced = advance_phase(session, SessionPhase.PERFORMANCE)
        assert advanced.phase is SessionPhase.PERFORMANCE
        assert advanced.performance_started_at is not None

    def test_skipping_a_phase_is_rejected(self):
        with pytest.raises(PhaseOrderViolation):
            advance_phase(fresh_session(goals=GOALS), SessionPhase.REFLECTION)

    def test_reversal_is_rejected(self):
        session = advance_phase(fresh_session(goals=GOALS), SessionPhase.PERFORMANCE)
        with pytest.raises(PhaseOrderViolation):
            advance_phase(session, SessionPhase.FORETHOUGHT)

    def test_performance_requires_goals(self):
        with pytest.raises(MissingGoals):
            advance_phase(fresh_session(goals=None), SessionPhase.PERFORMANCE)

    def test_performance_entry_records_timestamp(self):
        at = datetime(2026, 2, 1, 10, 0, tzinfo=timezone.utc)
        advanced = advance_phase(fresh_session(goals=GOALS), SessionPhase.PERFORMANCE, at=at)
        assert advanced.performance_started_at == at

    def test_full_walk_is_the_only_path(self):
        session = fresh_session(goals=GOALS)
        seen = [session.phase]
        for target in PHASE_ORDER[1:]:
            session = advance_phase(session, target)
            seen.append(session.phase)
        assert tuple(seen) == PHASE_ORDER


class TestOverlay:
    def test_identical_goals_and_scores_give_zero(self):
        flat = {d: 80 for d in QualityDimension}
        assert all(v == 0 for v in compute_overlay(flat, flat).values())

    def test_single_dimension_arithmetic(self):
        scores = dict(GOALS.targets())
        scores[QualityDimension.LOGICAL_COHERENCE] = 70
        overlay = compute_overlay(GOALS, scores)
        assert overlay[QualityDimension.LOGICAL_COHERENCE] == -10

    def test_elementwise_subtraction(self):
        scores = {
            QualityDimension.LOGICAL_COHERENCE: 85,
            QualityDimension.EXPRESSION_ACCURACY: 65,
            QualityDimension.STRUCTURE_COMPLETENESS: 60,
            QualityDimension.CONTENT_UNDERSTANDING: 100,
        }
        # independent oracle: plain per-key subtraction
        expected = {d: scores[d] - GOALS.targets()[d] for d in QualityDimension}
        overlay = compute_overlay(GOALS, scores)
        assert overlay == expected
        assert list(overlay.values()) == [5, -5, 0, 10]

    def test_missing_dimension_rejected(self):
        partial = {d: 50 for d in list(QualityDimension)[:3]}
        with pytest.raises(DimensionMismatch):
            compute_overlay(GOALS, partial)

    def test_extra_dimension_rejected(self):
        scores = {d.value: 50 for d in QualityDimension}
        scores["flair"] = 50
        with pytest.raises(DimensionMismatch):
            compute_overlay(GOALS, scores)

    @given(
        g=st.fixed_dictionaries({d.value: st.integers(0, 100) for d in QualityDimension}),
        s=st.fixed_dictionaries({d.value: st.integers(0, 100) for d in QualityDimension}),
    )
    def test_antisymmetry(self, g, s):
        forward = compute_overlay(g, s)
        backward = compute_overlay(s, g)
        assert all(forward[d] == -backward[d] for d in QualityDimension)


class TestGoalProfile:
    def test_rejects_zero_expected_time(self):
        with pytest.raises(ValueError):
            GoalProfile(0, 50, 50, 50, 50)

    @pytest.mark.parametrize("bad", [-1, 101])
    def test_rejects_out_of_range_target(self, bad):
        with pytest.raises(ValueError):
            GoalProfile(30, bad, 50, 50, 50)


class TestProgressState:
    def test_requires_every_section(self):
        partial = {s: 10 for s in list(AbstractSection)[:4]}
        with pytest.raises(ValueError):
            ProgressState(per_section=partial, evaluated_at=utcnow(), draft_hash="x")

    def test_rejects_out_of_range_percent(self):
        full = {s: 10 for s in AbstractSection}
        full[AbstractSection.METHOD] = 101
        with pytest.raises(ValueError):
            ProgressState(per_section=full, evaluated_at=utcnow(), draft_hash="x")

    def test_accepts_string_keys(self):
        state = ProgressState(
            per_section={s.value: 10 for s in AbstractSection},
            evaluated_at=utcnow(),
            draft_hash="x",
        )
        assert state.per_section[AbstractSection.BACKGROUND] == 10


class TestReflectionReport:
    def test_build_derives_overlay_from_goals(self):
        scores = {d.value: 75 for d in QualityDimension}
        report = ReflectionReport.build(GOALS, scores, actual_time_min=45)
        assert report.overlay == compute_overlay(GOALS, scores)

    def test_negative_time_rejected(self):
        scores = {d.value: 75 for d in QualityDimension}
        with pytest.raises(ValueError):
            ReflectionReport.build(GOALS, scores, actual_time_min=-1)


class TestDialogueReport:
    def test_window_size_bounds(self):
        scores = {d: 50 for d in DialogueDimension}
        with pytest.raises(ValueError):
            DialogueQualityReport(scores=scores, window=())
        with pytest.raises(ValueError):
            DialogueQualityReport(scores=scores, window=(1, 2, 3, 4, 5, 6))


class TestExplanation:
    def make(self) -> Explanation:
        return Explanation(
            metric_id="progress.Method",
            reasoning_chain=("The method section names no sample.", "Without a sample, the design is unverifiable."),
            suggestions=("Name the study sample and size.",),
        )

    def test_requires_nonempty_chain_and_suggestions(self):
        with pytest.raises(ValueError):
            Explanation("m", (), ("s",))
        with pytest.raises(ValueError):
            Explanation("m", ("r",), ())

    def test_follow_up_requires_verbatim_selection(self):
        explanation = self.make()
        exchange = FollowUpExchange(
            selected_text="not actually in the text",
            question="why?",
            answer="because",
            asked_at=utcnow(),
        )
        with pytest.raises(SelectionNotInExplanation):
            explanation.with_follow_up(exchange)

    def test_follow_ups_append_in_order(self):
        explanation = self.make()
        for i, span in enumerate(["names no sample", "study sample"]):
            explanation = explanation.with_follow_up(
                FollowUpExchange(span, f"q{i}", f"a{i}", utcnow())
            )
        assert [f.question for f in explanation.follow_ups] == ["q0", "q1"]

    def test_selection_can_cross_step_boundary(self):
        explanation = self.make()
        span = "no sample.\nWithout a sample"
        assert explanation.contains(span)


class TestFollowUpExchange:
    def test_blank_question_rejected(self):
        with pytest.raises(ValueError):
            FollowUpExchange("sel", "  ", "a", utcnow())
