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
    PHASE_ORDER,
    ProgressState,
    QualityDimension,
    ReflectionReport,
    Role,
    SessionPhase,
    WritingSession,
    advance_phase,
    compute_overlay,
    draft_digest,
    utcnow,
)

__all__ = [
    "AbstractSection",
    "ChatTurn",
    "Condition",
    "DialogueDimension",
    "DialogueQualityReport",
    "DraftVersion",
    "Explanation",
    "FollowUpExchange",
    "GoalProfile",
    "PHASE_ORDER",
    "ProgressState",
    "QualityDimension",
    "ReflectionReport",
    "Role",
    "SessionPhase",
    "WritingSession",
    "advance_phase",
    "compute_overlay",
    "draft_digest",
    "utcnow",
]
