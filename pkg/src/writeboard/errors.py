"""Domain errors. Each class name doubles as the machine-readable error code."""

from __future__ import annotations


class WriteboardError(Exception):
    """Base for all domain errors raised by this package."""

    code: str = "WriteboardError"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__


# --- session lifecycle ---------------------------------------------------

class PhaseOrderViolation(WriteboardError):
    """Phase advance that skips ahead or moves backwards."""


class MissingGoals(WriteboardError):
    """Performance phase entered (or reflection scored) without a goal profile."""


class GoalsLocked(WriteboardError):
    """Goal profile change attempted after the planning phase ended."""


class WrongPhase(WriteboardError):
    """Operation invoked in a phase where it is not permitted."""


class DimensionMismatch(WriteboardError):
    """Score map does not cover exactly the four quality dimensions."""


# --- rubric --------------------------------------------------------------

class InvalidLevel(WriteboardError):
    """Criterion level outside the defined 0..3 scale."""


class MissingCriterion(WriteboardError):
    """Score map does not cover all seven rubric criteria."""


class LengthLevelNotAllowed(WriteboardError):
    """Length criterion only defines levels 0 and 3."""


# --- judge gateway -------------------------------------------------------

class ProviderUnreachable(WriteboardError):
    """Model provider could not be reached within the retry budget."""


class Unauthorized(WriteboardError):
    """Model provider rejected the configured credential."""


class SchemaViolation(WriteboardError):
    """Judge output failed structured validation on every attempt.

    Carries the verbatim provider output of each failed attempt so callers
    can log or surface what the judge actually said.
    """

    def __init__(self, message: str, raw_outputs=(), reasons=()):
        super().__init__(message)
        self.raw_outputs: list[str] = list(raw_outputs)
        self.reasons: list[str] = list(reasons)


# --- assessment pipeline -------------------------------------------------

class ScoreOutOfRange(WriteboardError):
    """Judge persisted in returning scores outside the declared range."""


class NoPromptsYet(WriteboardError):
    """Dialogue quality requested before the student sent any prompt."""


class ExplainabilityDisabled(WriteboardError):
    """Explanation or follow-up requested on a visual-only session."""


class MetricNotEvaluated(WriteboardError):
    """Explanation requested for a metric that has never been scored."""


class SelectionNotInExplanation(WriteboardError):
    """Follow-up selection is not a verbatim substring of the explanation."""


class EmptyDraft(WriteboardError):
    """Rubric judgement requested on an empty draft."""


# --- persistence ---------------------------------------------------------

class UnknownSession(WriteboardError):
    """No event log exists for the given session id."""


class CorruptLog(WriteboardError):
    """Event log has a sequence gap or violates a session invariant."""


class StorageFailure(WriteboardError):
    """Underlying filesystem operation failed."""


# --- analytics -----------------------------------------------------------

class LengthMismatch(WriteboardError):
    """Answer sheet and key differ in length."""


class DegenerateVariance(WriteboardError):
    """Test statistic undefined because the relevant variance is zero."""


class InsufficientData(WriteboardError):
    """Too few observations (or groups) for the requested analysis."""
