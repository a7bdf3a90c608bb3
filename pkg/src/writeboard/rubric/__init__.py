from writeboard.rubric.engine import (
    LENGTH_MAX_WORDS,
    LENGTH_MIN_WORDS,
    QUALITATIVE_CRITERIA,
    Rubric,
    RubricCriterion,
    RubricScore,
    score_length,
    total_score,
    word_count,
)

__all__ = [
    "LENGTH_MAX_WORDS",
    "LENGTH_MIN_WORDS",
    "QUALITATIVE_CRITERIA",
    "Rubric",
    "RubricCriterion",
    "RubricScore",
    "score_length",
    "total_score",
    "word_count",
]
