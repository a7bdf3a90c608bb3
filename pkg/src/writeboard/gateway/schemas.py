"""Structured-output shapes the judge must produce, with validators.

Each schema id names one payload shape; task kinds map to the schema ids
they may request. Validation failures carry a code ("parse", "shape",
"range") so callers can tell a malformed reply from an out-of-range score.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Callable

from writeboard.core.model import AbstractSection, DialogueDimension, QualityDimension
from writeboard.rubric.engine import QUALITATIVE_CRITERIA


class TaskKind(Enum):
    PROGRESS_EVAL = "ProgressEval"
    REFLECTION_EVAL = "ReflectionEval"
    DIALOGUE_EVAL = "DialogueEval"
    RUBRIC_JUDGE = "RubricJudge"
    FOLLOW_UP = "FollowUp"
    CHAT_ASSIST = "ChatAssist"


class SchemaCheckFailure(Exception):
    """One attempt's output failed validation; not a domain error by itself."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code  # "parse" | "shape" | "range"
        self.message = message


def _require_text_list(item: Any, key: str, where: str) -> None:
    value = item.get(key)
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(s, str) and s.strip() for s in value)
    ):
        raise SchemaCheckFailure("shape", f"{where}.{key} must be a nonempty list of text")


def _require_int_in(item: Any, key: str, lo: int, hi: int, where: str) -> int:
    value = item.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaCheckFailure("shape", f"{where}.{key} must be an integer")
    if not lo <= value <= hi:
        raise SchemaCheckFailure("range", f"{where}.{key} = {value} outside [{lo}, {hi}]")
    return value


def _scored_items(payload: Any, keys: list[str], score_key: str, lo: int, hi: int) -> None:
    if not isinstance(payload, dict):
        raise SchemaCheckFailure("shape", "payload must be an object")
    unexpected = set(payload) - set(keys)
    if unexpected:
        raise SchemaCheckFailure("shape", f"unexpected keys: {sorted(unexpected)}")
    for key in keys:
        item = payload.get(key)
        if not isinstance(item, dict):
            raise SchemaCheckFailure("shape", f"missing or malformed entry for {key!r}")
        _require_int_in(item, score_key, lo, hi, key)
        _require_text_list(item, "reasoning", key)
        _require_text_list(item, "suggestions", key)


def _validate_progress(payload: Any) -> None:
    _scored_items(payload, [s.value for s in AbstractSection], "completeness", 0, 100)


def _validate_reflection(payload: Any) -> None:
    _scored_items(payload, [d.value for d in QualityDimension], "score", 0, 100)


def _validate_dialogue(payload: Any) -> None:
    _scored_items(payload, [d.value for d in DialogueDimension], "score", 0, 100)


def _validate_rubric(payload: Any) -> None:
    _scored_items(payload, [c.value for c in QUALITATIVE_CRITERIA], "level", 0, 3)


def _validate_follow_up(payload: Any) -> None:
    if not isinstance(payload, dict):
        raise SchemaCheckFailure("shape", "payload must be an object")
    answer = payload.get("answer")
    if not isinstance(answer, str) or not answer.strip():
        raise SchemaCheckFailure("shape", "answer must be nonempty text")


def _validate_text(payload: Any) -> None:
    if not isinstance(payload, str) or not payload.strip():
        raise SchemaCheckFailure("shape", "reply must be nonempty text")


Validator = Callable[[Any], None]

SCHEMAS: dict[str, Validator] = {
    "progress.v1": _validate_progress,
    "reflection.v1": _validate_reflection,
    "dialogue.v1": _validate_dialogue,
    "rubric.v1": _validate_rubric,
    "followup.v1": _validate_follow_up,
    "chat.v1": _validate_text,
}

# Structured (JSON-block) schemas per task kind; chat replies stay free text.
KIND_SCHEMAS: dict[TaskKind, frozenset[str]] = {
    TaskKind.PROGRESS_EVAL: frozenset({"progress.v1"}),
    TaskKind.REFLECTION_EVAL: frozenset({"reflection.v1"}),
    TaskKind.DIALOGUE_EVAL: frozenset({"dialogue.v1"}),
    TaskKind.RUBRIC_JUDGE: frozenset({"rubric.v1"}),
    TaskKind.FOLLOW_UP: frozenset({"followup.v1"}),
    TaskKind.CHAT_ASSIST: frozenset({"chat.v1"}),
}

# Schemas whose payload is a fenced JSON block (all but plain chat text).
JSON_SCHEMAS = frozenset(SCHEMAS) - {"chat.v1"}


def schema_registered(task_kind: TaskKind, schema_id: str) -> bool:
    return schema_id in KIND_SCHEMAS.get(task_kind, frozenset())


def validate(schema_id: str, payload: Any) -> None:
    try:
        validator = SCHEMAS[schema_id]
    except KeyError:
        raise SchemaCheckFailure("shape", f"unknown schema id {schema_id!r}")
    validator(payload)
