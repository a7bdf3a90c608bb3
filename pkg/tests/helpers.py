"""Shared builders: scripted judge payloads and random legal event sequences."""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone

from writeboard.core.model import (
    AbstractSection,
    Condition,
    DialogueDimension,
    QualityDimension,
    draft_digest,
)
from writeboard.rubric.engine import QUALITATIVE_CRITERIA, RubricCriterion
from writeboard.service.events import EventKind, SessionEvent

DEFAULT_REASONING = "I examined the draft against the requirement.\nI weighed strengths against the gaps I found."

SECTION_KEYS = [s.value for s in AbstractSection]
QUALITY_KEYS = [d.value for d in QualityDimension]
DIALOGUE_KEYS = [d.value for d in DialogueDimension]
QUALITATIVE_KEYS = [c.value for c in QUALITATIVE_CRITERIA]


def fenced(payload: dict) -> str:
    return "```json\n" + json.dumps(payload) + "\n```"


def scored_items(keys: list[str], values: dict[str, int], score_field: str) -> dict:
    return {
        key: {
            score_field: values[key],
            "reasoning": [f"The {key} aspect was checked step by step.", "Its coverage was compared to what a strong abstract needs."],
            "suggestions": [f"Strengthen the {key} aspect with more specific detail."],
        }
        for key in keys
    }


def progress_content(percents: dict[str, int]) -> str:
    return fenced(scored_items(SECTION_KEYS, percents, "completeness"))


def reflection_content(scores: dict[str, int]) -> str:
    return fenced(scored_items(QUALITY_KEYS, scores, "score"))


def dialogue_content(scores: dict[str, int]) -> str:
    return fenced(scored_items(DIALOGUE_KEYS, scores, "score"))


def rubric_content(levels: dict[str, int]) -> str:
    return fenced(scored_items(QUALITATIVE_KEYS, levels, "level"))


def followup_content(answer: str) -> str:
    return fenced({"answer": answer})


def entry(content: str, *, kind: str | None = None, contains: str | None = None,
          reasoning: str | None = DEFAULT_REASONING, repeat: bool = False) -> dict:
    match: dict = {}
    if kind is not None:
        match["task_kind"] = kind
    if contains is not None:
        match["contains"] = contains
    return {"match": match, "repeat": repeat, "response": {"content": content, "reasoning": reasoning}}


STANDARD_PROGRESS = {"Background": 90, "Question": 80, "Method": 70, "Results": 60, "Conclusion": 50}
STANDARD_REFLECTION = {
    "logical_coherence": 70,
    "expression_accuracy": 65,
    "structure_completeness": 80,
    "content_understanding": 75,
}
STANDARD_DIALOGUE = {
    "TaskFocus": 100,
    "AcademicStandards": 90,
    "IndependentThinking": 80,
    "QuestioningStrategies": 70,
}
STANDARD_RUBRIC = {
    "IntroductoryStatement": 3,
    "Purpose": 2,
    "MethodologicalApproach": 2,
    "Findings": 2,
    "ContributionToDiscipline": 2,
    "ProfessionalWriting": 3,
}


def standard_script() -> list[dict]:
    """Repeatable entries for every judge task; the standard offline session."""
    return [
        entry(progress_content(STANDARD_PROGRESS), kind="ProgressEval", repeat=True),
        entry(reflection_content(STANDARD_REFLECTION), kind="ReflectionEval", repeat=True),
        entry(dialogue_content(STANDARD_DIALOGUE), kind="DialogueEval", repeat=True),
        entry(rubric_content(STANDARD_RUBRIC), kind="RubricJudge", repeat=True),
        entry(followup_content("Because the method section never names the study sample."),
              kind="FollowUp", repeat=True),
        entry("Consider stating the research question explicitly before the method.",
              kind="ChatAssist", repeat=True, reasoning=None),
    ]


# --- random legal event sequences -------------------------------------------

def _explanation_entries(prefix: str, keys: list[str]) -> list[dict]:
    return [
        {
            "metric": f"{prefix}.{key}",
            "reasoning": [f"Reasoning step about {key}.", "A second step in the chain."],
            "suggestions": [f"A concrete way to improve {key}."],
        }
        for key in keys
    ]


def random_event_sequence(rng: random.Random) -> list[SessionEvent]:
    """One random session history that every invariant accepts."""
    condition = rng.choice([Condition.EXPLAINABLE, Condition.VISUAL_ONLY])
    explainable = condition is Condition.EXPLAINABLE
    t0 = datetime(2026, 1, 5, 9, 0, 0, tzinfo=timezone.utc)
    events: list[SessionEvent] = []

    def emit(kind: EventKind, payload: dict) -> None:
        seq = len(events) + 1
        events.append(SessionEvent(seq, t0 + timedelta(seconds=13 * seq), kind, payload))

    emit(EventKind.CREATED, {"condition": condition.value})

    phase = "Forethought"
    goals: dict | None = None
    draft = ""
    prompt_ids: list[int] = []
    chat_len = 0
    explanations: dict[str, list[dict]] = {}  # metric -> entries (for follow-up selection)

    def add_chat() -> None:
        nonlocal chat_len
        role = rng.choice(["student", "assistant"])
        chat_len += 1
        if role == "student":
            prompt_ids.append(chat_len)
        emit(EventKind.CHAT_TURN, {"role": role, "text": f"turn {chat_len} text"})

    def record_explanations(entries: list[dict]) -> None:
        for item in entries:
            explanations[item["metric"]] = entries

    for _ in range(rng.randint(3, 18)):
        ops: list[str] = []
        if phase != "Closed":
            ops.append("chat")
        if phase == "Forethought":
            ops.append("goals")
            if goals is not None:
                ops.append("advance")
        if phase == "Performance":
            ops += ["draft", "progress", "advance"]
            if draft.strip():
                ops.append("rubric")
        if phase == "Reflection":
            ops += ["reflect", "advance"]
            if draft.strip():
                ops.append("rubric")
        if phase in ("Performance", "Reflection") and prompt_ids:
            ops.append("dialogue")
        if explainable and explanations and phase != "Closed":
            ops += ["view", "followup"]
        if not ops:
            break
        op = rng.choice(ops)

        if op == "chat":
            add_chat()
        elif op == "goals":
            goals = {
                "expected_time_min": rng.randint(10, 90),
                "targets": {k: rng.randint(0, 100) for k in QUALITY_KEYS},
            }
            emit(EventKind.GOALS_SET, goals)
        elif op == "advance":
            phase = {"Forethought": "Performance", "Performance": "Reflection", "Reflection": "Closed"}[phase]
            emit(EventKind.PHASE_ADVANCED, {"phase": phase})
        elif op == "draft":
            draft = f"draft text revision {len(events)} with some words"
            emit(EventKind.DRAFT_SAVED, {"text": draft})
        elif op == "progress":
            entries = _explanation_entries("progress", SECTION_KEYS) if explainable else []
            record_explanations(entries)
            emit(EventKind.PROGRESS_EVALUATED, {
                "percent": {k: rng.randint(0, 100) for k in SECTION_KEYS},
                "draft_hash": draft_digest(draft),
                "template_version": "1",
                "judge_reasoning": ["step one", "step two"],
                "explanations": entries,
            })
        elif op == "reflect":
            scores = {k: rng.randint(0, 100) for k in QUALITY_KEYS}
            overlay = {k: scores[k] - goals["targets"][k] for k in QUALITY_KEYS}
            entries = _explanation_entries("reflection", QUALITY_KEYS) if explainable else []
            record_explanations(entries)
            emit(EventKind.REFLECTION_EVALUATED, {
                "scores": scores,
                "actual_time_min": rng.randint(0, 180),
                "overlay": overlay,
                "template_version": "1",
                "judge_reasoning": ["step"],
                "explanations": entries,
            })
        elif op == "dialogue":
            entries = _explanation_entries("dialogue", DIALOGUE_KEYS) if explainable else []
            record_explanations(entries)
            emit(EventKind.DIALOGUE_EVALUATED, {
                "scores": {k: rng.randint(0, 100) for k in DIALOGUE_KEYS},
                "window": prompt_ids[-5:],
                "template_version": "1",
                "judge_reasoning": ["step"],
                "explanations": entries,
            })
        elif op == "rubric":
            levels = {k: rng.randint(0, 3) for k in QUALITATIVE_KEYS}
            levels[RubricCriterion.LENGTH.value] = rng.choice([0, 3])
            entries = _explanation_entries("rubric", list(levels)) if explainable else []
            record_explanations(entries)
            emit(EventKind.RUBRIC_JUDGED, {
                "levels": levels,
                "total": sum(levels.values()),
                "template_version": "1",
                "judge_reasoning": ["step"],
                "explanations": entries,
            })
        elif op == "view":
            metric = rng.choice(sorted(explanations))
            emit(EventKind.EXPLANATION_VIEWED, {"metric": metric})
        elif op == "followup":
            metric = rng.choice(sorted(explanations))
            item = next(e for e in explanations[metric] if e["metric"] == metric)
            source = rng.choice(item["reasoning"] + item["suggestions"])
            lo = rng.randint(0, max(0, len(source) - 5))
            hi = rng.randint(lo + 1, len(source))
            emit(EventKind.FOLLOW_UP_ASKED, {
                "metric": metric,
                "selected_text": source[lo:hi],
                "question": "why does this hold?",
                "answer": "because the evidence in the draft supports it",
            })
    return events
