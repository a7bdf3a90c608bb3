"""Deterministic abstract scoring rubric: criteria, validation, length rule, totals.

The six qualitative criteria are judged elsewhere (the judge prompt embeds the
descriptor texts produced here); this module owns everything computable
locally: word counting, the length rule, level validation and the total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Union

from writeboard.errors import InvalidLevel, LengthLevelNotAllowed, MissingCriterion

LENGTH_MIN_WORDS = 250
LENGTH_MAX_WORDS = 300

_DEFAULT_RUBRIC_PATH = Path(__file__).parent / "data" / "rubric.json"


class RubricCriterion(Enum):
    INTRODUCTORY_STATEMENT = "IntroductoryStatement"
    PURPOSE = "Purpose"
    METHODOLOGICAL_APPROACH = "MethodologicalApproach"
    FINDINGS = "Findings"
    CONTRIBUTION_TO_DISCIPLINE = "ContributionToDiscipline"
    PROFESSIONAL_WRITING = "ProfessionalWriting"
    LENGTH = "Length"


# Criteria scored by the judge; Length is always computed locally.
QUALITATIVE_CRITERIA = tuple(c for c in RubricCriterion if c is not RubricCriterion.LENGTH)

CriterionKey = Union[RubricCriterion, str]


def word_count(text: str) -> int:
    """Count whitespace-delimited tokens containing at least one alphanumeric character."""
    return sum(1 for token in text.split() if any(ch.isalnum() for ch in token))


def score_length(text: str) -> int:
    """Length level: 3 inside the 250-300 word band (inclusive), otherwise 0."""
    return 3 if LENGTH_MIN_WORDS <= word_count(text) <= LENGTH_MAX_WORDS else 0


@dataclass(frozen=True)
class RubricScore:
    """Validated per-criterion levels plus their sum."""

    per_criterion: Mapping[RubricCriterion, int]
    total: int


def _normalize_levels(per_criterion: Mapping[CriterionKey, int]) -> dict[RubricCriterion, int]:
    levels: dict[RubricCriterion, int] = {}
    for key, value in per_criterion.items():
        try:
            criterion = key if isinstance(key, RubricCriterion) else RubricCriterion(key)
        except ValueError:
            raise MissingCriterion(f"unknown criterion {key!r}")
        levels[criterion] = value
    missing = [c.value for c in RubricCriterion if c not in levels]
    if missing:
        raise MissingCriterion(f"missing criteria: {', '.join(missing)}")
    return levels


def total_score(per_criterion: Mapping[CriterionKey, int]) -> RubricScore:
    """Validate all seven levels and sum them.

    Levels must be integers in 0..3; Length admits only 0 or 3.
    """
    levels = _normalize_levels(per_criterion)
    for criterion, level in levels.items():
        if not isinstance(level, int) or isinstance(level, bool) or not 0 <= level <= 3:
            raise InvalidLevel(f"{criterion.value} level {level!r} outside {{0, 1, 2, 3}}")
    length_level = levels[RubricCriterion.LENGTH]
    if length_level in (1, 2):
        raise LengthLevelNotAllowed(f"Length level must be 0 or 3, got {length_level}")
    ordered = {c: levels[c] for c in RubricCriterion}
    return RubricScore(per_criterion=ordered, total=sum(ordered.values()))


@dataclass(frozen=True)
class Rubric:
    """The seven-criterion rubric with its verbatim level descriptors."""

    descriptors: Mapping[RubricCriterion, Mapping[int, str]]
    titles: Mapping[RubricCriterion, str]

    @classmethod
    def load(cls, path: Path | str | None = None) -> "Rubric":
        raw = json.loads(Path(path or _DEFAULT_RUBRIC_PATH).read_text(encoding="utf-8"))
        descriptors: dict[RubricCriterion, dict[int, str]] = {}
        titles: dict[RubricCriterion, str] = {}
        for entry in raw["criteria"]:
            criterion = RubricCriterion(entry["name"])
            descriptors[criterion] = {int(level): text for level, text in entry["levels"].items()}
            titles[criterion] = entry["title"]
        missing = [c.value for c in RubricCriterion if c not in descriptors]
        if missing:
            raise MissingCriterion(f"rubric file missing criteria: {', '.join(missing)}")
        return cls(descriptors=descriptors, titles=titles)

    def to_json(self) -> str:
        """Serialize back to the data-file layout; descriptor texts survive byte-identically."""
        return json.dumps(
            {
                "criteria": [
                    {
                        "name": c.value,
                        "title": self.titles[c],
                        "levels": {str(k): v for k, v in sorted(self.descriptors[c].items())},
                    }
                    for c in RubricCriterion
                ]
            },
            ensure_ascii=False,
            indent=2,
        )

    def criterion_prompt_fragment(self, criterion: RubricCriterion) -> str:
        """Deterministic judge-prompt fragment listing the criterion's level descriptors."""
        lines = [f"{self.titles[criterion]}:"]
        for level in sorted(self.descriptors[criterion]):
            lines.append(f"  {level}: {self.descriptors[criterion][level]}")
        return "\n".join(lines)

    def qualitative_fragments(self) -> str:
        """All judge-scored criteria, formatted for one prompt."""
        return "\n\n".join(self.criterion_prompt_fragment(c) for c in QUALITATIVE_CRITERIA)
