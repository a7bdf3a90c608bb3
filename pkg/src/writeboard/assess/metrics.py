"""Addressable identifiers for every scored metric on the dashboard."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from writeboard.core.model import AbstractSection, DialogueDimension, QualityDimension
from writeboard.rubric.engine import RubricCriterion


class MetricKind(Enum):
    PROGRESS_SECTION = "progress"
    REFLECTION_DIMENSION = "reflection"
    DIALOGUE_DIMENSION = "dialogue"
    RUBRIC_CRITERION = "rubric"


_KEY_ENUMS = {
    MetricKind.PROGRESS_SECTION: AbstractSection,
    MetricKind.REFLECTION_DIMENSION: QualityDimension,
    MetricKind.DIALOGUE_DIMENSION: DialogueDimension,
    MetricKind.RUBRIC_CRITERION: RubricCriterion,
}


@dataclass(frozen=True)
class MetricId:
    """(kind, key) pair, rendered as e.g. ``progress.Method`` on the wire."""

    kind: MetricKind
    key: str

    def __post_init__(self):
        enum_type = _KEY_ENUMS[self.kind]
        try:
            enum_type(self.key)
        except ValueError:
            raise ValueError(f"{self.key!r} is not a valid {self.kind.value} metric key")

    @property
    def dotted(self) -> str:
        return f"{self.kind.value}.{self.key}"

    @classmethod
    def parse(cls, text: str) -> "MetricId":
        kind_text, sep, key = text.partition(".")
        if not sep:
            raise ValueError(f"metric id {text!r} must look like 'kind.Key'")
        try:
            kind = MetricKind(kind_text)
        except ValueError:
            raise ValueError(f"unknown metric kind {kind_text!r}")
        return cls(kind=kind, key=key)
