from writeboard.assess.metrics import MetricId, MetricKind
from writeboard.assess.pipeline import (
    AssessmentPipeline,
    DialogueEvaluation,
    ProgressEvaluation,
    ReflectionEvaluation,
    RubricEvaluation,
    get_explanation,
    metric_score,
)
from writeboard.assess.templates_catalog import PromptTemplate, TemplateCatalog

__all__ = [
    "AssessmentPipeline",
    "DialogueEvaluation",
    "MetricId",
    "MetricKind",
    "ProgressEvaluation",
    "PromptTemplate",
    "ReflectionEvaluation",
    "RubricEvaluation",
    "TemplateCatalog",
    "get_explanation",
    "metric_score",
]
