"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


# -- requests ---------------------------------------------------------------

class CreateSessionRequest(BaseModel):
    condition: Literal["Explainable", "VisualOnly"]


class GoalsRequest(BaseModel):
    expected_time_min: int = Field(ge=1)
    logical_coherence: int = Field(ge=0, le=100)
    expression_accuracy: int = Field(ge=0, le=100)
    structure_completeness: int = Field(ge=0, le=100)
    content_understanding: int = Field(ge=0, le=100)


class AdvancePhaseRequest(BaseModel):
    target: Literal["Forethought", "Performance", "Reflection", "Closed"]


class DraftRequest(BaseModel):
    text: str


class ChatRequest(BaseModel):
    message: str = Field(min_length=1)


class FollowUpRequest(BaseModel):
    metric: str
    selected_text: str = Field(min_length=1)
    question: str = Field(min_length=1)


# -- responses ---------------------------------------------------------------

class SessionCreatedResponse(BaseModel):
    session_id: str
    condition: str
    phase: str


class PhaseResponse(BaseModel):
    session_id: str
    phase: str


class DraftSavedResponse(BaseModel):
    version: int
    saved_at: str


class ChatResponse(BaseModel):
    reply: str


class GoalsModel(BaseModel):
    expected_time_min: int
    targets: dict[str, int]


class RadarDimensionModel(BaseModel):
    key: str
    label: str
    target: Optional[int] = None
    actual: Optional[int] = None
    delta: Optional[int] = None


class TimeModel(BaseModel):
    expected_min: int
    actual_min: int
    delta_min: int


class ProgressBarModel(BaseModel):
    key: str
    label: str
    percent: int


class ProgressModel(BaseModel):
    evaluated_at: str
    bars: list[ProgressBarModel]


class DialogueBarModel(BaseModel):
    key: str
    label: str
    score: int


class DialogueModel(BaseModel):
    window: list[int]
    bars: list[DialogueBarModel]


class DashboardResponse(BaseModel):
    session_id: str
    condition: str
    phase: str
    explainable: bool
    goal_references: dict[str, str]
    goals: Optional[GoalsModel] = None
    radar: list[RadarDimensionModel]
    overlay: Optional[dict[str, int]] = None
    time: Optional[TimeModel] = None
    progress: Optional[ProgressModel] = None
    dialogue: Optional[DialogueModel] = None
    explanations_available: Optional[list[str]] = None


class ProgressEvalResponse(BaseModel):
    evaluated_at: str
    bars: list[ProgressBarModel]
    explanations_available: Optional[list[str]] = None


class ReflectionEvalResponse(BaseModel):
    scores: dict[str, int]
    overlay: dict[str, int]
    time: TimeModel
    explanations_available: Optional[list[str]] = None


class DialogueEvalResponse(BaseModel):
    window: list[int]
    bars: list[DialogueBarModel]
    explanations_available: Optional[list[str]] = None


class RubricEvalResponse(BaseModel):
    levels: dict[str, int]
    total: int
    explanations_available: Optional[list[str]] = None


class FollowUpModel(BaseModel):
    selected_text: str
    question: str
    answer: str
    asked_at: str


class ExplanationResponse(BaseModel):
    metric: str
    reasoning_chain: list[str]
    suggestions: list[str]
    follow_ups: list[FollowUpModel]


class ErrorResponse(BaseModel):
    error: str
    detail: str
