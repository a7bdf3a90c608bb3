"""HTTP JSON API over the session service, one endpoint per operation.

Precondition violations map to 4xx responses whose body carries the domain
error code; gateway and storage faults map to 5xx the same way.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from writeboard import __version__
from writeboard.assess.metrics import MetricId
from writeboard.core.model import Condition, GoalProfile, SessionPhase
from writeboard.errors import (
    CorruptLog,
    ExplainabilityDisabled,
    InvalidLevel,
    MetricNotEvaluated,
    ProviderUnreachable,
    SchemaViolation,
    ScoreOutOfRange,
    StorageFailure,
    Unauthorized,
    UnknownSession,
    WriteboardError,
)
from writeboard.service.api_models import (
    AdvancePhaseRequest,
    ChatRequest,
    ChatResponse,
    CreateSessionRequest,
    DashboardResponse,
    DialogueEvalResponse,
    DraftRequest,
    DraftSavedResponse,
    ExplanationResponse,
    FollowUpModel,
    FollowUpRequest,
    GoalsRequest,
    PhaseResponse,
    ProgressEvalResponse,
    ReflectionEvalResponse,
    RubricEvalResponse,
    SessionCreatedResponse,
)
from writeboard.service.runtime import SessionService

_STATUS_BY_ERROR: dict[type, int] = {
    UnknownSession: 404,
    MetricNotEvaluated: 404,
    ExplainabilityDisabled: 403,
    ProviderUnreachable: 502,
    Unauthorized: 502,
    SchemaViolation: 502,
    ScoreOutOfRange: 502,
    InvalidLevel: 502,
    StorageFailure: 500,
    CorruptLog: 500,
}


def _status_for(error: WriteboardError) -> int:
    for klass, status in _STATUS_BY_ERROR.items():
        if isinstance(error, klass):
            return status
    return 409  # remaining domain errors are precondition violations


def create_app(service: SessionService) -> FastAPI:
    app = FastAPI(title="writeboard", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(WriteboardError)
    def handle_domain_error(_: Request, error: WriteboardError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(error),
            content={"error": error.code, "detail": str(error)},
        )

    @app.exception_handler(ValueError)
    def handle_value_error(_: Request, error: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "ValidationError", "detail": str(error)},
        )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/sessions", response_model=SessionCreatedResponse, status_code=201)
    def create_session(body: CreateSessionRequest):
        session_id = service.create_session(Condition(body.condition))
        return SessionCreatedResponse(
            session_id=session_id,
            condition=body.condition,
            phase=SessionPhase.FORETHOUGHT.value,
        )

    @app.put("/sessions/{session_id}/goals", response_model=GoalsRequest)
    def set_goals(session_id: str, body: GoalsRequest):
        service.set_goals(session_id, GoalProfile(**body.model_dump()))
        return body

    @app.post("/sessions/{session_id}/advance-phase", response_model=PhaseResponse)
    def advance_phase(session_id: str, body: AdvancePhaseRequest):
        state = service.advance_phase(session_id, SessionPhase(body.target))
        return PhaseResponse(session_id=session_id, phase=state.phase.value)

    @app.put("/sessions/{session_id}/draft", response_model=DraftSavedResponse)
    def save_draft(session_id: str, body: DraftRequest):
        return service.save_draft(session_id, body.text)

    @app.post("/sessions/{session_id}/chat", response_model=ChatResponse)
    def chat(session_id: str, body: ChatRequest):
        return ChatResponse(reply=service.chat(session_id, body.message))

    @app.post(
        "/sessions/{session_id}/evaluate/progress",
        response_model=ProgressEvalResponse,
        response_model_exclude_none=True,
    )
    def evaluate_progress(session_id: str):
        return service.evaluate_progress(session_id)

    @app.post(
        "/sessions/{session_id}/evaluate/reflection",
        response_model=ReflectionEvalResponse,
        response_model_exclude_none=True,
    )
    def evaluate_reflection(session_id: str):
        return service.evaluate_reflection(session_id)

    @app.post(
        "/sessions/{session_id}/evaluate/dialogue",
        response_model=DialogueEvalResponse,
        response_model_exclude_none=True,
    )
    def evaluate_dialogue(session_id: str):
        return service.evaluate_dialogue(session_id)

    @app.post(
        "/sessions/{session_id}/evaluate/rubric",
        response_model=RubricEvalResponse,
        response_model_exclude_none=True,
    )
    def judge_rubric(session_id: str):
        return service.judge_rubric(session_id)

    @app.get(
        "/sessions/{session_id}/dashboard",
        response_model=DashboardResponse,
        response_model_exclude_none=True,
    )
    def dashboard(session_id: str):
        return service.dashboard(session_id)

    @app.get("/sessions/{session_id}/explanation/{metric}", response_model=ExplanationResponse)
    def explanation(session_id: str, metric: str):
        found = service.explanation(session_id, MetricId.parse(metric))
        return ExplanationResponse(
            metric=found.metric_id,
            reasoning_chain=list(found.reasoning_chain),
            suggestions=list(found.suggestions),
            follow_ups=[
                FollowUpModel(
                    selected_text=f.selected_text,
                    question=f.question,
                    answer=f.answer,
                    asked_at=f.asked_at.isoformat(),
                )
                for f in found.follow_ups
            ],
        )

    @app.post("/sessions/{session_id}/follow-up", response_model=FollowUpModel)
    def follow_up(session_id: str, body: FollowUpRequest):
        exchange = service.follow_up(
            session_id, MetricId.parse(body.metric), body.selected_text, body.question
        )
        return FollowUpModel(
            selected_text=exchange.selected_text,
            question=exchange.question,
            answer=exchange.answer,
            asked_at=exchange.asked_at.isoformat(),
        )

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str) -> Response:
        data = service.export(session_id)
        return Response(content=data, media_type="application/x-ndjson")

    return app
