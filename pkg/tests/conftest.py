from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from writeboard.assess.pipeline import AssessmentPipeline
from writeboard.gateway.client import Gateway, GatewayConfig
from writeboard.gateway.mock import ScriptedTransport
from writeboard.service.app import create_app
from writeboard.service.runtime import SessionService
from writeboard.service.store import EventStore

import helpers


@pytest.fixture
def make_gateway():
    def build(entries: list[dict]) -> tuple[Gateway, ScriptedTransport]:
        transport = ScriptedTransport(entries)
        return Gateway(transport, GatewayConfig()), transport

    return build


@pytest.fixture
def make_pipeline(make_gateway):
    def build(entries: list[dict]) -> tuple[AssessmentPipeline, ScriptedTransport]:
        gateway, transport = make_gateway(entries)
        return AssessmentPipeline(gateway), transport

    return build


@pytest.fixture
def make_service(tmp_path, make_pipeline):
    def build(entries: list[dict] | None = None) -> tuple[SessionService, ScriptedTransport]:
        pipeline, transport = make_pipeline(
            helpers.standard_script() if entries is None else entries
        )
        store = EventStore(tmp_path / "data")
        return SessionService(store, pipeline), transport

    return build


@pytest.fixture
def make_client(make_service):
    def build(entries: list[dict] | None = None) -> tuple[TestClient, SessionService, ScriptedTransport]:
        service, transport = make_service(entries)
        return TestClient(create_app(service)), service, transport

    return build
