"""Service configuration file loading and component wiring."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from writeboard.assess.pipeline import AssessmentPipeline
from writeboard.assess.templates_catalog import TemplateCatalog
from writeboard.gateway.client import Gateway, GatewayConfig, HttpTransport, Transport
from writeboard.gateway.mock import ScriptedTransport
from writeboard.rubric.engine import Rubric
from writeboard.service.runtime import DEFAULT_GOAL_REFERENCES, SessionService
from writeboard.service.store import EventStore


@dataclass
class ServiceConfig:
    gateway: GatewayConfig = field(default_factory=GatewayConfig)
    data_dir: Path = Path("data")
    rubric_path: Path | None = None
    templates_dir: Path | None = None
    mock_script: Path | None = None
    goal_references: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_GOAL_REFERENCES))


def load_config(path: Path | str | None) -> ServiceConfig:
    """Read a JSON config file; omitted keys fall back to defaults."""
    config = ServiceConfig()
    if path is None:
        return config
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if "gateway" in raw:
        config.gateway = GatewayConfig(**raw["gateway"])
    if "data_dir" in raw:
        config.data_dir = Path(raw["data_dir"])
    if "rubric_path" in raw:
        config.rubric_path = Path(raw["rubric_path"])
    if "templates_dir" in raw:
        config.templates_dir = Path(raw["templates_dir"])
    if "mock_script" in raw:
        config.mock_script = Path(raw["mock_script"])
    if "goal_references" in raw:
        config.goal_references = dict(raw["goal_references"])
    return config


def build_pipeline(config: ServiceConfig) -> AssessmentPipeline:
    transport: Transport
    if config.mock_script is not None:
        transport = ScriptedTransport.from_file(config.mock_script)
    else:
        transport = HttpTransport(config.gateway)
    return AssessmentPipeline(
        gateway=Gateway(transport, config.gateway),
        rubric=Rubric.load(config.rubric_path),
        templates=TemplateCatalog(config.templates_dir),
    )


def build_service(config: ServiceConfig) -> SessionService:
    return SessionService(
        store=EventStore(config.data_dir),
        pipeline=build_pipeline(config),
        goal_references=config.goal_references,
    )
