from writeboard.gateway.client import (
    Gateway,
    GatewayConfig,
    HttpTransport,
    JudgeRequest,
    JudgeResponse,
    ProviderReply,
    TransportUnavailable,
)
from writeboard.gateway.mock import RecordedCall, ScriptedTransport
from writeboard.gateway.schemas import TaskKind

__all__ = [
    "Gateway",
    "GatewayConfig",
    "HttpTransport",
    "JudgeRequest",
    "JudgeResponse",
    "ProviderReply",
    "RecordedCall",
    "ScriptedTransport",
    "TaskKind",
    "TransportUnavailable",
]
