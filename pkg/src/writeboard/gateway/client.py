"""Provider-agnostic judge/chat gateway with validation, retry, and an in-flight cap.

Talks to any OpenAI-compatible chat-completions endpoint (the reasoning
channel is read from ``reasoning_content`` or ``reasoning`` when the provider
supplies one). Tests and offline runs swap the HTTP transport for the
scripted one in ``writeboard.gateway.mock``.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Any, Protocol, Sequence

import httpx

from writeboard.errors import ProviderUnreachable, SchemaViolation, Unauthorized
from writeboard.gateway.parsing import parse_json_block, split_reasoning
from writeboard.gateway.schemas import (
    SchemaCheckFailure,
    TaskKind,
    schema_registered,
    validate,
)

Message = dict[str, str]


@dataclass(frozen=True)
class ProviderReply:
    """One raw completion: answer text plus the provider's reasoning channel, if any."""

    content: str
    reasoning: str | None = None


class TransportUnavailable(Exception):
    """Network-level failure for one completion call; retried up to the budget."""


class Transport(Protocol):
    def complete(
        self, messages: Sequence[Message], task_kind: TaskKind, temperature: float
    ) -> ProviderReply: ...


@dataclass(frozen=True)
class GatewayConfig:
    endpoint: str = "http://localhost:8080/v1"
    model: str = "reasoning-model"
    credential_env: str = "WRITEBOARD_API_KEY"
    timeout_s: float = 60.0
    retry_limit: int = 1
    max_in_flight: int = 4
    judge_temperature: float = 0.1
    chat_temperature: float = 0.7


@dataclass(frozen=True)
class JudgeRequest:
    """One structured evaluation request."""

    task_kind: TaskKind
    system_prompt: str
    user_payload: str
    schema_id: str

    def __post_init__(self):
        if not self.system_prompt.strip():
            raise ValueError("system_prompt must be nonempty")
        if not schema_registered(self.task_kind, self.schema_id):
            raise ValueError(
                f"schema {self.schema_id!r} is not registered for {self.task_kind.value}"
            )


@dataclass(frozen=True)
class JudgeResponse:
    structured: Any
    reasoning_chain: tuple[str, ...]
    raw: str
    attempts: int


_REPAIR_INSTRUCTION = (
    "Your previous reply could not be used: {problem}. "
    "Reply again with exactly one fenced ```json block that satisfies the "
    "required shape, and nothing else after it."
)


class Gateway:
    """Shared judge/chat access; safe for concurrent use up to the in-flight cap."""

    def __init__(self, transport: Transport, config: GatewayConfig | None = None):
        self.transport = transport
        self.config = config or GatewayConfig()
        self._slots = threading.BoundedSemaphore(self.config.max_in_flight)

    def _complete(self, messages: Sequence[Message], kind: TaskKind, temperature: float) -> ProviderReply:
        with self._slots:
            return self.transport.complete(messages, kind, temperature)

    def invoke(self, request: JudgeRequest) -> JudgeResponse:
        """Run one judge call, validating the structured block.

        A reply that fails to parse or validate is retried once with a repair
        instruction appended to the conversation; network failures consume
        the same attempt budget. Never returns an unvalidated payload.
        """
        messages: list[Message] = [
            {"role": "system", "content": request.system_prompt},
            {"role": "user", "content": request.user_payload},
        ]
        max_attempts = 1 + self.config.retry_limit
        raw_outputs: list[str] = []
        failures: list[str] = []
        network_error: str | None = None

        for attempt in range(1, max_attempts + 1):
            try:
                reply = self._complete(messages, request.task_kind, self.config.judge_temperature)
            except TransportUnavailable as err:
                network_error = str(err)
                continue
            network_error = None
            raw_outputs.append(reply.content)
            steps, answer = split_reasoning(reply.content, reply.reasoning)
            try:
                payload = parse_json_block(answer)
                validate(request.schema_id, payload)
            except SchemaCheckFailure as failure:
                failures.append(f"{failure.code}: {failure.message}")
                messages = list(messages) + [
                    {"role": "assistant", "content": reply.content},
                    {"role": "user", "content": _REPAIR_INSTRUCTION.format(problem=failure.message)},
                ]
                continue
            return JudgeResponse(
                structured=payload,
                reasoning_chain=steps,
                raw=reply.content,
                attempts=attempt,
            )

        if failures:
            raise SchemaViolation(
                f"judge output invalid after {len(raw_outputs)} attempt(s): {failures[-1]}",
                raw_outputs=raw_outputs,
                reasons=failures,
            )
        raise ProviderUnreachable(network_error or "provider unavailable")

    def chat(
        self,
        history: Sequence[tuple[str, str]],
        new_message: str,
        system_prompt: str | None = None,
    ) -> str:
        """Free-form co-writing turn; returns the assistant text with any reasoning stripped."""
        if not new_message or not new_message.strip():
            raise ValueError("new_message must be nonempty")
        messages: list[Message] = []
        if system_prompt:
            messages.append({"role": "system", "content": system_prompt})
        for role, text in history:
            messages.append({"role": "user" if role == "student" else "assistant", "content": text})
        messages.append({"role": "user", "content": new_message})

        last_error = "provider unavailable"
        for _ in range(1 + self.config.retry_limit):
            try:
                reply = self._complete(messages, TaskKind.CHAT_ASSIST, self.config.chat_temperature)
            except TransportUnavailable as err:
                last_error = str(err)
                continue
            _, answer = split_reasoning(reply.content, reply.reasoning)
            return answer
        raise ProviderUnreachable(last_error)


class HttpTransport:
    """OpenAI-compatible chat-completions client."""

    def __init__(self, config: GatewayConfig):
        self.config = config
        headers = {}
        credential = os.environ.get(config.credential_env, "")
        if credential:
            headers["Authorization"] = f"Bearer {credential}"
        self._client = httpx.Client(
            base_url=config.endpoint.rstrip("/"),
            headers=headers,
            timeout=config.timeout_s,
        )

    def complete(
        self, messages: Sequence[Message], task_kind: TaskKind, temperature: float
    ) -> ProviderReply:
        try:
            response = self._client.post(
                "/chat/completions",
                json={
                    "model": self.config.model,
                    "messages": list(messages),
                    "temperature": temperature,
                },
            )
        except httpx.HTTPError as err:
            raise TransportUnavailable(f"provider request failed: {err}")
        if response.status_code in (401, 403):
            raise Unauthorized(f"provider rejected credential (HTTP {response.status_code})")
        if response.status_code != 200:
            raise TransportUnavailable(f"provider returned HTTP {response.status_code}")
        try:
            message = response.json()["choices"][0]["message"]
        except (KeyError, IndexError, ValueError) as err:
            raise TransportUnavailable(f"malformed provider response: {err}")
        return ProviderReply(
            content=message.get("content") or "",
            reasoning=message.get("reasoning_content") or message.get("reasoning"),
        )
