"""Pull reasoning chains and structured blocks out of raw model output."""

from __future__ import annotations

import json
import re
from typing import Any

from writeboard.gateway.schemas import SchemaCheckFailure

_THINK_RE = re.compile(r"<think>(.*?)</think>", re.DOTALL | re.IGNORECASE)
_FENCE_RE = re.compile(r"```(?:json)?[ \t]*\n(.*?)```", re.DOTALL)


def reasoning_steps(text: str) -> tuple[str, ...]:
    """Split a reasoning trace into ordered nonempty steps (one per line)."""
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def split_reasoning(content: str, reasoning_channel: str | None) -> tuple[tuple[str, ...], str]:
    """Extract (reasoning steps, answer text) from a provider reply.

    The dedicated reasoning channel wins when present; otherwise a
    <think>...</think> block inside the content is used and removed from the
    answer; otherwise the chain is empty.
    """
    if reasoning_channel and reasoning_channel.strip():
        return reasoning_steps(reasoning_channel), content
    match = _THINK_RE.search(content)
    if match:
        answer = (content[: match.start()] + content[match.end():]).strip()
        return reasoning_steps(match.group(1)), answer
    return (), content


def parse_json_block(text: str) -> Any:
    """Parse the single fenced JSON block the judge was asked for.

    Falls back to the outermost brace span so a judge that forgot the fence
    still parses; anything else is a parse failure.
    """
    match = _FENCE_RE.search(text)
    if match:
        candidate = match.group(1)
    else:
        start, end = text.find("{"), text.rfind("}")
        if start == -1 or end <= start:
            raise SchemaCheckFailure("parse", "no JSON block found in reply")
        candidate = text[start : end + 1]
    try:
        return json.loads(candidate)
    except json.JSONDecodeError as err:
        raise SchemaCheckFailure("parse", f"invalid JSON in reply: {err}")
