"""Versioned prompt templates, one data file per judge task."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from string import Template

_DEFAULT_DIR = Path(__file__).parent / "templates"

TEMPLATE_NAMES = (
    "progress_eval",
    "reflection_eval",
    "dialogue_eval",
    "rubric_judge",
    "follow_up",
    "chat_assist",
)


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    version: str
    system: str
    user: str

    def render_user(self, **values: str) -> str:
        return Template(self.user).substitute(**values)


class TemplateCatalog:
    def __init__(self, directory: Path | str | None = None):
        self._dir = Path(directory) if directory else _DEFAULT_DIR
        self._templates: dict[str, PromptTemplate] = {}
        for name in TEMPLATE_NAMES:
            raw = json.loads((self._dir / f"{name}.json").read_text(encoding="utf-8"))
            self._templates[name] = PromptTemplate(
                name=name,
                version=str(raw["version"]),
                system=raw["system"],
                user=raw.get("user", ""),
            )

    def get(self, name: str) -> PromptTemplate:
        return self._templates[name]
