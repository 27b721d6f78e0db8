"""Declarative pipeline files: groups, systems, actions, steps and checks.

A pipeline file is JSON with a versioned ``schema`` field::

    {
      "schema": 1,
      "caps": {"geometry": 500},
      "groups": {"S4": {"kind": "perm", "degree": 4,
                        "generators": {"r0": "(1,2)", "r1": "(2,3)", "r2": "(3,4)"}}},
      "systems": {"tet": {"group": "S4",
                          "parabolics": {"0": ["r1", "r2"], "1": ["r0", "r2"], "2": ["r0", "r1"]}}},
      "actions": {},
      "pipeline": [{"op": "materialize", "args": {"system": "tet"}, "bind": "geo"}],
      "checks": {"tet": ["flag-transitive", "thin"]}
    }

Type labels written as decimal strings ("0", "12") become integers.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from geoforge.common.errors import ParseError, UnresolvedReference

SCHEMA_VERSION = 1


def type_label(raw: Any) -> Any:
    """Decimal strings become ints; lists become tuples; everything else is kept."""
    if isinstance(raw, str) and raw.lstrip("-").isdigit():
        return int(raw)
    if isinstance(raw, list):
        return tuple(type_label(x) for x in raw)
    return raw


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PermGroupDef(_Strict):
    kind: Literal["perm"] = "perm"
    degree: int = Field(gt=0)
    generators: dict[str, str]


class ProductGroupDef(_Strict):
    kind: Literal["product"]
    factors: list[str] = Field(min_length=1)


class SemidirectGroupDef(_Strict):
    kind: Literal["semidirect"]
    action: str


class FamilyGroupDef(_Strict):
    kind: Literal["family"]
    family: str
    rank: int


GroupDef = PermGroupDef | ProductGroupDef | SemidirectGroupDef | FamilyGroupDef


class SystemDef(_Strict):
    group: str
    parabolics: dict[str, list[str]]


class ActionDef(_Strict):
    kind: Literal["trivial", "conjugation", "images"]
    target: str
    actor: str
    images: dict[str, dict[str, str]] = Field(default_factory=dict)


class StepDef(_Strict):
    op: str
    args: dict[str, Any] = Field(default_factory=dict)
    bind: str | None = None
    name: str | None = None

    @property
    def label(self) -> str:
        return self.name or (f"{self.op}:{self.bind}" if self.bind else self.op)


class PipelineSpec(_Strict):
    """A validated pipeline file."""

    schema_version: int = Field(alias="schema")
    caps: dict[str, int] = Field(default_factory=dict)
    groups: dict[str, GroupDef] = Field(default_factory=dict)
    systems: dict[str, SystemDef] = Field(default_factory=dict)
    actions: dict[str, ActionDef] = Field(default_factory=dict)
    pipeline: list[StepDef] = Field(default_factory=list)
    checks: dict[str, list[str]] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @model_validator(mode="after")
    def _check_schema(self) -> PipelineSpec:
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"Unsupported schema {self.schema_version}; expected {SCHEMA_VERSION}")
        return self

    def check_references(self) -> None:
        """Every group, system and action name used by a definition must exist.

        Raises:
            UnresolvedReference: For the first dangling name.
        """
        for name, group in self.groups.items():
            if isinstance(group, ProductGroupDef):
                for factor in group.factors:
                    if factor not in self.groups or factor == name:
                        raise UnresolvedReference("group", factor)
            elif isinstance(group, SemidirectGroupDef) and group.action not in self.actions:
                raise UnresolvedReference("action", group.action)
        for system in self.systems.values():
            if system.group not in self.groups:
                raise UnresolvedReference("group", system.group)
        for action in self.actions.values():
            for ref in (action.target, action.actor):
                if ref not in self.groups:
                    raise UnresolvedReference("group", ref)


def parse_pipeline_spec(text: str) -> PipelineSpec:
    """Parse and validate pipeline JSON.

    Raises:
        ParseError: For invalid JSON (with its line and column) or a document
            that does not match the schema.
        UnresolvedReference: For dangling names between definitions.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    try:
        spec = PipelineSpec.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{where}: {first['msg']}", 1, 1) from exc
    spec.check_references()
    return spec


def load_pipeline_spec(path: str | Path) -> PipelineSpec:
    return parse_pipeline_spec(Path(path).read_text(encoding="utf-8"))
