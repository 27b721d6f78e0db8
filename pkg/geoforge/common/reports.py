"""Structured check results shared by the checkers and the CLI."""

from __future__ import annotations

import builtins
import time
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


def to_jsonable(value: Any) -> Any:
    """Render a witness (elements, subsets, subgroups) as JSON-safe data.

    Objects may opt in by defining ``to_json()``. Sets are sorted so the
    output is deterministic.
    """
    if value is None or isinstance(value, bool | int | float | str):
        return value
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    if isinstance(value, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, frozenset | set):
        return [to_jsonable(v) for v in sorted(value, key=_sort_key)]
    if isinstance(value, tuple | list):
        return [to_jsonable(v) for v in value]
    return str(value)


def _sort_key(value: Any) -> tuple[str, str]:
    return (type(value).__name__, repr(value))


class CheckReport(BaseModel):
    """Verdict of one property check."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    property: str = Field(description="Property checked, e.g. 'flag-transitive'")
    verdict: Literal["pass", "fail"]
    method: str = Field(description="Algorithm used to decide the property")
    witness: Any = Field(default=None, description="Violation data when failing")
    elapsed_ms: float = 0.0
    conditional: bool = Field(
        default=False, description="True when a precondition was waived rather than verified"
    )
    details: dict[str, Any] = Field(default_factory=dict)

    @builtins.property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "method": self.method,
            "witness": to_jsonable(self.witness),
            "ms": round(self.elapsed_ms, 3),
            "conditional": self.conditional,
            "details": to_jsonable(self.details),
        }


class GeometryReport(BaseModel):
    """Direct geometric checks on a materialized geometry."""

    is_geometry: bool
    connected: bool
    residually_connected: bool
    firm: bool
    thin: bool
    chamber_count: int

    def to_json_dict(self) -> dict[str, Any]:
        return self.model_dump()


class Stopwatch:
    """Elapsed wall time in milliseconds."""

    def __init__(self) -> None:
        self._start = time.perf_counter()
        self.elapsed_ms = 0.0

    def stop(self) -> float:
        self.elapsed_ms = (time.perf_counter() - self._start) * 1000.0
        return self.elapsed_ms


@contextmanager
def timed() -> Iterator[Stopwatch]:
    watch = Stopwatch()
    try:
        yield watch
    finally:
        watch.stop()


def make_report(
    prop: str,
    method: str,
    witness: Any,
    watch: Stopwatch,
    *,
    conditional: bool = False,
    details: dict[str, Any] | None = None,
) -> CheckReport:
    """Build a report that passes iff ``witness`` is None."""
    return CheckReport(
        property=prop,
        verdict="pass" if witness is None else "fail",
        method=method,
        witness=witness,
        elapsed_ms=watch.stop(),
        conditional=conditional,
        details=details or {},
    )
