"""Human-readable run summaries.

Reports go to stdout as JSON; these summaries go to stderr so that both can
be consumed at once.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any

_MARKS = {"pass": "ok", "ok": "ok", "fail": "FAIL", "error": "ERROR", "cap-exceeded": "CAP"}


def format_run_message(
    header: str,
    *,
    source: str | None = None,
    counts: tuple[int, int] | None = None,
    elapsed_ms: float | None = None,
    summary: str | None = None,
    summary_header: str = "Summary",
    extra_lines: Sequence[str] | None = None,
) -> str:
    """Format a run summary with a consistent structure.

    Args:
        header: The main line.
        source: Optional input file or command.
        counts: Optional (passed, total).
        elapsed_ms: Optional total wall time.
        summary: Optional free text placed in its own section.
        summary_header: Header for the summary section.
        extra_lines: Optional lines appended at the end.

    Returns:
        The formatted message.
    """
    lines = [f"== {header} ==", ""]

    has_metadata = False
    if source:
        lines.append(f"- Input: {source}")
        has_metadata = True
    if counts:
        lines.append(f"- Passed: {counts[0]}/{counts[1]}")
        has_metadata = True
    if elapsed_ms is not None:
        lines.append(f"- Wall time: {elapsed_ms:.1f} ms")
        has_metadata = True

    if summary:
        if has_metadata:
            lines.append("")
        lines.extend([f"-- {summary_header} --", summary])

    if extra_lines:
        if has_metadata or summary:
            lines.append("")
        lines.extend(extra_lines)

    return "\n".join(lines)


def _status_lines(entries: Sequence[Mapping[str, Any]], key: str) -> list[str]:
    return [f"[{_MARKS.get(e['status'], e['status'])}] {e[key]}" for e in entries]


def pipeline_message(report: Mapping[str, Any], source: str) -> str:
    steps = report["steps"]
    checks = [s for s in steps if s["status"] in ("pass", "fail")]
    errors = [s for s in steps if s["status"] == "error"]
    header = "Pipeline failed" if errors else "Pipeline finished"
    extra = _status_lines(steps, "name")
    extra.extend(f"Error in {s['name']}: {s.get('error')}" for s in errors)
    return format_run_message(
        header,
        source=source,
        counts=(sum(1 for s in checks if s["status"] == "pass"), len(checks)),
        elapsed_ms=sum(float(s["ms"]) for s in steps),
        extra_lines=extra,
    )


def suite_message(report: Mapping[str, Any]) -> str:
    criteria = report["criteria"]
    return format_run_message(
        "Regression suite",
        counts=(sum(1 for c in criteria if c["status"] == "pass"), len(criteria)),
        elapsed_ms=report["total_ms"],
        extra_lines=_status_lines(criteria, "name"),
    )


def error_message(exc: Exception, *, source: str | None = None) -> str:
    return format_run_message(
        f"{type(exc).__name__}",
        source=source,
        summary=str(exc),
        summary_header="Details",
    )
