"""Shared configuration: resource caps, settings files and logging setup."""

from __future__ import annotations

import json
import logging
import logging.config
import os
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from geoforge.common.errors import ConfigError

logger = logging.getLogger(__name__)

CAPS_ENV = "GEOFORGE_CAPS"
CONFIG_DIR_ENV = "GEOFORGE_CONFIG_DIR"


class Caps(BaseModel):
    """Resource limits for every enumeration the library performs."""

    closure: int = Field(default=2_000_000, gt=0, description="Max elements in a closure")
    product: int = Field(default=2_000_000, gt=0, description="Max |H|*|K| for product sets")
    geometry: int = Field(default=10_000, gt=0, description="Max elements of a geometry")
    isomorphism: int = Field(default=1_000, gt=0, description="Max elements for iso search")
    involutions: int = Field(default=100_000, gt=0, description="Max |G| for involution sweeps")
    rank_guard: int = Field(default=12, gt=0, description="Max rank of a coset system")

    model_config = {"extra": "forbid", "frozen": True}

    def merged(self, overrides: dict[str, Any]) -> Caps:
        """Return a copy with the given fields replaced (``None`` values ignored)."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return Caps(**data)
        except ValidationError as exc:
            raise ConfigError(f"Invalid caps: {exc.errors()[0]['msg']}") from exc


@dataclass
class Settings:
    """Settings loaded from ``configs/settings.yaml`` plus environment overrides."""

    caps: Caps = field(default_factory=Caps)
    sample_size: int = 1000
    seed: int = 20240917


def config_dir() -> Path:
    """Directory holding ``settings.yaml`` and ``logging.yaml``."""
    raw = os.getenv(CONFIG_DIR_ENV)
    if raw:
        return Path(raw)
    return Path(__file__).resolve().parents[2] / "configs"


def _read_yaml(path: Path) -> dict[str, Any]:
    if not path.is_file():
        return {}
    with path.open(encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping")
    return data


def parse_caps_override(raw: str) -> dict[str, int]:
    """Parse a ``GEOFORGE_CAPS`` value.

    Accepts either a JSON object or comma-separated ``key=value`` pairs.
    """
    raw = raw.strip()
    if not raw:
        return {}
    if raw.startswith("{"):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{CAPS_ENV} is not valid JSON: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{CAPS_ENV} must be a JSON object")
        items = data.items()
    else:
        pairs = [chunk.split("=", 1) for chunk in raw.split(",") if chunk.strip()]
        if any(len(pair) != 2 for pair in pairs):
            raise ConfigError(f"{CAPS_ENV} entries must look like key=value")
        items = ((key.strip(), value.strip()) for key, value in pairs)

    result: dict[str, int] = {}
    for key, value in items:
        key = key.replace("-", "_")
        if key not in Caps.model_fields:
            raise ConfigError(f"Unknown cap {key!r} in {CAPS_ENV}")
        try:
            result[key] = int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Cap {key!r} must be an integer, got {value!r}") from exc
    return result


def load_settings() -> Settings:
    """Load settings from the config directory, ``.env`` and ``GEOFORGE_CAPS``.

    Optional environment variables:
    - GEOFORGE_CONFIG_DIR: Directory with settings.yaml / logging.yaml
    - GEOFORGE_CAPS: Cap overrides, e.g. ``closure=1000,geometry=50``
    """
    load_dotenv()
    data = _read_yaml(config_dir() / "settings.yaml")
    caps = Caps().merged(data.get("caps") or {})
    caps = caps.merged(parse_caps_override(os.getenv(CAPS_ENV, "")))
    suite = data.get("suite") or {}
    return Settings(
        caps=caps,
        sample_size=int(suite.get("sample_size", 1000)),
        seed=int(suite.get("seed", 20240917)),
    )


@lru_cache(maxsize=1)
def _default_settings() -> Settings:
    return load_settings()


_active_caps: ContextVar[Caps | None] = ContextVar("geoforge_caps", default=None)


def current_caps() -> Caps:
    """Caps in effect for the current context."""
    caps = _active_caps.get()
    if caps is None:
        caps = _default_settings().caps
    return caps


@contextmanager
def use_caps(caps: Caps | None = None, **overrides: int | None) -> Iterator[Caps]:
    """Temporarily replace the active caps.

    Args:
        caps: Base caps (defaults to the currently active ones).
        **overrides: Individual fields to replace.

    Yields:
        The caps now in effect.
    """
    effective = (caps or current_caps()).merged(overrides)
    token = _active_caps.set(effective)
    try:
        yield effective
    finally:
        _active_caps.reset(token)


def configure_logging() -> None:
    """Configure logging from ``logging.yaml``, honouring ``LOG_LEVEL``."""
    data = _read_yaml(config_dir() / "logging.yaml")
    if data:
        logging.config.dictConfig(data)
    else:
        logging.basicConfig(level=logging.INFO)
    level = os.getenv("LOG_LEVEL")
    if level:
        logging.getLogger("geoforge").setLevel(level.upper())
