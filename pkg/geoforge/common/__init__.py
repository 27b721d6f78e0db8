"""Shared configuration, errors and report types."""

from geoforge.common.config import Caps, configure_logging, current_caps, load_settings, use_caps
from geoforge.common.reports import CheckReport, GeometryReport

__all__ = [
    "Caps",
    "CheckReport",
    "GeometryReport",
    "configure_logging",
    "current_caps",
    "load_settings",
    "use_caps",
]
