"""Shared state for one pipeline run."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any

from geoforge.common.errors import UnresolvedReference

if TYPE_CHECKING:
    from geoforge.cgroups.generators import GeneratorSystem
    from geoforge.cli.spec import PipelineSpec
    from geoforge.common.config import Caps
    from geoforge.cosetgeom.system import CosetSystem
    from geoforge.groupcore.groups import FiniteGroup
    from geoforge.materialize.geometry import Geometry
    from geoforge.ops.actions import ActionSpec


@dataclass
class RunContext:
    """Everything a step can read or bind.

    Groups, systems and actions come from the definitions section; steps add
    systems, geometries and generator systems under their ``bind`` names.
    """

    spec: PipelineSpec
    caps: Caps
    base_dir: Path = field(default_factory=Path.cwd)
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    systems: dict[str, CosetSystem] = field(default_factory=dict)
    actions: dict[str, ActionSpec] = field(default_factory=dict)
    geometries: dict[str, Geometry] = field(default_factory=dict)
    generator_systems: dict[str, GeneratorSystem] = field(default_factory=dict)
    outputs: list[Path] = field(default_factory=list)

    def lookup(self, kind: str, name: str) -> Any:
        table: dict[str, Any] = {
            "group": self.groups,
            "system": self.systems,
            "action": self.actions,
            "geometry": self.geometries,
            "generators": self.generator_systems,
        }[kind]
        if name not in table:
            raise UnresolvedReference(kind, name)
        return table[name]

    def resolve_path(self, raw: str) -> Path:
        path = Path(raw)
        return path if path.is_absolute() else self.base_dir / path
