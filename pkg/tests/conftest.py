from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from geoforge import catalog
from geoforge.cgroups.generators import cgroup_system
from geoforge.common.config import Settings, load_settings
from geoforge.cosetgeom.system import CosetSystem
from geoforge.groupcore.groups import PermGroup

settings.register_profile(
    "geoforge", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("geoforge")


@pytest.fixture
def sym4() -> PermGroup:
    return PermGroup.symmetric(4)


@pytest.fixture
def tetrahedron_system() -> CosetSystem:
    return cgroup_system(catalog.tetrahedron())


@pytest.fixture
def cube_system() -> CosetSystem:
    return catalog.tetrahedron_twist()


@pytest.fixture
def suite_settings() -> Settings:
    return load_settings()


@pytest.fixture
def tetrahedron_twist_spec() -> dict:
    """Pipeline document that twists the tetrahedron into the cube."""
    return {
        "schema": 1,
        "groups": {
            "S4": {
                "kind": "perm",
                "degree": 4,
                "generators": {"r0": "(1,2)", "r1": "(2,3)", "r2": "(3,4)"},
            },
            "T": {"kind": "perm", "degree": 4, "generators": {"tau": "(1,4)(2,3)"}},
        },
        "systems": {
            "tet": {
                "group": "S4",
                "parabolics": {"0": ["r1", "r2"], "1": ["r0", "r2"], "2": ["r0", "r1"]},
            },
            "dual": {"group": "T", "parabolics": {"tau": []}},
        },
        "actions": {"conj": {"kind": "conjugation", "target": "S4", "actor": "T"}},
        "pipeline": [
            {
                "op": "twist",
                "args": {"alpha": "tet", "beta": "dual", "action": "conj", "reps": [0, 1]},
                "bind": "cube",
            },
            {"op": "materialize", "args": {"system": "cube"}, "bind": "geo"},
            {"op": "reference", "args": {"name": "cube"}, "bind": "ref"},
            {"op": "iso", "args": {"left": "geo", "right": "ref"}},
        ],
        "checks": {"cube": ["flag-transitive", "residually-connected", "thin"]},
    }
