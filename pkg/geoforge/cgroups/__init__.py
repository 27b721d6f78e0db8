"""String C-groups: generator systems, diagrams, permutation representation graphs."""

from geoforge.cgroups.families import FAMILIES, FAMILY_ALIASES, builtin_family
from geoforge.cgroups.generators import (
    CoxeterDiagram,
    GeneratorSystem,
    HalvingResult,
    cgroup_system,
    check_intersection_property,
    check_string_property,
    coxeter_diagram,
    halve,
)
from geoforge.cgroups.permrep import (
    PermRepGraph,
    emit,
    emit_permrep_graph,
    parse_permrep_graph,
    permrep_graph_of,
)
from geoforge.cgroups.search import involutions, search_rank3_polytope

__all__ = [
    "FAMILIES",
    "FAMILY_ALIASES",
    "CoxeterDiagram",
    "GeneratorSystem",
    "HalvingResult",
    "PermRepGraph",
    "builtin_family",
    "cgroup_system",
    "check_intersection_property",
    "check_string_property",
    "coxeter_diagram",
    "emit",
    "emit_permrep_graph",
    "halve",
    "involutions",
    "parse_permrep_graph",
    "permrep_graph_of",
    "search_rank3_polytope",
]
