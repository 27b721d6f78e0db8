"""Hand-built reference geometries."""

from __future__ import annotations

import itertools

from geoforge.materialize.geometry import Geometry


def cube_reference() -> Geometry:
    """Vertices, edges and faces of the 3-cube with types 0, 1, 2.

    Vertices are 0/1 coordinate triples; an edge fixes two coordinates, a
    face fixes one. Incidence is containment.
    """
    vertices = list(itertools.product((0, 1), repeat=3))
    edges = [
        (axis, fixed)
        for axis in range(3)
        for fixed in itertools.product((0, 1), repeat=2)
    ]
    faces = [(axis, value) for axis in range(3) for value in (0, 1)]

    def edge_vertices(edge: tuple[int, tuple[int, int]]) -> list[tuple[int, ...]]:
        axis, fixed = edge
        others = [k for k in range(3) if k != axis]
        result = []
        for bit in (0, 1):
            v = [0, 0, 0]
            v[axis] = bit
            v[others[0]], v[others[1]] = fixed
            result.append(tuple(v))
        return result

    keys = (
        [f"v{''.join(map(str, v))}" for v in vertices]
        + [f"e{axis}:{a}{b}" for axis, (a, b) in edges]
        + [f"f{axis}={value}" for axis, value in faces]
    )
    element_types = [0] * len(vertices) + [1] * len(edges) + [2] * len(faces)
    v_index = {v: k for k, v in enumerate(vertices)}
    e_offset, f_offset = len(vertices), len(vertices) + len(edges)

    pairs = []
    for k, edge in enumerate(edges):
        ends = edge_vertices(edge)
        pairs.extend((v_index[v], e_offset + k) for v in ends)
        for m, (axis, value) in enumerate(faces):
            if all(v[axis] == value for v in ends):
                pairs.append((e_offset + k, f_offset + m))
    for v, index in v_index.items():
        for m, (axis, value) in enumerate(faces):
            if v[axis] == value:
                pairs.append((index, f_offset + m))
    return Geometry.from_incidences((0, 1, 2), element_types, pairs, keys=keys, name="cube")
