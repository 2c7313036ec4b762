"""Orientability, genus, and boundary count of a triangle mesh."""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

import numpy as np

from ..errors import NonManifold
from .mesh import Mesh


class TopologyReport(NamedTuple):
    """theta is +1/-1 for orientable/non-orientable.

    For orientable meshes ``genus`` is the usual genus; for non-orientable
    ones it is the cross-cap count k = 2 - chi - b (the Klein bottle has
    k = 2, the Moebius band k = 1).  Callers comparing against codes that
    follow the orientation-double-cover genus convention subtract one.
    """

    theta: int
    genus: int
    boundary_components: int


def mesh_topology(mesh: Mesh) -> TopologyReport:
    """Classify the mesh surface: (theta, genus-or-cross-caps, boundary count).

    Boundary components are traced as cycles of boundary edges; orientability
    follows from propagating triangle orientations across shared edges; the
    genus comes from the Euler characteristic.  Raises NonManifold on edges
    with more than two triangles, pinched boundaries, or a disconnected mesh.
    """
    edges, incident = mesh.edges()  # raises NonManifold for >2 incidences

    labels = mesh.connected_vertex_components()
    used = np.unique(mesh.triangles)
    if len(np.unique(labels[used])) > 1:
        raise NonManifold("mesh is disconnected; classify components separately")

    boundary = edges[incident[:, 1] == -1]
    b = _count_boundary_cycles(boundary)
    theta = 1 if _is_orientable(mesh, edges, incident) else -1

    n_v = len(used)
    chi = n_v - len(edges) + len(mesh.triangles)
    if theta == 1:
        genus2 = 2 - chi - b
        if genus2 % 2:
            raise NonManifold("Euler characteristic inconsistent with a surface")
        genus = genus2 // 2
    else:
        genus = 2 - chi - b  # cross-cap count
    return TopologyReport(theta, genus, b)


def _count_boundary_cycles(boundary: np.ndarray) -> int:
    if len(boundary) == 0:
        return 0
    neighbors: dict[int, list[int]] = {}
    for u, v in boundary:
        neighbors.setdefault(int(u), []).append(int(v))
        neighbors.setdefault(int(v), []).append(int(u))
    for v, ns in neighbors.items():
        if len(ns) != 2:
            raise NonManifold(f"boundary pinches at vertex {v}")
    seen = set()
    cycles = 0
    for start in neighbors:
        if start in seen:
            continue
        cycles += 1
        prev, cur = None, start
        while True:
            seen.add(cur)
            a, b2 = neighbors[cur]
            nxt = b2 if a == prev else a
            prev, cur = cur, nxt
            if cur == start:
                break
    return cycles


def _is_orientable(mesh: Mesh, edges: np.ndarray, incident: np.ndarray) -> bool:
    """Propagate a coherent orientation; a forced conflict means theta = -1."""
    tri = mesh.triangles
    # directed-edge sense per triangle: edge (u,v) with u<v traversed
    # forwards (+1) or backwards (-1)
    edge_index = {tuple(e): k for k, e in enumerate(map(tuple, edges))}

    def senses(t):
        out = []
        for a, b in ((tri[t, 0], tri[t, 1]), (tri[t, 1], tri[t, 2]),
                     (tri[t, 2], tri[t, 0])):
            key = (int(a), int(b)) if a < b else (int(b), int(a))
            out.append((edge_index[key], 1 if a < b else -1))
        return out

    n_t = len(tri)
    sign = np.zeros(n_t, dtype=np.int8)
    for seed in range(n_t):
        if sign[seed]:
            continue
        sign[seed] = 1
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            for e, s in senses(t):
                t1, t2 = incident[e]
                other = t2 if t1 == t else t1
                if other == -1:
                    continue
                s_other = next(s2 for e2, s2 in senses(other) if e2 == e)
                # coherent orientations traverse a shared edge oppositely
                needed = sign[t] if s * s_other < 0 else -sign[t]
                if sign[other] == 0:
                    sign[other] = needed
                    queue.append(other)
                elif sign[other] != needed:
                    return False
    return True
