"""Triangle mesh container, OFF files, and combinatorial helpers.

Vertices live in R^m for any m >= 2 (punctured embeddings push surfaces
into high-dimensional spaces).  Meshes are treated as immutable after
construction; derived structures (edge tables, geodesic graphs) are cached
on the instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import NonManifold


@dataclass
class Mesh:
    """Vertices (n, m), triangles (k, 3) indexing them, optional per-vertex
    string tags marking boundary features (end ids, puncture rims)."""

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_marks: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)
        self.triangles = np.asarray(self.triangles, dtype=np.int64)
        if self.vertices.ndim != 2:
            raise ValueError("vertices must be an (n, m) array")
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise ValueError("triangles must be a (k, 3) array")
        if len(self.triangles) and (self.triangles.min() < 0
                                    or self.triangles.max() >= len(self.vertices)):
            raise ValueError("triangle index out of range")
        self._cache: dict = {}

    # -- basic quantities ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]

    def extent(self) -> float:
        """Diagonal of the bounding box; a cheap diameter surrogate."""
        return float(np.linalg.norm(self.vertices.max(axis=0)
                                    - self.vertices.min(axis=0)))

    def edges(self):
        """Unique undirected edges (E, 2) and their incident triangles (E, 2).

        The second triangle slot is -1 for boundary edges.  Raises
        NonManifold when an edge belongs to more than two triangles.
        """
        if "edges" in self._cache:
            return self._cache["edges"]
        tri = self.triangles
        raw = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [2, 0]]])
        raw.sort(axis=1)
        owner = np.tile(np.arange(len(tri)), 3)
        edges, inverse, counts = np.unique(raw, axis=0, return_inverse=True,
                                           return_counts=True)
        if counts.max(initial=0) > 2:
            bad = edges[np.argmax(counts)]
            raise NonManifold(f"edge {tuple(bad)} lies in {counts.max()} triangles")
        incident = np.full((len(edges), 2), -1, dtype=np.int64)
        order = np.argsort(inverse, kind="stable")
        slot = np.zeros(len(edges), dtype=np.int64)
        for idx in order:
            e = inverse[idx]
            incident[e, slot[e]] = owner[idx]
            slot[e] += 1
        self._cache["edges"] = (edges, incident)
        return edges, incident

    def boundary_edges(self) -> np.ndarray:
        edges, incident = self.edges()
        return edges[incident[:, 1] == -1]

    def edge_lengths(self, edges: np.ndarray) -> np.ndarray:
        diff = self.vertices[edges[:, 0]] - self.vertices[edges[:, 1]]
        return np.linalg.norm(diff, axis=1)

    def connected_vertex_components(self) -> np.ndarray:
        """Component label per vertex (via the edge graph)."""
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        edges, _ = self.edges()
        n = self.n_vertices
        ones = np.ones(len(edges))
        graph = coo_matrix((ones, (edges[:, 0], edges[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        return labels


def merge_meshes(meshes) -> Mesh:
    """Disjoint union, reindexing triangles and marks."""
    verts, tris, marks = [], [], {}
    offset = 0
    for m in meshes:
        verts.append(m.vertices)
        tris.append(m.triangles + offset)
        marks.update({v + offset: tag for v, tag in m.boundary_marks.items()})
        offset += m.n_vertices
    dims = {v.shape[1] for v in verts}
    if len(dims) != 1:
        raise ValueError("cannot merge meshes with different ambient dimensions")
    return Mesh(np.concatenate(verts), np.concatenate(tris), marks)


def submesh(mesh: Mesh, vertex_mask) -> tuple[Mesh, np.ndarray]:
    """Restrict to triangles all of whose vertices satisfy the mask.

    Returns the restricted mesh and the original index of each kept vertex.
    """
    mask = np.asarray(vertex_mask, dtype=bool)
    keep_tri = mask[mesh.triangles].all(axis=1)
    tris = mesh.triangles[keep_tri]
    used = np.unique(tris)
    remap = np.full(mesh.n_vertices, -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    marks = {int(remap[v]): tag for v, tag in mesh.boundary_marks.items()
             if remap[v] != -1}
    return Mesh(mesh.vertices[used], remap[tris], marks), used


def subdivide(mesh: Mesh) -> Mesh:
    """One uniform midpoint round: each triangle into four.

    Midpoints inherit a boundary mark only when both edge endpoints carry
    the same tag.
    """
    edges, _ = mesh.edges()
    edge_id = {tuple(e): k for k, e in enumerate(map(tuple, edges))}
    mids = 0.5 * (mesh.vertices[edges[:, 0]] + mesh.vertices[edges[:, 1]])
    verts = np.concatenate([mesh.vertices, mids])
    base = mesh.n_vertices

    def mid(u, v):
        return base + edge_id[(u, v) if u < v else (v, u)]

    tris = []
    for a, b, c in mesh.triangles:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        tris.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])

    marks = dict(mesh.boundary_marks)
    for k, (u, v) in enumerate(edges):
        tu, tv = mesh.boundary_marks.get(int(u)), mesh.boundary_marks.get(int(v))
        if tu is not None and tu == tv:
            marks[base + k] = tu
    return Mesh(verts, np.array(tris, dtype=np.int64), marks)


# -- ASCII OFF with a JSON sidecar for boundary marks -----------------------

def save_mesh(mesh: Mesh, path) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("OFF\n")
        fh.write(f"{mesh.n_vertices} {len(mesh.triangles)} 0\n")
        for row in mesh.vertices:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")
        for a, b, c in mesh.triangles:
            fh.write(f"3 {a} {b} {c}\n")
    if mesh.boundary_marks:
        with open(marks_path(path), "w", encoding="utf-8") as fh:
            json.dump({str(k): v for k, v in sorted(mesh.boundary_marks.items())},
                      fh, sort_keys=True, indent=0)
            fh.write("\n")


def marks_path(path) -> Path:
    return Path(str(path) + ".marks.json")


def load_mesh(path) -> Mesh:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens or tokens[0] != "OFF":
        raise ValueError(f"{path}: not an OFF file")
    n_v, n_f = int(tokens[1]), int(tokens[2])
    body = tokens[4:]
    # OFF does not record the vertex dimension; infer it from the token
    # count (each face record is "3 i j k" = 4 tokens).
    if n_v == 0:
        raise ValueError(f"{path}: empty mesh")
    dim, rem = divmod(len(body) - 4 * n_f, n_v)
    if rem != 0 or dim < 2:
        raise ValueError(f"{path}: inconsistent token count")
    verts = np.array(body[: n_v * dim], dtype=float).reshape(n_v, dim)
    faces = np.array(body[n_v * dim:], dtype=np.int64).reshape(n_f, 4)
    if n_f and (faces[:, 0] != 3).any():
        raise ValueError(f"{path}: only triangle faces are supported")
    marks = {}
    side = marks_path(path)
    if side.exists():
        with open(side, encoding="utf-8") as fh:
            marks = {int(k): v for k, v in json.load(fh).items()}
    return Mesh(verts, faces[:, 1:], marks)
