"""Dimension of the direction set at infinity, by epsilon-net counting.

Far samples x with |x| >= R are normalized to directions x/|x|; greedy
epsilon-nets at two resolutions count how the covering grows.  Halving
epsilon roughly quadruples the count on a 2-dimensional direction set,
doubles it on a curve of directions, and leaves it unchanged on finitely
many limit directions.  The tangent cone at infinity is the cone over the
direction set, so its dimension is one higher; a surface end is a 1-tube
exactly when that cone is 2-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TooFewFarSamples
from .mesh import Mesh


@dataclass(frozen=True)
class DirectionSummary:
    """Verdict at the largest usable radius, with the per-radius counts."""

    radius: float
    n_samples: int
    eps: float
    count_eps: int
    count_half_eps: int
    ratio: float
    direction_dim: int
    cone_dim: int
    per_radius: tuple[tuple[float, int, int], ...]

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "n_samples": self.n_samples,
            "eps": self.eps,
            "count_eps": self.count_eps,
            "count_half_eps": self.count_half_eps,
            "ratio": self.ratio,
            "direction_dim": self.direction_dim,
            "cone_dim": self.cone_dim,
        }


def _greedy_net_count(points: np.ndarray, eps: float) -> int:
    order = np.lexsort(points.T[::-1])
    centers: list[np.ndarray] = []
    for idx in order:
        p = points[idx]
        if not centers or np.min(np.linalg.norm(np.array(centers) - p,
                                                axis=1)) > eps:
            centers.append(p)
    return len(centers)


def _dimension_from_ratio(ratio: float) -> int:
    if ratio >= 3.0:
        return 2
    if ratio >= 1.5:
        return 1
    return 0


def cone_directions(obj, R_grid=None, eps: float = 0.2,
                    min_samples: int = 30) -> DirectionSummary:
    """Direction-set dimension verdict for a mesh or a curve sampler.

    For meshes the samples are the vertices with norm at least R, over a
    grid of radii (defaulting to the 50/70/85 percent quantiles of the
    vertex norms); the verdict uses the largest radius that keeps at least
    ``min_samples`` samples.  Curve samplers are probed along a huge-t tail
    instead.
    """
    if hasattr(obj, "direction"):  # curve sampler
        ts = np.geomspace(1e8, 1e16, 256)
        dirs = np.array([obj.direction(t) for t in ts])
        per = [(float("inf"), *_net_counts(dirs, eps))]
        c1, c2 = per[0][1], per[0][2]
        return _summary(float("inf"), dirs, eps, c1, c2, per)

    mesh: Mesh = obj
    norms = np.linalg.norm(mesh.vertices, axis=1)
    if R_grid is None:
        R_grid = np.quantile(norms, [0.5, 0.7, 0.85])
    R_grid = sorted(float(r) for r in R_grid)

    per = []
    verdict = None
    for R in R_grid:
        far = norms >= R
        if far.sum() < min_samples:
            continue
        dirs = mesh.vertices[far] / norms[far, None]
        c1, c2 = _net_counts(dirs, eps)
        per.append((R, c1, c2))
        verdict = (R, dirs, c1, c2)
    if verdict is None:
        raise TooFewFarSamples(
            f"fewer than {min_samples} samples beyond every radius in the grid")
    R, dirs, c1, c2 = verdict
    return _summary(R, dirs, eps, c1, c2, per)


def _net_counts(dirs, eps):
    return (_greedy_net_count(dirs, eps), _greedy_net_count(dirs, eps / 2.0))


def _summary(R, dirs, eps, c1, c2, per):
    ratio = c2 / max(c1, 1)
    dim = _dimension_from_ratio(ratio)
    return DirectionSummary(
        radius=R, n_samples=len(dirs), eps=eps, count_eps=c1,
        count_half_eps=c2, ratio=float(ratio), direction_dim=dim,
        cone_dim=dim + 1, per_radius=tuple(per),
    )
