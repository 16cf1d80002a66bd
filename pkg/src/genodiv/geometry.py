"""Union volume of equal hypercubes and Euclidean minimum spanning trees.

The exact routines here back D_L and D_MST. ``mc_union_volume`` is an
independent hit-or-miss estimator kept for verification; it locates the
nearest center in the Chebyshev norm with a k-d tree and never shares code
with the sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree


@dataclass(frozen=True, eq=False)
class HypercubeSet:
    """Closed axis-aligned hypercubes of common side ``side`` centred on ``centers``."""

    centers: np.ndarray
    side: float

    def __post_init__(self):
        c = np.array(self.centers, dtype=float)
        if c.ndim != 2 or c.shape[1] < 1:
            raise ValueError("centers must be an N x n matrix with n >= 1")
        if not (self.side > 0 and np.isfinite(self.side)):
            raise ValueError(f"side must be positive, got {self.side}")
        c.setflags(write=False)
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "side", float(self.side))

    @property
    def n(self) -> int:
        return self.centers.shape[1]

    def boxes(self) -> tuple[np.ndarray, np.ndarray]:
        half = self.side / 2.0
        return self.centers - half, self.centers + half


def _interval_union_rows(lo: np.ndarray, hi: np.ndarray, active: np.ndarray) -> np.ndarray:
    """Total length of the union of active intervals, one result per row of ``active``.

    ``lo``/``hi`` are 1-D and must be sorted by ``lo``. Inactive intervals are
    masked out of the running maximum of right ends.
    """
    ends = np.where(active, hi, -np.inf)
    reach = np.maximum.accumulate(ends, axis=1)
    prev = np.empty_like(reach)
    prev[:, 0] = -np.inf
    prev[:, 1:] = reach[:, :-1]
    gain = np.clip(hi - np.maximum(lo, prev), 0.0, None)
    return np.where(active, gain, 0.0).sum(axis=1)


def _box_union_volume(lo: np.ndarray, hi: np.ndarray) -> float:
    """Exact volume of a union of axis-aligned boxes ``[lo_i, hi_i]``."""
    n = lo.shape[1]
    if lo.shape[0] == 0:
        return 0.0
    if n == 1:
        order = np.argsort(lo[:, 0], kind="stable")
        a, b = lo[order, 0], hi[order, 0]
        return float(_interval_union_rows(a, b, np.ones((1, a.size), bool))[0])

    xs = np.unique(np.concatenate([lo[:, 0], hi[:, 0]]))
    left, right = xs[:-1], xs[1:]
    widths = right - left
    # box i spans slab s iff lo_i <= left_s and hi_i >= right_s
    active = (lo[None, :, 0] <= left[:, None]) & (hi[None, :, 0] >= right[:, None])

    if n == 2:
        order = np.argsort(lo[:, 1], kind="stable")
        lengths = _interval_union_rows(lo[order, 1], hi[order, 1], active[:, order])
        return float(np.dot(widths, lengths))

    total = 0.0
    for s in np.flatnonzero(active.any(axis=1)):
        idx = active[s]
        total += widths[s] * _box_union_volume(lo[idx, 1:], hi[idx, 1:])
    return total


def union_volume(cubes: HypercubeSet) -> float:
    """Exact n-volume of the union of ``cubes`` (not clipped to any landscape).

    Sweeps the first axis over compressed slab boundaries and recurses on the
    remaining axes; the last two axes are resolved by a vectorised
    interval-union scan per slab.
    """
    lo, hi = cubes.boxes()
    return _box_union_volume(lo, hi)


def mc_union_volume(cubes: HypercubeSet, samples: int, seed: int) -> tuple[float, float]:
    """Hit-or-miss estimate of the union volume and its binomial standard error.

    Points are drawn uniformly over the bounding box of the union.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    lo, hi = cubes.boxes()
    box_lo, box_hi = lo.min(axis=0), hi.max(axis=0)
    box_volume = float(np.prod(box_hi - box_lo))
    rng = np.random.default_rng(seed)
    tree = cKDTree(cubes.centers)
    half = cubes.side / 2.0
    hits = 0
    chunk = 1 << 18
    remaining = samples
    while remaining:
        m = min(chunk, remaining)
        pts = box_lo + rng.random((m, cubes.n)) * (box_hi - box_lo)
        dist, _ = tree.query(pts, k=1, p=np.inf, distance_upper_bound=half * (1 + 1e-12), workers=-1)
        hits += int(np.count_nonzero(dist <= half))
        remaining -= m
    rate = hits / samples
    estimate = box_volume * rate
    std_error = box_volume * np.sqrt(rate * (1.0 - rate) / samples)
    return float(estimate), float(std_error)


def emst_length(points: np.ndarray) -> float:
    """Total Euclidean length of a minimum spanning tree of the complete graph.

    Dense Prim's algorithm, O(N^2). Ties go to the lowest vertex index; the
    total weight does not depend on how ties are broken.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("points must be a non-empty N x n matrix")
    N = x.shape[0]
    if N == 1:
        return 0.0
    in_tree = np.zeros(N, dtype=bool)
    in_tree[0] = True
    best = np.sqrt(((x - x[0]) ** 2).sum(axis=1))
    best[0] = np.inf
    total = 0.0
    for _ in range(N - 1):
        j = int(np.argmin(best))
        total += best[j]
        in_tree[j] = True
        best[j] = np.inf
        d = np.sqrt(((x - x[j]) ** 2).sum(axis=1))
        upd = ~in_tree & (d < best)
        best[upd] = d[upd]
    return float(total)
