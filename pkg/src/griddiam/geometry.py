"""Point sets, bounding boxes and squared distances.

Points are stored as rows of a read-only ``(n, d)`` float64 array. Squared
distances are summed axis by axis in coordinate order so that every kernel in
the package (and any naive loop written against it) produces bit-identical
values.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError


@dataclass(frozen=True)
class PointSet:
    """An indexed set of ``n`` points in ``R^d``.

    Construct with :meth:`from_array`; it validates shape and finiteness and
    freezes the coordinate buffer so indices stay stable.
    """

    coords: np.ndarray

    @classmethod
    def from_array(cls, data) -> "PointSet":
        arr = np.array(data, dtype=np.float64, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if arr.size else arr.reshape(0, 1)
        if arr.ndim != 2:
            raise UsageError(f"expected a 2-D array of points, got shape {arr.shape}")
        if arr.shape[1] < 1:
            raise UsageError("points must have at least one coordinate")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.all(np.isfinite(arr), axis=1))[0])
            raise UsageError(f"point {bad} has a non-finite coordinate")
        arr.setflags(write=False)
        return cls(arr)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self.coords[i]


def as_points(s) -> np.ndarray:
    """Return the coordinate array behind ``s`` (a PointSet or array-like)."""
    if isinstance(s, PointSet):
        return s.coords
    return PointSet.from_array(s).coords


@dataclass(frozen=True)
class BoundingBox:
    lo: np.ndarray
    hi: np.ndarray

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    def largest_side(self) -> float:
        return largest_side(self)


def sq_norm_rows(diff: np.ndarray) -> np.ndarray:
    """Row-wise squared norm over the last axis, accumulated left to right."""
    acc = diff[..., 0] * diff[..., 0]
    for k in range(1, diff.shape[-1]):
        acc = acc + diff[..., k] * diff[..., k]
    return acc


def distance_sq(p, q) -> float:
    """Squared Euclidean distance between two points.

    >>> distance_sq((0, 0), (3, 4))
    25.0
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise UsageError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return float(sq_norm_rows(p - q))


def pair_distance_sq(pts: np.ndarray, i, j) -> np.ndarray:
    """Squared distances between rows ``i`` and ``j`` of ``pts`` (vectorised)."""
    return sq_norm_rows(pts[i] - pts[j])


def bounding_box(s) -> BoundingBox:
    pts = as_points(s)
    if pts.shape[0] == 0:
        raise UsageError("bounding box of an empty point set")
    return BoundingBox(pts.min(axis=0), pts.max(axis=0))


def largest_side(b: BoundingBox) -> float:
    return float(np.max(b.hi - b.lo))
