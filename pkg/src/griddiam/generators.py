"""Seeded synthetic point clouds."""
from __future__ import annotations

import numpy as np

from .errors import UsageError
from .geometry import PointSet

KINDS = ("uniform-ball", "sphere-shell", "gaussian-clusters", "grid-aligned", "collinear")


def _unit_rows(rng, n, d):
    g = rng.standard_normal((n, d))
    norm = np.sqrt(np.sum(g * g, axis=1))
    # a zero row has probability zero, but stay total
    norm[norm == 0] = 1.0
    return g / norm[:, None]


def generate(kind: str, n: int, d: int, seed: int = 0) -> PointSet:
    """Deterministic point cloud of the given kind.

    ``collinear`` uses small integer anchors, directions and parameters, so
    every point lies exactly on the line and the exact diameter is the
    parameter spread times the direction norm.
    """
    if n < 1 or d < 1:
        raise UsageError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if not 0 <= seed < 2**64:
        raise UsageError(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.default_rng(seed)
    if kind == "uniform-ball":
        pts = _unit_rows(rng, n, d) * rng.random((n, 1)) ** (1.0 / d)
    elif kind == "sphere-shell":
        pts = _unit_rows(rng, n, d)
    elif kind == "gaussian-clusters":
        k = min(n, 4)
        centers = rng.uniform(-5.0, 5.0, size=(k, d))
        pts = centers[rng.integers(0, k, size=n)] + 0.5 * rng.standard_normal((n, d))
    elif kind == "grid-aligned":
        side = max(2, int(round(2.0 * n ** (1.0 / d))))
        pts = rng.integers(0, side, size=(n, d)).astype(np.float64)
    elif kind == "collinear":
        anchor = rng.integers(-10, 11, size=d)
        direction = np.zeros(d, dtype=np.int64)
        while not direction.any():
            direction = rng.integers(-5, 6, size=d)
        t = rng.integers(-1000, 1001, size=n)
        pts = (anchor + t[:, None] * direction).astype(np.float64)
    else:
        raise UsageError(f"unknown generator kind {kind!r}; choose from {', '.join(KINDS)}")
    return PointSet.from_array(pts)
