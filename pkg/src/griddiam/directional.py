"""Projection-based diameter methods.

* :func:`agarwal_diameter` projects onto a net of directions covering the
  sphere and keeps the widest extent.
* :func:`chan_recursive_diameter` folds two coordinates into one along a
  small set of planar angles, snaps the result to a grid and recurses in one
  dimension less, down to a line.
* :func:`two_approx_baseline` is the farthest point from an arbitrary point.

All of them report the best *true* distance among the point pairs their
projections single out, so every estimate is a certified lower bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .estimate import DiameterEstimate, best_pair
from .geometry import as_points, bounding_box, largest_side, sq_norm_rows
from ._kernels import chan_fold
from .grid import GridMode, GridSpec, check_eps, round_to_cell_centers

NORM_TOL = 2.0 ** -40


@dataclass(frozen=True)
class DirectionNet:
    dim: int
    directions: np.ndarray
    max_angle: float

    def __len__(self) -> int:
        return self.directions.shape[0]


@dataclass(frozen=True)
class CandidatePair:
    i: int
    j: int
    source: str


def _facet_nodes(step: float) -> np.ndarray:
    k = math.ceil(1.0 / step) - 1
    inner = np.arange(-k, k + 1) * step
    inner = inner[np.abs(inner) < 1.0]
    return np.concatenate([[-1.0], inner, [1.0]])


def sphere_direction_net(d: int, eps: float) -> DirectionNet:
    """Unit directions such that every line through the origin is within
    ``arccos(1 / (1 + eps))`` of one of them.

    Each facet of the cube ``[-1, 1]^d`` is gridded, grid nodes are pushed
    onto the sphere, and antipodal duplicates are dropped. The facet step is
    chosen so that a facet point and its nearest node subtend at most the
    target angle from the origin.
    """
    check_eps(eps)
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    if d == 1:
        return DirectionNet(1, np.ones((1, 1)), 0.0)
    angle = math.acos(1.0 / (1.0 + eps))
    # nearest node is within step/2 per facet axis; a chord of length t on a
    # facet subtends at most 2*atan(t/2)
    step = min(2.0, 4.0 * math.tan(angle / 2.0) / math.sqrt(d - 1))
    nodes = _facet_nodes(step)
    grids = np.meshgrid(*([nodes] * (d - 1)), indexing="ij")
    facet = np.stack([g.ravel() for g in grids], axis=1)
    raw = np.concatenate([np.insert(facet, a, 1.0, axis=1) for a in range(d)])
    # canonical sign: first nonzero coordinate positive
    lead = raw[np.arange(len(raw)), np.argmax(raw != 0, axis=1)]
    raw = np.unique(raw * np.sign(lead)[:, None], axis=0)
    dirs = raw / np.sqrt(sq_norm_rows(raw))[:, None]
    return DirectionNet(d, dirs, angle)


def project_extent(pts, direction) -> tuple[float, float]:
    """Min and max of ``<p, direction>`` over the points."""
    pts = np.asarray(pts, dtype=np.float64)
    u = np.asarray(direction, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise UsageError("need a non-empty (n, d) array of points")
    if u.shape != (pts.shape[1],):
        raise UsageError("direction and points differ in dimension")
    proj = pts @ u
    return float(proj.min()), float(proj.max())


def agarwal_diameter(s, eps: float, net: DirectionNet = None) -> DiameterEstimate:
    """Widest projection over a direction net.

    The reported value is the true distance of the best extreme pair found
    over all directions, which is at least the widest projected extent.
    """
    pts = as_points(s)
    n, d = pts.shape
    if n < 2:
        raise UsageError("agarwal_diameter needs at least two points")
    if net is None:
        net = sphere_direction_net(d, eps)
    dirs = net.directions
    chunk = max(1, (1 << 22) // n)
    lo_idx, hi_idx, widths = [], [], []
    for s0 in range(0, len(dirs), chunk):
        proj = pts @ dirs[s0:s0 + chunk].T
        a, b = proj.argmin(axis=0), proj.argmax(axis=0)
        cols = np.arange(proj.shape[1])
        lo_idx.append(a)
        hi_idx.append(b)
        widths.append(proj[b, cols] - proj[a, cols])
    pairs = np.column_stack([np.concatenate(lo_idx), np.concatenate(hi_idx)])
    widths = np.concatenate(widths)
    _, (i, j), _ = best_pair(pts, pairs)
    return DiameterEstimate.from_pair(
        pts, i, j, "agarwal", eps, width=float(widths.max()), directions=len(dirs)
    )


def planar_angle_net(eps: float) -> np.ndarray:
    """Angles ``0, δ, 2δ, ...`` covering ``[0, π)`` with ``δ = sqrt(2 eps)``."""
    check_eps(eps)
    delta = math.sqrt(2.0 * eps)
    return np.arange(math.ceil(math.pi / delta)) * delta


def chan_recursive_diameter(positions, eps: float, reps=None, original=None):
    """Recursive planar-fold diameter approximation.

    ``positions`` is an ``(m, dim)`` array; ``reps[i]`` names the original
    point that row ``i`` stands for (defaults to ``i``) and ``original`` holds
    the original coordinates (defaults to ``positions``). Returns the best
    true squared distance among the leaf candidates and the candidate itself.
    """
    pos = np.ascontiguousarray(positions, dtype=np.float64)
    if pos.ndim == 1:
        pos = pos[:, None]
    m, dim = pos.shape
    if m == 0:
        raise UsageError("chan_recursive_diameter needs at least one point")
    rep = np.arange(m, dtype=np.int64) if reps is None else np.ascontiguousarray(reps, dtype=np.int64)
    orig = pos if original is None else np.ascontiguousarray(as_points(original))
    if rep.shape != (m,):
        raise UsageError("reps must have one entry per position")
    theta = planar_angle_net(eps)
    k = theta.shape[0]
    d2, i, j, leaf = chan_fold(pos, rep, orig, float(eps), np.cos(theta), np.sin(theta))
    path = []
    for _ in range(dim - 1):
        leaf, a = divmod(int(leaf), k)
        path.append(str(a))
    source = "chan:" + "/".join(reversed(path)) if path else "chan:line"
    return float(d2), CandidatePair(int(i), int(j), source)


def chan_diameter(s, eps: float) -> DiameterEstimate:
    """Round onto the fine cell-centre grid, then run the recursive reduction."""
    pts = as_points(s)
    n, d = pts.shape
    if n < 2:
        raise UsageError("chan_diameter needs at least two points")
    check_eps(eps)
    box = bounding_box(pts)
    ell = largest_side(box)
    if ell == 0:
        return DiameterEstimate.from_pair(pts, 0, 1, "chan", eps)
    cell = eps * ell / (2.0 * math.sqrt(d))
    r = round_to_cell_centers(pts, GridSpec(box.lo, cell, GridMode.CELL_CENTER))
    _, cand = chan_recursive_diameter(r.positions, eps, r.rep, pts)
    return DiameterEstimate.from_pair(pts, cand.i, cand.j, "chan", eps, source=cand.source, rounded=len(r))


def two_approx_baseline(s) -> DiameterEstimate:
    """Farthest point from point 0; within a factor 2 of the diameter."""
    pts = as_points(s)
    if pts.shape[0] < 2:
        raise UsageError("two_approx_baseline needs at least two points")
    d2 = sq_norm_rows(pts[1:] - pts[0])
    j = int(np.argmax(d2)) + 1
    return DiameterEstimate.from_pair(pts, 0, j, "two_approx")
