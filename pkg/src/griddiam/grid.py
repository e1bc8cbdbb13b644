"""Uniform grids anchored at the bounding-box corner, and rounding onto them.

Three resolutions are used by the pipeline: a fine grid whose points are cell
centres, and two coarser grids whose points are lattice vertices. Every
rounded point keeps the smallest original index that landed on it (``rep``)
and how many parent points were merged into it (``mult``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import UsageError
from .geometry import as_points

#: relative slack for cube membership tests
CUBE_SLACK = 2.0 ** -40


class GridMode(enum.Enum):
    CELL_CENTER = "cell-center"
    LATTICE_POINT = "lattice-point"


@dataclass(frozen=True)
class GridSpec:
    origin: np.ndarray
    cell: float
    mode: GridMode

    def __post_init__(self):
        if not (self.cell > 0 and math.isfinite(self.cell)):
            raise UsageError(f"grid cell must be positive and finite, got {self.cell!r}")
        object.__setattr__(self, "origin", np.asarray(self.origin, dtype=np.float64))

    @property
    def offset(self) -> float:
        return 0.5 if self.mode is GridMode.CELL_CENTER else 0.0

    def positions(self, lattice: np.ndarray) -> np.ndarray:
        return self.origin + (lattice + self.offset) * self.cell


@dataclass(frozen=True, eq=False)
class RoundedSet:
    """Deduplicated grid points at one resolution.

    Rows of ``lattice`` are unique and sorted lexicographically, so point
    index order coincides with lattice-tuple order. For a set produced by
    rounding, ``mult.sum()`` equals the size of the parent set; subsets
    produced by :func:`prune_interior` or :meth:`subset` keep the
    multiplicities of the points they retain.
    """

    spec: GridSpec
    lattice: np.ndarray
    rep: np.ndarray
    mult: np.ndarray
    parent: Optional[object] = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.lattice.shape[0]

    @property
    def dim(self) -> int:
        return self.lattice.shape[1]

    @property
    def positions(self) -> np.ndarray:
        return self.spec.positions(self.lattice)

    def subset(self, idx) -> "RoundedSet":
        idx = np.asarray(idx, dtype=np.int64)
        return RoundedSet(self.spec, self.lattice[idx], self.rep[idx], self.mult[idx], parent=self)


def make_grid_sizes(ell: float, eps: float, d: int) -> tuple[float, float, float]:
    """Cell sides of the three grids: ``eps``, ``eps**0.5`` and ``eps**0.25``
    times ``ell / (2 sqrt(d))``."""
    check_eps(eps)
    if d < 1:
        raise UsageError(f"dimension must be >= 1, got {d}")
    if not ell > 0:
        raise UsageError(f"largest side must be positive, got {ell!r}")
    base = ell / (2.0 * math.sqrt(d))
    return eps * base, math.sqrt(eps) * base, math.sqrt(math.sqrt(eps)) * base


def check_eps(eps: float) -> None:
    if not (0.0 < eps <= 1.0):
        raise UsageError(f"eps must lie in (0, 1], got {eps!r}")


def nearest_lattice(values: np.ndarray, origin, cell: float) -> np.ndarray:
    """Index of the nearest lattice vertex per coordinate; halves go up."""
    v = (np.asarray(values, dtype=np.float64) - origin) / cell
    k = np.floor(v)
    # v - floor(v) is exact, so the tie test is exact too
    k += (v - k) >= 0.5
    return k.astype(np.int64)


def merge_duplicates(lattice: np.ndarray, rep: np.ndarray, mult: np.ndarray):
    """Collapse equal lattice rows: rows sorted, rep = min, mult = sum."""
    if lattice.shape[0] == 0:
        return lattice, rep, mult
    key = _packed_key(lattice)
    if key is not None:
        order = np.argsort(key, kind="stable")
        k = key[order]
        new = np.ones(k.shape[0], dtype=bool)
        new[1:] = k[1:] != k[:-1]
    else:
        order = np.lexsort(tuple(lattice[:, k] for k in range(lattice.shape[1] - 1, -1, -1)))
        lat = lattice[order]
        new = np.ones(lat.shape[0], dtype=bool)
        new[1:] = np.any(lat[1:] != lat[:-1], axis=1)
    starts = np.flatnonzero(new)
    return (
        lattice[order[starts]],
        np.minimum.reduceat(rep[order], starts),
        np.add.reduceat(mult[order], starts),
    )


def _packed_key(lattice: np.ndarray):
    """Mixed-radix int64 encoding preserving lexicographic row order, or
    None when the coordinate ranges are too wide to fit."""
    lo = lattice.min(axis=0)
    span = lattice.max(axis=0) - lo + 1
    if np.sum(np.log2(span.astype(np.float64))) >= 62:
        return None
    key = np.zeros(lattice.shape[0], dtype=np.int64)
    for k in range(lattice.shape[1]):
        key = key * span[k] + (lattice[:, k] - lo[k])
    return key


def round_to_cell_centers(s, spec: GridSpec) -> RoundedSet:
    """Replace each point by the centre of the grid cell containing it."""
    if spec.mode is not GridMode.CELL_CENTER:
        raise UsageError("round_to_cell_centers needs a cell-center grid")
    pts = as_points(s)
    if spec.origin.shape != (pts.shape[1],):
        raise UsageError("grid origin and points differ in dimension")
    lattice = np.floor((pts - spec.origin) / spec.cell).astype(np.int64)
    n = pts.shape[0]
    lat, rep, mult = merge_duplicates(lattice, np.arange(n, dtype=np.int64), np.ones(n, dtype=np.int64))
    return RoundedSet(spec, lat, rep, mult, parent=s)


def round_to_lattice(r: RoundedSet, spec: GridSpec) -> RoundedSet:
    """Move each grid point of ``r`` to the nearest vertex of a coarser lattice."""
    if spec.mode is not GridMode.LATTICE_POINT:
        raise UsageError("round_to_lattice needs a lattice-point grid")
    if spec.cell < r.spec.cell:
        raise UsageError(f"target cell {spec.cell} is finer than source cell {r.spec.cell}")
    if spec.origin.shape != (r.dim,):
        raise UsageError("grid origin and points differ in dimension")
    lattice = nearest_lattice(r.positions, spec.origin, spec.cell)
    lat, rep, mult = merge_duplicates(lattice, r.rep, r.mult)
    return RoundedSet(spec, lat, rep, mult, parent=r)


def prune_interior(r: RoundedSet, axis: Optional[int] = None) -> RoundedSet:
    """Keep only the two extreme points of every axis-parallel column.

    Points sharing all lattice coordinates except ``axis`` form a column;
    squared distance from any fixed point is convex along the column, so the
    interior points never realise a farthest pair and the set's diameter is
    unchanged. ``axis`` defaults to the last one.
    """
    d = r.dim
    if axis is None:
        axis = d - 1
    if not 0 <= axis < d:
        raise UsageError(f"axis {axis} out of range for dimension {d}")
    return r.subset(extreme_index(r.lattice, axis))


def extreme_index(lattice: np.ndarray, axis: int) -> np.ndarray:
    """Sorted row indices kept by :func:`prune_interior`."""
    m, d = lattice.shape
    if m <= 2:
        return np.arange(m)
    others = [k for k in range(d) if k != axis]
    keys = (lattice[:, axis],) + tuple(lattice[:, k] for k in reversed(others))
    order = np.lexsort(keys)
    if others:
        col = lattice[order][:, others]
        brk = np.any(col[1:] != col[:-1], axis=1)
    else:
        brk = np.zeros(m - 1, dtype=bool)
    first = np.ones(m, dtype=bool)
    first[1:] = brk
    last = np.ones(m, dtype=bool)
    last[:-1] = brk
    return np.sort(order[first | last])


def points_in_cube(r: RoundedSet, center, side: float) -> np.ndarray:
    """Indices of the grid points of ``r`` inside the closed axis-parallel
    cube of the given side centred at ``center``."""
    if not side > 0:
        raise UsageError(f"cube side must be positive, got {side!r}")
    center = np.asarray(center, dtype=np.float64)
    if center.shape != (r.dim,):
        raise UsageError("cube centre and grid differ in dimension")
    half = side / 2.0 + side * CUBE_SLACK
    inside = np.all(np.abs(r.positions - center) <= half, axis=1)
    return np.flatnonzero(inside)
