"""Exact quadratic diameter and diametrical-pair enumeration."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .geometry import as_points, sq_norm_rows
from .grid import RoundedSet

DEFAULT_PAIR_CAP = 4096

# elements of the (rows, cols, d) difference tensor materialised per block
_BLOCK_ELEMS = 1 << 22


@dataclass(frozen=True)
class DiametricalPairList:
    """All index pairs attaining the maximum squared lattice distance.

    ``pairs`` is an ``(k, 2)`` int array with ``pairs[:, 0] < pairs[:, 1]``,
    sorted lexicographically. ``truncated`` is set when more than the cap
    were found and only the first ``cap`` are kept.
    """

    dist_sq_lattice: int
    pairs: np.ndarray
    truncated: bool = False

    def __len__(self) -> int:
        return self.pairs.shape[0]


def _row_blocks(n: int, d: int):
    step = max(1, _BLOCK_ELEMS // max(1, n * d))
    for s in range(0, n - 1, step):
        yield s, min(s + step, n - 1)


def _upper_block(pts: np.ndarray, s: int, e: int, fill):
    """Squared distances for rows ``s:e`` against columns ``s+1:``, with the
    lower triangle (``j <= i``) overwritten by ``fill``."""
    d2 = sq_norm_rows(pts[s:e, None, :] - pts[None, s + 1:, :])
    rows = np.arange(e - s)[:, None]
    cols = np.arange(pts.shape[0] - s - 1)[None, :]
    return np.where(cols >= rows, d2, fill)


def brute_force_diameter(pts) -> tuple[float, tuple[int, int]]:
    """Largest squared distance over all pairs, with the lexicographically
    smallest witness ``(i, j)``, ``i < j``, attaining it.

    A single point gives ``(0.0, (0, 0))``.
    """
    pts = as_points(pts)
    n = pts.shape[0]
    if n == 0:
        raise UsageError("diameter of an empty point set")
    if n == 1:
        return 0.0, (0, 0)
    best, pair = -1.0, (0, 1)
    for s, e in _row_blocks(n, pts.shape[1]):
        d2 = _upper_block(pts, s, e, -1.0)
        flat = int(np.argmax(d2))
        v = float(d2.flat[flat])
        if v > best:
            r, c = divmod(flat, d2.shape[1])
            best, pair = v, (s + r, s + 1 + c)
    return best, pair


def lattice_pairs(lattice: np.ndarray, cap: int = DEFAULT_PAIR_CAP) -> DiametricalPairList:
    """Exact diametrical pairs of integer points (rows of ``lattice``)."""
    if cap < 1:
        raise UsageError(f"pair cap must be >= 1, got {cap}")
    lat = np.asarray(lattice, dtype=np.int64)
    m = lat.shape[0]
    if m == 0:
        raise UsageError("diametrical pairs of an empty set")
    if m == 1:
        return DiametricalPairList(0, np.zeros((1, 2), dtype=np.int64))
    best = -1
    for s, e in _row_blocks(m, lat.shape[1]):
        best = max(best, int(_upper_block(lat, s, e, -1).max()))
    found = []
    total = 0
    for s, e in _row_blocks(m, lat.shape[1]):
        r, c = np.nonzero(_upper_block(lat, s, e, -1) == best)
        if r.size:
            # np.nonzero is row-major, so blocks stay in lexicographic order
            found.append(np.column_stack([s + r, s + 1 + c]))
            total += r.size
            if total > cap:
                break
    pairs = np.concatenate(found).astype(np.int64)
    truncated = pairs.shape[0] > cap
    return DiametricalPairList(best, pairs[:cap], truncated)


def diametrical_pairs(r: RoundedSet, cap: int = DEFAULT_PAIR_CAP) -> DiametricalPairList:
    """Diametrical pairs of a rounded set, compared exactly in lattice units.

    Indices refer to points of ``r``; because ``r`` is sorted by lattice
    tuple, the lexicographic pair order is also lattice order.
    """
    return lattice_pairs(r.lattice, cap)
