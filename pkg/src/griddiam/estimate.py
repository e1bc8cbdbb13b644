"""Result record returned by every diameter method."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import pair_distance_sq

METHODS = ("exact", "two_approx", "agarwal", "chan", "paper")


@dataclass(frozen=True)
class DiameterEstimate:
    """A diameter estimate certified by a pair of original points.

    ``value_sq`` is always the squared distance of ``witness`` recomputed on
    the original coordinates, so ``value`` never exceeds the true diameter.
    """

    value: float
    value_sq: float
    witness: tuple[int, int]
    method: str
    eps: Optional[float] = None
    details: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_pair(cls, pts: np.ndarray, i: int, j: int, method: str, eps=None, **details):
        i, j = (int(i), int(j)) if i <= j else (int(j), int(i))
        d2 = float(pair_distance_sq(pts, i, j))
        return cls(math.sqrt(d2), d2, (i, j), method, eps, details)


def best_pair(pts: np.ndarray, pairs: np.ndarray) -> tuple[float, tuple[int, int], int]:
    """Pick the candidate pair with the largest true squared distance.

    Pairs are canonicalised to ``i <= j``; ties go to the lexicographically
    smallest pair. Returns ``(dist_sq, (i, j), row)`` where ``row`` indexes
    the first input row holding the winning pair.
    """
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    canon = np.sort(pairs, axis=1)
    d2 = pair_distance_sq(pts, canon[:, 0], canon[:, 1])
    order = np.lexsort((np.arange(len(canon)), canon[:, 1], canon[:, 0], -d2))
    row = int(order[0])
    return float(d2[row]), (int(canon[row, 0]), int(canon[row, 1])), row
