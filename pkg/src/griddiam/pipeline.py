"""Three-phase grid rounding diameter approximation.

The point set is rounded onto three nested grids of increasing cell size.
The diameter is found by brute force on the coarsest set, then the search is
narrowed twice: around each coarse farthest pair, the points of the next finer
set that fall in two small cubes are the only ones examined. The finest stage
uses the recursive planar-fold reduction instead of brute force.

The reported value is the true distance of the best pair of *original*
points met anywhere along the way, so it never exceeds the diameter.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .directional import chan_recursive_diameter
from .errors import InvariantError, UsageError
from .estimate import DiameterEstimate, best_pair
from .exact import DEFAULT_PAIR_CAP, DiametricalPairList, diametrical_pairs, lattice_pairs
from .geometry import as_points, bounding_box, largest_side
from .grid import (
    GridMode,
    GridSpec,
    RoundedSet,
    check_eps,
    extreme_index,
    make_grid_sizes,
    points_in_cube,
    prune_interior,
    round_to_cell_centers,
    round_to_lattice,
)

ROUNDING_PHASES = ("bbox", "round_xi", "round_xi1", "round_xi2")


def count_bounds(d: int, eps: float) -> dict:
    """Worst-case sizes of the coarsest set and of the two kinds of cube."""
    q = eps ** 0.25
    return {
        "n_S_hat2": (2.0 * math.sqrt(d) / q + 1.0) ** d,
        "box_level1": (2.0 / q + 1.0) ** d,
        "box_level0": (2.0 / math.sqrt(eps) + 1.0) ** d,
    }


@dataclass
class PhaseStats:
    """Per-phase sizes and timings of one pipeline run."""

    n_input: int
    dim: int
    eps: float
    n_S_hat: int = 0
    n_S_hat1: int = 0
    n_S_hat2: int = 0
    n_S_hat2_pruned: int = 0
    pairs_level2: int = 0
    pairs_level1: int = 0
    box_level1: int = 0
    box_level0: int = 0
    truncated_level2: bool = False
    truncated_level1: bool = False
    cells: tuple = ()
    timings: dict = field(default_factory=dict)

    def counts(self) -> dict:
        """Everything except timings, in a stable order."""
        return {
            "n_input": self.n_input,
            "n_S_hat": self.n_S_hat,
            "n_S_hat1": self.n_S_hat1,
            "n_S_hat2": self.n_S_hat2,
            "n_S_hat2_pruned": self.n_S_hat2_pruned,
            "pairs_level2": self.pairs_level2,
            "pairs_level1": self.pairs_level1,
            "box_level1": self.box_level1,
            "box_level0": self.box_level0,
            "truncated_level2": self.truncated_level2,
            "truncated_level1": self.truncated_level1,
        }

    def rounding_time(self) -> float:
        return sum(self.timings.get(k, 0.0) for k in ROUNDING_PHASES)

    def bound_violations(self) -> list[str]:
        out = []
        if self.n_input == 0 or not self.n_S_hat:
            return out
        if not (self.n_S_hat2 <= self.n_S_hat1 <= self.n_S_hat <= self.n_input):
            out.append("set sizes not monotone")
        lim = count_bounds(self.dim, self.eps)
        for key in ("n_S_hat2", "box_level1", "box_level0"):
            if getattr(self, key) > lim[key]:
                out.append(f"{key}={getattr(self, key)} exceeds {lim[key]:.6g}")
        return out


@dataclass
class RefineResult:
    best_sq: float
    pairs: Optional[DiametricalPairList]
    candidates: np.ndarray
    max_box: int


def _cube_union(coarse_pos, finer: RoundedSet, p: int, q: int, side: float):
    b1 = points_in_cube(finer, coarse_pos[p], side)
    b2 = points_in_cube(finer, coarse_pos[q], side)
    if b1.size == 0 or b2.size == 0:
        raise InvariantError(f"empty refinement cube around coarse pair ({p}, {q})")
    return np.union1d(b1, b2), max(b1.size, b2.size)


def refine_level(
    pairs: DiametricalPairList,
    coarse: RoundedSet,
    finer: RoundedSet,
    side: float,
    solver: str,
    eps: float,
    original: np.ndarray,
    cap: int = DEFAULT_PAIR_CAP,
) -> RefineResult:
    """Re-solve the diameter inside the cubes around each coarse pair.

    For every pair of ``coarse`` indices, the points of ``finer`` within the
    two cubes of the given side centred on the pair are pruned and their
    union's diameter is computed, by exact brute force in lattice units
    (``solver="brute"``) or by the recursive reduction (``solver="chan"``).

    With ``"brute"``, ``pairs`` of the result holds every finer-set pair that
    ties for the overall maximum, merged across coarse pairs. Candidates are
    original-index pairs of every local winner.
    """
    if solver not in ("brute", "chan"):
        raise UsageError(f"unknown solver {solver!r}")
    if len(pairs) == 0:
        raise UsageError("no coarse pairs to refine")
    if not side > 0:
        raise UsageError(f"cube side must be positive, got {side!r}")
    coarse_pos = coarse.positions
    axis = finer.dim - 1
    best = -1
    tied = []
    cands = []
    max_box = 0
    for p, q in pairs.pairs:
        union, box = _cube_union(coarse_pos, finer, int(p), int(q), side)
        max_box = max(max_box, box)
        idx = union[extreme_index(finer.lattice[union], axis)]
        if solver == "brute":
            local = lattice_pairs(finer.lattice[idx], cap)
            found = idx[local.pairs]
            cands.append(finer.rep[found])
            if local.dist_sq_lattice > best:
                best, tied = local.dist_sq_lattice, [found]
            elif local.dist_sq_lattice == best:
                tied.append(found)
        else:
            d2, cand = chan_recursive_diameter(finer.positions[idx], eps, finer.rep[idx], original)
            cands.append(np.array([[cand.i, cand.j]], dtype=np.int64))
            best = max(best, d2)
    candidates = np.concatenate(cands)
    if solver == "chan":
        return RefineResult(float(best), None, candidates, max_box)
    merged = np.unique(np.concatenate(tied), axis=0)
    level = DiametricalPairList(int(best), merged[:cap], merged.shape[0] > cap)
    return RefineResult(float(best), level, candidates, max_box)


def round_phases(pts, eps: float, box=None, stats: Optional[PhaseStats] = None):
    """Round onto the three grids; returns the cell-centre set and the two
    lattice sets, finest first. Sizes and timings go into ``stats``."""
    pts = as_points(pts)
    if stats is None:
        stats = PhaseStats(pts.shape[0], pts.shape[1], eps)
    clock = time.perf_counter
    if box is None:
        t = clock()
        box = bounding_box(pts)
        stats.timings["bbox"] = clock() - t
    xi, xi1, xi2 = make_grid_sizes(largest_side(box), eps, pts.shape[1])
    stats.cells = (xi, xi1, xi2)
    t = clock()
    s0 = round_to_cell_centers(pts, GridSpec(box.lo, xi, GridMode.CELL_CENTER))
    stats.timings["round_xi"] = clock() - t
    t = clock()
    s1 = round_to_lattice(s0, GridSpec(box.lo, xi1, GridMode.LATTICE_POINT))
    stats.timings["round_xi1"] = clock() - t
    t = clock()
    s2 = round_to_lattice(s1, GridSpec(box.lo, xi2, GridMode.LATTICE_POINT))
    stats.timings["round_xi2"] = clock() - t
    stats.n_S_hat, stats.n_S_hat1, stats.n_S_hat2 = len(s0), len(s1), len(s2)
    return s0, s1, s2


def approximate_diameter(s, eps: float, cap: int = DEFAULT_PAIR_CAP):
    """Approximate the diameter of ``s`` within a factor ``1 + O(eps)``.

    Returns ``(DiameterEstimate, PhaseStats)``.
    """
    check_eps(eps)
    if cap < 1:
        raise UsageError(f"pair cap must be >= 1, got {cap}")
    pts = as_points(s)
    n, d = pts.shape
    if n == 0:
        raise UsageError("diameter of an empty point set")
    stats = PhaseStats(n, d, eps)
    clock = time.perf_counter

    t = clock()
    box = bounding_box(pts)
    ell = largest_side(box)
    stats.timings["bbox"] = clock() - t
    if n == 1 or ell == 0:
        return DiameterEstimate.from_pair(pts, 0, min(1, n - 1), "paper", eps), stats

    s0, s1, s2 = round_phases(pts, eps, box, stats)
    t = clock()
    s2p = prune_interior(s2)
    stats.n_S_hat2_pruned = len(s2p)
    top = diametrical_pairs(s2p, cap)
    stats.pairs_level2 = len(top)
    stats.truncated_level2 = top.truncated
    stats.timings["seed"] = clock() - t
    cands = [s2p.rep[top.pairs]]

    t = clock()
    xi, xi1, xi2 = stats.cells
    lvl1 = refine_level(top, s2p, s1, 2.0 * xi2, "brute", eps, pts, cap)
    stats.pairs_level1 = len(lvl1.pairs)
    stats.truncated_level1 = lvl1.pairs.truncated
    stats.box_level1 = lvl1.max_box
    stats.timings["refine_xi1"] = clock() - t
    cands.append(lvl1.candidates)

    t = clock()
    lvl0 = refine_level(lvl1.pairs, s1, s0, 2.0 * xi1, "chan", eps, pts, cap)
    stats.box_level0 = lvl0.max_box
    stats.timings["refine_xi"] = clock() - t
    cands.append(lvl0.candidates)

    _, (i, j), _ = best_pair(pts, np.concatenate(cands))
    return DiameterEstimate.from_pair(pts, i, j, "paper", eps), stats
