import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from griddiam.errors import UsageError
from griddiam.geometry import bounding_box, largest_side
from griddiam.grid import (
    GridMode,
    GridSpec,
    RoundedSet,
    make_grid_sizes,
    nearest_lattice,
    points_in_cube,
    prune_interior,
    round_to_cell_centers,
    round_to_lattice,
)
from griddiam.pipeline import count_bounds, round_phases

from conftest import naive_lattice_pairs


def test_grid_sizes_collapse_at_eps_one():
    for d in (1, 2, 3, 7):
        assert make_grid_sizes(2 * math.sqrt(d), 1.0, d) == (1.0, 1.0, 1.0)


def test_grid_sizes_formula():
    assert make_grid_sizes(4.0, 0.0625, 4) == (0.0625, 0.25, 0.5)


@given(st.floats(1e-3, 1e3), st.floats(1e-6, 1.0), st.integers(1, 12))
def test_grid_sizes_geometric(ell, eps, d):
    xi, xi1, xi2 = make_grid_sizes(ell, eps, d)
    assert xi <= xi1 <= xi2
    base = ell / (2 * math.sqrt(d))
    assert xi1 * xi1 == pytest.approx(xi * base, rel=1e-12)
    assert xi2 * xi2 == pytest.approx(xi1 * base, rel=1e-12)


@pytest.mark.parametrize("eps", [0.0, -0.5, 1.5, float("nan")])
def test_grid_sizes_reject_eps(eps):
    with pytest.raises(UsageError):
        make_grid_sizes(1.0, eps, 2)


def test_cell_center_rounding_1d():
    spec = GridSpec([0.0], 0.5, GridMode.CELL_CENTER)
    r = round_to_cell_centers([[0.3]], spec)
    assert r.lattice.tolist() == [[0]]
    assert r.positions.tolist() == [[0.25]]
    r = round_to_cell_centers([[0.1], [0.4]], spec)
    assert len(r) == 1 and r.mult.tolist() == [2] and r.rep.tolist() == [0]


def test_cell_center_displacement_scan(rng):
    pts = rng.random((10_000, 4))
    box = bounding_box(pts)
    xi, _, _ = make_grid_sizes(largest_side(box), 0.25, 4)
    r = round_to_cell_centers(pts, GridSpec(box.lo, xi, GridMode.CELL_CENTER))
    where = {tuple(row): k for k, row in enumerate(r.lattice.tolist())}
    pos = r.positions
    worst = 0.0
    for i, p in enumerate(pts):
        cell = tuple(int(v) for v in np.floor((p - box.lo) / xi))
        worst = max(worst, float(np.linalg.norm(p - pos[where[cell]])))
    assert worst <= xi * math.sqrt(4) / 2
    assert r.mult.sum() == len(pts)


def test_nearest_lattice_examples():
    assert nearest_lattice(np.array([0.74]), 0.0, 0.5).tolist() == [1]
    assert nearest_lattice(np.array([0.75]), 0.0, 0.5).tolist() == [2]
    assert nearest_lattice(np.array([-0.25]), 0.0, 0.5).tolist() == [0]
    assert nearest_lattice(np.array([0.7499999999999999]), 0.0, 0.5).tolist() == [1]


def test_round_to_lattice_tie_goes_up():
    fine = RoundedSet(GridSpec([0.0], 0.5, GridMode.CELL_CENTER), np.array([[0]]), np.array([0]), np.array([1]))
    coarse = round_to_lattice(fine, GridSpec([0.0], 0.5, GridMode.LATTICE_POINT))
    # centre 0.25 sits exactly half a cell from 0 and 0.5
    assert coarse.lattice.tolist() == [[1]]
    assert coarse.positions.tolist() == [[0.5]]


def test_round_to_lattice_rejects_finer_target():
    fine = round_to_cell_centers([[0.0], [1.0]], GridSpec([0.0], 0.5, GridMode.CELL_CENTER))
    with pytest.raises(UsageError):
        round_to_lattice(fine, GridSpec([0.0], 0.25, GridMode.LATTICE_POINT))
    with pytest.raises(UsageError):
        round_to_lattice(fine, GridSpec([0.0], 1.0, GridMode.CELL_CENTER))


@pytest.mark.parametrize("eps", [1.0, 0.5, 0.1, 0.02])
@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_provenance_and_multiplicity(rng, eps, d):
    pts = rng.standard_normal((3000, d))
    s0, s1, s2 = round_phases(pts, eps)
    xi, xi1, xi2 = make_grid_sizes(largest_side(bounding_box(pts)), eps, d)
    for r, parent_n in ((s0, len(pts)), (s1, len(s0)), (s2, len(s1))):
        assert r.mult.sum() == len(pts)
        assert len(r) <= parent_n
        # unique rows in lexicographic order
        rows = [tuple(x) for x in r.lattice.tolist()]
        assert rows == sorted(set(rows))
        assert np.all((0 <= r.rep) & (r.rep < len(pts)))
    slack = 1 + 1e-9
    assert np.max(np.linalg.norm(s0.positions - pts[s0.rep], axis=1)) <= xi * math.sqrt(d) / 2 * slack
    reach = (xi + xi1 + xi2) * math.sqrt(d) / 2
    assert np.max(np.linalg.norm(s2.positions - pts[s2.rep], axis=1)) <= reach * slack


def test_rep_is_smallest_merged_index():
    pts = np.array([[0.9], [0.1], [0.2], [5.0]])
    r = round_to_cell_centers(pts, GridSpec([0.0], 1.0, GridMode.CELL_CENTER))
    assert r.rep.tolist() == [0, 3]
    assert r.mult.tolist() == [3, 1]


def test_coarse_count_within_provable_bound(rng):
    # three roundings can push the top index past ell/xi2 by at most 2
    for d in (2, 3, 4):
        for eps in (1.0, 0.5, 0.25, 0.1):
            pts = rng.random((4000, d))
            _, _, s2 = round_phases(pts, eps)
            assert len(s2) <= (2 * math.sqrt(d) / eps ** 0.25 + 3) ** d


def test_coarse_count_can_exceed_volume_estimate(rng):
    # nearest-vertex rounding reaches index round(ell/xi2), one more lattice
    # value per axis than the (ell + xi2)/xi2 volume count allows
    pts = np.random.default_rng(1).random((3000, 3))
    _, _, s2 = round_phases(pts, 0.25)
    assert len(s2) > count_bounds(3, 0.25)["n_S_hat2"]


def test_prune_examples():
    spec = GridSpec([0.0], 1.0, GridMode.LATTICE_POINT)
    col = RoundedSet(spec, np.array([[0], [1], [2], [3]]), np.arange(4), np.ones(4, dtype=int))
    assert prune_interior(col, 0).lattice.tolist() == [[0], [3]]
    spec2 = GridSpec([0.0, 0.0], 1.0, GridMode.LATTICE_POINT)
    lat = np.array([[0, 0], [0, 5], [1, 2], [2, 1], [2, 3]])
    r = RoundedSet(spec2, lat, np.arange(5), np.ones(5, dtype=int))
    assert prune_interior(r).lattice.tolist() == lat.tolist()
    with pytest.raises(UsageError):
        prune_interior(r, 2)


def test_prune_keeps_column_extremes_along_chosen_axis():
    spec = GridSpec([0.0, 0.0], 1.0, GridMode.LATTICE_POINT)
    lat = np.array([[0, 0], [0, 1], [0, 2], [1, 0], [2, 0]])
    r = RoundedSet(spec, lat, np.arange(5), np.ones(5, dtype=int))
    assert prune_interior(r, 1).lattice.tolist() == [[0, 0], [0, 2], [1, 0], [2, 0]]
    assert prune_interior(r, 0).lattice.tolist() == [[0, 0], [0, 1], [0, 2], [2, 0]]


def test_prune_preserves_diameter_2000(rng):
    pts = rng.standard_normal((20_000, 3))
    _, s1, _ = round_phases(pts, 0.02)
    r = s1.subset(rng.choice(len(s1), size=min(2000, len(s1)), replace=False))
    r = RoundedSet(r.spec, *_sorted(r.lattice, r.rep, r.mult))
    pruned = prune_interior(r)
    assert len(pruned) < len(r)
    assert naive_lattice_pairs(pruned.lattice)[0] == naive_lattice_pairs(r.lattice)[0]


def _sorted(lat, rep, mult):
    order = np.lexsort(lat.T[::-1])
    return lat[order], rep[order], mult[order]


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.int64, st.tuples(st.integers(1, 60), st.integers(1, 4)), elements=st.integers(-6, 6)),
    st.data(),
)
def test_prune_preserves_diameter_property(lat, data):
    lat = np.unique(lat, axis=0)
    axis = data.draw(st.integers(0, lat.shape[1] - 1))
    spec = GridSpec(np.zeros(lat.shape[1]), 1.0, GridMode.LATTICE_POINT)
    r = RoundedSet(spec, lat, np.arange(len(lat)), np.ones(len(lat), dtype=int))
    pruned = prune_interior(r, axis)
    assert set(map(tuple, pruned.lattice.tolist())) <= set(map(tuple, lat.tolist()))
    assert naive_lattice_pairs(pruned.lattice)[0] == naive_lattice_pairs(lat)[0]
    # every diametrical pair survives pruning
    kept = {tuple(x) for x in pruned.lattice.tolist()}
    _, pairs = naive_lattice_pairs(lat)
    for i, j in pairs:
        assert tuple(lat[i]) in kept and tuple(lat[j]) in kept


def test_points_in_cube_contains_own_point(rng):
    pts = rng.standard_normal((500, 3))
    _, s1, _ = round_phases(pts, 0.1)
    pos = s1.positions
    for k in range(0, len(s1), 37):
        for side in (1e-9, 0.01, 1.0):
            assert k in points_in_cube(s1, pos[k], side)


def test_points_in_cube_is_closed():
    spec = GridSpec([0.0, 0.0], 1.0, GridMode.LATTICE_POINT)
    lat = np.array([[0, 0], [1, 1], [2, 0]])
    r = RoundedSet(spec, lat, np.arange(3), np.ones(3, dtype=int))
    assert points_in_cube(r, [1.0, 1.0], 2.0).tolist() == [0, 1, 2]
    assert points_in_cube(r, [1.0, 1.0], 1.999).tolist() == [1]
    with pytest.raises(UsageError):
        points_in_cube(r, [0.0, 0.0], 0.0)


@pytest.mark.parametrize("eps", [1.0, 0.5, 0.25, 0.1])
def test_cube_counts_respect_volume_ratios(rng, eps):
    d = 3
    pts = rng.random((20_000, d))
    s0, s1, s2 = round_phases(pts, eps)
    xi, xi1, xi2 = make_grid_sizes(largest_side(bounding_box(pts)), eps, d)
    lim = count_bounds(d, eps)
    for c in s2.positions[:: max(1, len(s2) // 50)]:
        assert len(points_in_cube(s1, c, 2 * xi2)) <= lim["box_level1"]
    for c in s1.positions[:: max(1, len(s1) // 50)]:
        assert len(points_in_cube(s0, c, 2 * xi1)) <= lim["box_level0"]
