import numpy as np
import pytest
from numba import njit

_ACCEPTANCE = []


@njit(cache=True)
def _naive_loop(pts):
    n, d = pts.shape
    best = -1.0
    bi, bj = 0, 0
    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for k in range(d):
                t = pts[i, k] - pts[j, k]
                s += t * t
            if s > best:
                best = s
                bi, bj = i, j
    return best, bi, bj


def naive_diameter(pts):
    """Plain double loop: max squared distance, first lexicographic witness."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if pts.shape[0] == 1:
        return 0.0, (0, 0)
    best, i, j = _naive_loop(pts)
    return best, (int(i), int(j))


@njit(cache=True)
def _naive_int_loop(lat):
    n, d = lat.shape
    best = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = 0
            for k in range(d):
                t = lat[i, k] - lat[j, k]
                s += t * t
            if s > best:
                best = s
    return best


def naive_lattice_diameter(lat):
    """Squared integer diameter by a plain double loop."""
    return int(_naive_int_loop(np.ascontiguousarray(lat, dtype=np.int64)))


def naive_lattice_pairs(lat):
    """Full integer distance matrix; every pair at the max, i < j."""
    lat = np.asarray(lat, dtype=np.int64)
    diff = lat[:, None, :] - lat[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    best = int(np.triu(d2, 1).max()) if len(lat) > 1 else 0
    i, j = np.nonzero(np.triu(d2 == best, 1))
    return best, sorted(zip(i.tolist(), j.tolist()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def acceptance():
    def record(cid, ok, detail=""):
        _ACCEPTANCE.append((cid, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{cid}: {'PASS' if ok else 'FAIL'}  {detail}")
