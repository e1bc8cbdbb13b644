"""Compiled inner loop of the recursive planar-fold reduction."""
import math

import numpy as np
from numba import njit

# dense dedup table size; levels whose grid has more cells skip dedup
_TABLE = 1 << 18


@njit(cache=True)
def _nearest(v):
    k = math.floor(v)
    if v - k >= 0.5:
        k += 1.0
    return k


@njit(cache=True)
def _true_d2(orig, a, b):
    acc = 0.0
    for t in range(orig.shape[1]):
        diff = orig[a, t] - orig[b, t]
        acc = acc + diff * diff
    return acc


@njit(cache=True)
def _line_extremes(vals, reps, n):
    imin = 0
    imax = 0
    for i in range(1, n):
        if vals[i] < vals[imin] or (vals[i] == vals[imin] and reps[i] < reps[imin]):
            imin = i
        if vals[i] > vals[imax] or (vals[i] == vals[imax] and reps[i] < reps[imax]):
            imax = i
    return reps[imin], reps[imax]


@njit(cache=True, nogil=True)
def chan_fold(pos, rep, orig, eps, cos_t, sin_t):
    """Depth-first fold/snap recursion.

    Returns ``(best_d2, i, j, leaf)``: the best true squared distance among
    leaf candidates, its pair (``i <= j``) and the ordinal of the first leaf
    that produced it. Leaves are visited in lexicographic angle order.
    """
    m, dim = pos.shape
    k = cos_t.shape[0]
    if dim == 1:
        a, b = _line_extremes(pos[:, 0], rep, m)
        if a > b:
            a, b = b, a
        return _true_d2(orig, a, b), a, b, 0

    buf = np.empty((dim + 1, m, dim))
    rbuf = np.empty((dim + 1, m), dtype=np.int64)
    cnt = np.zeros(dim + 1, dtype=np.int64)
    nxt = np.zeros(dim + 1, dtype=np.int64)
    buf[dim, :, :] = pos
    rbuf[dim, :] = rep
    cnt[dim] = m

    vals = np.empty(m)
    lat = np.empty((m, dim), dtype=np.int64)
    lo = np.empty(dim)
    hi = np.empty(dim)
    table = np.full(_TABLE, -1, dtype=np.int64)
    used = np.empty(m, dtype=np.int64)

    best = -1.0
    bi = 0
    bj = 0
    bleaf = 0
    leaf = 0
    j = dim
    while j <= dim:
        if nxt[j] == k:
            nxt[j] = 0
            j += 1
            continue
        a_idx = nxt[j]
        nxt[j] += 1
        c = cos_t[a_idx]
        s = sin_t[a_idx]
        n = cnt[j]
        src = buf[j]
        srep = rbuf[j]

        if j == 2:
            vlo = np.inf
            vhi = -np.inf
            for i in range(n):
                v = src[i, 0] * c + src[i, 1] * s
                vals[i] = v
                if v < vlo:
                    vlo = v
                if v > vhi:
                    vhi = v
            side = vhi - vlo
            if side == 0.0:
                for i in range(n):
                    vals[i] = 0.0
            else:
                cell = eps * side / 2.0
                for i in range(n):
                    vals[i] = _nearest((vals[i] - vlo) / cell)
            a, b = _line_extremes(vals, srep, n)
            if a > b:
                a, b = b, a
            d2 = _true_d2(orig, a, b)
            if d2 > best or (d2 == best and (a < bi or (a == bi and b < bj))):
                best = d2
                bi = a
                bj = b
                bleaf = leaf
            leaf += 1
            continue

        # fold the first two coordinates, keep the rest
        dst = buf[j - 1]
        drep = rbuf[j - 1]
        nd = j - 1
        for t in range(nd):
            lo[t] = np.inf
            hi[t] = -np.inf
        for i in range(n):
            v = src[i, 0] * c + src[i, 1] * s
            dst[i, 0] = v
            for t in range(1, nd):
                dst[i, t] = src[i, t + 1]
            for t in range(nd):
                if dst[i, t] < lo[t]:
                    lo[t] = dst[i, t]
                if dst[i, t] > hi[t]:
                    hi[t] = dst[i, t]
        side = 0.0
        for t in range(nd):
            if hi[t] - lo[t] > side:
                side = hi[t] - lo[t]
        if side == 0.0:
            for i in range(n):
                for t in range(nd):
                    dst[i, t] = lo[t]
                    lat[i, t] = 0
        else:
            cell = eps * side / (2.0 * math.sqrt(nd))
            for i in range(n):
                for t in range(nd):
                    q = _nearest((dst[i, t] - lo[t]) / cell)
                    lat[i, t] = np.int64(q)
                    dst[i, t] = lo[t] + q * cell
        for i in range(n):
            drep[i] = srep[i]

        # duplicates cannot change the outcome (ties go to the smallest rep);
        # drop them when the grid is small enough for a dense table
        span = np.int64(2.0 * math.sqrt(nd) / eps) + 3
        cap = 1
        for t in range(nd):
            cap *= span
            if cap > _TABLE:
                break
        if cap <= _TABLE and n > 8:
            kept = 0
            for i in range(n):
                key = 0
                for t in range(nd):
                    key = key * span + lat[i, t]
                slot = table[key]
                if slot < 0:
                    table[key] = kept
                    used[kept] = key
                    for t in range(nd):
                        dst[kept, t] = dst[i, t]
                    drep[kept] = drep[i]
                    kept += 1
                elif drep[i] < drep[slot]:
                    drep[slot] = drep[i]
            for i in range(kept):
                table[used[i]] = -1
            n = kept
        cnt[j - 1] = n
        j -= 1
    return best, bi, bj, bleaf
