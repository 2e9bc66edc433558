"""Batch kernels over many difference vectors at once.

Rows of an ``(M, n)`` int64 array are independent vectors. Each kernel has a
numba implementation and a vectorised numpy implementation; the public names
point at one of them, chosen at import time:

* numba is used when it imports and ``GOODRHYTHM_NUMBA`` is unset or truthy;
* ``GOODRHYTHM_NUMBA=0`` forces the numpy path.

Both implementations are always importable (``*_numba`` / ``*_numpy``) so
tests and the benchmark can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_FLAG = os.environ.get("GOODRHYTHM_NUMBA", "1").strip().lower()
USE_NUMBA = HAVE_NUMBA and _FLAG not in {"0", "false", "no", "off"}
BACKEND = "numba" if USE_NUMBA else "numpy"


def _as_rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array of vectors, got shape {X.shape}")
    return X


# --- numpy ------------------------------------------------------------------

def dav_fc_rows_numpy(X) -> np.ndarray:
    X = _as_rows(X)
    nxt = np.roll(X, -1, axis=1)
    s = X + nxt
    return np.where(X % 2 == 0, s // 2, -((-s) // 2))


def orbit_rows_numpy(X, cap: int):
    """Iterate each row until its width is <= 1 or ``cap`` steps were taken.

    Returns ``(distance, terminal_rows, cap_hit)``.
    """
    Y = _as_rows(X).copy()
    dist = np.zeros(Y.shape[0], dtype=np.int64)
    active = (Y.max(axis=1) - Y.min(axis=1)) > 1 if Y.size else np.zeros(0, bool)
    steps = 0
    while steps < cap and active.any():
        idx = np.flatnonzero(active)
        Z = dav_fc_rows_numpy(Y[idx])
        Y[idx] = Z
        dist[idx] += 1
        active[idx] = (Z.max(axis=1) - Z.min(axis=1)) > 1
        steps += 1
    return dist, Y, active.copy()


def rotation_period_rows_numpy(X) -> np.ndarray:
    """Least ``p >= 1`` with the left rotation by ``p`` fixing the row."""
    X = _as_rows(X)
    M, n = X.shape
    period = np.full(M, n, dtype=np.int64)
    found = np.zeros(M, dtype=bool)
    for p in range(1, n):
        hit = (np.roll(X, -p, axis=1) == X).all(axis=1) & ~found
        period[hit] = p
        found |= hit
    return period


# --- numba ------------------------------------------------------------------

if HAVE_NUMBA:

    @njit
    def _av_fc_nb(a, b):
        s = a + b
        if a % 2 == 0:
            return s // 2
        return -((-s) // 2)

    @njit
    def _dav_fc_into(src, dst):
        n = src.shape[0]
        for k in range(n):
            dst[k] = _av_fc_nb(src[k], src[(k + 1) % n])

    @njit
    def _width(v):
        lo = v[0]
        hi = v[0]
        for x in v:
            if x < lo:
                lo = x
            if x > hi:
                hi = x
        return hi - lo

    @njit
    def _dav_fc_rows_nb(X):
        out = np.empty_like(X)
        for r in range(X.shape[0]):
            _dav_fc_into(X[r], out[r])
        return out

    @njit
    def _orbit_rows_nb(X, cap):
        M, n = X.shape
        Y = X.copy()
        dist = np.zeros(M, dtype=np.int64)
        cap_hit = np.zeros(M, dtype=np.bool_)
        buf = np.empty(n, dtype=np.int64)
        for r in range(M):
            cur = Y[r]
            k = 0
            while _width(cur) > 1:
                if k >= cap:
                    cap_hit[r] = True
                    break
                _dav_fc_into(cur, buf)
                cur[:] = buf
                k += 1
            dist[r] = k
        return dist, Y, cap_hit

    @njit
    def _rotation_period_rows_nb(X):
        M, n = X.shape
        period = np.full(M, n, dtype=np.int64)
        for r in range(M):
            for p in range(1, n):
                same = True
                for k in range(n):
                    if X[r, (k + p) % n] != X[r, k]:
                        same = False
                        break
                if same:
                    period[r] = p
                    break
        return period

    def dav_fc_rows_numba(X) -> np.ndarray:
        return _dav_fc_rows_nb(_as_rows(X))

    def orbit_rows_numba(X, cap: int):
        return _orbit_rows_nb(_as_rows(X), int(cap))

    def rotation_period_rows_numba(X) -> np.ndarray:
        return _rotation_period_rows_nb(_as_rows(X))

else:  # pragma: no cover
    dav_fc_rows_numba = dav_fc_rows_numpy
    orbit_rows_numba = orbit_rows_numpy
    rotation_period_rows_numba = rotation_period_rows_numpy


if USE_NUMBA:
    dav_fc_rows = dav_fc_rows_numba
    orbit_rows = orbit_rows_numba
    rotation_period_rows = rotation_period_rows_numba
else:
    dav_fc_rows = dav_fc_rows_numpy
    orbit_rows = orbit_rows_numpy
    rotation_period_rows = rotation_period_rows_numpy


def cd_rows(N: int, n: int) -> np.ndarray:
    """All of CD_N^(n) as an ``(M, n)`` array in lexicographic order.

    Built column by column: each prefix is extended by every value that
    still lets the remaining columns (each in ``[0, N-1]``) reach the sum N.
    """
    rows = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for col in range(n):
        left = n - col - 1
        hi = np.minimum(N - 1, N - sums)
        lo = np.maximum(0, N - sums - (N - 1) * left)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        parent = np.repeat(np.arange(len(sums)), counts)
        starts = np.cumsum(counts) - counts
        vals = lo[parent] + (np.arange(total) - starts[parent])
        rows = np.column_stack([rows[parent], vals])
        sums = sums[parent] + vals
    return rows.astype(np.int64)
