"""Hot inner loops, with a numba path and a pure-numpy path.

Set ``HLPLANE_DISABLE_NUMBA=1`` to force the numpy path.  Both paths are
always importable, so tests and the benchmark can compare them directly.

Coefficient grids are 2-D arrays indexed ``[z_half, t_degree]``.  The numba
convolution works on int64 and is only chosen when an a-priori bound shows
no intermediate value can overflow; otherwise the object-dtype numpy path
keeps Python big integers.
"""

import os

import numpy as np
from scipy import ndimage

_FLAG = os.environ.get("HLPLANE_DISABLE_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")

_INT64_SAFE = 2**62


# --- truncated 2-D convolution ---------------------------------------------

def conv_trunc_numpy(a, b, n_rows):
    """Exact convolution of two grids, keeping rows ``< n_rows``.

    Works on any dtype; with ``object`` arrays the arithmetic is on Python
    integers and cannot overflow.
    """
    n_cols = a.shape[1] + b.shape[1] - 1
    out = np.zeros((n_rows, n_cols), dtype=object)
    rows_b = [k for k in range(min(b.shape[0], n_rows)) if b[k].any()]
    for i in range(min(a.shape[0], n_rows)):
        row = a[i]
        if not row.any():
            continue
        for k in rows_b:
            if i + k >= n_rows:
                break
            out[i + k] += np.convolve(row, b[k])
    return out


def _conv_trunc_loops(a, b, n_rows):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((n_rows, ca + cb - 1), dtype=np.int64)
    for i in range(min(ra, n_rows)):
        for k in range(min(rb, n_rows - i)):
            for p in range(ca):
                x = a[i, p]
                if x == 0:
                    continue
                for q in range(cb):
                    out[i + k, p + q] += x * b[k, q]
    return out


if USE_NUMBA:
    conv_trunc_numba = numba.njit(cache=True)(_conv_trunc_loops)
else:
    conv_trunc_numba = None


def int64_safe(a, b):
    """True when every output entry of ``a * b`` provably fits in int64."""
    if a.size == 0 or b.size == 0:
        return True
    sa = sum(abs(int(x)) for x in a.flat)
    mb = max(abs(int(x)) for x in b.flat)
    return sa * mb < _INT64_SAFE


def conv_trunc(a, b, n_rows, use_numba=None):
    """Dispatching truncated convolution; returns an object array."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and conv_trunc_numba is not None and int64_safe(a, b):
        res = conv_trunc_numba(a.astype(np.int64), b.astype(np.int64), n_rows)
        return res.astype(object)
    return conv_trunc_numpy(a.astype(object), b.astype(object), n_rows)


# --- diagonal levels and path labelling -------------------------------------

def levels_numpy(h):
    """Per-cell level: run length of equal heights down the main diagonal.

    ``h`` is an int array; cells with height 0 get level 0.
    """
    rows, cols = h.shape
    pad = np.zeros((rows + 1, cols + 1), dtype=np.int64)
    pad[:rows, :cols] = h
    lev = np.zeros_like(pad)
    for i in range(rows - 1, -1, -1):
        same = pad[i, :cols] == pad[i + 1, 1:cols + 1]
        lev[i, :cols] = np.where(same, lev[i + 1, 1:cols + 1] + 1, 1)
    lev[pad == 0] = 0
    return lev[:rows, :cols]


def paths_numpy(h, lev):
    """Label 4-connected components of cells sharing height and level.

    Returns ``(labels, path_levels)`` where ``labels`` is 0 off the support
    and ``path_levels[k - 1]`` is the level of path ``k``.
    """
    labels = np.zeros(h.shape, dtype=np.int64)
    path_levels = []
    keys = np.unique(np.stack([h[h > 0], lev[h > 0]], axis=1), axis=0)
    for height, level in keys:
        mask = (h == height) & (lev == level)
        comp, n = ndimage.label(mask)
        if n:
            labels[mask] = comp[mask] + len(path_levels)
            path_levels.extend([int(level)] * n)
    return labels, np.array(path_levels, dtype=np.int64)


def _levels_loops(h):
    rows, cols = h.shape
    lev = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows - 1, -1, -1):
        for j in range(cols - 1, -1, -1):
            if h[i, j] == 0:
                continue
            if i + 1 < rows and j + 1 < cols and h[i + 1, j + 1] == h[i, j]:
                lev[i, j] = lev[i + 1, j + 1] + 1
            else:
                lev[i, j] = 1
    return lev


def _paths_loops(h, lev):
    rows, cols = h.shape
    labels = np.zeros((rows, cols), dtype=np.int64)
    path_levels = np.zeros(rows * cols, dtype=np.int64)
    stack = np.zeros((rows * cols, 2), dtype=np.int64)
    n = 0
    for i0 in range(rows):
        for j0 in range(cols):
            if h[i0, j0] == 0 or labels[i0, j0] != 0:
                continue
            n += 1
            path_levels[n - 1] = lev[i0, j0]
            labels[i0, j0] = n
            stack[0, 0] = i0
            stack[0, 1] = j0
            top = 1
            while top > 0:
                top -= 1
                i = stack[top, 0]
                j = stack[top, 1]
                for d in range(4):
                    if d == 0:
                        a, b = i - 1, j
                    elif d == 1:
                        a, b = i + 1, j
                    elif d == 2:
                        a, b = i, j - 1
                    else:
                        a, b = i, j + 1
                    if a < 0 or b < 0 or a >= rows or b >= cols:
                        continue
                    if labels[a, b] != 0 or h[a, b] != h[i0, j0]:
                        continue
                    if lev[a, b] != lev[i0, j0]:
                        continue
                    labels[a, b] = n
                    stack[top, 0] = a
                    stack[top, 1] = b
                    top += 1
    return labels, path_levels[:n]


if USE_NUMBA:
    levels_numba = numba.njit(cache=True)(_levels_loops)
    paths_numba = numba.njit(cache=True)(_paths_loops)
else:
    levels_numba = paths_numba = None


def levels_and_paths(h, use_numba=None):
    """Return ``(levels, labels, path_levels)`` for a height array."""
    if use_numba is None:
        use_numba = USE_NUMBA
    h = np.ascontiguousarray(h, dtype=np.int64)
    if use_numba and levels_numba is not None:
        lev = levels_numba(h)
        labels, path_levels = paths_numba(h, lev)
    else:
        lev = levels_numpy(h)
        labels, path_levels = paths_numpy(h, lev)
    return lev, labels, path_levels
