"""Plane partitions: enumeration, diagonal slices, levels, paths and weights."""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .partition import EMPTY, Partition, b_poly, interlaces, partitions_up_to, phi_poly, strips_below
from .ring import ONE, IntPolyT, ZSeries


class PlanePartition:
    """Finite array of heights, weakly decreasing along rows and columns.

    Stored as a tuple of rows with zeros stripped, so equal partitions
    compare and hash equal regardless of padding.
    """

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        clean = []
        for r in rows:
            r = [int(x) for x in r]
            while r and r[-1] == 0:
                r.pop()
            clean.append(tuple(r))
        while clean and not clean[-1]:
            clean.pop()
        for i, r in enumerate(clean):
            if any(x < 0 for x in r):
                raise ValueError("heights must be non-negative")
            if any(r[j] < r[j + 1] for j in range(len(r) - 1)):
                raise ValueError(f"row {i} is not weakly decreasing: {r}")
            if i:
                prev = clean[i - 1]
                if len(r) > len(prev) or any(r[j] > prev[j] for j in range(len(r))):
                    raise ValueError(f"column condition fails between rows {i - 1} and {i}")
        self.rows = tuple(clean)

    @property
    def volume(self):
        return sum(map(sum, self.rows))

    @property
    def shape(self):
        """(number of rows, number of columns) of the support."""
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return 0

    def heights(self):
        r, c = self.shape
        h = np.zeros((r, c), dtype=np.int64)
        for i, row in enumerate(self.rows):
            h[i, :len(row)] = row
        return h

    def __eq__(self, other):
        if not isinstance(other, PlanePartition):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"PlanePartition({[list(r) for r in self.rows]})"

    def to_json(self):
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data):
        return cls(data)


# --- slicing -----------------------------------------------------------------

def slices(pi):
    """Diagonal slices ``{k: mu_k}`` of a plane partition (nonempty ones only).

    ``mu_k = (pi[0,k], pi[1,k+1], ...)`` for k >= 0 and
    ``mu_k = (pi[-k,0], pi[-k+1,1], ...)`` for k < 0.
    """
    rows, cols = pi.shape
    out = {}
    for k in range(-rows + 1, cols):
        i, j = (0, k) if k >= 0 else (-k, 0)
        parts = []
        while pi[i, j] > 0:
            parts.append(pi[i, j])
            i += 1
            j += 1
        if parts:
            out[k] = Partition(parts)
    return out


def assemble(slice_family):
    """Inverse of :func:`slices`; rejects chains that fail to interlace."""
    fam = {int(k): Partition(v) for k, v in dict(slice_family).items() if len(v)}
    if not fam:
        return PlanePartition()
    lo, hi = min(min(fam), 0), max(max(fam), 0)
    get = lambda k: fam.get(k, EMPTY)
    for k in range(1, hi + 2):
        if not interlaces(get(k - 1), get(k)):
            raise ValueError(f"slices {k - 1} and {k} do not interlace")
    for k in range(-1, lo - 2, -1):
        if not interlaces(get(k + 1), get(k)):
            raise ValueError(f"slices {k + 1} and {k} do not interlace")
    n_rows, n_cols = 1 - lo, hi + 1
    grid = [[0] * (n_cols + n_rows) for _ in range(n_rows + n_cols)]
    for k, mu in fam.items():
        i, j = (0, k) if k >= 0 else (-k, 0)
        for r, v in enumerate(mu):
            grid[i + r][j + r] = v
    return PlanePartition(grid)


# --- levels and paths --------------------------------------------------------

@dataclass(frozen=True)
class LevelDecomposition:
    level: np.ndarray
    paths: list  # (level, height, frozenset of cells)
    path_mult: dict


def level_decompose(pi):
    """Per-cell diagonal levels and the 4-connected equal-(height, level) paths."""
    h = pi.heights()
    if h.size == 0:
        return LevelDecomposition(h, [], {})
    lev, labels, path_levels = _kernels.levels_and_paths(h)
    cells = {}
    for (i, j), lab in np.ndenumerate(labels):
        if lab:
            cells.setdefault(int(lab), []).append((i, j))
    paths = []
    for lab in sorted(cells):
        i, j = cells[lab][0]
        paths.append((int(lev[i, j]), int(h[i, j]), frozenset(cells[lab])))
    mult = dict(Counter(int(x) for x in path_levels))
    return LevelDecomposition(np.asarray(lev), paths, mult)


def path_multiplicities(pi):
    """``{level: number of paths}`` without materializing cell sets."""
    h = pi.heights()
    if h.size == 0:
        return {}
    _, _, path_levels = _kernels.levels_and_paths(h)
    return dict(Counter(int(x) for x in path_levels))


def max_level(pi):
    h = pi.heights()
    if h.size == 0:
        return 0
    lev, _, _ = _kernels.levels_and_paths(h)
    return int(lev.max())


@lru_cache(maxsize=None)
def _one_minus_t_pow(j, p):
    return (1 - IntPolyT.t(j)) ** p


def weight_from_multiplicities(mult):
    out = ONE
    for j, p in sorted(mult.items()):
        out = out * _one_minus_t_pow(j, p)
    return out


def weight_A(pi):
    """prod_j (1 - t^j)^{p_j(pi)} over level-j path counts."""
    return weight_from_multiplicities(path_multiplicities(pi))


def weight_via_slices(pi):
    """The same weight rebuilt from b of the central slice and the Phi chain."""
    fam = slices(pi)
    if not fam:
        return ONE
    get = lambda k: fam.get(k, EMPTY)
    out = b_poly(get(0))
    k = 1
    while get(k - 1):
        out = out * phi_poly(get(k - 1), get(k))
        k += 1
    k = -1
    while get(k + 1):
        out = out * phi_poly(get(k + 1), get(k))
        k -= 1
    return out


# --- enumeration -------------------------------------------------------------

@lru_cache(maxsize=None)
def _descending_chains(mu, budget):
    """Chains mu > nu_1 > ... > nu_r = empty with sum |nu_i| <= budget.

    Returns ``{volume used: tuple of chains}``; each chain is a tuple of
    the nonempty nu_i.
    """
    if not mu:
        return {0: ((),)}
    out = {}
    for nu in strips_below(mu):
        size = nu.size
        if size > budget:
            continue
        if not nu:
            out.setdefault(0, []).append(())
            continue
        for used, tails in _descending_chains(nu, budget - size).items():
            out.setdefault(used + size, []).extend((nu,) + tail for tail in tails)
    return {v: tuple(c) for v, c in out.items()}


def _from_chains(mu0, left, right):
    fam = {0: mu0}
    for k, nu in enumerate(right, start=1):
        fam[k] = nu
    for k, nu in enumerate(left, start=1):
        fam[-k] = nu
    return assemble(fam)


def enumerate_by_volume(n, centers=None):
    """All plane partitions of volume n, built from diagonal slice chains.

    ``centers`` optionally restricts the central slice, which lets callers
    split the work by mu_0.
    """
    if n < 0:
        raise ValueError("volume must be non-negative")
    out = []
    pool = partitions_up_to(n) if centers is None else centers
    for mu0 in pool:
        mu0 = Partition(mu0)
        rest = n - mu0.size
        if rest < 0:
            continue
        chains = _descending_chains(mu0, rest)
        for used_right, rights in chains.items():
            lefts = chains.get(rest - used_right, ())
            for right in rights:
                for left in lefts:
                    out.append(_from_chains(mu0, left, right))
    return out


def enumerate_by_cells(n):
    """Independent enumerator: fill cells row-major with monotonicity checks."""
    results = []

    def rows_rec(rows, remaining):
        if remaining == 0:
            results.append(PlanePartition(rows))
            return
        prev = rows[-1] if rows else None
        width = len(prev) if prev is not None else remaining
        row = []

        def cell(j, left):
            # extend the current row by one cell, or close the row
            if row:
                rows.append(tuple(row))
                rows_rec(rows, left)
                rows.pop()
            if j >= width:
                return
            cap = left
            if row:
                cap = min(cap, row[-1])
            if prev is not None:
                cap = min(cap, prev[j])
            for v in range(1, cap + 1):
                row.append(v)
                cell(j + 1, left - v)
                row.pop()

        cell(0, remaining)

    rows_rec([], n)
    return results


def enumerate_in_box(s, max_height, max_volume=None):
    """Plane partitions on an s-by-s base with heights <= max_height.

    ``max_volume`` prunes during generation; the output equals the
    unrestricted stream filtered by volume.
    """
    if s < 1 or max_height < 0:
        raise ValueError("need s >= 1 and max_height >= 0")
    budget = float("inf") if max_volume is None else max_volume
    grid = [[0] * s for _ in range(s)]

    def rec(c, left):
        if c == s * s:
            yield PlanePartition(grid)
            return
        i, j = divmod(c, s)
        cap = max_height
        if i:
            cap = min(cap, grid[i - 1][j])
        if j:
            cap = min(cap, grid[i][j - 1])
        cap = min(cap, left)
        for v in range(cap + 1):
            grid[i][j] = v
            yield from rec(c + 1, left - v)
        grid[i][j] = 0

    yield from rec(0, budget)


def count_by_volume(n_max):
    return [len(enumerate_by_volume(n)) for n in range(n_max + 1)]


# --- brute-force generating functions ----------------------------------------

def _accumulate(partitions, order, level_cap=None):
    coeffs = [IntPolyT() for _ in range(order + 1)]
    for pi in partitions:
        v = pi.volume
        if v > order:
            continue
        mult = path_multiplicities(pi)
        if level_cap is not None and mult and max(mult) > level_cap:
            continue
        coeffs[v] = coeffs[v] + weight_from_multiplicities(mult)
    return coeffs


def _volume_chunk(args):
    order, centers, level_cap = args
    parts = []
    for n in range(order + 1):
        parts.extend(enumerate_by_volume(n, centers=centers))
    return _accumulate(parts, order, level_cap)


def brute_force_series(order, level_cap=None, workers=1):
    """Sum of A_pi z^|pi| over all |pi| <= order, by explicit enumeration.

    ``level_cap`` keeps only partitions whose paths all have level <= cap.
    With ``workers > 1`` the central slices are split across processes.
    """
    centers = list(partitions_up_to(order))
    chunks = [centers[i::max(workers, 1)] for i in range(max(workers, 1))]
    jobs = [(order, c, level_cap) for c in chunks if c]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            partials = list(ex.map(_volume_chunk, jobs))
    else:
        partials = [_volume_chunk(j) for j in jobs]
    total = [IntPolyT() for _ in range(order + 1)]
    for part in partials:
        total = [a + b for a, b in zip(total, part)]
    return ZSeries.from_integer_coeffs(total, order)


def box_brute_force_series(s, order):
    """Sum of A_pi z^|pi| over plane partitions in an s-by-s box, |pi| <= order."""
    coeffs = _accumulate(enumerate_in_box(s, order, max_volume=order), order)
    return ZSeries.from_integer_coeffs(coeffs, order)
