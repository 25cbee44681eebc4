"""Young diagrams, interlacing, and the Hall-Littlewood factors b and Phi."""

from collections import Counter
from functools import lru_cache

from .ring import ONE, ZERO, IntPolyT, ZSeries


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is empty.

    Trailing zeros are dropped on construction so equality is structural.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self):
        return f"Partition({list(self)})"

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def part(self, j):
        """1-based part, reading missing parts as 0."""
        return self[j - 1] if 1 <= j <= len(self) else 0

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def to_json(self):
        return list(self)


EMPTY = Partition()


def interlaces(lam, mu):
    """True iff ``lam`` interlaces ``mu`` (lam_j >= mu_j >= lam_{j+1})."""
    n = max(len(lam), len(mu)) + 1
    lam_ = list(lam) + [0] * (n - len(lam))
    mu_ = list(mu) + [0] * (n - len(mu))
    for j in range(n - 1):
        if not lam_[j] >= mu_[j] >= lam_[j + 1]:
            return False
    return True


def multiplicities(mu):
    """``{part length: count}``; absent lengths have multiplicity 0."""
    return dict(Counter(mu))


@lru_cache(maxsize=None)
def b_poly(mu):
    """prod_j prod_{k=1}^{p_j(mu)} (1 - t^k)."""
    out = ONE
    for m in multiplicities(mu).values():
        for k in range(1, m + 1):
            out = out * (1 - IntPolyT.t(k))
    return out


@lru_cache(maxsize=None)
def phi_poly(lam, mu):
    """Transition factor: (1 - t^{p_j(mu)}) for every j whose multiplicity
    drops by one from mu to lam; 0 when lam does not interlace mu."""
    if not interlaces(lam, mu):
        return ZERO
    pl, pm = multiplicities(lam), multiplicities(mu)
    out = ONE
    for j, m in pm.items():
        if pl.get(j, 0) - m == -1:
            out = out * (1 - IntPolyT.t(m))
    return out


def skew_hl(lam, mu, order_half, arg_half):
    """One-variable skew Hall-Littlewood function at ``z**(arg_half/2)``."""
    phi = phi_poly(Partition(lam), Partition(mu))
    if not phi:
        return ZSeries(order_half)
    shift = arg_half * (sum(lam) - sum(mu))
    if shift > order_half:
        return ZSeries(order_half)
    return ZSeries.monomial(shift, phi, order_half)


# --- generation --------------------------------------------------------------

def partitions_of(n, max_part=None, max_len=None):
    """All partitions of n, largest parts first (reverse lexicographic)."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield EMPTY
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions_of(n - first, first, rest_len):
            yield Partition((first,) + rest)


def partitions_up_to(n, max_len=None):
    for m in range(n + 1):
        yield from partitions_of(m, max_len=max_len)


def strips_above(mu, max_added, max_len=None):
    """Partitions lam interlacing mu with |lam| - |mu| <= max_added.

    ``max_len`` bounds the length of lam (used for finite-box states).
    """
    mu = tuple(mu)
    n = len(mu) + 1
    if max_len is not None:
        n = min(n, max_len)
    lam = [0] * n

    def rec(j, budget):
        if j == n:
            yield Partition(lam)
            return
        low = mu[j] if j < len(mu) else 0
        if j == 0:
            high = low + budget
        else:
            high = min(mu[j - 1], low + budget)
        for v in range(low, high + 1):
            lam[j] = v
            yield from rec(j + 1, budget - (v - low))
        lam[j] = 0

    if len(mu) > n:
        return
    yield from rec(0, max_added)


def strips_below(lam):
    """Partitions mu with lam interlacing mu."""
    lam = tuple(lam)
    n = len(lam)
    mu = [0] * n

    def rec(j):
        if j == n:
            yield Partition(mu)
            return
        low = lam[j + 1] if j + 1 < n else 0
        for v in range(lam[j], low - 1, -1):
            mu[j] = v
            yield from rec(j + 1)

    yield from rec(0)
