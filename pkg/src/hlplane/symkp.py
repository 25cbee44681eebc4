"""Schur and Hall-Littlewood determinants, character polynomials, KP checks.

Polynomials in the KP times ``x_1, x_2, ...`` are graded by weight (``x_k``
has weight k) and truncated at a weight cutoff.  Everything is exact over
the rationals.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import factorial

from .partition import EMPTY, Partition, partitions_of, partitions_up_to

SAMPLE_VALUES = tuple(Fraction(p, q) * s for p, q in ((1, 1), (1, 2), (1, 3), (2, 3))
                      for s in (1, -1))


def sample_rationals(rng, n, values=SAMPLE_VALUES):
    """Draw n rationals from the small-denominator sample set."""
    return [rng.choice(values) for _ in range(n)]


def det(matrix):
    """Exact determinant by Gaussian elimination over Fractions."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                row_r, row_c = a[r], a[c]
                for k in range(c, n):
                    row_r[k] -= f * row_c[k]
    return sign * out


def rational_nullspace(rows, n_cols):
    """Basis of ``{v : rows @ v = 0}`` over the rationals (reduced echelon)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


# --- one-variable generating functions ---------------------------------------

def complete_homogeneous_all(m_max, u):
    """``[h_0 .. h_{m_max}]`` for the variables u."""
    h = [Fraction(1)] + [Fraction(0)] * m_max
    for x in u:
        x = Fraction(x)
        for m in range(1, m_max + 1):
            h[m] += x * h[m - 1]
    return h


def complete_homogeneous(m, u):
    if m < 0:
        return Fraction(0)
    return complete_homogeneous_all(m, u)[m]


def hl_q_all(m_max, v, t_val):
    """Coefficients of ``prod_j (1 - t v_j z)/(1 - v_j z)`` up to ``z**m_max``."""
    t_val = Fraction(t_val)
    q = [Fraction(1)] + [Fraction(0)] * m_max
    for x in v:
        x = Fraction(x)
        # multiply by 1/(1 - x z), then by (1 - t x z)
        for m in range(1, m_max + 1):
            q[m] += x * q[m - 1]
        for m in range(m_max, 0, -1):
            q[m] -= t_val * x * q[m - 1]
    return q


def hl_q(m, v, t_val):
    if m < 0:
        return Fraction(0)
    return hl_q_all(m, v, t_val)[m]


def _jacobi_trudi(lam, seq):
    n = len(lam)
    at = lambda k: seq[k] if 0 <= k < len(seq) else Fraction(0)
    return det([[at(lam[i] - i + j) for j in range(n)] for i in range(n)])


def schur(lam, u):
    """Schur polynomial ``det(h_{lam_i - i + j})`` at the point u."""
    lam = Partition(lam)
    if not lam:
        return Fraction(1)
    return _jacobi_trudi(lam, complete_homogeneous_all(lam[0] + len(lam), u))


def hl_S(lam, v, t_val):
    """``det(q_{lam_i - i + j}(v; t))``."""
    lam = Partition(lam)
    if not lam:
        return Fraction(1)
    return _jacobi_trudi(lam, hl_q_all(lam[0] + len(lam), v, t_val))


def cauchy_check(s, max_deg, a, b, t_val):
    """Both sides of the Cauchy-type identity, graded by ``u -> eps a``, ``v -> eps b``.

    Returns ``(lhs, rhs)`` where entry d is the coefficient of ``eps**(2d)``:
    ``sum_{|lam|=d, l(lam)<=s} s_lam(a) S_lam(b; t)`` versus the expansion of
    ``prod (1 - t w a_i b_j)/(1 - w a_i b_j)`` in ``w = eps**2``.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    a, b = list(a)[:s], list(b)[:s]
    lhs = []
    for d in range(max_deg + 1):
        lhs.append(sum((schur(lam, a) * hl_S(lam, b, t_val)
                        for lam in partitions_of(d, max_len=s)), Fraction(0)))
    products = [Fraction(x) * Fraction(y) for x in a for y in b]
    rhs = hl_q_all(max_deg, products, t_val)
    return lhs, rhs


def cauchy_full_sum(u, v, t_val, max_deg):
    """Exact value of ``sum_{l(lam)<=len(u)} s_lam(u) S_lam(v; t)``.

    The graded sums ``c_d`` have generating function ``N(w)/D(w)`` with
    ``D(w) = prod (1 - w u_i v_j)``.  ``D * sum c_d w^d`` is checked to be a
    polynomial of degree ``<= deg D`` through ``w**max_deg``, and
    ``N(1)/D(1)`` is returned; the series converges there when every
    ``|u_i v_j| < 1``.
    """
    s = len(u)
    products = [Fraction(x) * Fraction(y) for x in u for y in v]
    deg_d = len(products)
    if max_deg <= deg_d:
        raise ValueError(f"max_deg must exceed {deg_d} to certify the numerator")
    if any(abs(p) >= 1 for p in products):
        raise ValueError("need |u_i v_j| < 1 for convergence")
    c = []
    for d in range(max_deg + 1):
        c.append(sum((schur(lam, u) * hl_S(lam, v, t_val)
                      for lam in partitions_of(d, max_len=s)), Fraction(0)))
    den = [Fraction(1)]
    for p in products:
        den = [x - p * y for x, y in zip(den + [Fraction(0)], [Fraction(0)] + den)]
    num = [sum(den[i] * c[d - i] for i in range(min(d, deg_d) + 1))
           for d in range(max_deg + 1)]
    tail = [x for x in num[deg_d + 1:] if x != 0]
    if tail:
        raise ArithmeticError("graded sums are not rational with the expected denominator")
    return sum(num[:deg_d + 1]) / sum(den)


# --- weighted multivariate polynomials ---------------------------------------

class RatMultiPoly:
    """Polynomial in ``x_1 .. x_m`` over the rationals, truncated by weight.

    ``terms`` maps exponent tuples (length m) to nonzero Fractions; the
    monomial ``prod x_k**e_k`` has weight ``sum k*e_k``.
    """

    __slots__ = ("n_vars", "weight_cutoff", "terms")

    def __init__(self, n_vars, weight_cutoff, terms=None):
        self.n_vars = n_vars
        self.weight_cutoff = weight_cutoff
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n_vars:
                raise ValueError("exponent length mismatch")
            if c and weight(e) <= weight_cutoff:
                self.terms[e] = Fraction(c)

    @classmethod
    def constant(cls, n_vars, weight_cutoff, c=1):
        return cls(n_vars, weight_cutoff, {(0,) * n_vars: c})

    @classmethod
    def var(cls, k, n_vars, weight_cutoff, c=1):
        e = [0] * n_vars
        e[k - 1] = 1
        return cls(n_vars, weight_cutoff, {tuple(e): c})

    def _like(self, terms):
        return RatMultiPoly(self.n_vars, self.weight_cutoff, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, RatMultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"RatMultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=lambda e: (weight(e), e)):
            mono = "*".join(f"x{k + 1}" + (f"^{p}" if p > 1 else "")
                            for k, p in enumerate(e) if p)
            c = self.terms[e]
            out.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(out)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return self._like({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        cut = min(self.weight_cutoff, other.weight_cutoff)
        out = {}
        for e1, c1 in self.terms.items():
            w1 = weight(e1)
            for e2, c2 in other.terms.items():
                if w1 + weight(e2) > cut:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RatMultiPoly(self.n_vars, cut, out)

    __rmul__ = __mul__

    def deriv(self, k):
        """Partial derivative in ``x_k``; the cutoff drops by k."""
        out = {}
        for e, c in self.terms.items():
            p = e[k - 1]
            if p:
                e2 = list(e)
                e2[k - 1] -= 1
                out[tuple(e2)] = c * p
        return RatMultiPoly(self.n_vars, self.weight_cutoff - k, out)

    def truncate(self, cutoff):
        return RatMultiPoly(self.n_vars, cutoff, self.terms)

    def homogeneous(self, w):
        return {e: c for e, c in self.terms.items() if weight(e) == w}

    def constant_term(self):
        return self.terms.get((0,) * self.n_vars, Fraction(0))

    def __call__(self, point):
        out = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, p in zip(point, e):
                if p:
                    term *= Fraction(x) ** p
            out += term
        return out

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def to_json(self):
        return {"n_vars": self.n_vars, "weight_cutoff": self.weight_cutoff,
                "terms": [[list(e), str(c)] for e, c in sorted(self.terms.items())]}


def weight(e):
    return sum((k + 1) * p for k, p in enumerate(e))


def _exp_series(f, cutoff):
    """``exp(f)`` for f without constant term, truncated at the cutoff."""
    out = RatMultiPoly.constant(f.n_vars, cutoff)
    term = RatMultiPoly.constant(f.n_vars, cutoff)
    for n in range(1, cutoff + 1):
        term = (term * f).scale(Fraction(1, n))
        if term.is_zero():
            break
        out = out + term
    return out


def log_series(f):
    """``log f`` for f with constant term 1, truncated at f's cutoff."""
    if f.constant_term() != 1:
        raise ValueError("log needs constant term 1")
    g = f - RatMultiPoly.constant(f.n_vars, f.weight_cutoff)
    out = RatMultiPoly(f.n_vars, f.weight_cutoff)
    power = RatMultiPoly.constant(f.n_vars, f.weight_cutoff)
    for n in range(1, f.weight_cutoff + 1):
        power = power * g
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (n + 1), n))
    return out


def is_exp_linear(tau):
    """True when ``log tau`` has only linear monomials (trivial tau-function)."""
    lg = log_series(tau.scale(1 / tau.constant_term()))
    return all(sum(e) <= 1 for e in lg.terms)


# --- character polynomials ---------------------------------------------------

@lru_cache(maxsize=None)
def _one_row(m, n_vars, cutoff, signed):
    """``p_m`` (or ``e_m`` when signed): z^m coefficient of exp(sum (+-)^{k+1} x_k z^k)."""
    out = {}
    for rho in partitions_of(m):
        if len(rho) and rho[0] > n_vars:
            continue
        counts = [0] * n_vars
        for part in rho:
            counts[part - 1] += 1
        c = Fraction(1)
        for k, a in enumerate(counts, start=1):
            if a:
                c /= factorial(a)
                if signed and k % 2 == 0 and a % 2:
                    c = -c
        out[tuple(counts)] = c
    return RatMultiPoly(n_vars, cutoff, out)


def _poly_det(entries, n, zero, one):
    """Laplace expansion along rows, memoized on the used-column set."""

    # sign follows the column's position among the unused columns
    @lru_cache(maxsize=None)
    def minor_signed(row, cols):
        if row == n:
            return one
        acc = zero
        free = [j for j in range(n) if not cols >> j & 1]
        for pos, j in enumerate(free):
            e = entries(row, j)
            if e.is_zero():
                continue
            term = e * minor_signed(row + 1, cols | (1 << j))
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return minor_signed(0, 0)


@lru_cache(maxsize=None)
def char_poly(lam, m_vars, weight_cutoff):
    """Character polynomial ``chi_lam(x) = det(p_{lam_i - i + j}(x))``.

    Uses the dual determinant in ``e_m`` when the conjugate has fewer rows.
    """
    lam = Partition(lam)
    if weight_cutoff < lam.size:
        raise ValueError("weight_cutoff must be at least |lam|")
    zero = RatMultiPoly(m_vars, weight_cutoff)
    one = RatMultiPoly.constant(m_vars, weight_cutoff)
    if not lam:
        return one
    conj = lam.conjugate()
    signed = len(conj) < len(lam)
    rows = conj if signed else lam
    n = len(rows)

    def entries(i, j):
        k = rows[i] - i + j
        if k < 0:
            return zero
        if k == 0:
            return one
        return _one_row(k, m_vars, weight_cutoff, signed)

    return _poly_det(entries, n, zero, one)


def p_values(y, m_max):
    """Numeric ``p_0 .. p_{m_max}`` at ``x = y`` via ``m p_m = sum k y_k p_{m-k}``."""
    y = [Fraction(v) for v in y]
    p = [Fraction(1)]
    for m in range(1, m_max + 1):
        acc = sum((k * y[k - 1] * p[m - k] for k in range(1, min(m, len(y)) + 1)),
                  Fraction(0))
        p.append(acc / m)
    return p


def char_value(lam, y):
    """``chi_lam`` evaluated at the point ``x = y`` (missing y_k read as 0)."""
    lam = Partition(lam)
    if not lam:
        return Fraction(1)
    return _jacobi_trudi(lam, p_values(y, lam[0] + len(lam)))


def schur_coeff_table(s, y_tilde, weight_cutoff):
    """``{lam: chi_lam(y_tilde)}`` for ``l(lam) <= s``, ``|lam| <= cutoff``."""
    return {lam: char_value(lam, y_tilde)
            for lam in partitions_up_to(weight_cutoff, max_len=s)}


def tau_build(s, y_tilde, weight_cutoff):
    """``sum_{l(lam)<=s} chi_lam(y_tilde) chi_lam(x)`` truncated by weight."""
    if len(y_tilde) < weight_cutoff:
        raise ValueError("need at least weight_cutoff values of y_tilde")
    m = weight_cutoff
    tau = RatMultiPoly(m, weight_cutoff)
    for lam, c in schur_coeff_table(s, y_tilde, weight_cutoff).items():
        if c:
            tau = tau + char_poly(lam, m, weight_cutoff).scale(c)
    return tau


def schur_coefficients(tau):
    """Expand a weight-truncated tau in the basis chi_lam(x), |lam| <= cutoff."""
    m, cut = tau.n_vars, tau.weight_cutoff
    table = {}
    for d in range(cut + 1):
        lams = list(partitions_of(d))
        monos = set(tau.homogeneous(d))
        basis = [char_poly(lam, m, cut).homogeneous(d) for lam in lams]
        for b in basis:
            monos.update(b)
        monos = sorted(monos)
        # solve sum_lam c_lam chi_lam = tau_d on the monomial coordinates
        rows = [[b.get(e, Fraction(0)) for b in basis] + [tau.terms.get(e, Fraction(0))]
                for e in monos]
        sol = _solve(rows, len(lams))
        for lam, c in zip(lams, sol):
            table[lam] = c
    return table


def _solve(aug, n):
    """Unique solution of an (overdetermined, consistent) augmented system."""
    a = [list(r) for r in aug]
    piv_rows = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system")
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_rows.append(r)
        r += 1
    if any(row[n] != 0 for row in a[r:]):
        raise ArithmeticError("inconsistent system")
    return [a[i][n] for i in piv_rows]


# --- Hirota bilinear KP ------------------------------------------------------

def hirota_kp_residual(tau):
    """``(D1^4 + 3 D2^2 - 4 D1 D3) tau.tau``, valid through weight cutoff - 4."""
    if tau.n_vars < 3:
        raise ValueError("KP residual needs x_1, x_2, x_3")
    cut = tau.weight_cutoff - 4
    if cut < 0:
        raise ValueError("weight cutoff must be at least 4")
    f = tau
    f1 = f.deriv(1)
    f11 = f1.deriv(1)
    f111 = f11.deriv(1)
    f1111 = f111.deriv(1)
    f2 = f.deriv(2)
    f22 = f2.deriv(2)
    f3 = f.deriv(3)
    f13 = f1.deriv(3)
    res = (f * f1111 - (f1 * f111).scale(4) + (f11 * f11).scale(3)
           + (f * f22).scale(3) - (f2 * f2).scale(3)
           - (f * f13).scale(4) + (f1 * f3).scale(4))
    return res.scale(2).truncate(cut)


def tau_trivial_B(t_val, x, y, K, order=12):
    """``exp(sum_{k<=K} k (1 - t^k) x_k y_k)`` with the exponential's Taylor
    series cut after ``order`` terms; exact rational."""
    if K < 1:
        raise ValueError("K must be >= 1")
    t_val = Fraction(t_val)
    e = sum((k * (1 - t_val ** k) * Fraction(x[k - 1]) * Fraction(y[k - 1])
             for k in range(1, K + 1)), Fraction(0))
    return sum((e ** n / factorial(n) for n in range(order + 1)), Fraction(0))


def tau_trivial_B_poly(t_val, y, weight_cutoff):
    """``exp(sum_k k (1 - t^k) y_k x_k)`` as a weight-truncated polynomial in x."""
    t_val = Fraction(t_val)
    m = weight_cutoff
    lin = RatMultiPoly(m, weight_cutoff)
    for k in range(1, m + 1):
        c = k * (1 - t_val ** k) * Fraction(y[k - 1])
        lin = lin + RatMultiPoly.var(k, m, weight_cutoff, c)
    return _exp_series(lin, weight_cutoff)


# --- Plucker relations -------------------------------------------------------

def partition_to_columns(lam, k):
    """1-based column set of ``lam`` in Gr(k, n): ``{1..k}`` is the empty diagram."""
    lam = list(lam) + [0] * (k - len(lam))
    if len(lam) > k:
        raise ValueError("too many rows for Gr(k, n)")
    return tuple(sorted(lam[i] + (k - i) for i in range(k)))


def columns_to_partition(cols):
    k = len(cols)
    return Partition(cols[k - 1 - i] - (k - i) for i in range(k))


def _minors(mat, k, n):
    return {cols: det([[mat[r][c - 1] for c in cols] for r in range(k)])
            for cols in combinations(range(1, n + 1), k)}


@lru_cache(maxsize=None)
def plucker_relations(k, n, seed=0, n_validate=4):
    """Quadratic relations among maximal minors of a generic k-by-n matrix.

    Monomials ``P_I P_J`` are grouped by the multiset ``I + J`` (the ideal is
    homogeneous for column scaling).  Each group's relation space is the
    exact nullspace of its values on random integer matrices, then every
    relation is re-checked on fresh matrices.  Returns a tuple of relations,
    each a tuple of ``((I, J), integer coefficient)``.
    """
    rng = random.Random(seed)
    subsets = list(combinations(range(1, n + 1), k))
    groups = {}
    for I, J in combinations_with_replacement(subsets, 2):
        groups.setdefault(tuple(sorted(I + J)), []).append((I, J))
    rand_mat = lambda: [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
    relations = []
    for key in sorted(groups):
        monos = groups[key]
        if len(monos) < 2:
            continue
        samples = [_minors(rand_mat(), k, n) for _ in range(len(monos) + 4)]
        rows = [[P[I] * P[J] for I, J in monos] for P in samples]
        for vec in rational_nullspace(rows, len(monos)):
            den = 1
            for x in vec:
                den = den * x.denominator // _gcd(den, x.denominator)
            ints = [int(x * den) for x in vec]
            relations.append(tuple((m, c) for m, c in zip(monos, ints) if c))
    for _ in range(n_validate):
        P = _minors(rand_mat(), k, n)
        for rel in relations:
            if sum(c * P[I] * P[J] for (I, J), c in rel) != 0:
                raise ArithmeticError("generated Plucker relation failed validation")
    return tuple(relations)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def plucker_residuals(coeffs, k, n, seed=0):
    """Every generated Gr(k, n) relation evaluated on ``{lam: c_lam}``."""
    values = {}
    for cols in combinations(range(1, n + 1), k):
        lam = columns_to_partition(cols)
        if lam not in coeffs:
            raise KeyError(f"missing coefficient for partition {list(lam)}")
        values[cols] = Fraction(coeffs[lam])
    return [sum((c * values[I] * values[J] for (I, J), c in rel), Fraction(0))
            for rel in plucker_relations(k, n, seed)]


def giambelli_defects(coeffs, max_size):
    """``c_0 c_(a,b) - (c_(a) c_(b) - c_(a+1) c_(b-1))`` for two-row lam.

    Zero for every entry means each two-row coefficient is fixed by the
    one-row data, as for the orbit of the vacuum under exp(linear).
    """
    get = lambda lam: Fraction(coeffs.get(Partition(lam), 0))
    c0 = get(EMPTY)
    out = {}
    for lam in partitions_up_to(max_size, max_len=2):
        if len(lam) != 2 or lam[0] + 1 > max_size:
            continue
        a, b = lam
        one_row = get((a,)) * get((b,)) - get((a + 1,)) * get((b - 1,))
        out[lam] = c0 * get(lam) - one_row
    return out
