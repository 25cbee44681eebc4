"""Exact arithmetic: integer polynomials in t (and t, q), truncated z-series.

Exponents of z are stored doubled ("half units") so that arguments such as
``z**(3/2)`` are exact.  All values are immutable.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels

Rational = Fraction


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder or a non-integer quotient."""


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolyT:
    """Univariate polynomial in t with Python-int coefficients (dense).

    ``coeffs[k]`` is the coefficient of ``t**k``; the zero polynomial has no
    coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def t(cls, power=1, coeff=1):
        return cls((0,) * power + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolyT(other)
        if not isinstance(other, IntPolyT):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolyT({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs, "t")

    def __neg__(self):
        return IntPolyT(-c for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolyT(other)
        if not isinstance(other, IntPolyT):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return IntPolyT(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolyT(other)
        return self + (-other)

    def __rsub__(self, other):
        return IntPolyT(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolyT(c * other for c in self.coeffs)
        if not isinstance(other, IntPolyT):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolyT()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolyT(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result, base = IntPolyT(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor):
        """Long division; the divisor's leading coefficient must divide exactly."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = divisor.coeffs
        lead = d[-1]
        quot = [0] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(rem) - len(d), -1, -1):
            c = rem[k + len(d) - 1]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivisionError(f"{c} not divisible by leading {lead}")
            q = c // lead
            quot[k] = q
            for i, y in enumerate(d):
                rem[k + i] -= q * y
        return IntPolyT(quot), IntPolyT(rem)

    def exact_div(self, divisor):
        q, r = self.divmod(divisor)
        if r:
            raise InexactDivisionError(f"({self}) / ({divisor}) leaves remainder {r}")
        return q

    def __call__(self, x):
        """Horner evaluation; ``x`` may be an int or Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(int(c) for c in data)


def poly_mul(a, b):
    return a * b


def format_poly(coeffs, var):
    """Render ascending-degree terms, e.g. ``1 - t + 3*t^2``."""
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


ONE = IntPolyT(1)
ZERO = IntPolyT()


# --- cyclotomic quotients ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial, by dividing t^n - 1 by lower ones."""
    if n < 1:
        raise ValueError("n must be positive")
    p = IntPolyT.t(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def cyclotomic_reduce(p, n):
    """Canonical remainder of ``p`` modulo the n-th cyclotomic polynomial."""
    if n < 2:
        raise ValueError("cyclotomic reduction needs n >= 2")
    return p.divmod(cyclotomic(n))[1]


# --- bivariate (t, q) polynomials -------------------------------------------

class IntPolyTQ:
    """Sparse polynomial in t and q: ``{(deg_t, deg_q): int}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_t(cls, p):
        return cls({(k, 0): c for k, c in enumerate(p.coeffs)})

    def __eq__(self, other):
        if isinstance(other, IntPolyT):
            other = IntPolyTQ.from_t(other)
        if not isinstance(other, IntPolyTQ):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"IntPolyTQ({dict(sorted(self.terms.items()))})"

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return IntPolyTQ(out)

    def __neg__(self):
        return IntPolyTQ({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other, q_order=None):
        out = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                if q_order is not None and b + d > q_order:
                    continue
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + x * y
        return IntPolyTQ(out)

    __mul__ = mul

    def at_q0(self):
        deg = max((a for a, b in self.terms if b == 0), default=-1)
        coeffs = [0] * (deg + 1)
        for (a, b), v in self.terms.items():
            if b == 0:
                coeffs[a] += v
        return IntPolyT(coeffs)

    def to_json(self):
        return [[a, b, str(v)] for (a, b), v in sorted(self.terms.items())]


# --- truncated z-series -------------------------------------------------------

class ZSeries:
    """Truncated series in z with IntPolyT coefficients.

    ``terms`` maps a half-exponent ``k`` (meaning ``z**(k/2)``) to a nonzero
    polynomial; every key lies in ``[0, order_half]``.
    """

    __slots__ = ("order_half", "terms")

    def __init__(self, order_half, terms=None):
        if order_half < 0:
            raise ValueError("order_half must be non-negative")
        self.order_half = order_half
        clean = {}
        for k, p in (terms or {}).items():
            if not isinstance(p, IntPolyT):
                p = IntPolyT(p)
            if 0 <= k <= order_half and p:
                clean[k] = p
            elif k < 0:
                raise ValueError("negative z exponent")
        self.terms = clean

    @classmethod
    def one(cls, order_half):
        return cls(order_half, {0: ONE})

    @classmethod
    def monomial(cls, half_exp, poly, order_half):
        return cls(order_half, {half_exp: poly})

    @classmethod
    def from_integer_coeffs(cls, coeffs, order):
        """Series with integer z-exponents: ``coeffs[n]`` multiplies ``z**n``."""
        return cls(2 * order, {2 * n: p for n, p in enumerate(coeffs) if n <= order})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.order_half == other.order_half and self.terms == other.terms

    def __hash__(self):
        return hash((self.order_half, frozenset(self.terms.items())))

    def __repr__(self):
        return f"ZSeries(order_half={self.order_half}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for k in sorted(self.terms):
            p = self.terms[k]
            zpart = _z_mono(k)
            pstr = str(p)
            if not zpart:
                chunks.append(pstr)
            elif p == ONE:
                chunks.append(zpart)
            elif len([c for c in p.coeffs if c]) == 1 and p.coeffs[-1] > 0:
                chunks.append(f"{pstr}*{zpart}")
            else:
                chunks.append(f"({pstr})*{zpart}")
        return " + ".join(chunks)

    def _check(self, other):
        if not isinstance(other, ZSeries):
            raise TypeError("expected ZSeries")
        if other.order_half != self.order_half:
            raise ValueError(
                f"mismatched truncation orders {self.order_half} vs {other.order_half}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return ZSeries(self.order_half, out)

    def __neg__(self):
        return ZSeries(self.order_half, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale_shift(self, poly, shift):
        """Multiply every term by ``poly * z**(shift/2)`` and truncate."""
        if not poly:
            return ZSeries(self.order_half)
        lim = self.order_half - shift
        return ZSeries(self.order_half,
                       {k + shift: p * poly for k, p in self.terms.items() if k <= lim})

    def __mul__(self, other):
        if isinstance(other, (int, IntPolyT)):
            other = IntPolyT(other) if isinstance(other, int) else other
            return self.scale_shift(other, 0)
        self._check(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def to_grid(self):
        n_t = max((p.degree + 1 for p in self.terms.values()), default=1)
        grid = np.zeros((self.order_half + 1, n_t), dtype=object)
        for k, p in self.terms.items():
            grid[k, :len(p.coeffs)] = p.coeffs
        return grid

    @classmethod
    def from_grid(cls, grid, order_half):
        terms = {}
        for k in range(min(grid.shape[0], order_half + 1)):
            p = IntPolyT(int(x) for x in grid[k])
            if p:
                terms[k] = p
        return cls(order_half, terms)

    def coeff_half(self, half_exp):
        return self.terms.get(half_exp, ZERO)

    def coeff(self, n):
        """Coefficient of the integer power ``z**n``."""
        return self.terms.get(2 * n, ZERO)

    def integer_coeffs(self):
        """Coefficients of ``z**0 .. z**(order_half//2)``; all exponents must be even."""
        odd = [k for k in self.terms if k % 2]
        if odd:
            raise ValueError(f"series has half-integer exponents {sorted(odd)}")
        return [self.terms.get(2 * n, ZERO) for n in range(self.order_half // 2 + 1)]

    def map_coeffs(self, fn):
        return ZSeries(self.order_half, {k: fn(p) for k, p in self.terms.items()})

    def at_t(self, value):
        """Specialize t to an integer or Fraction; returns ``{half_exp: value}``."""
        out = {}
        for k, p in self.terms.items():
            v = p(value)
            if v:
                out[k] = v
        return out

    def truncate(self, order_half):
        if order_half > self.order_half:
            raise ValueError("cannot extend a truncated series")
        return ZSeries(order_half, {k: p for k, p in self.terms.items() if k <= order_half})

    def to_json(self):
        return {"order_half": self.order_half,
                "terms": [[k, self.terms[k].to_json()] for k in sorted(self.terms)]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["order_half"]),
                   {int(k): IntPolyT.from_json(p) for k, p in data["terms"]})


def _z_mono(k):
    if k == 0:
        return ""
    if k % 2:
        return f"z^({k}/2)"
    n = k // 2
    return "z" if n == 1 else f"z^{n}"


def series_mul(a, b):
    """Truncated product of two ZSeries sharing an order."""
    if a.order_half != b.order_half:
        raise ValueError(f"mismatched truncation orders {a.order_half} vs {b.order_half}")
    if not a.terms or not b.terms:
        return ZSeries(a.order_half)
    if len(a.terms) == 1 or len(b.terms) == 1:
        if len(b.terms) == 1:
            a, b = b, a
        (k, p), = a.terms.items()
        return b.scale_shift(p, k)
    grid = _kernels.conv_trunc(a.to_grid(), b.to_grid(), a.order_half + 1)
    return ZSeries.from_grid(grid, a.order_half)


def series_product(factors, order_half):
    out = ZSeries.one(order_half)
    for f in factors:
        out = series_mul(out, f)
    return out


def geometric(half_step, order_half, coeff=ONE):
    """``1/(1 - coeff*z**(half_step/2))`` truncated (coeff is a t-polynomial)."""
    terms = {}
    power = ONE
    for k in range(0, order_half + 1, half_step):
        terms[k] = power
        power = power * coeff
    return ZSeries(order_half, terms)


# --- (t, q) series and q-Pochhammer factors ----------------------------------

class TQSeries:
    """Truncated series in z (half units) and q, with IntPolyTQ coefficients."""

    __slots__ = ("order_half", "q_order", "terms")

    def __init__(self, order_half, q_order, terms=None):
        self.order_half = order_half
        self.q_order = q_order
        self.terms = {}
        for k, p in (terms or {}).items():
            if isinstance(p, IntPolyT):
                p = IntPolyTQ.from_t(p)
            p = IntPolyTQ({key: v for key, v in p.terms.items() if key[1] <= q_order})
            if 0 <= k <= order_half and p:
                self.terms[k] = p

    @classmethod
    def one(cls, order_half, q_order):
        return cls(order_half, q_order, {0: IntPolyTQ({(0, 0): 1})})

    def __eq__(self, other):
        if not isinstance(other, TQSeries):
            return NotImplemented
        return (self.order_half, self.q_order, self.terms) == (
            other.order_half, other.q_order, other.terms)

    def __mul__(self, other):
        if (self.order_half, self.q_order) != (other.order_half, other.q_order):
            raise ValueError("mismatched truncation orders")
        out = {}
        for i, x in self.terms.items():
            for j, y in other.terms.items():
                if i + j > self.order_half:
                    continue
                prod = x.mul(y, self.q_order)
                out[i + j] = out[i + j] + prod if i + j in out else prod
        return TQSeries(self.order_half, self.q_order, out)

    def coeff_half(self, half_exp):
        return self.terms.get(half_exp, IntPolyTQ())

    def at_q0(self):
        return ZSeries(self.order_half, {k: p.at_q0() for k, p in self.terms.items()})

    def to_json(self):
        return {"order_half": self.order_half, "q_order": self.q_order,
                "terms": [[k, self.terms[k].to_json()] for k in sorted(self.terms)]}


def q_pochhammer_factor(a_half, n_max, order_half, q_order=None, with_t=True):
    """``prod_{n=0}^{n_max} (1 - t q^n z^(a_half/2))`` truncated.

    With ``with_t=False`` the factor t is dropped, giving ``(z^(a/2); q)``.
    ``q_order`` defaults to ``n_max``; higher n only add terms beyond it.
    """
    if q_order is None:
        q_order = n_max
    tdeg = 1 if with_t else 0
    out = TQSeries.one(order_half, q_order)
    for n in range(min(n_max, q_order) + 1):
        f = TQSeries(order_half, q_order,
                     {0: IntPolyTQ({(0, 0): 1}), a_half: IntPolyTQ({(tdeg, n): -1})})
        out = out * f
    return out


def q_pochhammer_inverse(a_half, q_order, order_half):
    """``1/(z^(a_half/2); q)_inf`` truncated: product of geometric series."""
    out = TQSeries.one(order_half, q_order)
    for n in range(q_order + 1):
        terms = {}
        for m in range(order_half // a_half + 1):
            if n * m <= q_order:
                terms[m * a_half] = IntPolyTQ({(0, n * m): 1})
        out = out * TQSeries(order_half, q_order, terms)
    return out
