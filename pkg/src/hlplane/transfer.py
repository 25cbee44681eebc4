"""Vertex-operator transfer matrices and the closed product formulas.

States are sparse maps from partitions to truncated z-series.  Applying
``Gamma_-(z^(a/2))`` to ``|mu>`` spreads it over all ``lam`` interlacing
``mu`` with the one-variable skew Hall-Littlewood weight.  The dual action
of ``Gamma_+`` on left states produces the same Phi-weighted interlacing
sums (with inverted argument), so one ascending routine serves both sides.

Layer-count lemma: if the slice ``mu_k`` of a plane partition is nonempty
then the cells ``(0, 0) .. (0, k)`` (or their transposes) are occupied, so
``|pi| >= |k| + 1``.  Truncating at ``z**N`` therefore needs only N
operators on each side.
"""

from fractions import Fraction

from .partition import EMPTY, Partition, b_poly, phi_poly, strips_above
from .ring import (ONE, IntPolyT, TQSeries, ZSeries, geometric, q_pochhammer_factor,
                   q_pochhammer_inverse, series_mul)


class WeightedState:
    """``sum_mu c_mu(z) |mu>`` with every series truncated at ``order_half``."""

    __slots__ = ("order_half", "terms")

    def __init__(self, order_half, terms=None):
        self.order_half = order_half
        self.terms = {}
        for mu, c in (terms or {}).items():
            if c.order_half != order_half:
                raise ValueError("state series must share order_half")
            if not c.is_zero():
                self.terms[Partition(mu)] = c

    @classmethod
    def vacuum(cls, order_half):
        return cls(order_half, {EMPTY: ZSeries.one(order_half)})

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, mu):
        return self.terms.get(Partition(mu), ZSeries(self.order_half))

    def __eq__(self, other):
        if not isinstance(other, WeightedState):
            return NotImplemented
        return self.order_half == other.order_half and self.terms == other.terms

    def __repr__(self):
        body = ", ".join(f"{list(mu)}: {c}" for mu, c in sorted(self.terms.items()))
        return f"WeightedState({{{body}}})"


def gamma_minus_apply(state, arg_half, max_len=None, max_size=None):
    """Apply ``Gamma_-(z^(arg_half/2))`` to a right state.

    ``max_len``/``max_size`` drop basis vectors the caller knows cannot
    contribute (finite box rows, total-volume bound).
    """
    if arg_half < 1:
        raise ValueError("arg_half must be >= 1")
    order_half = state.order_half
    out = {}
    for mu, c in state.terms.items():
        low = min(c.terms)
        budget = (order_half - low) // arg_half
        if max_size is not None:
            budget = min(budget, max_size - mu.size)
        if budget < 0:
            continue
        for lam in strips_above(mu, budget, max_len=max_len):
            phi = phi_poly(lam, mu)
            piece = c.scale_shift(phi, arg_half * (lam.size - mu.size))
            if piece.is_zero():
                continue
            out[lam] = out[lam] + piece if lam in out else piece
    return WeightedState(order_half, out)


def layered_state(arg_halves, order_half, max_len=None, max_size=None):
    """``Gamma_-(a_1) Gamma_-(a_2) ... Gamma_-(a_M) |0>`` as chain sums.

    The operator nearest the vacuum (last argument) acts first.
    """
    state = WeightedState.vacuum(order_half)
    for a in reversed(list(arg_halves)):
        state = gamma_minus_apply(state, a, max_len=max_len, max_size=max_size)
    return state


def ascend_weight(mu, arg_halves, order_half):
    """Sum over chains empty = nu_M < ... < nu_0 = mu of prod Phi * z^(...)."""
    return layered_state(arg_halves, order_half)[mu]


def matrix_element(mu, arg_halves, order_half):
    """``<mu| prod Gamma_- |0>``: the chain sum times the norm ``b_mu``."""
    return ascend_weight(mu, arg_halves, order_half) * b_poly(Partition(mu))


def _glue(left, right, order_half):
    """sum over mu_0 of (1/b) <0|...|mu_0> <mu_0|...|0>, dividing exactly."""
    total = ZSeries(order_half)
    for mu, c_right in right.terms.items():
        c_left = left.terms.get(mu)
        if c_left is None:
            continue
        b = b_poly(mu)
        prod = series_mul(c_left * b, c_right * b)
        total = total + prod.map_coeffs(lambda p: p.exact_div(b))
    total.integer_coeffs()  # raises if a half-integer power survived
    return total


def scalar_product_S(order):
    """``<0| prod Gamma_+ prod Gamma_- |0>`` truncated at ``z**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    order_half = 2 * order
    args = [2 * k - 1 for k in range(1, order + 1)]
    # every basis vector reachable below z^order has |mu| <= order
    state = layered_state(args, order_half, max_size=order)
    return _glue(state, state, order_half)


def scalar_product_S_box(s, order):
    """Finite scalar product with exactly s operators on each side."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if order < 0:
        raise ValueError("order must be non-negative")
    order_half = 2 * order
    args = [2 * k - 1 for k in range(1, s + 1)]
    state = layered_state(args, order_half, max_len=s, max_size=order)
    return _glue(state, state, order_half)


def _hl_factor(power, order_half):
    """``(1 - t z^power) / (1 - z^power)`` as a truncated series."""
    num = ZSeries(order_half, {0: ONE, 2 * power: -IntPolyT.t(1)})
    return series_mul(num, geometric(2 * power, order_half))


def product_formula_S(order):
    """``prod_{j>=1} ((1 - t z^j)/(1 - z^j))^j`` truncated at ``z**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    order_half = 2 * order
    out = ZSeries.one(order_half)
    for j in range(1, order + 1):
        f = _hl_factor(j, order_half)
        for _ in range(j):
            out = series_mul(out, f)
    return out


def product_formula_S_box(s, order):
    """``prod_{i,j<=s} (1 - t z^(i+j-1))/(1 - z^(i+j-1))`` truncated."""
    if s < 1:
        raise ValueError("s must be >= 1")
    order_half = 2 * order
    out = ZSeries.one(order_half)
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            if i + j - 1 <= order:
                out = series_mul(out, _hl_factor(i + j - 1, order_half))
    return out


def cauchy_rational(u, v, t_val):
    """Exact ``prod_{i,j} (1 - t u_i v_j)/(1 - u_i v_j)``."""
    t_val = Fraction(t_val)
    out = Fraction(1)
    for ui in u:
        for vj in v:
            x = Fraction(ui) * Fraction(vj)
            if x == 1:
                raise ZeroDivisionError(f"pole: u*v = 1 for u={ui}, v={vj}")
            if t_val * x == 1:
                raise ZeroDivisionError(f"zero factor: t*u*v = 1 for u={ui}, v={vj}")
            out *= (1 - t_val * x) / (1 - x)
    return out


def macdonald_product_S(order, q_order):
    """``prod_{n>=1} ((t z^n; q)_inf / (z^n; q)_inf)^n`` truncated in z and q."""
    order_half = 2 * order
    out = TQSeries.one(order_half, q_order)
    for n in range(1, order + 1):
        f = (q_pochhammer_factor(2 * n, q_order, order_half, q_order)
             * q_pochhammer_inverse(2 * n, q_order, order_half))
        for _ in range(n):
            out = out * f
    return out
