import random
from fractions import Fraction
from math import factorial, prod

import pytest
import sympy as sp

from hlplane.partition import EMPTY, Partition, partitions_of, partitions_up_to
from hlplane.symkp import (RatMultiPoly, cauchy_check, cauchy_full_sum, char_poly, char_value,
                           columns_to_partition, complete_homogeneous, det, giambelli_defects,
                           hirota_kp_residual, hl_q, hl_S, is_exp_linear, log_series,
                           partition_to_columns, plucker_relations, plucker_residuals,
                           rational_nullspace, sample_rationals, schur, schur_coeff_table,
                           schur_coefficients, tau_build, tau_trivial_B, tau_trivial_B_poly)
from hlplane.transfer import cauchy_rational

P = Partition
F = Fraction


def bialternant(lam, u):
    """s_lam(u) = det(u_i^(lam_j + n - j)) / det(u_i^(n - j)) for distinct u."""
    n = len(u)
    lam = list(lam) + [0] * (n - len(lam))
    if len(lam) > n:
        return F(0)
    num = det([[F(x) ** (lam[j] + n - 1 - j) for j in range(n)] for x in u])
    den = det([[F(x) ** (n - 1 - j) for j in range(n)] for x in u])
    return num / den


def hook_dim(lam):
    conj = lam.conjugate()
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(lam.size) // hooks


# --- linear algebra -----------------------------------------------------------

def test_det_examples():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[F(1, 2), 0], [0, F(2, 3)]]) == F(1, 3)
    assert det([[1, 2], [2, 4]]) == 0


def test_nullspace():
    basis = rational_nullspace([[1, 1, 1]], 3)
    assert len(basis) == 2
    assert all(sum(v) == 0 for v in basis)
    assert rational_nullspace([[1, 0], [0, 1]], 2) == []


# --- one-variable functions -----------------------------------------------------

def test_complete_homogeneous_examples():
    assert complete_homogeneous(0, [F(1, 2)]) == 1
    assert complete_homogeneous(2, [1, 2]) == 1 + 2 + 4
    assert complete_homogeneous(-1, [1]) == 0


def test_hl_q_examples():
    v = [F(1, 2)]
    assert hl_q(1, v, F(1, 3)) == F(1, 2) * (1 - F(1, 3))
    assert hl_q(0, v, 5) == 1
    assert hl_q(2, [1, 1], 1) == 0


def test_schur_examples():
    assert schur(P([2, 1]), [1, 1]) == 2
    assert schur(EMPTY, [3]) == 1
    assert schur(P([1, 1]), [2, 3]) == 6


def test_schur_matches_bialternant():
    u = [F(1, 2), F(-1, 3), F(2, 3)]
    for n in range(6):
        for lam in partitions_of(n):
            assert schur(lam, u) == bialternant(lam, u)


def test_hl_S_at_t_zero_is_schur():
    v = [F(1, 2), F(-2, 3), F(1, 3)]
    for n in range(7):
        for lam in partitions_of(n):
            assert hl_S(lam, v, 0) == schur(lam, v)


def test_hl_S_examples():
    # one-row at t: the z^m coefficient of (1 - t v z)/(1 - v z) is (1 - t) v^m
    assert hl_S(P([3]), [F(1, 2)], F(1, 3)) == F(2, 3) * F(1, 8)
    assert hl_S(EMPTY, [1], 0) == 1


# --- Cauchy ---------------------------------------------------------------------

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_cauchy_tables_agree(seed):
    rng = random.Random(seed)
    for s in (1, 2):
        a = sample_rationals(rng, s)
        b = sample_rationals(rng, s)
        t_val = sample_rationals(rng, 1)[0]
        lhs, rhs = cauchy_check(s, 6, a, b, t_val)
        assert lhs == rhs


def test_cauchy_full_sum_matches_rational():
    u, v = [F(1, 2), F(1, 3)], [F(1, 3), F(-1, 2)]
    for t_val in (0, F(1, 5), F(-2, 3)):
        assert cauchy_full_sum(u, v, t_val, 8) == cauchy_rational(u, v, t_val)
    with pytest.raises(ValueError):
        cauchy_full_sum(u, v, 0, 4)


# --- multivariate polynomials ---------------------------------------------------

def test_ratmultipoly_basics():
    x1 = RatMultiPoly.var(1, 2, 4)
    x2 = RatMultiPoly.var(2, 2, 4)
    p = x1 * x1 + x2.scale(3)
    assert p.deriv(1) == x1.scale(2).truncate(3)
    assert (p * p).terms == {(4, 0): 1, (2, 1): 6, (0, 2): 9}
    assert (x2 * x2 * x1).is_zero()
    assert p([F(1, 2), 2]) == F(1, 4) + 6
    assert str(x1 + x2) == "1*x1 + 1*x2"


def test_log_of_exp_is_linear():
    lin = RatMultiPoly.var(1, 3, 6, 2) + RatMultiPoly.var(3, 3, 6, F(1, 3))
    tau = tau_trivial_B_poly(F(1, 2), [1, 1, 1, 1, 1, 1], 6)
    assert is_exp_linear(tau)
    lg = log_series(tau)
    assert all(sum(e) == 1 for e in lg.terms)
    assert not is_exp_linear(RatMultiPoly.constant(3, 6) + lin * lin)


# --- character polynomials --------------------------------------------------------

def test_char_poly_examples():
    assert char_poly(EMPTY, 3, 3) == RatMultiPoly.constant(3, 3)
    assert char_poly(P([1]), 3, 3).terms == {(1, 0, 0): 1}
    # chi_(2) = x1^2/2 + x2, chi_(1,1) = x1^2/2 - x2
    assert char_poly(P([2]), 3, 3).terms == {(2, 0, 0): F(1, 2), (0, 1, 0): 1}
    assert char_poly(P([1, 1]), 3, 3).terms == {(2, 0, 0): F(1, 2), (0, 1, 0): -1}


def test_char_poly_at_power_sums_is_schur():
    u = [F(1, 2), F(-1, 3), F(2, 3)]
    for n in range(6):
        x = [sum(F(a) ** k for a in u) / k for k in range(1, n + 1)] or [F(0)]
        for lam in partitions_of(n):
            chi = char_poly(lam, max(n, 1), n)
            assert chi(x + [0] * (chi.n_vars - len(x))) == schur(lam, u)
            assert char_value(lam, x) == schur(lam, u)


def test_char_poly_x1_coefficient_is_hook_dimension():
    for n in range(1, 7):
        for lam in partitions_of(n):
            e = (n,) + (0,) * (n - 1)
            assert char_poly(lam, n, n).terms.get(e, 0) == F(hook_dim(lam), factorial(n))


def test_schur_coefficients_recover_table():
    y = sample_rationals(random.Random(3), 6)
    tau = tau_build(2, y, 6)
    table = schur_coefficients(tau)
    expect = schur_coeff_table(2, y, 6)
    for lam, c in table.items():
        assert c == expect.get(lam, 0)


# --- Hirota --------------------------------------------------------------------

def sympy_hirota(tau, cut):
    """(D1^4 + 3 D2^2 - 4 D1 D3) tau.tau via f(x + y) f(x - y), weight-truncated."""
    xs = sp.symbols(f"x1:{tau.n_vars + 1}")
    y1, y2, y3 = sp.symbols("y1:4")
    f = sum(sp.Rational(c.numerator, c.denominator) * sp.Mul(*[x ** p for x, p in zip(xs, e)])
            for e, c in tau.terms.items())
    shift = lambda sgn: f.subs({xs[0]: xs[0] + sgn * y1, xs[1]: xs[1] + sgn * y2,
                                xs[2]: xs[2] + sgn * y3}, simultaneous=True)
    g = sp.expand(shift(1) * shift(-1))
    at0 = {y1: 0, y2: 0, y3: 0}
    res = (sp.diff(g, y1, 4) + 3 * sp.diff(g, y2, 2) - 4 * sp.diff(g, y1, y3)).subs(at0)
    out = {}
    for mono, c in sp.Poly(sp.expand(res), *xs).terms():
        if sum((k + 1) * p for k, p in enumerate(mono)) <= cut:
            out[mono] = F(int(c.p), int(c.q))
    return out


def _bump(tau, k):
    e = [0] * tau.n_vars
    e[k - 1] = 1
    terms = dict(tau.terms)
    terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return RatMultiPoly(tau.n_vars, tau.weight_cutoff, terms)


def test_hirota_matches_sympy_oracle():
    y = sample_rationals(random.Random(5), 5)
    tau = tau_build(2, y, 5)
    for f in (tau, _bump(tau, 2), _bump(tau, 1)):
        assert hirota_kp_residual(f).terms == sympy_hirota(f, 1)
    assert sympy_hirota(_bump(tau, 2), 1)


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_hirota_vanishes_on_box_tau(s, seed):
    y = sample_rationals(random.Random(seed), 8)
    tau = tau_build(s, y, 8)
    assert hirota_kp_residual(tau).is_zero()
    assert not hirota_kp_residual(_bump(tau, 2)).is_zero()


def test_hirota_needs_room():
    with pytest.raises(ValueError):
        hirota_kp_residual(RatMultiPoly.constant(3, 3))


def test_trivial_tau():
    assert tau_trivial_B(F(1, 2), [1], [1], 1, order=3) == 1 + F(1, 2) + F(1, 8) + F(1, 48)
    assert tau_trivial_B(1, [5, 5], [5, 5], 2) == 1
    y = sample_rationals(random.Random(1), 8)
    tb = tau_trivial_B_poly(F(1, 3), y, 8)
    assert hirota_kp_residual(tb).is_zero()
    assert is_exp_linear(tb)
    assert not is_exp_linear(tau_build(2, y, 8))


# --- Plucker ---------------------------------------------------------------------

def test_columns_bijection():
    assert partition_to_columns(EMPTY, 2) == (1, 2)
    assert partition_to_columns(P([2, 1]), 2) == (2, 4)
    for lam in partitions_up_to(6, max_len=3):
        assert columns_to_partition(partition_to_columns(lam, 3)) == lam
    with pytest.raises(ValueError):
        partition_to_columns(P([1, 1, 1]), 2)


def _normalize(rel):
    d = dict(rel)
    lead = d[min(d)]
    return {k: F(v, lead) for k, v in d.items()}


def test_gr24_is_the_classical_relation():
    rels = plucker_relations(2, 4)
    assert len(rels) == 1
    hand = {((1, 2), (3, 4)): 1, ((1, 3), (2, 4)): -1, ((1, 4), (2, 3)): 1}
    assert _normalize(rels[0]) == _normalize(tuple(hand.items()))


def test_relation_counts():
    # quadratic Plucker relations: dim Sym^2 of the wedge minus dim of the degree-2 part
    assert len(plucker_relations(2, 5)) == 5
    assert len(plucker_relations(3, 6)) == 35
    assert plucker_relations(1, 4) == ()


def test_plucker_on_minors_and_coefficient_tables():
    y = sample_rationals(random.Random(0), 9)
    for k, n in ((2, 4), (2, 5), (3, 6)):
        table = schur_coeff_table(k, y, k * (n - k))
        assert all(r == 0 for r in plucker_residuals(table, k, n))
        bad = dict(table)
        bad[P([1])] += 1
        assert any(r != 0 for r in plucker_residuals(bad, k, n))


def test_vacuum_table_and_missing_entries():
    vac = {lam: (1 if not lam else 0) for lam in partitions_up_to(4, max_len=2)}
    assert all(r == 0 for r in plucker_residuals(vac, 2, 4))
    with pytest.raises(KeyError):
        plucker_residuals({EMPTY: 1}, 2, 4)


def test_giambelli_defects_trivial_vs_box():
    y = sample_rationals(random.Random(4), 8)
    tb = tau_trivial_B_poly(F(1, 2), y, 8)
    table_b = schur_coefficients(tb)
    assert all(v == 0 for v in giambelli_defects(table_b, 8).values())
    assert all(r == 0 for r in plucker_residuals(table_b, 2, 4))
    table_a = schur_coeff_table(2, y, 8)
    assert sum(1 for lam, c in table_a.items() if len(lam) == 2 and c) >= 2
