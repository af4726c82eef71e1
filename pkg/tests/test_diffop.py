"""Tests for differential-operator structural transformations."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from schwarzops.exact import Polynomial, RationalFunction, ratfunc
from schwarzops.series import TruncatedSeries, hypergeometric_series
from schwarzops.diffop import (
    DiffOperator,
    Gauge,
    OP_D,
    SeriesOperator,
    frobenius_mum_basis,
    guess_operator,
    hypergeometric_operator,
    indicial_polynomial,
    is_mum_point,
    op_adjoint,
    op_conjugate,
    op_mul,
    op_pullback,
    sym_or_ext_power,
    sym_power_order2,
)
from schwarzops.diffop import _sym_power_generic


def sample_order2() -> DiffOperator:
    p = ratfunc([1, 3], [1, 0, 1])
    q = ratfunc([2], [1, 1])
    return DiffOperator([q, p, 1])


def solve_order2_series(L2: DiffOperator, c0, c1, K: int) -> TruncatedSeries:
    """Power-series solution at an ordinary point x=0 with u(0), u'(0) given."""
    m = L2.monic()
    A = TruncatedSeries.from_rational(m.coeff(1), K)
    B = TruncatedSeries.from_rational(m.coeff(0), K)
    c = [F(c0), F(c1)] + [F(0)] * (K - 1)
    for n in range(K - 1):
        acc = F(0)
        for j in range(n + 1):
            acc += A.coefficient(j) * (n + 1 - j) * c[n + 1 - j]
            acc += B.coefficient(j) * c[n - j]
        c[n + 2] = -acc / ((n + 1) * (n + 2))
    return TruncatedSeries(0, c, K)


# ---------------------------------------------------------------- products


def test_product_of_derivations():
    assert op_mul(OP_D, OP_D) == DiffOperator([0, 0, 1])


def test_first_order_factorization():
    # (D + a + c)(D + c) = D^2 + (a + 2c) D + (c' + c^2 + a c)
    a = ratfunc([1, 2], [0, 1])
    c = ratfunc([3], [1, 1])
    prod = op_mul(DiffOperator([a + c, 1]), DiffOperator([c, 1]))
    want = DiffOperator([c.derivative() + c * c + a * c, a + 2 * c, 1])
    assert prod == want


def test_wedge_of_reducible_square():
    # minimal annihilator of wedges of L2*L2 solutions is
    # (D+p) Sym2(L2) (D+p) after monic normalization
    L2 = sample_order2()
    p = L2.coeff(1)
    rep = sym_or_ext_power(op_mul(L2, L2), "ext2")
    assert rep.order == 5
    rhs = op_mul(op_mul(DiffOperator([p, 1]), sym_power_order2(L2, 2)),
                 DiffOperator([p, 1]))
    assert rep.operator.monic() == rhs.monic()


# ---------------------------------------------------------------- adjoint


def test_adjoint_first_order():
    a = ratfunc([1, 2], [0, 1])
    assert op_adjoint(DiffOperator([a, 1])) == DiffOperator([a, -1])


def test_adjoint_involution():
    L = DiffOperator([ratfunc([1, 1]), ratfunc([0, 2], [1, 3]),
                      ratfunc([5]), ratfunc([1], [0, 1]), 1])
    assert op_adjoint(op_adjoint(L)) == L


def test_adjoint_of_product_reverses():
    M = DiffOperator([ratfunc([1], [0, 1]), 1])
    L = DiffOperator([ratfunc([2]), ratfunc([0, 1]), 1])
    assert op_adjoint(op_mul(M, L)) == op_mul(op_adjoint(L), op_adjoint(M))


def test_symmetric_square_conjugate_to_adjoint():
    # Sym2(L2) conjugated by wronskian^(2/3) is (-1)^3 times its adjoint
    L2 = sample_order2()
    L3 = sym_power_order2(L2, 2)
    w_log = -L3.coeff(2)  # wronskian log-derivative of the order-3 operator
    conj = op_conjugate(L3, Gauge(F(2, 3) * w_log))
    assert conj == op_adjoint(L3).scale(-1)


def test_adjoint_conjugation_exponent_order4():
    L2 = sample_order2()
    L4 = sym_power_order2(L2, 3)
    w_log = -L4.coeff(3)
    conj = op_conjugate(L4, Gauge(F(1, 2) * w_log))
    assert conj == op_adjoint(L4)


# ---------------------------------------------------------------- conjugation


def test_conjugate_pure_second_derivative():
    g = ratfunc([0, 1], [1, 1])
    out = op_conjugate(DiffOperator([0, 0, 1]), Gauge(g))
    assert out == DiffOperator([g.derivative() + g * g, 2 * g, 1])


def test_conjugation_shifts_subleading_coefficients():
    # order N: p -> p + N v, q -> q + (N-1) v p + N(N-1)/2 (v' + v^2)
    L2 = sample_order2()
    for m in (2, 3):
        L = sym_power_order2(L2, m)
        N = L.order
        v = ratfunc([-1], [2, -1])  # log-derivative of 1/(x-2)
        out = op_conjugate(L, Gauge(v))
        p, q = L.coeff(N - 1), L.coeff(N - 2)
        assert out.coeff(N - 1) == p + N * v
        assert out.coeff(N - 2) == q + (N - 1) * v * p \
            + F(N * (N - 1), 2) * (v.derivative() + v * v)


def test_conjugation_composes():
    L = sample_order2()
    g1 = ratfunc([0, 1], [1, 1])
    g2 = ratfunc([5], [1, 0, 2])
    once = op_conjugate(op_conjugate(L, Gauge(g1)), Gauge(g2))
    both = op_conjugate(L, Gauge(g1) * Gauge(g2))
    assert once == both


# ---------------------------------------------------------------- pullback


def test_pullback_square_map():
    out = op_pullback(DiffOperator([0, 0, 1]), ratfunc([0, 0, 1]))
    assert out == DiffOperator([0, ratfunc([-1], [0, 1]), 1])


def test_pullback_subleading_heads():
    p = ratfunc([1, 3], [1, 0, 1])
    y = ratfunc([0, 0, 1])
    yp = y.derivative()
    ypp = yp.derivative()
    for N in (3, 5):
        LN = DiffOperator([RationalFunction.const(0)] * (N - 1) + [p, 1])
        pb = op_pullback(LN, y)
        assert pb.coeff(N) == RationalFunction.const(1)
        assert pb.coeff(N - 1) == p.compose(y) * yp \
            - F(N * (N - 1), 2) * ypp / yp


def test_pullback_composes():
    L = sample_order2()
    y1 = ratfunc([0, 0, 1])          # x^2
    y2 = ratfunc([0, 1], [1, 1])     # x/(1+x)
    twice = op_pullback(op_pullback(L, y1), y2)
    once = op_pullback(L, y1.compose(y2))
    assert twice.monic() == once.monic()


def test_pullback_rejects_constant():
    with pytest.raises(ValueError):
        op_pullback(sample_order2(), ratfunc([5]))


# ---------------------------------------------------------------- sym powers


def test_sym2_of_shifted_oscillator():
    assert sym_power_order2(DiffOperator([0, 0, 1]), 2) \
        == DiffOperator([0, 0, 0, 1])
    assert sym_power_order2(DiffOperator([-1, 0, 1]), 2) \
        == DiffOperator([0, -4, 0, 1])


def test_sym3_coefficient_parametrization():
    L2 = sample_order2()
    A, B = L2.coeff(1), L2.coeff(0)
    S = sym_power_order2(L2, 3)
    assert S.coeff(3) == 6 * A
    assert S.coeff(2) == 11 * A ** 2 + 4 * A.derivative() + 10 * B


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sym_power_closed_forms_match_generic(m):
    L2 = sample_order2()
    assert sym_power_order2(L2, m) \
        == _sym_power_generic(L2.coeff(1), L2.coeff(0), m)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_sym_power_annihilates_solution_powers(m):
    L2 = sample_order2()
    K = 14
    u = solve_order2_series(L2, 1, F(1, 3), K)
    S = sym_power_order2(L2, m)
    res = S.apply_series(u ** m)
    assert res.is_zero()


def test_sym_power_rejects_bad_input():
    with pytest.raises(ValueError):
        sym_power_order2(sample_order2(), 0)
    with pytest.raises(ValueError):
        sym_power_order2(DiffOperator([0, 0, 0, 1]), 2)


def test_ext2_degenerate_orders():
    rep = sym_or_ext_power(DiffOperator([0, 0, 0, 0, 1]), "ext2")
    assert rep.generic_order == 6 and rep.order == 5
    # D^5 annihilates 1..x^4; wedges span polynomials of degree <= 6
    poly = TruncatedSeries(0, (1, 2, 0, 1, 0, 0, -3), order=20)
    assert rep.operator.apply_series(
        TruncatedSeries(0, (1, 1, 1, 1, 1), order=20)).is_zero()


def test_ext2_of_symmetric_cube_is_order5():
    L4 = sym_power_order2(sample_order2(), 3)
    assert sym_or_ext_power(L4, "ext2").order == 5


def test_sym2_of_symmetric_cube_is_order7():
    L4 = sym_power_order2(sample_order2(), 3)
    rep = sym_or_ext_power(L4, "sym2")
    assert rep.order == 7 and rep.generic_order == 10


def test_sym2_rank_method_agrees_with_closed_form():
    L2 = sample_order2()
    rep = sym_or_ext_power(L2, "sym2")
    assert rep.order == 3
    assert rep.operator.monic() == sym_power_order2(L2, 2).monic()


# ---------------------------------------------------------------- guessing


def test_guess_geometric():
    f = TruncatedSeries.from_rational(ratfunc([1], [1, -1]), 40)
    op = guess_operator(f, 2, 2)
    want = DiffOperator([1, Polynomial([-1, 1])])
    assert op in (want, want.scale(-1))


def test_guess_exponential():
    f = hypergeometric_series([], [], 40)
    op = guess_operator(f, 2, 2)
    assert op in (DiffOperator([-1, 1]), DiffOperator([1, -1]))


def test_guess_annihilates_beyond_window():
    f = TruncatedSeries.from_rational(ratfunc([1, 1], [1, -3, 0, 2]), 60)
    op = guess_operator(f, 3, 4)
    assert op is not None
    res = op.apply_series(f)
    assert res.is_zero() and res.order >= 50


def test_guess_insufficient_data():
    f = TruncatedSeries.from_rational(ratfunc([1], [1, -1]), 10)
    with pytest.raises(ValueError):
        guess_operator(f, 3, 3)


# ---------------------------------------------------------------- Frobenius


def theta_fourth() -> DiffOperator:
    th = DiffOperator([0, ratfunc([0, 1])])
    return op_mul(op_mul(th, th), op_mul(th, th))


def test_frobenius_theta4():
    basis = frobenius_mum_basis(theta_fourth(), 6)
    assert len(basis) == 4
    for j, b in enumerate(basis):
        assert b.log_degree == j
        fact = 1
        for i in range(1, j + 1):
            fact *= i
        assert b.part(j).coefficient(0) == F(1, fact)
        for i in range(j):
            assert b.part(i).is_zero()


def test_frobenius_hypergeometric_cube():
    H = hypergeometric_operator(F(1, 12), F(5, 12), 1)
    L = sym_power_order2(H, 3)
    assert is_mum_point(L)
    basis = frobenius_mum_basis(L, 10)
    y0 = basis[0].part(0)
    cube = hypergeometric_series([F(1, 12), F(5, 12)], [1], 10) ** 3
    assert y0.agrees_with(cube, 10)
    for b in basis:
        assert L.apply_log_series(b).is_zero_to_order()


def test_frobenius_rejects_non_mum():
    H = hypergeometric_operator(F(1, 2), F(1, 2), F(1, 2))
    assert not is_mum_point(H)
    with pytest.raises(ValueError):
        frobenius_mum_basis(H, 5)


def test_indicial_polynomial_values():
    ind = indicial_polynomial(theta_fourth())
    assert ind == Polynomial([0, 0, 0, 0, 1])
    H = hypergeometric_operator(F(1, 3), F(2, 3), F(1, 2))
    # sigma (sigma - 1/2)
    assert H and indicial_polynomial(H).integer_normalized() \
        == Polynomial([0, -1, 2])


# ---------------------------------------------------------------- series operators


def test_series_operator_product_matches_rational():
    L2 = sample_order2()
    M = DiffOperator([ratfunc([1], [1, 1]), 1])
    exact = SeriesOperator.from_diffop(op_mul(M, L2), 16)
    series = SeriesOperator.from_diffop(M, 20) * SeriesOperator.from_diffop(L2, 20)
    assert series.agrees_with(exact, 14)


def test_series_operator_apply():
    L2 = sample_order2()
    K = 14
    u = solve_order2_series(L2, 1, F(1, 3), K)
    S = SeriesOperator.from_diffop(L2, K)
    assert S.apply_series(u).is_zero()


# ---------------------------------------------------------------- properties


@given(st.integers(min_value=-3, max_value=3),
       st.integers(min_value=-3, max_value=3),
       st.integers(min_value=-3, max_value=3))
@settings(max_examples=20, deadline=None)
def test_conjugation_preserves_products(c0, c1, c2):
    g = Gauge(ratfunc([c0, c1], [1, 0, max(1, abs(c2))]))
    L2 = sample_order2()
    M = DiffOperator([ratfunc([1, 1]), 1])
    lhs = op_conjugate(op_mul(M, L2), g)
    rhs = op_mul(op_conjugate(M, g), op_conjugate(L2, g))
    assert lhs == rhs


def test_json_roundtrip():
    L = sample_order2()
    assert DiffOperator.from_json(L.to_json()) == L
    data = L.to_json()
    assert data["var"] == "x" and len(data["coeffs"]) == 3
