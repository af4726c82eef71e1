"""Tests for the Schwarzian-condition toolkit."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from schwarzops.exact import Polynomial, RationalFunction, RF_ZERO, ratfunc
from schwarzops.series import (TruncatedSeries, hypergeometric_series,
                               ratfunc_at_series)
from schwarzops.diffop import (
    DiffOperator,
    Gauge,
    OP_D,
    hypergeometric_operator,
    op_conjugate,
    op_pullback,
    sym_power_order2,
)
from schwarzops.schwarzian import (
    CompositionCheck,
    SchwarzianProblem,
    SolutionFamily,
    casimir_residual,
    composition_law_check,
    f_equation,
    heun_operator,
    heun_scan,
    mirror_maps,
    one_param_family,
    premodular_test,
    pullback_symmetry_check,
    ranktwo_subcase,
    schwarzian_derivative,
    schwarzian_residual,
    solve_schwarzian_series,
    w_from_f,
    w_function,
)


def modular_operator() -> DiffOperator:
    return hypergeometric_operator(F(1, 12), F(5, 12), 1)


def modular_w() -> RationalFunction:
    # -(32x^2 - 41x + 36) / (72 x^2 (x-1)^2)
    den = Polynomial([0, 0, 72]) * Polynomial([1, -1]) ** 2
    return ratfunc([-36, 41, -32], den.coeffs)


def modular_generator(K: int) -> TruncatedSeries:
    """x (1-x)^(1/2) 2F1([1/12, 5/12], [1], x)^2, the flow generator whose
    Schwarzian datum is modular_w()."""
    h = hypergeometric_series([F(1, 12), F(5, 12)], [1], K)
    root = TruncatedSeries.from_polynomial(Polynomial([1, -1]), K).sqrt()
    return (h * h * root).shift(1)


def chi2_w() -> RationalFunction:
    # (3/2) (x^2 - 5) / (x^2 (x^2 - 1))
    return ratfunc([-15, 0, 3], [0, 0, -2, 0, 2])


W_TRIVIAL = ratfunc([-1], [0, 0, 2])


# ------------------------------------------------- Schwarzian derivative


def test_schwarzian_of_affine_vanishes():
    assert schwarzian_derivative(ratfunc([5, 3], 1)).is_zero()


def test_schwarzian_of_moebius_vanishes():
    y = ratfunc([5, 3], [2, 7])
    assert schwarzian_derivative(y).is_zero()


def test_schwarzian_of_power():
    for n in (2, 3, 5):
        y = ratfunc([0] * n + [1], 1)
        expect = ratfunc([F(1 - n * n, 2)], [0, 0, 1])
        assert schwarzian_derivative(y) == expect


def test_schwarzian_of_exponential_series():
    import math
    e = TruncatedSeries(0, [F(1, math.factorial(k)) for k in range(16)],
                        order=15)
    s = schwarzian_derivative(e)
    assert s.coefficient(0) == F(-1, 2)
    assert all(s.coefficient(k) == 0 for k in range(1, 10))


def test_schwarzian_rejects_constant():
    with pytest.raises(ValueError):
        schwarzian_derivative(ratfunc([3], 1))


def test_schwarzian_series_matches_rational():
    y = ratfunc([0, 1, 4], [1, -1])
    ys = ratfunc_at_series(y, TruncatedSeries.x(14))
    exact = schwarzian_derivative(y)
    series = schwarzian_derivative(ys)
    assert series.agrees_with(TruncatedSeries.from_rational(exact, 10), 10)


# ------------------------------------------------------------ w_function


def test_w_specialization_order2():
    p = ratfunc([1, 3], [0, 1])
    q = ratfunc([2], [1, 0, 1])
    L = DiffOperator([q, p, 1])
    assert w_function(L) == p.derivative() + F(1, 2) * p * p - 2 * q


def test_w_specialization_order3():
    p = ratfunc([1, 3], [0, 1])
    q = ratfunc([2], [1, 0, 1])
    L = DiffOperator([ratfunc([7], [1, 1]), q, p, 1])
    assert w_function(L) == (F(1, 2) * p.derivative() + F(1, 6) * p * p
                             - F(1, 2) * q)


def test_w_specialization_order4():
    p = ratfunc([1, 3], [0, 1])
    q = ratfunc([2], [1, 0, 1])
    L = DiffOperator([0, ratfunc([1], [0, 1]), q, p, 1])
    assert w_function(L) == (F(3, 10) * p.derivative() + F(3, 40) * p * p
                             - F(1, 5) * q)


def test_w_specialization_order5():
    p = ratfunc([1, 3], [0, 1])
    q = ratfunc([2], [1, 0, 1])
    L = DiffOperator([1, 0, ratfunc([1], [0, 1]), q, p, 1])
    assert w_function(L) == (F(1, 5) * p.derivative() + F(1, 25) * p * p
                             - F(1, 10) * q)


def test_w_of_pure_derivation_power():
    for n in (2, 3, 4):
        L = DiffOperator([0] * n + [1])
        assert w_function(L).is_zero()


def test_w_normalizes_before_reading_coefficients():
    p = ratfunc([1, 3], [0, 1])
    q = ratfunc([2], [1, 0, 1])
    L = DiffOperator([q, p, 1])
    scaled = L.scale(ratfunc([1, 5], [2, 1]))
    assert w_function(scaled) == w_function(L)


def test_w_rejects_first_order():
    with pytest.raises(ValueError):
        w_function(OP_D)


def test_w_of_modular_operator():
    assert w_function(modular_operator()) == modular_w()


def test_w_of_chi2_operator():
    # conjugate of the x -> x^2 pullback of the [3/2,5/2],[3] operator by
    # the gauge x^4/64 (log-derivative 4/x)
    H = hypergeometric_operator(F(3, 2), F(5, 2), 3)
    L = op_conjugate(op_pullback(H, ratfunc([0, 0, 1], 1)),
                     Gauge(ratfunc([-4], [0, 1])))
    assert w_function(L) == chi2_w()
    head = TruncatedSeries.from_rational(chi2_w(), 4)
    assert [head.coefficient(i) for i in (-2, 0, 2, 4)] == \
        [F(15, 2), F(6), F(6), F(6)]


def test_schwarzian_problem_from_operator():
    prob = SchwarzianProblem.from_operator(modular_operator())
    assert prob.w == modular_w()
    assert prob.order_n == 2


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_w_invariant_under_gauge_conjugation(data):
    coeff = st.integers(min_value=-3, max_value=3)
    N = data.draw(st.integers(min_value=2, max_value=5))
    def draw_rf():
        num = [data.draw(coeff) for _ in range(3)]
        den = [1 + abs(data.draw(coeff))] + [data.draw(coeff) for _ in range(2)]
        return ratfunc(num if any(num) else [1], den)
    L = DiffOperator([draw_rf() for _ in range(N)] + [1])
    g = Gauge(draw_rf())
    assert (w_function(op_conjugate(L, g)) - w_function(L)).is_zero()


def test_w_of_symmetric_power_collapses_to_order2_value():
    A = ratfunc([1, 2], [1, 0, 1])
    B = ratfunc([3], [1, 1])
    L2 = DiffOperator([B, A, 1])
    for m in (2, 3, 4):
        LN = sym_power_order2(L2, m)
        assert (w_function(LN) - w_function(L2)).is_zero()


# ------------------------------------------------------ residual evaluation


def test_residual_identity_map_vanishes():
    assert schwarzian_residual(modular_w(), ratfunc([0, 1], 1)) == RF_ZERO


def test_residual_trivial_w_monomials_rational():
    for n, a in ((1, F(3)), (2, F(5, 7)), (4, F(-2))):
        y = ratfunc([0] * n + [a], 1)
        assert schwarzian_residual(W_TRIVIAL, y).is_zero()


def test_residual_trivial_w_monomials_series():
    y = TruncatedSeries.monomial(F(5, 7), 3, 12)
    r = schwarzian_residual(W_TRIVIAL, y)
    assert r.is_zero()


def test_residual_of_solver_output_vanishes():
    W = modular_w()
    fam = solve_schwarzian_series(W, 2, F(3), 12)
    r = schwarzian_residual(W, fam.tail)
    assert r.order >= 10
    assert r.is_zero()


def test_residual_rejects_constant_term_series():
    with pytest.raises(ValueError):
        schwarzian_residual(W_TRIVIAL, TruncatedSeries(0, [1, 1], 8))


def test_pullback_head_preserved():
    # premodular head -1/(2x^2) survives W(y) y'^2 - {y, x} for y = a x^n + ...
    W = ratfunc([-1, 3, 2], [0, 0, 2, -2])
    for n, a in ((2, F(3)), (3, F(1, 2))):
        y = TruncatedSeries(n, [a, F(1, 3), F(-2, 5), F(1)], order=n + 3)
        t = ratfunc_at_series(W, y) * y.derivative() ** 2 \
            - schwarzian_derivative(y)
        assert t.coefficient(-2) == F(-1, 2)


# ------------------------------------------------- pullback symmetry check


def test_pullback_symmetry_identity_map():
    L = DiffOperator([ratfunc([1], [0, 1]), ratfunc([2, 1], [1, 0, 3]),
                      ratfunc([1, 5], [2, 1]), 1])
    rep = pullback_symmetry_check(L, ratfunc([0, 1], 1))
    assert rep.full_match and rep.residual_zero


def test_pullback_symmetry_euler_square():
    # L = D^2 + D/x has W = -1/(2x^2); x -> x^2 is an exact symmetry
    L = DiffOperator([0, ratfunc([1], [0, 1]), 1])
    rep = pullback_symmetry_check(L, ratfunc([0, 0, 1], 1))
    assert rep.full_match and rep.residual_zero


def test_pullback_symmetry_mismatch_localized_at_order_zero():
    # perturbing the D^0 coefficient keeps W (hence the residual) but
    # breaks the operator identity exactly there
    L = DiffOperator([0, ratfunc([1], [0, 1]), 1])
    S = sym_power_order2(L, 2)
    good = pullback_symmetry_check(S, ratfunc([0, 0, 1], 1))
    assert good.full_match
    pert = DiffOperator([S.coeff(0) + 17, S.coeff(1), S.coeff(2), S.coeff(3)])
    rep = pullback_symmetry_check(pert, ratfunc([0, 0, 1], 1))
    assert rep.residual_zero
    assert not rep.full_match
    assert rep.mismatch_orders == (0,)


def test_pullback_symmetry_rejects_constant_map():
    with pytest.raises(ValueError):
        pullback_symmetry_check(DiffOperator([0, 0, 1]), ratfunc([2], 1))


# ----------------------------------------------------------- series solver


def test_solver_trivial_w_gives_pure_monomial():
    fam = solve_schwarzian_series(W_TRIVIAL, 3, F(5, 7), 9)
    assert fam.consistent
    assert fam.resonances == ()
    assert fam.tail == TruncatedSeries.monomial(F(5, 7), 3, 12)


def test_solver_modular_first_family_coefficient():
    W = modular_w()
    for a1 in (F(2), F(3), F(1, 2)):
        fam = solve_schwarzian_series(W, 1, a1, 6)
        assert fam.consistent
        assert fam.tail.coefficient(2) == F(-31, 72) * a1 * (a1 - 1)
    assert solve_schwarzian_series(W, 1, 2, 6).tail.coefficient(2) == F(-31, 36)


def test_solver_chi2_second_family_inconsistent():
    fam = solve_schwarzian_series(chi2_w(), 2, 1, 8)
    assert fam.inconsistent_at == 0
    assert not fam.consistent


def test_solver_heun_gamma_three_halves_inconsistent():
    rep = heun_scan(3, 1, F(1, 2), 1, F(3, 2), F(1, 2))
    assert rep.head[0] == F(-3, 8)
    fam = solve_schwarzian_series(rep.w, 2, 1, 8)
    assert fam.inconsistent_at == 0


def test_solver_resonance_records_moebius_freedom():
    # W = 0 solutions are Moebius maps; c_1 is free at n = 1
    fam = solve_schwarzian_series(RF_ZERO, 1, 5, 8)
    assert fam.consistent
    assert fam.resonances == (1,)
    assert fam.tail == TruncatedSeries.monomial(5, 1, 9)


def test_solver_rejects_steep_pole():
    with pytest.raises(ValueError):
        solve_schwarzian_series(ratfunc([1], [0, 0, 0, 1]), 1, 2, 6)


def test_solver_rejects_bad_leading_data():
    with pytest.raises(ValueError):
        solve_schwarzian_series(W_TRIVIAL, 0, 2, 6)
    with pytest.raises(ValueError):
        solve_schwarzian_series(W_TRIVIAL, 1, 0, 6)


def test_solution_family_serialization():
    fam = solve_schwarzian_series(RF_ZERO, 1, 5, 4)
    data = fam.to_json()
    assert data["n"] == 1
    assert data["a_n"] == "5"
    assert data["resonances"] == [1]
    assert data["inconsistent_at"] is None


# -------------------------------------------------------------- premodular


def test_premodular_modular_passes():
    assert premodular_test(modular_w()).passes


def test_premodular_chi2_fails_with_head():
    rep = premodular_test(chi2_w())
    assert not rep.passes
    assert rep.head.coefficient(-2) == F(15, 2)
    assert rep.head.coefficient(0) == 6


def test_premodular_exact_trivial_w():
    assert premodular_test(W_TRIVIAL).passes


def test_premodular_heun_iff_gamma_one():
    for gamma, expect in ((F(1), True), (F(3, 2), False), (F(5, 3), False)):
        rep = heun_scan(3, F(1, 3), F(1, 2), F(1, 3), gamma, F(1, 5))
        assert rep.premodular is expect
        assert rep.head[0] == gamma * (gamma - 2) / 2


def test_premodular_implies_families_consistent():
    rep = heun_scan(3, F(1, 3), F(1, 2), F(1, 3), 1, F(1, 5))
    for n in (1, 2, 3, 4):
        fam = solve_schwarzian_series(rep.w, n, 2, 6)
        assert fam.consistent
    bad = heun_scan(3, F(1, 3), F(1, 2), F(1, 3), F(5, 3), F(1, 5))
    flags = [solve_schwarzian_series(bad.w, n, 2, 6).consistent
             for n in (2, 3)]
    assert not all(flags)


# ------------------------------------------------------------- f-equation


def test_f_equation_zero_w():
    fe = f_equation(RF_ZERO)
    assert fe.operator == DiffOperator([0, 0, 0, 1])
    assert fe.sym_square_matches


def test_f_equation_is_sym_square():
    fe = f_equation(modular_w())
    assert fe.sym_square_matches
    assert fe.operator.coeff(2).is_zero()
    assert fe.operator.coeff(1) == -2 * modular_w()


def test_f_equation_annihilates_modular_generator():
    fe = f_equation(modular_w())
    res = fe.operator.apply_series(modular_generator(30))
    assert res.is_zero() and res.order >= 25


def test_f_equation_annihilates_squares_of_factor_solutions():
    W = ratfunc([1], [1, -1])
    fe = f_equation(W)
    K = 18
    B = TruncatedSeries.from_rational(F(1, 2) * W, K)
    c = [F(1), F(1, 3)] + [F(0)] * (K - 1)
    for n in range(K - 1):
        acc = sum(B.coefficient(j) * c[n - j] for j in range(n + 1))
        c[n + 2] = acc / ((n + 1) * (n + 2))
    u = TruncatedSeries(0, c, K)
    assert fe.factor.apply_series(u).is_zero()
    assert fe.operator.apply_series(u * u).is_zero()


# ------------------------------------------------------------ w from flow


def test_w_from_f_linear_flow():
    rep = w_from_f(TruncatedSeries.x(12), F(1, 2))
    assert rep.w.is_zero()
    assert rep.casimir.is_zero()


def test_w_from_f_modular_identity():
    rep = w_from_f(modular_generator(26), 0)
    assert rep.w.agrees_with(TruncatedSeries.from_rational(modular_w(), 20),
                             20)
    assert rep.casimir.is_zero()


def test_casimir_residual_against_rational_w():
    Fm = modular_generator(22)
    assert casimir_residual(Fm, 0, modular_w()).is_zero()


def test_lambda_gauge_term_transforms_like_w():
    # F(y)^2 = (F(x) y')^2 along the flow, so lam/F^2 drops out of the
    # residual for every lam
    Fm = modular_generator(22)
    y = mirror_maps(Fm).family(2, 1)
    lhs = Fm.compose(y)
    rhs = Fm * y.derivative()
    assert lhs.agrees_with(rhs, 16)


# ------------------------------------------------------- one-param family


def test_family_of_linear_flow_is_scaling():
    fam = one_param_family(TruncatedSeries.x(10), 10, 5)
    assert fam.functional_ok and fam.schwarzian_ok
    x = TruncatedSeries.x(10)
    assert all(q.agrees_with(x, 9) for q in fam.charges)


def test_family_charge_recursion():
    Fm = modular_generator(20)
    fam = one_param_family(Fm, 18, 4)
    d = Fm.derivative()
    assert fam.charges[1].agrees_with(Fm * d, 15)
    q3 = Fm * (Fm * d.derivative() + d * d)
    assert fam.charges[2].agrees_with(q3, 14)


def test_family_verifies_its_identities():
    fam = one_param_family(modular_generator(20), 18, 5)
    assert fam.functional_ok
    assert fam.schwarzian_ok


def test_family_with_casimir_constant():
    fam = one_param_family(modular_generator(18), 16, 4, lam=F(1, 2))
    assert fam.schwarzian_ok


def test_family_charges_from_mirror_coordinates():
    # Q_n = sum_m m^n p_m Q^m resums the flow in mirror coordinates
    Fm = modular_generator(20)
    fam = one_param_family(Fm, 18, 3)
    mm = mirror_maps(Fm)
    for n in (1, 2, 3):
        acc = TruncatedSeries.zero(14)
        qpow = TruncatedSeries.one()
        for mi in range(1, 14):
            qpow = qpow * mm.q
            acc = acc + qpow.scale(mm.p.coefficient(mi) * mi ** n)
        assert acc.agrees_with(fam.charges[n - 1], 12)


def test_family_rejects_bad_generator():
    with pytest.raises(ValueError):
        one_param_family(TruncatedSeries(0, [1, 1], 8), 8)


def test_family_eps_parts_shape():
    fam = one_param_family(modular_generator(14), 12, 3)
    parts = fam.eps_parts(10)
    assert parts[0].agrees_with(TruncatedSeries.x(10), 10)
    assert parts[1].agrees_with(fam.generator, 10)
    assert parts[2].agrees_with(fam.charges[1].scale(F(1, 2)), 10)


# ------------------------------------------------------------- mirror maps


def test_mirror_maps_linear_flow():
    mm = mirror_maps(TruncatedSeries.x(12))
    assert mm.q.agrees_with(TruncatedSeries.x(), 11)
    assert mm.p.agrees_with(TruncatedSeries.x(), 11)


def test_mirror_maps_modular_integer_coefficients():
    mm = mirror_maps(modular_generator(24))
    scale = TruncatedSeries.monomial(1728, 1, 24)
    q = mm.q.compose(scale).scale(F(1, 1728))
    p = mm.p.compose(scale).scale(F(1, 1728))
    assert [q.coefficient(i) for i in range(1, 6)] == \
        [1, 744, 750420, 872769632, 1102652742882]
    assert [p.coefficient(i) for i in range(1, 6)] == \
        [1, -744, 356652, -140361152, 49336682190]


def test_mirror_maps_inverse_pair():
    mm = mirror_maps(modular_generator(20))
    x = TruncatedSeries.x()
    assert mm.p.compose(mm.q).agrees_with(x, 18)
    assert mm.q.compose(mm.p).agrees_with(x, 18)


def test_mirror_maps_flow_equation_for_p():
    Fm = modular_generator(20)
    mm = mirror_maps(Fm)
    assert mm.p.derivative().shift(1).agrees_with(Fm.compose(mm.p), 17)


def test_mirror_family_matches_solver():
    Fm = modular_generator(22)
    mm = mirror_maps(Fm)
    W = modular_w()
    got = mm.family(2, 1)
    fam = solve_schwarzian_series(W, 1, 2, 14)
    assert all(got.coefficient(i) == fam.tail.coefficient(i)
               for i in range(1, 13))
    got2 = mm.family(5, 2)
    fam2 = solve_schwarzian_series(W, 2, 5, 12)
    assert all(got2.coefficient(i) == fam2.tail.coefficient(i)
               for i in range(2, 12))


def test_mirror_maps_rejects_wrong_leading_coefficient():
    with pytest.raises(ValueError):
        mirror_maps(TruncatedSeries.monomial(2, 1, 10))
    with pytest.raises(ValueError):
        mirror_maps(TruncatedSeries.monomial(1, 2, 10))


# -------------------------------------------------------- composition law


def test_composition_law_modular():
    W = modular_w()
    for n, m in ((1, 1), (1, 2), (2, 3)):
        chk = composition_law_check(W, n, m, 2, 3, 8)
        assert isinstance(chk, CompositionCheck)
        assert chk.ok and chk.order_checked == 8


def test_composition_law_commutation_of_first_families():
    W = modular_w()
    a = solve_schwarzian_series(W, 1, 2, 14).tail
    b = solve_schwarzian_series(W, 1, 3, 14).tail
    ab = a.compose(b)
    ba = b.compose(a)
    assert ab.agrees_with(ba, 10)


def test_composition_law_rank_two_family():
    AR = ratfunc([1], [0, 1]) + ratfunc([F(1, 5)], [-1, 1]) \
        + ratfunc([F(1, 3) - F(1, 5)], [-2, 1])
    tk = ranktwo_subcase(AR)
    chk = composition_law_check(tk.w, 1, 2, 2, 3, 8)
    assert chk.ok


def test_composition_law_raises_on_inconsistent_family():
    with pytest.raises(ValueError):
        composition_law_check(chi2_w(), 2, 2, 1, 1, 6)


# ------------------------------------------------------- rank-two subcase


def test_ranktwo_euler_case():
    tk = ranktwo_subcase(ratfunc([1], [0, 1]))
    assert tk.w == W_TRIVIAL
    y = ratfunc([0, 0, 0, 5], 1)
    assert tk.residual(y).is_zero()
    fam = tk.flow_solve([(Polynomial([0, 1]), -1)], 3, 5, 9)
    assert fam.tail == TruncatedSeries.monomial(5, 3, 12)


def test_ranktwo_heun_family_coefficients():
    a, beta, delta = F(2), F(1, 3), F(1, 5)
    AR = ratfunc([1], [0, 1]) + ratfunc([delta], [-1, 1]) \
        + ratfunc([beta - delta], [-a, 1])
    tk = ranktwo_subcase(AR)
    facs = [(Polynomial([0, 1]), -1), (Polynomial([-1, 1]), -delta),
            (Polynomial([-a, 1]), -(beta - delta))]
    slope = (a * delta + beta - delta) / a
    for a1 in (F(2), F(3)):
        fam = tk.flow_solve(facs, 1, a1, 8)
        assert fam.tail.coefficient(2) == -a1 * (a1 - 1) * slope
    fam2 = tk.flow_solve(facs, 2, 7, 8)
    assert fam2.tail.coefficient(3) == 2 * slope * 7
    assert tk.residual(fam2.tail).is_zero()
    assert schwarzian_residual(tk.w, fam2.tail).is_zero()


def test_ranktwo_flow_requires_matching_factors():
    tk = ranktwo_subcase(ratfunc([1], [0, 1]))
    with pytest.raises(ValueError):
        tk.flow_solve([(Polynomial([0, 1]), -2)], 2, 1, 6)


def test_ranktwo_mu_extraction():
    # F = x (1-x)^(1/2) 2F1([1/2,1/4],[5/4],x) with A_R = (3-5x)/(4x(1-x));
    # the 1/x balance of A_R - F'/F = mu/F forces mu = 3/4 - 1 = -1/4
    K = 24
    h = hypergeometric_series([F(1, 2), F(1, 4)], [F(5, 4)], K)
    root = TruncatedSeries.from_polynomial(Polynomial([1, -1]), K).sqrt()
    Fh = (h * root).shift(1)
    tk = ranktwo_subcase(ratfunc([3, -5], [0, 4, -4]))
    mu = tk.find_mu(Fh)
    assert mu == F(-1, 4)
    r1, r2 = tk.f_residuals(Fh, mu)
    assert r1.is_zero() and r1.order >= 20
    assert r2.is_zero() and r2.order >= 20
    lam = mu * mu / 2
    assert lam == F(1, 32)
    rep = w_from_f(Fh, lam)
    assert rep.w.agrees_with(TruncatedSeries.from_rational(tk.w, 18), 18)


def test_ranktwo_mu_rejects_non_member():
    tk = ranktwo_subcase(ratfunc([1], [0, 1]))
    bad = TruncatedSeries(1, [F(1), F(1)], 12)
    with pytest.raises(ValueError):
        tk.find_mu(bad)


# ---------------------------------------------------------------- Heun scan


def test_heun_scan_worked_example():
    rep = heun_scan(3, 1, F(1, 2), 1, F(3, 2), F(1, 2))
    assert not rep.reducible
    assert rep.head[0] == F(-3, 8)
    assert not rep.premodular
    hits = [b for b in rep.factorizations if b.matches]
    assert [(b.u, b.v, b.w) for b in hits] == [(F(1, 2), F(1, 2), F(1, 2))]
    assert rep.example_condition


def test_heun_scan_head_formula():
    a, q, al, be, ga, de = F(3), F(1), F(1, 2), F(1), F(3, 2), F(1, 2)
    rep = heun_scan(a, q, al, be, ga, de)
    assert rep.head[0] == ga * (ga - 2) / 2
    assert rep.head[1] == -(a * de * ga + al * ga + be * ga - de * ga
                            - ga * ga + ga - 2 * q) / a


def test_heun_scan_reducible_flag():
    rep = heun_scan(1, F(1, 4), F(1, 2), F(1, 3), F(3, 2), F(1, 5))
    assert rep.reducible
    assert rep.operator is None and rep.factorizations == ()


def test_heun_scan_branch_count():
    generic = heun_scan(3, F(1, 3), F(1, 7), F(1, 3), F(5, 3), F(1, 5))
    assert len(generic.factorizations) == 8
    collapsed = heun_scan(3, F(1, 3), F(1, 7), F(1, 3), 1, F(1, 5))
    assert len(collapsed.factorizations) == 4


def test_heun_scan_special_conditions():
    rep = heun_scan(3, 1, F(1, 2), 1, F(3, 2), F(1, 2))
    assert rep.special_conditions[0]
    assert rep.special_conditions == (True, False, False, False, False, False)


def test_heun_operator_rejects_degenerate_singularities():
    with pytest.raises(ValueError):
        heun_operator(0, 1, 1, 1, 1, 1)
