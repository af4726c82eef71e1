"""Structural order-drop conditions for linear differential operators.

The order of the exterior or symmetric square of an operator detects
self-duality of its solution space; this module packages the relevant
conditions as exact rational residuals, reconstructs symmetric-power
factors, builds the self-adjoint product decompositions that parametrize
the symmetric-square order drops, and relates a reducible product to the
data of its factors.  Every verdict is an exact zero test over Q(x),
never a numeric one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .diffop import (
    DiffOperator,
    Gauge,
    _as_rf,
    op_adjoint,
    op_conjugate,
    op_mul,
    sym_power_order2,
)
from .exact import RF_ZERO, RationalFunction, ratfunc
from .series import TruncatedSeries, ratfunc_at_series
from .schwarzian import schwarzian_residual, w_function

__all__ = [
    "ConditionReport",
    "SymPowerDetection",
    "ReducibleRelations",
    "calabi_residual",
    "s_condition_residual",
    "symcy3_residual",
    "order5_residuals",
    "detect_sym_power",
    "selfadjoint_decomposition_build",
    "adjoint_conjugation_check",
    "reducible_relations",
]


@dataclass(frozen=True)
class ConditionReport:
    """A named exact condition; it holds exactly when the residual is 0."""

    name: str
    residual: RationalFunction

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "residual": self.residual.to_json(),
        }


def _der(f: RationalFunction, k: int = 1) -> RationalFunction:
    for _ in range(k):
        f = f.derivative()
    return f


def _monic_of_order(L: DiffOperator, order: int) -> DiffOperator:
    if L.order != order:
        raise ValueError(f"expected an operator of order {order}, got {L.order}")
    return L if L.is_monic else L.monic()


def calabi_residual(L4: DiffOperator) -> ConditionReport:
    """Exterior-square order drop (6 -> 5) for a monic order-4 operator.

    Writing the operator as D^4 + p D^3 + q D^2 + r D + s, the drop happens
    exactly when r equals a universal expression in p, q and derivatives;
    the report carries r minus that expression.
    """
    M = _monic_of_order(L4, 4)
    p, q, r = M.coeff(3), M.coeff(2), M.coeff(1)
    rhs = (p * q / 2 - p ** 3 / 8 + _der(q)
           - p * _der(p) * Fraction(3, 4) - _der(p, 2) / 2)
    return ConditionReport("calabi", r - rhs)


def s_condition_residual(L4: DiffOperator) -> ConditionReport:
    """Constant-coefficient companion to the exterior-square drop.

    Together with the drop of calabi_residual it forces the operator to be
    the symmetric cube of an order-2 operator; the report carries the
    deviation of the D^0 coefficient from the pinned expression.
    """
    M = _monic_of_order(L4, 4)
    p, q, s = M.coeff(3), M.coeff(2), M.coeff(0)
    rhs = (q * q * Fraction(9, 100)
           - q * p * p * Fraction(1, 200)
           + p * _der(q) * Fraction(1, 4)
           - q * _der(p) * Fraction(1, 50)
           + _der(q, 2) * Fraction(3, 10)
           - p ** 4 * Fraction(11, 1600)
           - p * p * _der(p) * Fraction(9, 50)
           - _der(p) * _der(p) * Fraction(21, 100)
           - _der(p, 3) * Fraction(1, 5)
           - p * _der(p, 2) * Fraction(7, 20))
    return ConditionReport("s-condition", s - rhs)


def symcy3_residual(L3: DiffOperator) -> ConditionReport:
    """Symmetric-square order drop (6 -> 5) for a monic order-3 operator.

    Holds exactly when the operator is the symmetric square of an order-2
    operator.
    """
    M = _monic_of_order(L3, 3)
    p, q, r = M.coeff(2), M.coeff(1), M.coeff(0)
    rhs = (p ** 3 * Fraction(-2, 27) + p * q / 3 - p * _der(p) / 3
           + _der(q) / 2 - _der(p, 2) / 6)
    return ConditionReport("symmetric-calabi", r - rhs)


def order5_residuals(L5: DiffOperator) -> Tuple[ConditionReport, ...]:
    """The three conditions pinning an order-5 operator to a 4th sym power.

    With the operator written D^5 + p D^4 + q D^3 + r D^2 + s D + t, the
    three reports measure the deviation of r, s and t from the expressions
    forced on the symmetric fourth power of D^2 + (p/10) D + B.  All three
    hold exactly when the operator is such a power; dropping any one of
    them loses the symmetric-square order drop (15 -> 9).
    """
    M = _monic_of_order(L5, 5)
    p, q, r, s, t = (M.coeff(k) for k in (4, 3, 2, 1, 0))
    dp, dp2, dp3, dp4 = (_der(p, k) for k in (1, 2, 3, 4))
    dq, dq2, dq3 = (_der(q, k) for k in (1, 2, 3))
    r_rhs = (p ** 3 * Fraction(-4, 25) + p * dp * Fraction(-6, 5)
             + p * q * Fraction(3, 5) - dp2 + dq * Fraction(3, 2))
    s_rhs = (p ** 4 * Fraction(-9, 625) + p * p * dp * Fraction(-58, 125)
             + p * p * q * Fraction(-1, 125) + p * dp2 * Fraction(-28, 25)
             + p * dq * Fraction(3, 5) + dp * dp * Fraction(-17, 25)
             + dp * q * Fraction(-1, 25) + q * q * Fraction(4, 25)
             + dp3 * Fraction(-4, 5) + dq2 * Fraction(9, 10))
    t_rhs = (dp * dp2 * Fraction(-11, 25) + p * dp3 * Fraction(-8, 25)
             + p ** 3 * dp * Fraction(4, 625) + p ** 3 * q * Fraction(-11, 625)
             + p * p * dp2 * Fraction(-17, 125) + p * p * dq * Fraction(-1, 250)
             + p * dp * dp * Fraction(-3, 25) + p * q * q * Fraction(4, 125)
             + p * dq2 * Fraction(9, 50) + dp * dq * Fraction(-1, 50)
             + q * dp2 * Fraction(-3, 25) + q * dq * Fraction(4, 25)
             + p * q * dp * Fraction(-17, 125) + dp4 * Fraction(-1, 5)
             + dq3 * Fraction(1, 5) + p ** 5 * Fraction(7, 3125))
    return (ConditionReport("sym4-r", r - r_rhs),
            ConditionReport("sym4-s", s - s_rhs),
            ConditionReport("sym4-t", t - t_rhs))


@dataclass(frozen=True)
class SymPowerDetection:
    """Result of testing whether an operator is a symmetric power."""

    is_sym_power: bool
    base: Optional[DiffOperator]


def detect_sym_power(L: DiffOperator, N: int) -> SymPowerDetection:
    """Decide exactly whether L equals Sym^(N-1) of an order-2 operator.

    The top two coefficients of any symmetric power determine the base
    candidate D^2 + A D + B linearly; rebuilding the power and comparing
    coefficientwise gives an exact verdict.
    """
    if N not in (3, 4, 5):
        raise ValueError(f"detection supports orders 3..5, got {N}")
    M = _monic_of_order(L, N)
    p, q = M.coeff(N - 1), M.coeff(N - 2)
    A = p * Fraction(2, N * (N - 1))
    B = (q * Fraction(6, (N + 1) * N * (N - 1))
         - p * p * Fraction((3 * N - 1) * (N - 2), (N + 1) * N * N * (N - 1) * (N - 1))
         - _der(p) * Fraction(2 * (N - 2), (N + 1) * N * (N - 1)))
    base = DiffOperator([B, A, ratfunc([1])])
    if sym_power_order2(base, N - 1) == M:
        return SymPowerDetection(True, base)
    return SymPowerDetection(False, None)


def _self_adjoint_order1(c: RationalFunction) -> DiffOperator:
    return DiffOperator([c.derivative() / 2, c])


def _self_adjoint_order3(a: RationalFunction, b: RationalFunction) -> DiffOperator:
    return DiffOperator([b.derivative() / 2 - _der(a, 3) / 4,
                         b, a.derivative() * Fraction(3, 2), a])


def selfadjoint_decomposition_build(a, b, c, d, e=None) -> DiffOperator:
    """Operator with a degenerate symmetric square, from self-adjoint parts.

    With U1 = c D + c'/2, U3 = a D^3 + (3/2) a' D^2 + b D + (b'/2 - a'''/4)
    and V1 = e D + e'/2, builds the monic normalization of

        (U1*U3 + 1)*d          (order 4, e omitted)
        (U1*V1*U3 + U1 + U3)*d (order 5)

    whose symmetric square drops to order 9 instead of 10 resp. below 15;
    the coefficients come from exact operator multiplication.
    """
    a, b, c, d = (_as_rf(f) for f in (a, b, c, d))
    if a.is_zero() or c.is_zero() or d.is_zero():
        raise ValueError("parameters a, c, d must be nonzero")
    u1 = _self_adjoint_order1(c)
    u3 = _self_adjoint_order3(a, b)
    mult_d = DiffOperator([d])
    if e is None:
        one = DiffOperator([ratfunc([1])])
        return op_mul(op_mul(u1, u3) + one, mult_d).monic()
    e = _as_rf(e)
    if e.is_zero():
        raise ValueError("parameter e must be nonzero")
    v1 = _self_adjoint_order1(e)
    core = op_mul(op_mul(u1, v1), u3) + u1 + u3
    return op_mul(core, mult_d).monic()


def adjoint_conjugation_check(L: DiffOperator, alpha: Fraction) -> bool:
    """Whether L * w^alpha = w^alpha * adjoint(L) for the wronskian w.

    The wronskian of a monic operator satisfies w'/w = -p with p the
    subleading coefficient, so the check conjugates by the gauge with
    log-derivative -alpha*p and compares against the monic adjoint (the
    formal adjoint of an odd-order operator has leading sign -1).
    """
    M = L if L.is_monic else L.monic()
    p = M.coeff(M.order - 1)
    conjugated = op_conjugate(M, Gauge(p * (-Fraction(alpha))))
    return conjugated == op_adjoint(M).monic()


@dataclass(frozen=True)
class ReducibleRelations:
    """Pullback data of a product of two monic order-2 operators.

    The first two residuals are the change-of-variable conditions of the
    factors under y; ``coupling`` ties the two factors through y, and
    ``delta_w`` is the y-independent compatibility of the product (a
    constant multiple of the product's calabi residual, reported too).
    """

    schwarzian_base: Union[RationalFunction, TruncatedSeries]
    schwarzian_cofactor: Union[RationalFunction, TruncatedSeries]
    coupling: Union[RationalFunction, TruncatedSeries]
    delta_w: ConditionReport
    product_calabi: ConditionReport


def reducible_relations(L2: DiffOperator, M2: DiffOperator,
                        y: Union[RationalFunction, TruncatedSeries]) -> ReducibleRelations:
    """Residuals governing a pullback symmetry of the product M2 * L2."""
    Lm = _monic_of_order(L2, 2)
    Mm = _monic_of_order(M2, 2)
    p, pt = Lm.coeff(1), Mm.coeff(1)
    w, wt = w_function(Lm), w_function(Mm)
    delta = w - wt
    delta_res = _der(delta) * 2 - (p - pt) * delta
    if isinstance(y, TruncatedSeries):
        dy = y.derivative()
        shift = ratfunc_at_series(pt - p, y) * dy
        coupling = (dy.derivative().divide(dy).scale(4)
                    + TruncatedSeries.from_rational(pt - p, shift.order) - shift)
    else:
        dy = y.derivative()
        coupling = (dy.derivative() / dy * 4 + pt - p
                    - (pt.compose(y) - p.compose(y)) * dy)
    return ReducibleRelations(
        schwarzian_base=schwarzian_residual(w, y),
        schwarzian_cofactor=schwarzian_residual(wt, y),
        coupling=coupling,
        delta_w=ConditionReport("delta-w", delta_res),
        product_calabi=calabi_residual(op_mul(Mm, Lm)),
    )
