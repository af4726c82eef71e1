"""Nome and coupling series at points of maximal unipotent monodromy.

A fourth-order operator is MUM at x = 0 when its indicial polynomial
there is a constant multiple of sigma^4.  Its Frobenius basis
y_0, ..., y_3 then defines a canonical local coordinate, the nome
q = exp(y_1/y_0) = x + O(x^2), and coupling series in either variable.

Two couplings appear here.  ``instanton_coupling`` is the familiar
normalized series (q d/dq)^2 (y_2/y_0) re-expanded in q (for the quintic
operator it generates the instanton numbers 2875, 609250, ...).  The
``yukawa`` pipeline of this module returns its square,

    K_q = [(q d/dq)^2 (y_2/y_0)]^2,        K_x = K_q(q_x(x)),

the normalization natural for the fourth-order operators built from
products of second-order solutions that this library targets; both
series have constant term exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .diffop import (DiffOperator, Gauge, frobenius_mum_basis, op_conjugate,
                     op_pullback)
from .exact import RationalFunction, rat
from .schwarzian import schwarzian_derivative, w_function
from .series import TruncatedSeries, ratfunc_at_series

__all__ = [
    "MumData",
    "PullbackRelationReport",
    "hadamard",
    "instanton_coupling",
    "mum_data",
    "nome_series",
    "pair_schwarzian_residual",
    "yukawa",
    "yukawa_pullback_relation_check",
]


def _mum_pipeline(L: DiffOperator, K: int
                  ) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Nome q_x and the base coupling (q d/dq)^2 (y_2/y_0), both to x^K."""
    basis = frobenius_mum_basis(L.monic(), K)
    s0 = basis[0].part(0)
    u = basis[1].part(0) / s0
    qx = TruncatedSeries.x(K) * u.exp()
    # log-free part of y_2/y_0 once log x is traded for log q
    g = (basis[2].part(0) / s0 - (u * u).scale(Fraction(1, 2)))
    gq = g.compose(qx.reverse())
    coeffs = [Fraction(1)] + [n * n * gq.coefficient(n)
                              for n in range(1, gq.order + 1)]
    return qx, TruncatedSeries(0, coeffs, gq.order)


def nome_series(L: DiffOperator, K: int) -> TruncatedSeries:
    """The nome q_x = x exp(y1-tilde/y_0) of a MUM operator, to x^K.

    Raises ValueError when the operator is not MUM at x = 0.
    """
    basis = frobenius_mum_basis(L.monic(), K)
    u = basis[1].part(0) / basis[0].part(0)
    return TruncatedSeries.x(K) * u.exp()


def instanton_coupling(L: DiffOperator, K: int) -> TruncatedSeries:
    """(q d/dq)^2 (y_2/y_0) of a MUM operator, re-expanded in the nome."""
    return _mum_pipeline(L, K)[1]


def yukawa(L: DiffOperator, K: int
           ) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Coupling series (K_x, K_q) of an order-4 MUM operator.

    K_q is the square of the base coupling, a series in the nome q with
    constant term 1; K_x = K_q(q_x(x)) carries the same data back to x.
    """
    qx, base = _mum_pipeline(L, K)
    kq = (base * base).truncate(K)
    kx = kq.compose(qx).truncate(K)
    return kx, kq


@dataclass(frozen=True)
class MumData:
    """Nome and coupling series attached to one MUM operator."""

    operator: DiffOperator
    q_x: TruncatedSeries
    K_x: TruncatedSeries
    K_q: TruncatedSeries

    def to_json(self) -> dict:
        return {
            "operator": self.operator.to_json(),
            "q_x": self.q_x.to_json(),
            "K_x": self.K_x.to_json(),
            "K_q": self.K_q.to_json(),
        }


def mum_data(L: DiffOperator, K: int) -> MumData:
    """Full nome/coupling pipeline for one operator."""
    qx, base = _mum_pipeline(L, K)
    kq = (base * base).truncate(K)
    kx = kq.compose(qx).truncate(K)
    return MumData(operator=L, q_x=qx, K_x=kx, K_q=kq)


def hadamard(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise product, truncated at the shorter of the inputs."""
    if f.valuation() < 0 or g.valuation() < 0:
        raise ValueError("Hadamard product needs power series")
    n = min(f.order, g.order)
    return TruncatedSeries(0, [f.coefficient(i) * g.coefficient(i)
                               for i in range(n + 1)], n)


def pair_schwarzian_residual(L: DiffOperator, M: DiffOperator,
                             y: Union[RationalFunction, TruncatedSeries]):
    """W(M, x) - W(L, y) y'^2 + {y, x} for two same-order operators.

    A rational change of variable gives an exact rational residual (so
    vanishing is decidable); a series y gives a series residual.
    """
    if L.order != M.order:
        raise ValueError("operator orders differ")
    wl, wm = w_function(L), w_function(M)
    if isinstance(y, TruncatedSeries):
        d1 = y.derivative()
        pulled = ratfunc_at_series(wl, y) * d1 * d1
        here = ratfunc_at_series(wm, TruncatedSeries.x(y.order))
        return here - pulled + schwarzian_derivative(y)
    d1 = y.derivative()
    return wm - wl.compose(y) * d1 * d1 + schwarzian_derivative(y)


@dataclass(frozen=True)
class PullbackRelationReport:
    """Outcome of the nome/coupling relations for a conjugated pullback.

    ``lam`` and ``power`` are the leading coefficient and valuation of
    the pullback map y = lam x^power + ...; the three booleans record
    q_x(M)^power = (1/lam) q_x(L)(y),  K_x(M) = K_x(L)(y)  and
    K_q(M)(q) = K_q(L)(lam q^power) checked exactly to the given order.
    """

    precondition_ok: bool
    first_mismatch: Optional[tuple[int, str, str]]
    lam: Fraction
    power: int
    nome_ok: bool
    yukawa_x_ok: bool
    yukawa_q_ok: bool
    order: int

    @property
    def passed(self) -> bool:
        return (self.precondition_ok and self.nome_ok
                and self.yukawa_x_ok and self.yukawa_q_ok)

    def to_json(self) -> dict:
        return {
            "precondition_ok": self.precondition_ok,
            "first_mismatch": None if self.first_mismatch is None else {
                "coefficient": self.first_mismatch[0],
                "conjugated": self.first_mismatch[1],
                "pullback": self.first_mismatch[2],
            },
            "lam": str(self.lam),
            "power": self.power,
            "nome_ok": self.nome_ok,
            "yukawa_x_ok": self.yukawa_x_ok,
            "yukawa_q_ok": self.yukawa_q_ok,
            "order": self.order,
            "passed": self.passed,
        }


def yukawa_pullback_relation_check(L: DiffOperator, M: DiffOperator,
                                   y: RationalFunction, v: Gauge,
                                   K: int = 12) -> PullbackRelationReport:
    """Check the nome/coupling relations tying M = v pullback(L, y) v^-1.

    Both operators must be MUM at x = 0 and y must fix it.  The gauge
    precondition v M v^-1 = pullback(L, y) is tested first; a failure is
    reported with the first differing monic coefficient, and the series
    relations are still evaluated so the report shows how far they hold.
    """
    ys = TruncatedSeries.from_rational(y, K)
    n = ys.valuation()
    if n < 1:
        raise ValueError("pullback map must vanish at x = 0")
    lam = ys.coefficient(n)

    conj = op_conjugate(M, Gauge(-v.logDeriv)).monic()
    pulled = op_pullback(L, y).monic()
    first_mismatch = None
    for k in range(max(conj.order, pulled.order) + 1):
        if conj.coeff(k) != pulled.coeff(k):
            first_mismatch = (k, str(conj.coeff(k)), str(pulled.coeff(k)))
            break

    dl, dm = mum_data(L, K), mum_data(M, K)
    upto = K - 1
    nome_ok = (dm.q_x ** n).agrees_with(
        dl.q_x.compose(ys).scale(Fraction(1, 1) / lam), upto=upto)
    yx_ok = dm.K_x.agrees_with(dl.K_x.compose(ys), upto=upto)
    scaled = [Fraction(0)] * (K + 1)
    for j in range(K + 1):
        if j * n > K:
            break
        scaled[j * n] = dl.K_q.coefficient(j) * lam ** j
    yq_ok = dm.K_q.agrees_with(TruncatedSeries(0, scaled, K), upto=upto)
    return PullbackRelationReport(
        precondition_ok=first_mismatch is None,
        first_mismatch=first_mismatch,
        lam=lam, power=n,
        nome_ok=nome_ok, yukawa_x_ok=yx_ok, yukawa_q_ok=yq_ok,
        order=K)
