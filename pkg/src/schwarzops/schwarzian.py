"""Schwarzian-condition toolkit for changes of variable on linear ODEs.

An order-N monic operator determines a rational function W(x); a change of
variable x -> y(x) is a pullback symmetry candidate exactly when

    W(x) - W(y(x)) y'(x)^2 + {y(x), x} = 0,

with {y, x} the Schwarzian derivative.  This module computes W, evaluates
the residual exactly for rational y and order-by-order for series y, solves
the condition for one-parameter families y = a_n x^n (1 + ...), classifies
the Laurent head at the origin, produces the mirror-map pair attached to a
flow generator F, and handles the factorized (rank-two) subcase including a
parameter scan over Heun operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from .exact import (Polynomial, RF_ONE, RF_ZERO, RationalFunction, Scalar,
                    rat, ratfunc)
from .series import (DEFAULT_ORDER, TruncatedSeries, ratfunc_at_series)
from .diffop import (DiffOperator, Gauge, _as_rf, _x_valuation, op_conjugate,
                     op_pullback, sym_power_order2)

RatLike = Union[RationalFunction, Polynomial, int, Fraction, str]


# ------------------------------------------------------- basic ingredients


def schwarzian_derivative(y):
    """{y, x} = y'''/y' - (3/2) (y''/y')^2.

    Rational input gives an exact rational function; series input gives a
    series to the precision the input supports.
    """
    if isinstance(y, TruncatedSeries):
        d1 = y.derivative()
        if d1.is_zero() and d1.order is None:
            raise ValueError("constant has no Schwarzian derivative")
        inv = d1.inverse()
        d2 = d1.derivative()
        r = d2 * inv
        return d1.derivative().derivative() * inv - (r * r).scale(Fraction(3, 2))
    y = _as_rf(y)
    d1 = y.derivative()
    if d1.is_zero():
        raise ValueError("constant has no Schwarzian derivative")
    d2 = d1.derivative()
    r = d2 / d1
    return d2.derivative() / d1 - Fraction(3, 2) * r * r


def w_function(L: DiffOperator) -> RationalFunction:
    """Rational invariant W of an operator of order N >= 2.

    With the operator normalized monic, D^N + p D^(N-1) + q D^(N-2) + ...,

        W = 6 p'/((N+1)N) + 6 p^2/((N+1)N^2) - 12 q/((N+1)N(N-1)).
    """
    N = L.order
    if N < 2:
        raise ValueError("operator order must be at least 2")
    M = L if L.is_monic else L.monic()
    p = M.coeff(N - 1)
    q = M.coeff(N - 2)
    return (Fraction(6, (N + 1) * N) * p.derivative()
            + Fraction(6, (N + 1) * N * N) * p * p
            - Fraction(12, (N + 1) * N * (N - 1)) * q)


@dataclass(frozen=True)
class SchwarzianProblem:
    """A Schwarzian condition, optionally remembering the source operator."""

    w: RationalFunction
    source: Optional[DiffOperator] = None
    order_n: Optional[int] = None

    @staticmethod
    def from_operator(L: DiffOperator) -> "SchwarzianProblem":
        return SchwarzianProblem(w_function(L), L, L.order)


def schwarzian_residual(W: RatLike, y):
    """W(x) - W(y) y'^2 + {y, x}.

    Exact rational function for rational y; Laurent series for series y.
    Zero iff y satisfies the Schwarzian condition (to the series order).
    """
    W = _as_rf(W)
    if isinstance(y, TruncatedSeries):
        if y.valuation() is None or y.valuation() < 1:
            raise ValueError("series substitution needs valuation >= 1")
        dy = y.derivative()
        wy = ratfunc_at_series(W, y)
        base = DEFAULT_ORDER if y.order is None else y.order
        wx = TruncatedSeries.from_rational(W, base + 2)
        return wx - wy * dy * dy + schwarzian_derivative(y)
    y = _as_rf(y)
    dy = y.derivative()
    return W - W.compose(y) * dy * dy + schwarzian_derivative(y)


# --------------------------------------------------- pullback symmetry test


@dataclass(frozen=True)
class PullbackSymmetryReport:
    """Coefficientwise comparison of (1/v) L v against the pullback of L."""

    gauge: Gauge
    conjugate: DiffOperator
    pullback: DiffOperator
    coefficient_matches: tuple
    residual: RationalFunction

    @property
    def full_match(self) -> bool:
        return all(self.coefficient_matches)

    @property
    def residual_zero(self) -> bool:
        return self.residual.is_zero()

    @property
    def mismatch_orders(self) -> tuple:
        return tuple(k for k, ok in enumerate(self.coefficient_matches)
                     if not ok)


def pullback_symmetry_check(L: DiffOperator,
                            y: RatLike) -> PullbackSymmetryReport:
    """Compare the gauge conjugate of L with its pullback along y.

    The gauge is the one forced by matching the two subleading
    coefficients:  v'/v = -(N-1)/2 y''/y' + (1/N)(w'/w - (w'/w)(y) y')
    with w'/w = -p.  The report also carries the exact Schwarzian
    residual of (W, y); its vanishing is necessary for a full match but
    not sufficient, since lower-order coefficients remain unconstrained.
    """
    y = _as_rf(y)
    dy = y.derivative()
    if dy.is_zero():
        raise ValueError("constant pullback")
    M = L if L.is_monic else L.monic()
    N = M.order
    if N < 2:
        raise ValueError("operator order must be at least 2")
    p = M.coeff(N - 1)
    vlog = (Fraction(-(N - 1), 2) * (dy.derivative() / dy)
            + Fraction(1, N) * (p.compose(y) * dy - p))
    g = Gauge(vlog)
    conj = op_conjugate(M, g)
    pull = op_pullback(M, y)
    matches = tuple((conj.coeff(k) - pull.coeff(k)).is_zero()
                    for k in range(N + 1))
    res = schwarzian_residual(w_function(M), y)
    return PullbackSymmetryReport(g, conj, pull, matches, res)


# ------------------------------------------------------- series solutions


@dataclass(frozen=True)
class SolutionFamily:
    """One-parameter family y = a_n x^n (1 + c_1 x + c_2 x^2 + ...).

    Orders where the linear step degenerated (free coefficient, kept 0)
    are listed in `resonances`; an unsolvable step marks the family
    `inconsistent_at` that order and truncates the tail just before it.
    """

    n: int
    a_n: Fraction
    tail: TruncatedSeries
    resonances: tuple = ()
    inconsistent_at: Optional[int] = None

    @property
    def consistent(self) -> bool:
        return self.inconsistent_at is None

    def to_json(self) -> dict:
        return {"n": self.n, "a_n": str(self.a_n),
                "tail": self.tail.to_json(),
                "resonances": list(self.resonances),
                "inconsistent_at": self.inconsistent_at}


def _laurent_pole_order(W: RationalFunction) -> int:
    return 0 if W.is_zero() else max(0, -_x_valuation(W))


def solve_schwarzian_series(W: RatLike, n: int, a_n: Scalar,
                            K: int = DEFAULT_ORDER) -> SolutionFamily:
    """Solve the Schwarzian condition for y = a_n x^n (1 + sum c_k x^k).

    Each order k contributes one affine equation alpha_k c_k + beta_k = 0,
    read off the residual coefficient of x^(k-2): beta_k from the c_k = 0
    evaluation, alpha_k from a unit probe.  alpha_k = 0 with beta_k != 0
    reports inconsistency; alpha_k = beta_k = 0 records a resonance and
    keeps c_k = 0.  The x^(-2) coefficient involves no free coefficient at
    all, so a nonzero value there marks the family inconsistent at order 0.
    """
    W = _as_rf(W)
    if n < 1:
        raise ValueError("n must be positive")
    a_n = rat(a_n)
    if a_n == 0:
        raise ValueError("leading coefficient must be nonzero")
    if _laurent_pole_order(W) > 2:
        raise ValueError("W must have a pole of order at most 2 at x = 0")
    if K < 1:
        raise ValueError("order must be positive")

    margin = 2 * n + 8
    wx = TruncatedSeries.from_rational(W, K + margin)

    def residual(rel_coeffs: Sequence[Fraction], rel_order: int):
        y = TruncatedSeries(n, [a_n * c for c in rel_coeffs],
                            order=n + rel_order)
        dy = y.derivative()
        wy = ratfunc_at_series(W, y)
        return wx - wy * dy * dy + schwarzian_derivative(y)

    solved = [Fraction(1)]
    resonances: list = []
    inconsistent_at: Optional[int] = None

    head = residual(solved + [Fraction(0)] * margin, margin)
    if head.coefficient(-2) != 0:
        inconsistent_at = 0
    else:
        for k in range(1, K + 1):
            rel = k + margin
            pad = [Fraction(0)] * (rel - k + 1)
            r0 = residual(solved + pad, rel)
            beta = r0.coefficient(k - 2)
            r1 = residual(solved + [Fraction(1)] + pad[1:], rel)
            alpha = r1.coefficient(k - 2) - beta
            if alpha == 0:
                if beta != 0:
                    inconsistent_at = k
                    break
                resonances.append(k)
                solved.append(Fraction(0))
            else:
                solved.append(-beta / alpha)

    upto = len(solved) - 1
    tail = TruncatedSeries(n, [a_n * c for c in solved], order=n + upto)
    return SolutionFamily(n, a_n, tail, tuple(resonances), inconsistent_at)


# --------------------------------------------------------- Laurent head test


class PremodularReport(NamedTuple):
    passes: bool
    head: TruncatedSeries


def premodular_test(W: RatLike, head_order: int = 4) -> PremodularReport:
    """Test whether W = -1/(2x^2) + b/x + (power series).

    This Laurent-head form at the origin is necessary for the condition to
    admit solution families y = a_n x^n + ... for every n.
    """
    W = _as_rf(W)
    shifted = W + ratfunc([1], [0, 0, 2])
    passes = shifted.is_zero() or _x_valuation(shifted) >= -1
    return PremodularReport(passes, TruncatedSeries.from_rational(W, head_order))


# ------------------------------------------------ the order-three companion


class FEquationResult(NamedTuple):
    operator: DiffOperator
    factor: DiffOperator
    sym_square_matches: bool


def f_equation(W: RatLike) -> FEquationResult:
    """Order-three operator D^3 - 2 W D - W' annihilating flow generators.

    It is exactly the symmetric square of D^2 - W/2; the result carries
    that order-two factor and the (always true) comparison outcome.
    """
    W = _as_rf(W)
    L3 = DiffOperator([-W.derivative(), Fraction(-2) * W, RF_ZERO, RF_ONE])
    L2 = DiffOperator([Fraction(-1, 2) * W, RF_ZERO, RF_ONE])
    sym = sym_power_order2(L2, 2)
    same = all((sym.coeff(k) - L3.coeff(k)).is_zero() for k in range(4))
    return FEquationResult(L3, L2, same)


class WFromF(NamedTuple):
    w: TruncatedSeries
    casimir: TruncatedSeries


def casimir_residual(F: TruncatedSeries, lam: Scalar, W) -> TruncatedSeries:
    """F F'' - F'^2/2 + lam - F^2 W; zero when W belongs to (F, lam)."""
    lam = rat(lam)
    if isinstance(W, TruncatedSeries):
        ws = W
    else:
        base = DEFAULT_ORDER if F.order is None else F.order
        ws = TruncatedSeries.from_rational(_as_rf(W), base + 2)
    d1 = F.derivative()
    return (F * d1.derivative() - (d1 * d1).scale(Fraction(1, 2)) + lam
            - F * F * ws)


def w_from_f(F: TruncatedSeries, lam: Scalar = 0) -> WFromF:
    """W = F''/F - (1/2)(F'/F)^2 + lam/F^2 for a given flow generator F."""
    if F.is_zero():
        raise ValueError("zero flow generator")
    lam = rat(lam)
    d1 = F.derivative()
    inv = F.inverse()
    r = d1 * inv
    w = (d1.derivative() * inv - (r * r).scale(Fraction(1, 2))
         + (inv * inv).scale(lam))
    return WFromF(w, casimir_residual(F, lam, w))


# ------------------------------------------ formal flows in a parameter eps


class _EpsSeries:
    """Truncated polynomial in a formal parameter with series coefficients."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[TruncatedSeries]):
        self.parts = tuple(parts)

    @property
    def cap(self) -> int:
        return len(self.parts) - 1

    @staticmethod
    def embed(s: TruncatedSeries, cap: int) -> "_EpsSeries":
        return _EpsSeries((s,) + (TruncatedSeries.zero(),) * cap)

    def __add__(self, other: "_EpsSeries") -> "_EpsSeries":
        return _EpsSeries([a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other: "_EpsSeries") -> "_EpsSeries":
        return _EpsSeries([a - b for a, b in zip(self.parts, other.parts)])

    def __mul__(self, other: "_EpsSeries") -> "_EpsSeries":
        cap = min(self.cap, other.cap)
        out = []
        for i in range(cap + 1):
            acc = TruncatedSeries.zero()
            for j in range(i + 1):
                acc = acc + self.parts[j] * other.parts[i - j]
            out.append(acc)
        return _EpsSeries(out)

    def scale(self, c: Scalar) -> "_EpsSeries":
        return _EpsSeries([p.scale(c) for p in self.parts])

    def derivative(self) -> "_EpsSeries":
        return _EpsSeries([p.derivative() for p in self.parts])

    def inverse(self) -> "_EpsSeries":
        inv0 = self.parts[0].inverse()
        out = [inv0]
        for i in range(1, self.cap + 1):
            acc = TruncatedSeries.zero()
            for j in range(1, i + 1):
                acc = acc + self.parts[j] * out[i - j]
            out.append(-(inv0 * acc))
        return _EpsSeries(out)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)


def _series_at_eps(f: TruncatedSeries, u: _EpsSeries) -> _EpsSeries:
    """f(x + u) by Taylor expansion; u must vanish at parameter order 0."""
    if not u.parts[0].is_zero():
        raise ValueError("shift must vanish at parameter order zero")
    cap = u.cap
    out = _EpsSeries.embed(f, cap)
    term = _EpsSeries.embed(TruncatedSeries.one(), cap)
    deriv = f
    fact = 1
    for j in range(1, cap + 1):
        term = term * u
        deriv = deriv.derivative()
        fact *= j
        out = out + term.scale(Fraction(1, fact)) * _EpsSeries.embed(deriv, cap)
    return out


@dataclass(frozen=True)
class OneParamFamily:
    """The flow y = x + sum eps^n/n! Q_n with Q_1 = F, Q_{n+1} = F Q_n'."""

    generator: TruncatedSeries
    charges: tuple
    eps_order: int
    functional_ok: bool
    schwarzian_ok: bool

    def eps_parts(self, order_x: Optional[int] = None) -> tuple:
        x = TruncatedSeries.x(order_x)
        parts = [x]
        fact = 1
        for i, q in enumerate(self.charges, start=1):
            fact *= i
            parts.append(q.scale(Fraction(1, fact)))
        return tuple(parts)


def one_param_family(F: TruncatedSeries, K: int = DEFAULT_ORDER,
                     eps_order: int = 6, lam: Scalar = 0) -> OneParamFamily:
    """Build the formal flow of F d/dx and verify its two defining identities.

    Checks, order by order in the parameter: the functional equation
    F(x) y' = F(y), and the Schwarzian condition with W built from (F, lam).
    """
    if F.valuation() != 1:
        raise ValueError("flow generator must vanish to first order exactly")
    F = F.truncate(K)
    qs = [F]
    for _ in range(eps_order - 1):
        qs.append(F * qs[-1].derivative())
    cap = eps_order
    u_parts = [TruncatedSeries.zero()]
    fact = 1
    for i, q in enumerate(qs, start=1):
        fact *= i
        u_parts.append(q.scale(Fraction(1, fact)))
    u = _EpsSeries(u_parts)
    y = _EpsSeries.embed(TruncatedSeries.x(K), cap) + u

    func_res = _EpsSeries.embed(F, cap) * y.derivative() - _series_at_eps(F, u)
    functional_ok = func_res.is_zero()

    w = w_from_f(F, lam).w
    dy = y.derivative()
    inv = dy.inverse()
    r = dy.derivative() * inv
    sch = (dy.derivative().derivative() * inv
           - (r * r).scale(Fraction(3, 2)))
    res = (_EpsSeries.embed(w, cap) - _series_at_eps(w, u) * dy * dy + sch)
    schwarzian_ok = res.is_zero()
    return OneParamFamily(F, tuple(qs), eps_order, functional_ok,
                          schwarzian_ok)


# ------------------------------------------------------------- mirror maps


@dataclass(frozen=True)
class MirrorMaps:
    """Coordinates Q, P with P(Q(x)) = x built from a flow generator F.

    theta is the series part of the primitive of 1/F (its log x coefficient
    is 1), Q = x exp(theta), and P is the compositional inverse of Q.
    """

    theta: TruncatedSeries
    q: TruncatedSeries
    p: TruncatedSeries

    def family(self, a: Scalar, n: int = 1) -> TruncatedSeries:
        """The solution series P(a Q(x)^n) with leading term a x^n."""
        g = (self.q ** n).scale(rat(a))
        return self.p.compose(g)


def mirror_maps(F: TruncatedSeries) -> MirrorMaps:
    if F.valuation() != 1 or F.leading_coefficient() != 1:
        raise ValueError("flow generator must start with x")
    theta = F.inverse().integrate()
    if theta.log_coeff != 1:
        raise ValueError("primitive of 1/F must carry log x exactly once")
    s = theta.series
    q = s.exp().shift(1)
    return MirrorMaps(s, q, q.reverse())


class CompositionCheck(NamedTuple):
    difference: TruncatedSeries
    order_checked: int
    ok: bool


def composition_law_check(W: RatLike, n: int, m: int, a_n: Scalar,
                          a_m: Scalar, K: int = 12) -> CompositionCheck:
    """Check y_n(a_n, y_m(a_m, x)) = y_{nm}(a_n a_m^n, x) through x^K."""
    a_n = rat(a_n)
    a_m = rat(a_m)
    rel = K + n * m + 6
    fn = solve_schwarzian_series(W, n, a_n, rel)
    fm = solve_schwarzian_series(W, m, a_m, rel)
    fnm = solve_schwarzian_series(W, n * m, a_n * a_m ** n, rel)
    for fam in (fn, fm, fnm):
        if not fam.consistent:
            raise ValueError(
                f"family n={fam.n} inconsistent at order {fam.inconsistent_at}")
    diff = fn.tail.compose(fm.tail) - fnm.tail
    if diff.order is not None and diff.order < K:
        raise ValueError("insufficient working precision for the check")
    diff = diff.truncate(K)
    return CompositionCheck(diff, K, diff.is_zero())


# --------------------------------------------------------- rank-two subcase


class FlowFactor(NamedTuple):
    """One factor r(x)^e of a power-product integrating the log derivative."""

    base: RationalFunction
    exponent: Fraction


def _as_factor(pair) -> FlowFactor:
    base, e = pair
    return FlowFactor(_as_rf(base), rat(e))


@dataclass(frozen=True)
class RankTwoToolkit:
    """Consequences of a right factor D - A_R of the order-two operator.

    The Schwarzian datum collapses to W = A_R' + A_R^2/2 and the condition
    on y integrates once to the rank-two equation
    y'' = A_R(y) y'^2 - A_R(x) y'.
    """

    a_r: RationalFunction
    w: RationalFunction

    def residual(self, y):
        """y'' - A_R(y) y'^2 + A_R(x) y' for series or rational y."""
        if isinstance(y, TruncatedSeries):
            dy = y.derivative()
            ay = ratfunc_at_series(self.a_r, y)
            base = DEFAULT_ORDER if y.order is None else y.order
            ax = TruncatedSeries.from_rational(self.a_r, base + 2)
            return dy.derivative() - ay * dy * dy + ax * dy
        y = _as_rf(y)
        dy = y.derivative()
        return (dy.derivative() - self.a_r.compose(y) * dy * dy
                + self.a_r * dy)

    def flow_solve(self, factors: Sequence, n: int, a_n: Scalar,
                   K: int = DEFAULT_ORDER) -> SolutionFamily:
        """Solve y' = c1 w(x)/w(y) for y = a_n x^n (1 + ...).

        `factors` lists (r_i, e_i) with w = prod r_i^{e_i}; they must
        integrate A_R = -w'/w exactly.  The leading balance fixes c1 = n
        once sum val(r_i) e_i = -1, the only shape with such solutions
        for every n.
        """
        facs = [_as_factor(p) for p in factors]
        acc = RF_ZERO
        for r, e in facs:
            acc = acc + e * r.derivative() / r
        if not (self.a_r + acc).is_zero():
            raise ValueError("factors do not integrate A_R")
        a_n = rat(a_n)
        if n < 1 or a_n == 0:
            raise ValueError("need n >= 1 and a nonzero leading coefficient")
        vsum = sum(rat(_x_valuation(r)) * e for r, e in facs)
        if vsum != -1:
            raise ValueError("power product must behave like 1/x at 0")
        c1 = rat(n)

        margin = 2 * n + 8
        expansions = [TruncatedSeries.from_rational(r, K + n + margin)
                      for r, _ in facs]

        def residual(rel_coeffs, rel_order):
            y = TruncatedSeries(n, [a_n * c for c in rel_coeffs],
                                order=n + rel_order)
            rhs = TruncatedSeries.one()
            for (r, e), rx in zip(facs, expansions):
                ratio = rx * ratfunc_at_series(r, y).inverse()
                rhs = rhs * ratio.pow(e)
            return y.derivative() - rhs.scale(c1)

        solved = [Fraction(1)]
        resonances: list = []
        inconsistent_at: Optional[int] = None
        for k in range(1, K + 1):
            rel = k + margin
            pad = [Fraction(0)] * (rel - k + 1)
            r0 = residual(solved + pad, rel)
            beta = r0.coefficient(n + k - 1)
            r1 = residual(solved + [Fraction(1)] + pad[1:], rel)
            alpha = r1.coefficient(n + k - 1) - beta
            if alpha == 0:
                if beta != 0:
                    inconsistent_at = k
                    break
                resonances.append(k)
                solved.append(Fraction(0))
            else:
                solved.append(-beta / alpha)
        upto = len(solved) - 1
        tail = TruncatedSeries(n, [a_n * c for c in solved], order=n + upto)
        return SolutionFamily(n, a_n, tail, tuple(resonances),
                              inconsistent_at)

    def f_residuals(self, F: TruncatedSeries, mu: Scalar):
        """Residuals of F'' = A_R F' + A_R' F and A_R = F'/F + mu/F."""
        mu = rat(mu)
        base = DEFAULT_ORDER if F.order is None else F.order
        ax = TruncatedSeries.from_rational(self.a_r, base + 2)
        dax = TruncatedSeries.from_rational(self.a_r.derivative(), base + 2)
        d1 = F.derivative()
        first = d1.derivative() - ax * d1 - dax * F
        inv = F.inverse()
        second = ax - d1 * inv - inv.scale(mu)
        return first, second

    def find_mu(self, F: TruncatedSeries) -> Fraction:
        """The constant mu with A_R = F'/F + mu/F, if one exists."""
        base = DEFAULT_ORDER if F.order is None else F.order
        ax = TruncatedSeries.from_rational(self.a_r, base + 2)
        g = (ax - F.derivative() * F.inverse()) * F
        mu = g.coefficient(0)
        if not (g - mu).is_zero():
            raise ValueError("A_R - F'/F is not a constant multiple of 1/F")
        return mu


def ranktwo_subcase(a_r: RatLike) -> RankTwoToolkit:
    a_r = _as_rf(a_r)
    w = a_r.derivative() + Fraction(1, 2) * a_r * a_r
    return RankTwoToolkit(a_r, w)


# ------------------------------------------------------------- Heun scan


class HeunFactorization(NamedTuple):
    u: Fraction
    v: Fraction
    w: Fraction
    matches: bool


@dataclass(frozen=True)
class HeunScanReport:
    """Outcome of the Schwarzian analysis of one Heun parameter tuple.

    `special_conditions` lists the truth of the six exceptional exponent
    relations under which the otherwise-excluded factorization solutions
    survive; `example_condition` is the single relation alpha - gamma + 1 = 0
    equivalent to the worked factorizable family.
    """

    a: Fraction
    q: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    reducible: bool
    operator: Optional[DiffOperator]
    w: Optional[RationalFunction]
    head: tuple
    premodular: bool
    factorizations: tuple
    special_conditions: tuple
    example_condition: bool


def heun_operator(a: Scalar, q: Scalar, alpha: Scalar, beta: Scalar,
                  gamma: Scalar, delta: Scalar) -> DiffOperator:
    """Monic order-two operator with the standard four-singularity shape."""
    a, q, alpha, beta, gamma, delta = map(rat, (a, q, alpha, beta, gamma,
                                                delta))
    if a == 0 or a == 1:
        raise ValueError("singularities must be distinct (a not in {0, 1})")
    den = Polynomial([0, 1]) * Polynomial([-1, 1]) * Polynomial([-a, 1])
    anum = Polynomial([gamma * a,
                       -((delta + gamma) * a + alpha - delta + beta + 1),
                       alpha + beta + 1])
    bnum = Polynomial([-q, alpha * beta])
    return DiffOperator([RationalFunction(bnum, den),
                         RationalFunction(anum, den), RF_ONE])


def heun_scan(a: Scalar, q: Scalar, alpha: Scalar, beta: Scalar,
              gamma: Scalar, delta: Scalar) -> HeunScanReport:
    """Laurent head, premodular verdict, and factorization scan.

    The factorization ansatz A_R = u/(x-a) + v/x + w/(x-1) is tested on
    all eight residue branches (u, v, w) in {ehat, 2-ehat} x {gamma,
    2-gamma} x {delta, 2-delta} with ehat = alpha+beta-gamma-delta+1; a
    branch matches when W = A_R' + A_R^2/2 holds exactly.
    """
    a, q, alpha, beta, gamma, delta = map(rat, (a, q, alpha, beta, gamma,
                                                delta))
    reducible = a == 0 or a == 1
    if reducible:
        return HeunScanReport(a, q, alpha, beta, gamma, delta, True, None,
                              None, (), False, (),
                              _heun_special(alpha, beta, gamma, delta),
                              alpha - gamma + 1 == 0)
    L = heun_operator(a, q, alpha, beta, gamma, delta)
    W = w_function(L)
    ws = TruncatedSeries.from_rational(W, 0)
    head = (ws.coefficient(-2), ws.coefficient(-1), ws.coefficient(0))
    pre = premodular_test(W).passes
    ehat = alpha + beta - gamma - delta + 1
    branches = []
    seen = set()
    for u in (ehat, 2 - ehat):
        for v in (gamma, 2 - gamma):
            for w in (delta, 2 - delta):
                if (u, v, w) in seen:
                    continue
                seen.add((u, v, w))
                ar = (ratfunc([u], [-a, 1]) + ratfunc([v], [0, 1])
                      + ratfunc([w], [-1, 1]))
                cand = ar.derivative() + Fraction(1, 2) * ar * ar
                branches.append(HeunFactorization(
                    u, v, w, (cand - W).is_zero()))
    return HeunScanReport(a, q, alpha, beta, gamma, delta, False, L, W,
                          head, pre, tuple(branches),
                          _heun_special(alpha, beta, gamma, delta),
                          alpha - gamma + 1 == 0)


def _heun_special(alpha, beta, gamma, delta) -> tuple:
    return (alpha - gamma + 1 == 0,
            beta - delta - 1 == 0,
            alpha - delta - gamma + 2 == 0,
            alpha - gamma - 1 == 0,
            alpha - delta - gamma == 0,
            beta - delta + 1 == 0)
