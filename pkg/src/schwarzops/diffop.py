"""Linear differential operators with exact rational-function coefficients.

The structural toolbox: operator products (Leibniz-expanded), formal
adjoints, gauge conjugation by exp(int g) for rational g, monic-normalized
pullbacks along rational maps, symmetric and exterior powers via the
cyclic-vector rank method, operator guessing from series data, and
Frobenius bases at points of maximal unipotent monodromy.

Operators are not forced monic (adjoints and products of monic operators
are not monic); normalization is explicit via :meth:`DiffOperator.monic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, NamedTuple, Optional, Sequence

from .exact import (
    P_ONE,
    Polynomial,
    RationalFunction,
    RF_ZERO,
    Scalar,
    linear_solve,
    rat,
)
from .series import DEFAULT_ORDER, TruncatedSeries


def _as_rf(c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, Polynomial):
        return RationalFunction(c)
    return RationalFunction(Polynomial([rat(c)]))


class DiffOperator:
    """sum a_k(x) D^k with rational-function coefficients a_k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_as_rf(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        if not cs:
            cs = [RF_ZERO]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("DiffOperator is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> RationalFunction:
        return self.coeffs[k] if 0 <= k <= self.order else RF_ZERO

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    @property
    def is_monic(self) -> bool:
        lead = self.coeffs[-1]
        return lead.is_constant() and not lead.is_zero() \
            and lead.constant_value() == 1

    def monic(self) -> "DiffOperator":
        lead = self.coeffs[-1]
        if lead.is_zero():
            raise ZeroDivisionError("zero operator cannot be normalized")
        return DiffOperator([c / lead for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        n = max(self.order, other.order)
        return DiffOperator([self.coeff(k) + other.coeff(k)
                             for k in range(n + 1)])

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        n = max(self.order, other.order)
        return DiffOperator([self.coeff(k) - other.coeff(k)
                             for k in range(n + 1)])

    def __neg__(self) -> "DiffOperator":
        return DiffOperator([-c for c in self.coeffs])

    def scale(self, c) -> "DiffOperator":
        c = _as_rf(c)
        return DiffOperator([c * a for a in self.coeffs])

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        return op_mul(self, other)

    # -- application -------------------------------------------------------

    def apply_ratfunc(self, f: RationalFunction) -> RationalFunction:
        f = _as_rf(f)
        out = RF_ZERO
        d = f
        for k, a in enumerate(self.coeffs):
            if k:
                d = d.derivative()
            if not a.is_zero():
                out = out + a * d
        return out

    def apply_series(self, f: TruncatedSeries) -> TruncatedSeries:
        """L(f) with the truncation order the inputs justify."""
        out = TruncatedSeries.zero()
        d = f
        for k, a in enumerate(self.coeffs):
            if k:
                d = d.derivative()
            if a.is_zero() or (d.is_zero() and d.order is None):
                continue
            av = _x_valuation(a)
            base = DEFAULT_ORDER if d.order is None else d.order
            dv = d.valuation()
            need = base + av - (dv if dv is not None else 0)
            term = TruncatedSeries.from_rational(a, max(need, av) + 1) * d
            out = out + term
        return out

    def apply_log_series(self, f: "LogSeries") -> "LogSeries":
        out = LogSeries(())
        d = f
        for k, a in enumerate(self.coeffs):
            if k:
                d = d.derivative()
            if not a.is_zero():
                out = out + d.scale_ratfunc(a)
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"var": "x", "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(data: dict) -> "DiffOperator":
        return DiffOperator([RationalFunction.from_json(c)
                             for c in data["coeffs"]])

    def __repr__(self) -> str:
        return f"DiffOperator({list(self.coeffs)!r})"

    def __str__(self) -> str:
        parts = []
        for k in range(self.order, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            ds = "" if k == 0 else ("D" if k == 1 else f"D^{k}")
            cs = str(c)
            if "/" in cs or " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{ds}" if ds and cs != "1" else (ds or cs))
        return " + ".join(parts) if parts else "0"


OP_D = DiffOperator([0, 1])


def _x_valuation(f: RationalFunction) -> int:
    """Order of vanishing of f at x = 0 (negative at a pole)."""
    def tz(p: Polynomial) -> int:
        for i, c in enumerate(p.coeffs):
            if c != 0:
                return i
        return 0
    return tz(f.num) - tz(f.den)


@dataclass(frozen=True)
class Gauge:
    """A gauge function v known through its logarithmic derivative v'/v."""

    logDeriv: RationalFunction

    @staticmethod
    def from_log_deriv(g) -> "Gauge":
        return Gauge(_as_rf(g))

    @staticmethod
    def power_of(f: RationalFunction, e: Scalar) -> "Gauge":
        """The gauge f(x)^e."""
        f = _as_rf(f)
        return Gauge(_as_rf(rat(e)) * f.derivative() / f)

    def __mul__(self, other: "Gauge") -> "Gauge":
        return Gauge(self.logDeriv + other.logDeriv)


# ---------------------------------------------------------------- products


def op_mul(M: DiffOperator, L: DiffOperator) -> DiffOperator:
    """Operator composition M(L(.)), Leibniz-expanded exactly."""
    out = [RF_ZERO] * (M.order + L.order + 1)
    for j, a in enumerate(L.coeffs):
        if a.is_zero():
            continue
        derivs = [a]
        for _ in range(M.order):
            derivs.append(derivs[-1].derivative())
        for k, m in enumerate(M.coeffs):
            if m.is_zero():
                continue
            for i in range(k + 1):
                out[k - i + j] = out[k - i + j] + m * comb(k, i) * derivs[i]
    return DiffOperator(out)


def op_adjoint(L: DiffOperator) -> DiffOperator:
    """Formal adjoint sum (-D)^k a_k."""
    out = [RF_ZERO] * (L.order + 1)
    for k, a in enumerate(L.coeffs):
        if a.is_zero():
            continue
        sign = -1 if k % 2 else 1
        d = a
        for i in range(k + 1):
            if i:
                d = d.derivative()
            out[k - i] = out[k - i] + sign * comb(k, i) * d
    return DiffOperator(out)


def op_conjugate(L: DiffOperator, v: Gauge) -> DiffOperator:
    """(1/v) L v, rational because only v'/v enters.

    Uses h_0 = 1, h_{k+1} = h_k' + (v'/v) h_k for h_k = v^(k)/v.
    """
    g = v.logDeriv
    h = [RationalFunction.const(1)]
    for _ in range(L.order):
        h.append(h[-1].derivative() + g * h[-1])
    out = [RF_ZERO] * (L.order + 1)
    for k, a in enumerate(L.coeffs):
        if a.is_zero():
            continue
        for i in range(k + 1):
            out[k - i] = out[k - i] + a * comb(k, i) * h[i]
    return DiffOperator(out)


def op_from_theta(theta_polys: Sequence[Polynomial]) -> DiffOperator:
    """Operator sum_i x^i A_i(theta) with theta = x d/dx, in D-form.

    theta^k = sum_j S(k, j) x^j D^j with Stirling numbers of the second
    kind, so every x^i theta^k contributes S(k, j) x^(i+j) to the D^j
    coefficient.
    """
    polys = [p if isinstance(p, Polynomial) else Polynomial(p)
             for p in theta_polys]
    kmax = max((p.degree for p in polys if not p.is_zero()), default=0)
    stirling = [[Fraction(1)]]
    for k in range(kmax):
        prev = stirling[-1]
        row = [Fraction(0)] * (k + 2)
        for j, c in enumerate(prev):
            row[j] += j * c
            row[j + 1] += c
        stirling.append(row)
    out = [Polynomial() for _ in range(kmax + 1)]
    for i, p in enumerate(polys):
        for k, c in enumerate(p.coeffs):
            if c == 0:
                continue
            for j, s in enumerate(stirling[k]):
                if s:
                    out[j] = out[j] + Polynomial.x_power(i + j, c * s)
    return DiffOperator([RationalFunction(c) for c in out])


def op_pullback(L: DiffOperator, y: RationalFunction) -> DiffOperator:
    """Monic-normalized pullback along x -> y(x).

    Substitutes D_x -> (1/y') D and a_k -> a_k(y), then clears the head
    by the overall factor y'^N.
    """
    y = _as_rf(y)
    if y.is_constant():
        raise ValueError("pullback requires a nonconstant map")
    N = L.order
    yp = y.derivative()
    inv = 1 / yp
    # rows[k][j]: coefficient of D^j in ((1/y')D)^k
    rows = [[RationalFunction.const(1)]]
    for k in range(N):
        prev = rows[-1]
        nxt = [RF_ZERO] * (k + 2)
        for j, c in enumerate(prev):
            nxt[j] = nxt[j] + inv * c.derivative()
            nxt[j + 1] = nxt[j + 1] + inv * c
        rows.append(nxt)
    scale = yp ** N
    out = [RF_ZERO] * (N + 1)
    for k, a in enumerate(L.coeffs):
        if a.is_zero():
            continue
        ay = a.compose(y) if not a.is_constant() else a
        for j, c in enumerate(rows[k]):
            out[j] = out[j] + scale * ay * c
    return DiffOperator(out)


# ---------------------------------------------------------------- powers


def _monic_order2(L2: DiffOperator) -> tuple[RationalFunction, RationalFunction]:
    if L2.order != 2:
        raise ValueError(f"expected an order-2 operator, got order {L2.order}")
    m = L2.monic()
    return m.coeff(1), m.coeff(0)


def sym_power_order2(L2: DiffOperator, m: int) -> DiffOperator:
    """Symmetric m-th power of a monic order-2 operator D^2 + A D + B.

    Annihilates u^m for every solution u; order m+1.  Small m use closed
    coefficient formulas, larger m the generic cyclic-vector method.
    """
    if m < 1:
        raise ValueError("symmetric power needs m >= 1")
    A, B = _monic_order2(L2)
    if m == 1:
        return DiffOperator([B, A, 1])
    Ap = A.derivative()
    if m == 2:
        return DiffOperator([
            4 * A * B + 2 * B.derivative(),
            2 * A ** 2 + 4 * B + Ap,
            3 * A,
            1,
        ])
    if m == 3:
        App = Ap.derivative()
        Bp = B.derivative()
        return DiffOperator([
            18 * A ** 2 * B + 6 * B * Ap + 15 * A * Bp + 9 * B ** 2
            + 3 * Bp.derivative(),
            6 * A ** 3 + 7 * A * Ap + 30 * A * B + App + 10 * Bp,
            11 * A ** 2 + 4 * Ap + 10 * B,
            6 * A,
            1,
        ])
    if m == 4:
        App = Ap.derivative()
        Appp = App.derivative()
        Bp = B.derivative()
        Bpp = Bp.derivative()
        return DiffOperator([
            96 * A ** 3 * B + 104 * A ** 2 * Bp + 128 * A * B ** 2
            + 80 * A * B * Ap + 36 * Bpp * A + 64 * B * Bp + 8 * B * App
            + 28 * Bp * Ap + 4 * Bpp.derivative(),
            24 * A ** 4 + 208 * A ** 2 * B + 46 * A ** 2 * Ap + 120 * Bp * A
            + 11 * A * App + 64 * B ** 2 + 56 * B * Ap + 7 * Ap ** 2
            + 18 * Bpp + Appp,
            50 * A ** 3 + 120 * A * B + 45 * A * Ap + 30 * Bp + 5 * App,
            35 * A ** 2 + 20 * B + 10 * Ap,
            10 * A,
            1,
        ])
    return _sym_power_generic(A, B, m)


def _sym_power_generic(A: RationalFunction, B: RationalFunction,
                       m: int) -> DiffOperator:
    # coordinates on the basis e_i = u^(m-i) u'^i, i = 0..m
    one = RationalFunction.const(1)

    def step(v: list) -> list:
        out = [c.derivative() for c in v]
        for i, c in enumerate(v):
            if c.is_zero():
                continue
            if i < m:
                out[i + 1] = out[i + 1] + (m - i) * c
            if i > 0:
                out[i] = out[i] - i * A * c
                out[i - 1] = out[i - 1] - i * B * c
        return out

    v = [one] + [RF_ZERO] * m
    iterates = [list(v)]
    for _ in range(m + 1):
        v = step(v)
        iterates.append(list(v))
    mat = [[iterates[j][i] for j in range(m + 1)] for i in range(m + 1)]
    rhs = [-iterates[m + 1][i] for i in range(m + 1)]
    sol = linear_solve(mat, rhs)
    if not sol.consistent:  # pragma: no cover - sym powers never degenerate
        raise ArithmeticError("symmetric power rank computation failed")
    return DiffOperator(list(sol.particular) + [one])


class PowerReport(NamedTuple):
    """Minimal annihilator of a product/wedge module and its order."""
    operator: DiffOperator
    order: int
    generic_order: int


def sym_or_ext_power(L: DiffOperator, kind: str) -> PowerReport:
    """Minimal operator for products (sym2) or wedges (ext2) of solutions.

    Differentiates the coordinate vector of u*v resp. u v' - u' v on the
    product/wedge module, reducing by the relation of L, and stops at the
    first linear dependency over Q(x); a dependency earlier than the
    module dimension is the degenerate-order phenomenon.
    """
    if kind not in ("sym2", "ext2"):
        raise ValueError(f"unknown power kind {kind!r}")
    N = L.order
    mon = L.monic()
    red = [-mon.coeff(k) for k in range(N)]  # u^(N) = sum red[k] u^(k)
    if kind == "sym2":
        basis = [(i, j) for i in range(N) for j in range(i, N)]
    else:
        basis = [(i, j) for i in range(N) for j in range(i + 1, N)]
    index = {b: n for n, b in enumerate(basis)}
    dim = len(basis)

    def add(acc: list, i: int, j: int, c: RationalFunction):
        if kind == "ext2":
            if i == j:
                return
            if i > j:
                i, j, c = j, i, -c
        elif i > j:
            i, j = j, i
        if j == N:
            for k in range(N):
                if not red[k].is_zero():
                    add(acc, i, k, c * red[k])
            return
        acc[index[(i, j)]] = acc[index[(i, j)]] + c

    def step(v: list) -> list:
        out = [c.derivative() for c in v]
        for n, c in enumerate(v):
            if c.is_zero():
                continue
            i, j = basis[n]
            add(out, i + 1, j, c)
            add(out, i, j + 1, c)
        return out

    v = [RF_ZERO] * dim
    v[index[(0, 0) if kind == "sym2" else (0, 1)]] = RationalFunction.const(1)
    # Incremental echelon basis: pivots[c] = (vec, combo) with vec[c] = 1 and
    # combo expressing vec in the derivative iterates; the first iterate that
    # reduces to zero yields the dependency, hence the minimal annihilator.
    pivots: dict = {}
    for r in range(dim + 1):
        w = list(v)
        combo = {r: RationalFunction.const(1)}
        for col, (pvec, pcombo) in pivots.items():
            c = w[col]
            if c.is_zero():
                continue
            for i in range(dim):
                if not pvec[i].is_zero():
                    w[i] = w[i] - c * pvec[i]
            for j, pc in pcombo.items():
                combo[j] = combo.get(j, RF_ZERO) - c * pc
        col = next((i for i in range(dim) if not w[i].is_zero()), None)
        if col is None:
            coeffs = [combo.get(j, RF_ZERO) for j in range(r)]
            op = DiffOperator(coeffs + [RationalFunction.const(1)])
            return PowerReport(op, r, dim)
        lead = w[col]
        w = [wi / lead for wi in w]
        combo = {j: pc / lead for j, pc in combo.items()}
        pivots[col] = (w, combo)
        v = step(v)
    raise ArithmeticError(
        "no dependency found beyond module dimension")  # pragma: no cover


# ---------------------------------------------------------------- guessing


def guess_operator(f: TruncatedSeries, max_order: int,
                   max_degree: int) -> Optional[DiffOperator]:
    """Smallest operator with polynomial coefficients annihilating f.

    Searches (order, degree) pairs in lexicographic order, solving the
    exact nullspace of the coefficient-matching system; needs enough
    series coefficients to overdetermine the largest candidate.
    """
    if f.order is None:
        raise ValueError("guessing needs a truncated series")
    needed = (max_order + 1) * (max_degree + 2) + 10
    known = f.order - f.val + 1
    if known < needed:
        raise ValueError(
            f"insufficient coefficients: {known} known, {needed} needed")
    for order in range(1, max_order + 1):
        for degree in range(max_degree + 1):
            op = _guess_at(f, order, degree)
            if op is not None:
                return op
    return None


_GUESS_PRIME = (1 << 61) - 1


def _modp_cols_full_rank(cols: list[list[Fraction]]) -> bool:
    """True when the columns are independent modulo a fixed prime.

    Rank only drops under reduction mod p, so full rank mod p proves the
    exact system has a trivial nullspace; a denominator divisible by p
    (never seen in practice) disables the shortcut.
    """
    p = _GUESS_PRIME
    basis: list[tuple[int, list[int]]] = []
    for col in cols:
        vec = []
        for c in col:
            if c.denominator % p == 0:
                return False
            vec.append(c.numerator * pow(c.denominator, p - 2, p) % p)
        for idx, bvec in basis:
            c = vec[idx]
            if c:
                vec = [(a - c * b) % p for a, b in zip(vec, bvec)]
        idx = next((i for i, a in enumerate(vec) if a), None)
        if idx is None:
            return False
        inv = pow(vec[idx], p - 2, p)
        basis.append((idx, [a * inv % p for a in vec]))
    return True


def _guess_at(f: TruncatedSeries, order: int,
              degree: int) -> Optional[DiffOperator]:
    derivs = [f]
    for _ in range(order):
        derivs.append(derivs[-1].derivative())
    lo = f.val - order
    hi = f.order - order
    cols = []
    for k in range(order + 1):
        for d in range(degree + 1):
            g = derivs[k].shift(d)
            cols.append([g._coeff0(n) for n in range(lo, hi + 1)])
    if _modp_cols_full_rank(cols):
        return None
    rows = len(cols[0])
    mat = [[cols[c][r] for c in range(len(cols))] for r in range(rows)]
    sol = linear_solve(mat, [Fraction(0)] * rows)
    if not sol.nullspace:
        return None
    vec = sol.nullspace[0]
    coeffs = []
    for k in range(order + 1):
        coeffs.append(Polynomial(vec[k * (degree + 1):(k + 1) * (degree + 1)]))
    if coeffs[-1].is_zero():
        return None
    den_lcm = 1
    for p in coeffs:
        for c in p.coeffs:
            den_lcm = den_lcm * c.denominator // _gcd_int(den_lcm, c.denominator)
    scaled = [p.scale(den_lcm) for p in coeffs]
    content = 0
    for p in scaled:
        for c in p.coeffs:
            content = _gcd_int(content, int(c))
    if content:
        scaled = [p.scale(Fraction(1, content)) for p in scaled]
    if scaled[-1].lc < 0:
        scaled = [p.scale(-1) for p in scaled]
    return DiffOperator(scaled)


def _gcd_int(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------- series operators


class SeriesOperator:
    """Operator with truncated-series coefficients, for identities whose
    coefficients are algebraic (square-root) functions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[TruncatedSeries]):
        object.__setattr__(self, "coeffs", tuple(coeffs))
        if not self.coeffs:
            raise ValueError("series operator needs at least one coefficient")

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("SeriesOperator is immutable")

    @staticmethod
    def from_diffop(L: DiffOperator, order: int = DEFAULT_ORDER) -> "SeriesOperator":
        return SeriesOperator([TruncatedSeries.from_rational(c, order)
                               for c in L.coeffs])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> TruncatedSeries:
        return self.coeffs[k] if 0 <= k <= self.order else TruncatedSeries.zero()

    def __add__(self, other: "SeriesOperator") -> "SeriesOperator":
        n = max(self.order, other.order)
        return SeriesOperator([self.coeff(k) + other.coeff(k)
                               for k in range(n + 1)])

    def __sub__(self, other: "SeriesOperator") -> "SeriesOperator":
        n = max(self.order, other.order)
        return SeriesOperator([self.coeff(k) - other.coeff(k)
                               for k in range(n + 1)])

    def scale(self, c) -> "SeriesOperator":
        if not isinstance(c, TruncatedSeries):
            c = TruncatedSeries(0, (rat(c),))
        return SeriesOperator([c * a for a in self.coeffs])

    def __mul__(self, other: "SeriesOperator") -> "SeriesOperator":
        out = [TruncatedSeries.zero() for _ in
               range(self.order + other.order + 1)]
        for j, a in enumerate(other.coeffs):
            derivs = [a]
            for _ in range(self.order):
                derivs.append(derivs[-1].derivative())
            for k, m in enumerate(self.coeffs):
                for i in range(k + 1):
                    out[k - i + j] = out[k - i + j] + m * comb(k, i) * derivs[i]
        return SeriesOperator(out)

    def apply_series(self, f: TruncatedSeries) -> TruncatedSeries:
        out = TruncatedSeries.zero()
        d = f
        for k, a in enumerate(self.coeffs):
            if k:
                d = d.derivative()
            out = out + a * d
        return out

    def agrees_with(self, other: "SeriesOperator", upto: int) -> bool:
        n = max(self.order, other.order)
        return all(self.coeff(k).agrees_with(other.coeff(k), upto)
                   for k in range(n + 1))


# ---------------------------------------------------------------- Frobenius


class LogSeries:
    """sum_i f_i(x) log(x)^i with truncated-series coefficients f_i."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[TruncatedSeries]):
        ps = list(parts)
        while ps and ps[-1].is_zero() and ps[-1].order is None:
            ps.pop()
        object.__setattr__(self, "parts", tuple(ps))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("LogSeries is immutable")

    @property
    def log_degree(self) -> int:
        return len(self.parts) - 1

    def part(self, i: int) -> TruncatedSeries:
        return self.parts[i] if 0 <= i < len(self.parts) \
            else TruncatedSeries.zero()

    def __add__(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.parts), len(other.parts))
        return LogSeries([self.part(i) + other.part(i) for i in range(n)])

    def __sub__(self, other: "LogSeries") -> "LogSeries":
        n = max(len(self.parts), len(other.parts))
        return LogSeries([self.part(i) - other.part(i) for i in range(n)])

    def scale_series(self, s: TruncatedSeries) -> "LogSeries":
        return LogSeries([s * p for p in self.parts])

    def scale_ratfunc(self, a: RationalFunction) -> "LogSeries":
        out = []
        for p in self.parts:
            if p.is_zero() and p.order is None:
                out.append(p)
                continue
            av = _x_valuation(a)
            base = DEFAULT_ORDER if p.order is None else p.order
            pv = p.valuation()
            need = base + av - (pv if pv is not None else 0)
            out.append(TruncatedSeries.from_rational(a, max(need, av) + 1) * p)
        return LogSeries(out)

    def derivative(self) -> "LogSeries":
        xinv = TruncatedSeries(-1, (1,))
        out = []
        for i in range(len(self.parts)):
            term = self.parts[i].derivative()
            if i + 1 < len(self.parts):
                term = term + (i + 1) * (xinv * self.parts[i + 1])
            out.append(term)
        return LogSeries(out)

    def is_zero_to_order(self) -> bool:
        """True when every stored coefficient of every part vanishes."""
        return all(p.is_zero() for p in self.parts)


def indicial_polynomial(L: DiffOperator) -> Polynomial:
    """Indicial polynomial of L at x = 0 (variable = the exponent)."""
    polys, _ = _polynomial_form(L)
    smin = min(_poly_xval(p) - k for k, p in enumerate(polys)
               if not p.is_zero())
    out = Polynomial()
    for k, p in enumerate(polys):
        if p.is_zero():
            continue
        if _poly_xval(p) - k == smin:
            out = out + _falling_factorial(k).scale(p.coeff(_poly_xval(p)))
    return out


def _polynomial_form(L: DiffOperator) -> tuple[list[Polynomial], Polynomial]:
    """Clear denominators: returns (polynomial coefficients, the multiplier)."""
    den = P_ONE
    for c in L.coeffs:
        g = den.gcd(c.den)
        den = den * c.den.exact_div(g)
    polys = [c.num * den.exact_div(c.den) for c in L.coeffs]
    return polys, den


def _poly_xval(p: Polynomial) -> int:
    for i, c in enumerate(p.coeffs):
        if c != 0:
            return i
    return 0


def _falling_factorial(k: int) -> Polynomial:
    out = P_ONE
    for i in range(k):
        out = out * Polynomial([-i, 1])
    return out


class _Jet:
    """Truncated Taylor polynomial in the Frobenius exponent parameter."""

    __slots__ = ("c",)

    def __init__(self, c: Sequence[Fraction]):
        self.c = list(c)

    def __mul__(self, other: "_Jet") -> "_Jet":
        n = len(self.c)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(n - i):
                if other.c[j]:
                    out[i + j] += a * other.c[j]
        return _Jet(out)

    def __add__(self, other: "_Jet") -> "_Jet":
        return _Jet([a + b for a, b in zip(self.c, other.c)])

    def __neg__(self) -> "_Jet":
        return _Jet([-a for a in self.c])

    def inverse(self) -> "_Jet":
        n = len(self.c)
        if self.c[0] == 0:
            raise ZeroDivisionError("jet with zero constant term")
        out = [Fraction(0)] * n
        out[0] = 1 / self.c[0]
        for m in range(1, n):
            acc = Fraction(0)
            for j in range(1, m + 1):
                if self.c[j]:
                    acc += self.c[j] * out[m - j]
            out[m] = -acc / self.c[0]
        return _Jet(out)


def _poly_at_jet(p: Polynomial, shift: int, n: int) -> _Jet:
    """p(sigma + shift) as a jet of length n at sigma = 0."""
    out = _Jet([Fraction(0)] * n)
    sigma = _Jet([Fraction(shift), Fraction(1)] + [Fraction(0)] * (n - 2)) \
        if n >= 2 else _Jet([Fraction(shift)])
    for c in reversed(p.coeffs):
        out = out * sigma
        out.c[0] += c
    return out


def frobenius_mum_basis(L: DiffOperator, K: int) -> list[LogSeries]:
    """Frobenius basis at a MUM point x = 0.

    Requires the indicial polynomial to be a constant times sigma^N;
    returns solutions y_j = sum_i log^i x / i! * s_{j-i}(x) with s_0 =
    1 + O(x) and s_r = O(x) for r >= 1, exact through x^K.
    """
    N = L.order
    ind = indicial_polynomial(L)
    if ind.degree != N or any(c != 0 for c in ind.coeffs[:-1]):
        raise ValueError(f"not MUM: indicial polynomial {ind}")
    polys, _ = _polynomial_form(L)
    smin = min(_poly_xval(p) - k for k, p in enumerate(polys)
               if not p.is_zero())
    # Phi[s]: polynomial in the exponent, action of L on x^m is
    # sum_s Phi[s](m) x^(m+s)
    phi: dict[int, Polynomial] = {}
    for k, p in enumerate(polys):
        ff = _falling_factorial(k)
        for d, c in enumerate(p.coeffs):
            if c == 0:
                continue
            s = d - k
            phi[s] = phi.get(s, Polynomial()) + ff.scale(c)
    smax = max(phi)
    # c_m as jets in sigma of length N; c_0 = 1
    jets = [_Jet([Fraction(1)] + [Fraction(0)] * (N - 1))]
    for n in range(1, K + 1):
        acc = _Jet([Fraction(0)] * N)
        for j in range(1, min(n, smax - smin) + 1):
            p = phi.get(smin + j)
            if p is None or p.is_zero():
                continue
            acc = acc + _poly_at_jet(p, n - j, N) * jets[n - j]
        jets.append((-acc) * _poly_at_jet(phi[smin], n, N).inverse())
    s_parts = [TruncatedSeries(0, [jets[m].c[r] for m in range(K + 1)], K)
               for r in range(N)]
    basis = []
    for j in range(N):
        parts = []
        fact = 1
        for i in range(j + 1):
            parts.append(s_parts[j - i].scale(Fraction(1, fact)))
            fact *= i + 1
        basis.append(LogSeries(parts))
    return basis


def is_mum_point(L: DiffOperator) -> bool:
    ind = indicial_polynomial(L)
    return ind.degree == L.order and all(c == 0 for c in ind.coeffs[:-1])


# ---------------------------------------------------------------- constructors


def hypergeometric_operator(a: Scalar, b: Scalar, c: Scalar) -> DiffOperator:
    """Annihilator of 2F1([a,b],[c],x), monic order 2."""
    a, b, c = rat(a), rat(b), rat(c)
    den = RationalFunction(Polynomial([0, 1, -1]))  # x(1-x)
    p = RationalFunction(Polynomial([c, -(a + b + 1)])) / den
    q = RationalFunction(Polynomial([-a * b])) / den
    return DiffOperator([q, p, 1])
