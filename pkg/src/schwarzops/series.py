"""Truncated Laurent series over the rationals.

A :class:`TruncatedSeries` stores the coefficients of exponents
``val .. order`` (inclusive); ``order`` may be ``None`` for values that
are known exactly (Laurent polynomials).  All arithmetic propagates the
tightest truncation order that the inputs can justify, so a coefficient
that is returned is always correct, never an artifact of a silently
dropped tail.

Logarithms are never stored inside a series: :func:`series_integrate`
returns the coefficient of ``log x`` separately, and modules that need
full log-solutions keep polynomial-in-log combinations of plain series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .exact import Polynomial, RationalFunction, Scalar, rat, rat_str

#: Default expansion order for operations whose exact inputs carry no
#: truncation of their own (inversion, exp/log/pow, rational expansion).
DEFAULT_ORDER = 30


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedSeries:
    """Laurent series ``sum c_n x^n`` with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**(val + i)``.  When ``order``
    is an integer the stored range is exactly ``val .. order`` and the
    value is ``O(x**(order + 1))`` beyond it; when ``order`` is ``None``
    the series is exact and all unstored coefficients are zero.
    """

    __slots__ = ("val", "coeffs", "order")

    def __init__(self, val: int, coeffs: Sequence[Scalar] = (),
                 order: Optional[int] = None):
        cs = [rat(c) for c in coeffs]
        if order is None:
            while cs and cs[-1] == 0:
                cs.pop()
        else:
            if val + len(cs) - 1 > order:
                cs = cs[:max(0, order - val + 1)]
            cs.extend([Fraction(0)] * (order - val + 1 - len(cs)))
        while cs and cs[0] == 0:
            cs.pop(0)
            val += 1
        if not cs:
            val = 0 if order is None else order + 1
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(order: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(0, (), order)

    @staticmethod
    def one(order: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(0, (1,), order)

    @staticmethod
    def x(order: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(1, (1,), order)

    @staticmethod
    def monomial(c: Scalar, n: int,
                 order: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(n, (c,), order)

    @staticmethod
    def from_polynomial(p: Polynomial,
                        order: Optional[int] = None) -> "TruncatedSeries":
        return TruncatedSeries(0, p.coeffs, order)

    @staticmethod
    def from_rational(f: RationalFunction,
                      order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """Laurent expansion of a rational function at x = 0."""
        num = TruncatedSeries.from_polynomial(f.num)
        den = TruncatedSeries.from_polynomial(f.den)
        if num.is_zero():
            return TruncatedSeries.zero(order)
        return num.divide(den, order=order)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        """True when every stored coefficient vanishes."""
        return not self.coeffs

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of x^n; raises beyond the truncation order."""
        if self.order is not None and n > self.order:
            raise ValueError(
                f"coefficient of x^{n} is beyond truncation order {self.order}")
        return self._coeff0(n)

    def _coeff0(self, n: int) -> Fraction:
        # stored coefficient or zero, with no truncation guard
        if n < self.val or n >= self.val + len(self.coeffs):
            return Fraction(0)
        return self.coeffs[n - self.val]

    def valuation(self) -> Optional[int]:
        """Exponent of the first nonzero term, None for the zero series."""
        return self.val if self.coeffs else None

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero series has no leading coefficient")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.val == other.val and self.coeffs == other.coeffs
                and self.order == other.order)

    def __hash__(self) -> int:
        return hash((self.val, self.coeffs, self.order))

    def agrees_with(self, other: "TruncatedSeries", upto: int) -> bool:
        """Coefficientwise equality through x^upto."""
        lo = min(self.val, other.val)
        return all(self.coefficient(n) == other.coefficient(n)
                   for n in range(lo, upto + 1))

    # -- arithmetic --------------------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        """Restrict knowledge to coefficients up to x^order."""
        if self.order is not None and self.order <= order:
            return self
        return TruncatedSeries(self.val, self.coeffs, order)

    def shift(self, n: int) -> "TruncatedSeries":
        """Multiply by x^n."""
        order = None if self.order is None else self.order + n
        return TruncatedSeries(self.val + n, self.coeffs, order)

    def __add__(self, other) -> "TruncatedSeries":
        other = _as_series(other)
        order = _min_order(self.order, other.order)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if order is not None:
            hi = min(hi, order + 1)
        cs = [Fraction(0)] * (hi - lo)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                n = src.val + i
                if n < hi:
                    cs[n - lo] += c
        return TruncatedSeries(lo, cs, order)

    def __radd__(self, other) -> "TruncatedSeries":
        return self.__add__(other)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.val, [-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "TruncatedSeries":
        return self.__add__(_as_series(other).__neg__())

    def __rsub__(self, other) -> "TruncatedSeries":
        return _as_series(other).__add__(self.__neg__())

    def __mul__(self, other) -> "TruncatedSeries":
        other = _as_series(other)
        if (self.is_zero() and self.order is None) or \
           (other.is_zero() and other.order is None):
            return TruncatedSeries.zero()
        order = None
        if self.order is not None or other.order is not None:
            bounds = []
            if self.order is not None:
                bounds.append(self.order + other.val)
            if other.order is not None:
                bounds.append(other.order + self.val)
            order = min(bounds)
        lo = self.val + other.val
        hi = self.val + other.val + len(self.coeffs) + len(other.coeffs) - 1
        if order is not None:
            hi = min(hi, order + 1)
        cs = [Fraction(0)] * max(0, hi - lo)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            base = self.val + i + other.val - lo
            top = min(len(other.coeffs), hi - lo - base)
            for j in range(max(0, top)):
                b = other.coeffs[j]
                if b:
                    cs[base + j] += a * b
        return TruncatedSeries(lo, cs, order)

    def __rmul__(self, other) -> "TruncatedSeries":
        return self.__mul__(other)

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = rat(c)
        return TruncatedSeries(self.val, [c * a for a in self.coeffs],
                               self.order)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self, order: Optional[int] = None) -> "TruncatedSeries":
        """Multiplicative inverse; a Laurent series when val > 0.

        The inverse of a series known to order K with valuation v is only
        determined to order K - 2v; exact inputs expand to `order`
        (default DEFAULT_ORDER).
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero series")
        v = self.val
        if self.order is not None:
            out_order = self.order - 2 * v
            if order is not None:
                out_order = min(out_order, order)
        else:
            out_order = DEFAULT_ORDER if order is None else order
        m = out_order + v  # number of unit-part coefficients beyond x^0
        if m < 0:
            return TruncatedSeries(0, (), out_order)
        u = [self.coefficient(v + i) for i in range(m + 1)]
        c0 = u[0]
        inv = [1 / c0] + [Fraction(0)] * m
        for n in range(1, m + 1):
            acc = Fraction(0)
            for j in range(1, n + 1):
                if u[j]:
                    acc += u[j] * inv[n - j]
            inv[n] = -acc / c0
        return TruncatedSeries(-v, inv, out_order)

    def divide(self, other: "TruncatedSeries",
               order: Optional[int] = None) -> "TruncatedSeries":
        other = _as_series(other)
        num_order = None if self.order is None else self.order - other.val
        if order is not None:
            num_order = _min_order(num_order, order)
        return self * other.inverse(order=num_order)

    def __truediv__(self, other) -> "TruncatedSeries":
        return self.divide(_as_series(other))

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return _as_series(other).divide(self)

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TruncatedSeries":
        order = None if self.order is None else self.order - 1
        cs = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.val - 1, cs, order)

    def integrate(self) -> "IntegrationResult":
        """Termwise antiderivative with zero constant.

        The x^{-1} term cannot integrate to a series; its coefficient is
        returned separately as the coefficient of log x.
        """
        log_coeff = Fraction(0)
        lo = self.val + 1
        cs = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            n = self.val + i
            if n == -1:
                log_coeff = c
            else:
                cs[i] = c / (n + 1)
        order = None if self.order is None else self.order + 1
        return IntegrationResult(TruncatedSeries(lo, cs, order), log_coeff)

    # -- composition and reversion ------------------------------------------

    def compose(self, g: "TruncatedSeries",
                order: Optional[int] = None) -> "TruncatedSeries":
        """Substitution self(g(x)); requires val(g) >= 1."""
        g = _as_series(g)
        gv = g.valuation()
        if gv is None or gv < 1:
            raise ValueError("composition requires inner valuation >= 1")
        depth = max(0, -self.val)
        tail_bound = None
        if self.order is not None:
            tail_bound = (self.order + 1) * gv - 1
        target = _min_order(tail_bound, order)
        exact_case = self.order is None and g.order is None and depth == 0 \
            and order is None
        if g.order is None and not exact_case:
            cap = DEFAULT_ORDER if target is None else target
            g = g.truncate(cap + (depth + 2) * gv)
        # regular part, by Horner in g
        result = TruncatedSeries.zero()
        top = self.val + len(self.coeffs) - 1
        for n in range(top, -1, -1):
            result = result * g + self._coeff0(n)
        # principal part, by Horner in 1/g
        if depth:
            h = g.inverse()
            p = TruncatedSeries.zero()
            for n in range(depth, 0, -1):
                p = (p + self._coeff0(-n)) * h
            result = result + p
        if target is not None:
            result = result.truncate(target)
        return result

    def reverse(self) -> "TruncatedSeries":
        """Compositional inverse, by Lagrange inversion.

        Requires valuation exactly 1.  The k-th coefficient of the
        inverse is [t^{k-1}] (t/f)^k / k.
        """
        if self.valuation() != 1:
            raise ValueError("reversion requires valuation exactly 1")
        K = DEFAULT_ORDER if self.order is None else self.order
        f = self.truncate(K)
        u = f.shift(-1).inverse()  # (t/f), valuation 0
        cs = [Fraction(0)] * K
        p = u
        for k in range(1, K + 1):
            cs[k - 1] = p.coefficient(k - 1) / k
            if k < K:
                p = (p * u).truncate(K - 1)
        return TruncatedSeries(1, cs, K)

    # -- exp / log / powers ---------------------------------------------------

    def exp(self, order: Optional[int] = None) -> "TruncatedSeries":
        """Formal exponential; requires valuation >= 1 (or zero input)."""
        if self.is_zero():
            return TruncatedSeries.one(self.order)
        if self.val < 1:
            raise ValueError(
                f"exp needs vanishing constant term, found x^{self.val} "
                f"coefficient {self.coeffs[0]}")
        K = self.order
        if K is None:
            K = DEFAULT_ORDER if order is None else order
        elif order is not None:
            K = min(K, order)
        f = [self.coefficient(n) for n in range(K + 1)]
        g = [Fraction(1)] + [Fraction(0)] * K
        for n in range(1, K + 1):
            acc = Fraction(0)
            for j in range(1, n + 1):
                if f[j]:
                    acc += j * f[j] * g[n - j]
            g[n] = acc / n
        return TruncatedSeries(0, g, K)

    def log(self, order: Optional[int] = None) -> "TruncatedSeries":
        """Formal logarithm; requires constant term exactly 1."""
        if self.valuation() != 0 or self.coeffs[0] != 1:
            lead = "zero series" if self.is_zero() else \
                f"x^{self.val} coefficient {self.coeffs[0]}"
            raise ValueError(f"log needs leading term 1, found {lead}")
        K = self.order
        if K is None:
            K = DEFAULT_ORDER if order is None else order
        elif order is not None:
            K = min(K, order)
        f = [self.coefficient(n) for n in range(K + 1)]
        g = [Fraction(0)] * (K + 1)
        # g' = f'/f, i.e. n*g_n = n*f_n - sum_{j<n} j*g_j*f_{n-j}
        for n in range(1, K + 1):
            acc = n * f[n]
            for j in range(1, n):
                if f[n - j]:
                    acc -= j * g[j] * f[n - j]
            g[n] = acc / n
        return TruncatedSeries(0, g, K)

    def pow(self, e: Scalar, order: Optional[int] = None) -> "TruncatedSeries":
        """Rational power on the principal branch.

        Needs val*e integral and the leading coefficient a perfect power:
        the result's leading coefficient is the positive real root (for
        odd denominators, the real root of matching sign).
        """
        e = rat(e)
        if e.denominator == 1:
            return self ** int(e) if self.order is None and order is None \
                else self._pow_general(e, order)
        return self._pow_general(e, order)

    def _pow_general(self, e: Fraction,
                     order: Optional[int]) -> "TruncatedSeries":
        if self.is_zero():
            if e <= 0:
                raise ZeroDivisionError("zero series to a nonpositive power")
            return TruncatedSeries.zero(self.order)
        v = self.val
        ev = e * v
        if ev.denominator != 1:
            raise ValueError(f"power {e} of valuation {v} is not a series")
        c0 = self.coeffs[0]
        root = _rational_root(c0, e)
        if root is None:
            raise ValueError(
                f"leading coefficient {c0} has no rational power {e}")
        if self.order is not None:
            K_rel = self.order - v  # relative order of the unit part
            if order is not None:
                K_rel = min(K_rel, order - int(ev))
        else:
            K_rel = (DEFAULT_ORDER if order is None else order) - int(ev)
        z = [self.coefficient(v + i) / c0 for i in range(K_rel + 1)]
        w = [Fraction(1)] + [Fraction(0)] * K_rel
        for n in range(1, K_rel + 1):
            acc = Fraction(0)
            for j in range(1, n + 1):
                if z[j]:
                    acc += ((e + 1) * j - n) * z[j] * w[n - j]
            w[n] = acc / n
        return TruncatedSeries(int(ev), [root * c for c in w], int(ev) + K_rel)

    def sqrt(self, order: Optional[int] = None) -> "TruncatedSeries":
        return self.pow(Fraction(1, 2), order)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        data = {"val": self.val, "coeffs": [rat_str(c) for c in self.coeffs],
                "order": self.order}
        return data

    @staticmethod
    def from_json(data: dict) -> "TruncatedSeries":
        return TruncatedSeries(int(data["val"]),
                               [rat(c) for c in data["coeffs"]],
                               data.get("order"))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.val}, {list(self.coeffs)!r}, {self.order!r})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            n = self.val + i
            mag = abs(c)
            if n == 0:
                body = str(mag)
            else:
                xs = "x" if n == 1 else f"x^{n}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        out = " ".join(parts) if parts else "0"
        if self.order is not None:
            out += f" + O(x^{self.order + 1})"
        return out


class IntegrationResult(NamedTuple):
    """Antiderivative split into series part and log x coefficient."""
    series: TruncatedSeries
    log_coeff: Fraction


def _as_series(x) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, Polynomial):
        return TruncatedSeries.from_polynomial(x)
    return TruncatedSeries(0, (rat(x),))


def _rational_root(c: Fraction, e: Fraction) -> Optional[Fraction]:
    """c**e when rational; positive root for even denominators."""
    q = e.denominator
    if c < 0 and q % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    num = _int_nth_root(abs(c.numerator), q)
    den = _int_nth_root(c.denominator, q)
    if num is None or den is None:
        return None
    base = sign * Fraction(num, den)
    return base ** e.numerator


def _int_nth_root(n: int, q: int) -> Optional[int]:
    """Exact integer q-th root, or None."""
    if n in (0, 1) or q == 1:
        return n
    r = round(n ** (1.0 / q))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** q == n:
            return cand
    return None


# -- module-level operation names used by the CLI and sibling modules ---------

def series_compose(f: TruncatedSeries, g: TruncatedSeries,
                   order: Optional[int] = None) -> TruncatedSeries:
    return f.compose(g, order=order)


def series_reverse(f: TruncatedSeries) -> TruncatedSeries:
    return f.reverse()


def series_exp(f: TruncatedSeries,
               order: Optional[int] = None) -> TruncatedSeries:
    return f.exp(order=order)


def series_log(f: TruncatedSeries,
               order: Optional[int] = None) -> TruncatedSeries:
    return f.log(order=order)


def series_pow(f: TruncatedSeries, e: Scalar,
               order: Optional[int] = None) -> TruncatedSeries:
    return f.pow(e, order=order)


def series_integrate(f: TruncatedSeries) -> IntegrationResult:
    return f.integrate()


def ratfunc_at_series(f: RationalFunction, g: TruncatedSeries,
                      order: Optional[int] = None) -> TruncatedSeries:
    """Laurent series of f(g(x))."""
    num = _poly_at_series(f.num, g)
    if f.den.degree == 0:
        return num if order is None else num.truncate(order)
    den = _poly_at_series(f.den, g)
    if den.is_zero():
        raise ZeroDivisionError(
            "denominator vanishes identically to working order")
    cap = order
    if cap is None and num.order is None and den.order is None:
        cap = DEFAULT_ORDER
    return num.divide(den, order=cap)


def _poly_at_series(p: Polynomial, g: TruncatedSeries) -> TruncatedSeries:
    result = _as_series(0 if p.is_zero() else p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        result = result * g + c
    return result


def hypergeometric_series(upper: Sequence[Scalar], lower: Sequence[Scalar],
                          order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Generalized hypergeometric sum_k (prod (a)_k / prod (b)_k) x^k / k!."""
    cs = [Fraction(1)] + [Fraction(0)] * order
    ups = [rat(a) for a in upper]
    lows = [rat(b) for b in lower]
    for k in range(order):
        c = cs[k]
        for a in ups:
            c *= a + k
        for b in lows:
            if b + k == 0:
                raise ZeroDivisionError(f"lower parameter {b} hits pole at k={k}")
            c /= b + k
        cs[k + 1] = c / (k + 1)
    return TruncatedSeries(0, cs, order)
