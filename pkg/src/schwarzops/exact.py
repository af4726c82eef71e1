"""Exact arithmetic kernels: rationals, dense polynomials, reduced rational
functions, bivariate polynomials, resultants, and linear solving.

Everything here is immutable and pure; values may be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _gcd_int
from typing import Iterable, Sequence, Union

Rat = Fraction

Scalar = Union[Fraction, int, str]


def rat(x: Scalar) -> Fraction:
    """Coerce ints, 'num/den' strings and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    return str(x)  # Fraction prints "num/den", or "num" when den == 1


def _int_strip_content(cs: list) -> list:
    """Divide integer coefficients by their gcd (empty list passes through)."""
    g = 0
    for c in cs:
        g = _gcd_int(g, c)
        if g == 1:
            return cs
    return [c // g for c in cs] if g else cs


def _int_primitive(p: "Polynomial") -> list:
    """Integer coefficient list of a rational polynomial, content stripped."""
    if p.is_zero():
        return []
    lcm = 1
    for c in p.coeffs:
        d = c.denominator
        lcm = lcm // _gcd_int(lcm, d) * d
    return _int_strip_content([int(c * lcm) for c in p.coeffs])


def _int_pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists (low degree first)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        if r[-1] == 0:
            r.pop()
            continue
        lr, dr = r[-1], len(r) - 1
        r = [c * lb for c in r]
        shift = dr - db
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
        while r and r[-1] == 0:
            r.pop()
    return r


class Polynomial:
    """Dense univariate polynomial over Q, coefficients low degree first.

    Trailing zeros are stripped; the zero polynomial stores no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c: Scalar) -> "Polynomial":
        return Polynomial([rat(c)])

    @staticmethod
    def x_power(n: int, c: Scalar = 1) -> "Polynomial":
        return Polynomial([0] * n + [rat(c)])

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, n: int) -> Fraction:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Polynomial", self.coeffs))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = rat(c)
        return Polynomial([a * c for a in self.coeffs])

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "Polynomial":
        """Multiply by x^n (n >= 0)."""
        if self.is_zero():
            return self
        return Polynomial([Fraction(0)] * n + list(self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quo = [Fraction(0)] * (dq + 1)
        dlc = other.lc
        dlen = len(other.coeffs)
        for i in range(dq, -1, -1):
            c = rem[i + dlen - 1] / dlc
            quo[i] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(quo), Polynomial(rem)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd via a primitive pseudo-remainder sequence over Z.

        Working with integer coefficients and stripping content each step
        avoids the coefficient blowup of plain Euclid over Q.
        """
        a, b = _int_primitive(self), _int_primitive(other)
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = _int_pseudo_rem(a, b)
            a, b = b, _int_strip_content(r)
        if not a:
            return Polynomial()
        inv = Fraction(1, a[-1]) if a[-1] > 0 else Fraction(-1, -a[-1])
        return Polynomial([c * inv for c in a])

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: Scalar) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_generic(self, x):
        """Horner evaluation at any element with +, * and int coercion."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0
        return acc

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial.const(c)
        return acc

    def integer_normalized(self) -> "Polynomial":
        """Scale to integer coefficients with content 1 and positive lc."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Polynomial([Fraction(v, g) for v in ints])

    # -- io -------------------------------------------------------------

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[Scalar]) -> "Polynomial":
        return Polynomial([rat(c) for c in data])

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    parts.append(xs)
                elif c == -1:
                    parts.append(f"-{xs}")
                else:
                    parts.append(f"{rat_str(c)}*{xs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


P_ZERO = Polynomial()
P_ONE = Polynomial([1])
P_X = Polynomial([0, 1])


class RationalFunction:
    """Reduced ratio of polynomials over Q with monic denominator.

    Equality is structural; two arithmetic routes to the same function give
    identical (num, den) pairs.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=P_ONE):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        c = den.lc
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        if num.is_zero():
            den = P_ONE
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def const(c: Scalar) -> "RationalFunction":
        return RationalFunction(Polynomial.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def __eq__(self, other) -> bool:
        other = _as_ratfunc_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RationalFunction", self.num, self.den))

    def __add__(self, other) -> "RationalFunction":
        other = _as_ratfunc(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_ratfunc(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_ratfunc(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_ratfunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_ratfunc(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return (RF_ONE / self) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, y: "RationalFunction") -> "RationalFunction":
        """f(y(x)) as a reduced rational function; y must be nonconstant."""
        y = _as_ratfunc(y)
        if y.is_constant():
            raise ValueError("composition with a constant")
        d = max(self.num.degree, self.den.degree, 0)
        yn_pow = [P_ONE]
        yd_pow = [P_ONE]
        for _ in range(d):
            yn_pow.append(yn_pow[-1] * y.num)
            yd_pow.append(yd_pow[-1] * y.den)

        def lift(p: Polynomial) -> Polynomial:
            acc = P_ZERO
            for i in range(p.degree + 1):
                c = p.coeff(i)
                if c != 0:
                    acc = acc + (yn_pow[i] * yd_pow[d - i]).scale(c)
            return acc

        return RationalFunction(lift(self.num), lift(self.den))

    def evaluate(self, x: Scalar) -> Fraction:
        x = rat(x)
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.evaluate(x) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "RationalFunction":
        return RationalFunction(
            Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"])
        )

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == P_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (Fraction, int, str)):
        return Polynomial.const(rat(p))
    raise TypeError(f"cannot coerce {type(p).__name__} to Polynomial")


def _as_ratfunc_or_none(f):
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, (Polynomial, Fraction, int)):
        return RationalFunction(_as_poly(f))
    return None


def _as_ratfunc(f) -> RationalFunction:
    r = _as_ratfunc_or_none(f)
    if r is None:
        raise TypeError(f"cannot coerce {type(f).__name__} to RationalFunction")
    return r


RF_ZERO = RationalFunction(P_ZERO)
RF_ONE = RationalFunction(P_ONE)
RF_X = RationalFunction(P_X)


def ratfunc(num, den=1) -> RationalFunction:
    """Convenience constructor from polynomial-likes or coefficient lists."""

    def conv(p):
        if isinstance(p, (list, tuple)):
            return Polynomial(p)
        return _as_poly(p)

    return RationalFunction(conv(num), conv(den))


class BivariatePolynomial:
    """Dense bivariate polynomial over Q; rows indexed by the degree in the
    first variable, columns by the degree in the second."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Scalar]] = ()):
        mat = [[rat(c) for c in row] for row in rows]
        width = max((len(r) for r in mat), default=0)
        for r in mat:
            r.extend([Fraction(0)] * (width - len(r)))
        while mat and all(c == 0 for c in mat[-1]):
            mat.pop()
        while mat and all(r[-1] == 0 for r in mat):
            for r in mat:
                r.pop()
        object.__setattr__(self, "rows", tuple(tuple(r) for r in mat))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("BivariatePolynomial is immutable")

    @staticmethod
    def const(c: Scalar) -> "BivariatePolynomial":
        return BivariatePolynomial([[rat(c)]])

    @staticmethod
    def var_first() -> "BivariatePolynomial":
        return BivariatePolynomial([[0], [1]])

    @staticmethod
    def var_second() -> "BivariatePolynomial":
        return BivariatePolynomial([[0, 1]])

    @staticmethod
    def from_terms(terms: dict[tuple[int, int], Scalar]) -> "BivariatePolynomial":
        if not terms:
            return BivariatePolynomial()
        da = max(i for i, _ in terms)
        db = max(j for _, j in terms)
        rows = [[Fraction(0)] * (db + 1) for _ in range(da + 1)]
        for (i, j), c in terms.items():
            rows[i][j] = rat(c)
        return BivariatePolynomial(rows)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        return {
            (i, j): c
            for i, row in enumerate(self.rows)
            for j, c in enumerate(row)
            if c != 0
        }

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def degree_first(self) -> int:
        return len(self.rows) - 1

    @property
    def degree_second(self) -> int:
        return len(self.rows[0]) - 1 if self.rows else -1

    def coeff(self, i: int, j: int) -> Fraction:
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(("BivariatePolynomial", self.rows))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        na = max(len(self.rows), len(other.rows))
        out = []
        for i in range(na):
            nb = max(
                len(self.rows[i]) if i < len(self.rows) else 0,
                len(other.rows[i]) if i < len(other.rows) else 0,
            )
            out.append([self.coeff(i, j) + other.coeff(i, j) for j in range(nb)])
        return BivariatePolynomial(out)

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial([[-c for c in row] for row in self.rows])

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return BivariatePolynomial()
        out = [
            [Fraction(0)] * (len(self.rows[0]) + len(other.rows[0]) - 1)
            for _ in range(len(self.rows) + len(other.rows) - 1)
        ]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if a == 0:
                    continue
                for k, orow in enumerate(other.rows):
                    for l, b in enumerate(orow):
                        if b != 0:
                            out[i + k][j + l] += a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "BivariatePolynomial":
        c = rat(c)
        return BivariatePolynomial([[a * c for a in row] for row in self.rows])

    def __pow__(self, n: int) -> "BivariatePolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = BivariatePolynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def swap_vars(self) -> "BivariatePolynomial":
        if self.is_zero():
            return self
        out = [
            [self.coeff(i, j) for i in range(self.degree_first + 1)]
            for j in range(self.degree_second + 1)
        ]
        return BivariatePolynomial(out)

    def coeffs_in_second(self) -> list["BivariatePolynomial"]:
        """View as a polynomial in the second variable; coefficient j is a
        bivariate polynomial involving only the first variable."""
        out = []
        for j in range(self.degree_second + 1):
            col = [[self.coeff(i, j)] for i in range(self.degree_first + 1)]
            out.append(BivariatePolynomial(col))
        while out and out[-1].is_zero():
            out.pop()
        return out

    def coeffs_in_first(self) -> list["BivariatePolynomial"]:
        out = [BivariatePolynomial([row]) for row in self.rows]
        while out and out[-1].is_zero():
            out.pop()
        return out

    def exact_div(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        """Exact division; valid whenever the quotient exists in Q[A,B]."""
        if other.is_zero():
            raise ZeroDivisionError("bivariate division by zero")
        if self.is_zero():
            return self
        if other.degree_first == 0 and other.degree_second == 0:
            return self.scale(1 / other.coeff(0, 0))
        rem = self
        dterms = other.terms()
        # divide by leading term in graded-lex (second variable major)
        lead = max(dterms, key=lambda ij: (ij[1], ij[0]))
        lc = dterms[lead]
        quo: dict[tuple[int, int], Fraction] = {}
        while not rem.is_zero():
            rterms = rem.terms()
            rlead = max(rterms, key=lambda ij: (ij[1], ij[0]))
            di, dj = rlead[0] - lead[0], rlead[1] - lead[1]
            if di < 0 or dj < 0:
                raise ArithmeticError("bivariate division is not exact")
            c = rterms[rlead] / lc
            quo[(di, dj)] = quo.get((di, dj), Fraction(0)) + c
            rem = rem - other * BivariatePolynomial.from_terms({(di, dj): c})
        return BivariatePolynomial.from_terms(quo)

    def eval_generic(self, a, b):
        """Horner in both variables; works for Fractions, rational functions
        and truncated series alike."""
        acc = None
        for row in reversed(self.rows):
            racc = None
            for c in reversed(row):
                racc = c if racc is None else racc * b + c
            if racc is None:
                racc = Fraction(0)
            acc = racc if acc is None else acc * a + racc
        if acc is None:
            return Fraction(0)
        return acc

    def content_normalized(self) -> "BivariatePolynomial":
        """Divide out integer content; sign fixed so the first nonzero
        coefficient in row-major order is positive."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = 1
        for row in self.rows:
            for c in row:
                den = lcm(den, c.denominator)
        ints = [int(c * den) for row in self.rows for c in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        first = next(v for v in ints if v != 0)
        if first < 0:
            g = -g
        return BivariatePolynomial(
            [[Fraction(int(c * den), g) for c in row] for row in self.rows]
        )

    def to_json(self) -> list[list[str]]:
        return [[rat_str(c) for c in row] for row in self.rows]

    @staticmethod
    def from_json(data) -> "BivariatePolynomial":
        return BivariatePolynomial([[rat(c) for c in row] for row in data])

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self.to_json()})"


def _prs_resultant(f: list, g: list, ring_one):
    """Resultant of two polynomials given as coefficient lists (low degree
    first) over a ring whose elements support *, -, unary -, exact_div and
    is_zero. Subresultant PRS with explicit factor tracking:

      prem: lc(B)^(d+1)·A = Q·B + R  with d = deg A - deg B, hence
      Res(A,B) = (-1)^(degA·degB) · lc(B)^(degA - degR - (d+1)·degB) · Res(B,R)
      Res(B, R/beta) = Res(B,R) / beta^(degB)

    beta = g·h^d is the subresultant scale keeping intermediate coefficients
    small; the accumulated numerator/denominator factors divide exactly at
    the end because the resultant itself is a ring element.
    """

    def deg(p):
        return len(p) - 1

    def trim(p):
        p = list(p)
        while p and p[-1].is_zero():
            p.pop()
        return p

    def pseudo_rem(a, b):
        # prem(a, b): lc(b)^(deg a - deg b + 1) * a reduced mod b
        a = list(a)
        db = deg(b)
        lb = b[-1]
        reps = deg(a) - db + 1
        steps = 0
        while a and deg(a) >= db:
            da = deg(a)
            la = a[-1]
            a = [c * lb for c in a]
            for j in range(db + 1):
                a[da - db + j] = a[da - db + j] - la * b[j]
            a = trim(a)
            steps += 1
        # pad the premultiplier so the total scale is exactly lc^(reps)
        for _ in range(reps - steps):
            a = [c * lb for c in a]
        return a

    f = trim(f)
    g = trim(g)
    if not f or not g:
        raise ValueError("zero input polynomial")
    sign = 1
    if deg(f) < deg(g):
        if (deg(f) * deg(g)) % 2 == 1:
            sign = -sign
        f, g = g, f
    num_factors: list = []
    den_factors: list = []
    gg = ring_one
    hh = ring_one
    A, B = f, g
    while deg(B) > 0:
        dA, dB = deg(A), deg(B)
        d = dA - dB
        R = pseudo_rem(A, B)
        if not R:
            return ring_one - ring_one
        if (dA * dB) % 2 == 1:
            sign = -sign
        lb = B[-1]
        e = dA - deg(R) - (d + 1) * dB
        if e >= 0:
            num_factors.append(_ring_pow(lb, e, ring_one))
        else:
            den_factors.append(_ring_pow(lb, -e, ring_one))
        beta = gg * _ring_pow(hh, d, ring_one)
        R = [c.exact_div(beta) for c in R]
        num_factors.append(_ring_pow(beta, dB, ring_one))
        A, B = B, R
        gg = lb
        if d == 1:
            hh = gg
        elif d > 1:
            hh = _ring_pow(gg, d, ring_one).exact_div(
                _ring_pow(hh, d - 1, ring_one)
            )
    res = _ring_pow(B[0], deg(A), ring_one)
    for fct in num_factors:
        res = res * fct
    den = ring_one
    for fct in den_factors:
        den = den * fct
    res = res.exact_div(den)
    return -res if sign == -1 else res


def _ring_pow(x, n: int, one):
    acc = one
    for _ in range(n):
        acc = acc * x
    return acc


def resultant_in_second_var(
    P: BivariatePolynomial, Q: BivariatePolynomial
) -> BivariatePolynomial:
    """Resultant eliminating the shared middle variable.

    P is read as a polynomial in (A, B), Q as a polynomial in (B, C); the
    result is content-normalized in (A, C).
    """
    if P.is_zero() or Q.is_zero():
        raise ValueError("zero input polynomial")
    # B-coefficient lists; P's coefficients involve A (first var of result),
    # Q's involve C (second var of result, already in column position).
    f = P.coeffs_in_second()
    g = Q.coeffs_in_first()
    if len(f) < 2 or len(g) < 2:
        raise ValueError("input has degree 0 in the eliminated variable")
    res = _prs_resultant(f, g, BivariatePolynomial.const(1))
    return res.content_normalized()


def resultant_univariate(p: Polynomial, q: Polynomial) -> Fraction:
    """Resultant of two univariate polynomials over Q."""

    class _F:
        __slots__ = ("v",)

        def __init__(self, v):
            self.v = v

        def __mul__(self, o):
            return _F(self.v * o.v)

        def __sub__(self, o):
            return _F(self.v - o.v)

        def __neg__(self):
            return _F(-self.v)

        def exact_div(self, o):
            return _F(self.v / o.v)

        def is_zero(self):
            return self.v == 0

    f = [_F(c) for c in p.coeffs]
    g = [_F(c) for c in q.coeffs]
    return _prs_resultant(f, g, _F(Fraction(1))).v


@dataclass(frozen=True)
class LinearSolution:
    """Exact description of the solution set of M·x = b."""

    consistent: bool
    particular: tuple | None
    nullspace: tuple
    rank: int

    @property
    def unique(self) -> bool:
        return self.consistent and not self.nullspace


def linear_solve(M: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """Gaussian elimination over any field whose elements support the
    arithmetic dunders; works for Fraction and RationalFunction entries."""
    rows = [list(r) + [bv] for r, bv in zip(M, b)]
    nrows = len(rows)
    ncols = len(M[0]) if nrows else 0
    for r in rows:
        if len(r) != ncols + 1:
            raise ValueError("inconsistent dimensions")

    def nonzero(v) -> bool:
        if isinstance(v, RationalFunction):
            return not v.is_zero()
        return v != 0

    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        sel = None
        for i in range(prow, nrows):
            if nonzero(rows[i][col]):
                sel = i
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        pv = rows[prow][col]
        rows[prow] = [c / pv for c in rows[prow]]
        for i in range(nrows):
            if i != prow and nonzero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [a - f * b2 for a, b2 in zip(rows[i], rows[prow])]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    for i in range(prow, nrows):
        if nonzero(rows[i][ncols]):
            return LinearSolution(False, None, (), len(pivots))

    zero = None
    one = None
    for r in rows:
        for c in r:
            if nonzero(c):
                one = c / c
                zero = c - c
                break
        if one is not None:
            break
    if one is None:
        zero = Fraction(0)
        one = Fraction(1)

    particular = [zero] * ncols
    for pr, col in enumerate(pivots):
        particular[col] = rows[pr][ncols]
    free_cols = [c for c in range(ncols) if c not in pivots]
    nullspace = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for pr, col in enumerate(pivots):
            vec[col] = zero - rows[pr][fc]
        nullspace.append(tuple(vec))
    return LinearSolution(True, tuple(particular), tuple(nullspace), len(pivots))
