"""
Exact rational arithmetic: univariate polynomials, truncated power series
and rational functions over Q.

Rationals are plain :class:`fractions.Fraction` values.  Everything here is
immutable; every operation returns a fresh value.
"""

from fractions import Fraction
from math import gcd, lcm

Rat = Fraction


class DivisionByZeroSeries(ZeroDivisionError):
    pass


class BadConstantTerm(ValueError):
    pass


class NotInvertible(ValueError):
    pass


def rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact: %r" % (x,))
    return Fraction(x)


def denominator_lcm(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def content(values):
    """gcd of a list of integers (0 for an all-zero list)."""
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


# ---------------------------------------------------------------------------
# Polynomials

class Poly:
    """Polynomial with rational coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (list(self.coeffs),))

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-rat(r), 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "Poly(%s)" % ", ".join(str(c) for c in self.coeffs)

    def __str__(self):
        return self.pretty()

    def pretty(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else "%s^%d" % (var, i)
                body = mono if a == 1 else "%s*%s" % (a, mono)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += " %s %s" % (sign, body)
        return s

    @staticmethod
    def promote(other):
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        other = Poly.promote(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-Poly.promote(other))

    def __rsub__(self, other):
        return Poly.promote(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = Poly.promote(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        assert isinstance(e, int) and e >= 0
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; x may be any ring element (Fraction, Poly, ...)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_int(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        other = Poly.promote(other)
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, a):
        """p(x + a)."""
        return self.compose(Poly([a, 1]))

    def reflect(self):
        """p(-x)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        other = Poly.promote(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead()
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq] / lc
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lead())

    def valuation(self):
        """Index of the lowest nonzero coefficient (None for zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def integer_primitive(self):
        """Scale to coprime integer coefficients with positive leading term."""
        if self.is_zero():
            return self
        d = denominator_lcm(self.coeffs)
        ints = [int(c * d) for c in self.coeffs]
        g = content(ints)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(c, g) for c in ints])


def poly_gcd(a, b):
    """Monic gcd over Q."""
    a, b = Poly.promote(a), Poly.promote(b)
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.integer_primitive()  # keeps coefficient growth in check
    return a.monic()


# ---------------------------------------------------------------------------
# Truncated power series

class PowerSeries:
    """
    Truncated power series sum c_n z^n, known for n < trunc.

    Binary operations report only min(trunc) coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    def __reduce__(self):
        return (PowerSeries, (self.coeffs,))

    @property
    def trunc(self):
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, p, trunc):
        p = Poly.promote(p)
        return cls([p[i] for i in range(trunc)])

    @classmethod
    def one(cls, trunc):
        return cls([1] + [0] * (trunc - 1))

    @classmethod
    def zero(cls, trunc):
        return cls([0] * trunc)

    @classmethod
    def variable(cls, trunc):
        return cls([0, 1] + [0] * (trunc - 2))

    @classmethod
    def geometric(cls, trunc, ratio=1):
        return cls([Fraction(ratio) ** n for n in range(trunc)])

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.trunc > 8 else ""
        return "PowerSeries([%s%s], trunc=%d)" % (head, more, self.trunc)

    def truncate(self, n):
        if n > self.trunc:
            raise ValueError("cannot extend a series from %d to %d terms" % (self.trunc, n))
        return PowerSeries(self.coeffs[:n])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def _pair(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other] + [0] * (self.trunc - 1))
        n = min(self.trunc, other.trunc)
        return n, self.coeffs, other.coeffs

    def __add__(self, other):
        n, a, b = self._pair(other)
        return PowerSeries([a[i] + b[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        n, a, b = self._pair(other)
        return PowerSeries([a[i] - b[i] for i in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = rat(c)
        return PowerSeries([x * c for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n, a, b = self._pair(other)
        out = []
        for k in range(n):
            s = Fraction(0)
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    s += ai * b[k - i]
            out.append(s)
        return PowerSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        n, a, b = self._pair(other)
        if n == 0:
            return PowerSeries([])
        b0 = b[0]
        if b0 == 0:
            raise DivisionByZeroSeries("divisor has zero constant term")
        out = []
        for k in range(n):
            s = a[k]
            for i in range(1, k + 1):
                bi = b[i]
                if bi:
                    s -= bi * out[k - i]
            out.append(s / b0)
        return PowerSeries(out)

    def __rtruediv__(self, other):
        return PowerSeries.one(self.trunc).scale(other) / self

    def __pow__(self, e):
        assert isinstance(e, int)
        if e < 0:
            return PowerSeries.one(self.trunc) / (self ** (-e))
        result = PowerSeries.one(self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self):
        """d/dz; loses one coefficient."""
        return PowerSeries([n * self.coeffs[n] for n in range(1, self.trunc)])

    def theta(self):
        """z d/dz; keeps the truncation."""
        return PowerSeries([n * c for n, c in enumerate(self.coeffs)])

    def integral(self):
        """Antiderivative with zero constant term; gains one coefficient."""
        return PowerSeries([0] + [c / (n + 1) for n, c in enumerate(self.coeffs)])

    def shift_down(self, k=1):
        """Divide by z^k; requires the first k coefficients to vanish."""
        if any(self.coeffs[:k]):
            raise ValueError("series is not divisible by z^%d" % k)
        return PowerSeries(self.coeffs[k:])

    def shift_up(self, k=1):
        """Multiply by z^k; trunc grows by k."""
        return PowerSeries([0] * k + list(self.coeffs))

    def compose(self, g):
        """self(g(z)); g must have zero constant term."""
        if g.trunc and g[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.trunc, g.trunc)
        g = g.truncate(n)
        acc = PowerSeries.zero(n)
        for c in reversed(self.coeffs[:n]):
            acc = acc * g + c
        return acc

    def hadamard(self, other):
        n, a, b = self._pair(other)
        return PowerSeries([a[i] * b[i] for i in range(n)])

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def first_nonintegral(self):
        for i, c in enumerate(self.coeffs):
            if c.denominator != 1:
                return i
        return None


def series_arith(op, f, g):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError("unknown series operation %r" % (op,))


def series_exp(f):
    """exp(f) for f(0) = 0, via g' = f' g."""
    if f.trunc == 0:
        return f
    if f[0] != 0:
        raise BadConstantTerm("exp needs zero constant term")
    n = f.trunc
    df = [k * f[k] for k in range(n)]  # coefficients of z f'
    g = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for m in range(1, n):
        s = Fraction(0)
        for k in range(1, m + 1):
            if df[k]:
                s += df[k] * g[m - k]
        g[m] = s / m
    return PowerSeries(g)


def series_log(f):
    """log(f) for f(0) = 1, via (log f)' = f'/f."""
    if f.trunc == 0:
        return f
    if f[0] != 1:
        raise BadConstantTerm("log needs constant term 1")
    q = f.theta() / f  # z f'/f
    return PowerSeries([0] + [q[m] / m for m in range(1, f.trunc)])


def series_exp_log(op, f):
    if op == "exp":
        return series_exp(f)
    if op == "log":
        return series_log(f)
    raise ValueError("unknown operation %r" % (op,))


def series_reversion(f):
    """
    Compositional inverse g with f(g(q)) = q, by Lagrange inversion:
    g_m = [z^(m-1)] (z/f)^m / m.
    """
    n = f.trunc
    if n < 2 or f[0] != 0:
        raise NotInvertible("reversion needs f(0) = 0 and at least two terms")
    if f[1] == 0:
        raise NotInvertible("f'(0) = 0")
    h = PowerSeries.one(n - 1) / f.shift_down(1)
    g = [Fraction(0)] * n
    power = PowerSeries.one(n - 1)
    for m in range(1, n):
        power = power * h
        g[m] = power[m - 1] / m
    return PowerSeries(g)


def series_nth_root(f, s):
    """g with g^s = f and g(0) = 1, for f(0) = 1."""
    if not isinstance(s, int) or s < 1:
        raise ValueError("root index must be a positive integer")
    if f.trunc == 0:
        return f
    if f[0] != 1:
        raise BadConstantTerm("nth root needs constant term 1")
    return _root_coeffs(f, s, None)


def _root_coeffs(f, s, stop_on_fraction):
    # g^s = f  =>  f * theta(g) = (1/s) * g * theta(f); solve for g_m.
    n = f.trunc
    a = f.coeffs
    g = [Fraction(1)] + [Fraction(0)] * (n - 1)
    inv_s = Fraction(1, s)
    for m in range(1, n):
        acc = Fraction(0)
        for k in range(1, m + 1):
            ak = a[k]
            if ak:
                acc += ak * g[m - k] * (inv_s * k - (m - k))
        g[m] = acc / m
        if stop_on_fraction and g[m].denominator != 1:
            return None
    return PowerSeries(g)


def integral_nth_root(f, s):
    """The s-th root of f if it has integer coefficients, else None."""
    if f.trunc == 0 or f[0] != 1:
        return None
    return _root_coeffs(f, s, True)


# ---------------------------------------------------------------------------
# Rational functions

class RatFunc:
    """Reduced quotient num/den of polynomials over Q with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.promote(num)
        den = Poly([1]) if den is None else Poly.promote(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lead()
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    @staticmethod
    def promote(x):
        if isinstance(x, RatFunc):
            return x
        return RatFunc(x)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.promote(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "RatFunc(%r, %r)" % (self.num, self.den)

    def __str__(self):
        if self.den == Poly([1]):
            return "(%s)" % self.num.pretty("z")
        return "(%s)/(%s)" % (self.num.pretty("z"), self.den.pretty("z"))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = RatFunc.promote(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.promote(other))

    def __rsub__(self, other):
        return RatFunc.promote(other) - self

    def __mul__(self, other):
        other = RatFunc.promote(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.promote(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.promote(other) / self

    def __pow__(self, e):
        assert isinstance(e, int)
        if e < 0:
            return RatFunc(self.den ** (-e), self.num ** (-e))
        return RatFunc(self.num ** e, self.den ** e)

    def derivative(self):
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        return self.num(x) / self.den(x)
