"""
Differential operators in theta-form, D = sum_i z^i P_i(theta), theta = z d/dz.

The theta-form is the canonical representation; the classical form
y^(n) + a_{n-1} y^(n-1) + ... + a_0 y = 0 is derived on demand.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Poly, PowerSeries, RatFunc, rat, denominator_lcm, content, poly_gcd

INFINITY = "infinity"


class EmptyOperator(ValueError):
    pass


class ZeroBoundaryTerm(ValueError):
    pass


class DegenerateLeadingCoefficient(ValueError):
    pass


class NonClearableTwist(ValueError):
    pass


class ZeroScale(ValueError):
    pass


class ThetaOperator:
    """Immutable theta-operator; ``terms[i]`` is P_i, the coefficient of z^i."""

    __slots__ = ("terms", "order")

    def __init__(self, terms):
        terms = tuple(Poly.promote(p) if not isinstance(p, (list, tuple)) else Poly(p)
                      for p in terms)
        if not terms:
            raise EmptyOperator("operator needs at least one term")
        if terms[0].is_zero() or terms[-1].is_zero():
            raise ZeroBoundaryTerm("first and last theta-polynomials must be nonzero")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "order", max(p.degree for p in terms))

    def __setattr__(self, name, value):
        raise AttributeError("ThetaOperator is immutable")

    def __reduce__(self):
        return (ThetaOperator, (self.terms,))

    @property
    def k(self):
        return len(self.terms) - 1

    def __eq__(self, other):
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return "ThetaOperator(%s)" % (", ".join(repr(list(p.coeffs)) for p in self.terms),)

    def __str__(self):
        parts = []
        for i, p in enumerate(self.terms):
            if p.is_zero():
                continue
            zp = "" if i == 0 else ("z*" if i == 1 else "z^%d*" % i)
            parts.append("%s(%s)" % (zp, p.pretty("θ")))
        return " + ".join(parts)

    def is_integral(self):
        return all(c.denominator == 1 for p in self.terms for c in p.coeffs)

    def __mul__(self, other):
        """Composition self∘other, using theta z^j = z^j (theta + j)."""
        out = [Poly() for _ in range(self.k + other.k + 1)]
        for i, p in enumerate(self.terms):
            for j, q in enumerate(other.terms):
                out[i + j] = out[i + j] + p.shift(j) * q
        return _from_terms(out)


def _from_terms(terms):
    """Build an operator, stripping zero polynomials at either end."""
    terms = list(terms)
    lo = 0
    while lo < len(terms) and terms[lo].is_zero():
        lo += 1
    terms = terms[lo:]
    while terms and terms[-1].is_zero():
        terms.pop()
    if not terms:
        raise EmptyOperator("operator vanished")
    return ThetaOperator(terms)


def make_operator(terms):
    return ThetaOperator([Poly(t) if isinstance(t, (list, tuple)) else t for t in terms])


THETA = Poly([0, 1])


def apply(D, f):
    """
    D applied to a truncated series: (D f)_n = sum_i P_i(n - i) f_{n-i}.

    Only coefficients n < trunc are reported (theta-form operators never
    lower the z-degree, so truncation is preserved).
    """
    n = f.trunc
    out = []
    for m in range(n):
        s = Fraction(0)
        for i, p in enumerate(D.terms):
            j = m - i
            if j < 0:
                break
            fj = f[j]
            if fj:
                s += p.eval_int(j) * fj
        out.append(s)
    return PowerSeries(out)


@lru_cache(maxsize=None)
def stirling2(n, m):
    if n == m:
        return 1
    if m == 0 or m > n:
        return 0
    return m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


def falling(m):
    """theta(theta-1)...(theta-m+1) as a Poly."""
    p = Poly([1])
    for j in range(m):
        p = p * Poly([-j, 1])
    return p


def classical_polys(D):
    """
    Polynomial coefficients c_m(z) with D = sum_m c_m(z) (d/dz)^m,
    from theta^j = sum_m S(j, m) z^m (d/dz)^m.
    """
    n = D.order
    cs = []
    for m in range(n + 1):
        q = []
        for p in D.terms:
            q.append(sum((p[j] * stirling2(j, m) for j in range(m, p.degree + 1)), Fraction(0)))
        cs.append(Poly([0] * m + q))
    return cs


@dataclass(frozen=True)
class ClassicalForm:
    a: tuple  # a_0 .. a_{n-1}

    @property
    def order(self):
        return len(self.a)


def to_classical(D):
    cs = classical_polys(D)
    lead = cs[-1]
    if lead.is_zero():
        raise DegenerateLeadingCoefficient("leading d/dz coefficient vanishes")
    return ClassicalForm(tuple(RatFunc(c, lead) for c in cs[:-1]))


def from_classical(cs):
    """
    Theta-form of sum_m c_m(z) (d/dz)^m, multiplied on the left by the
    least power of z making it polynomial.  Uses (d/dz)^m = z^-m falling(theta, m).
    """
    shift = 0
    for m, c in enumerate(cs):
        v = c.valuation()
        if v is not None:
            shift = max(shift, m - v)
    width = max(len(c) for c in cs) + shift
    terms = [Poly() for _ in range(width)]
    for m, c in enumerate(cs):
        fm = falling(m)
        for e, coeff in enumerate(c.coeffs):
            if coeff:
                i = e - m + shift
                terms[i] = terms[i] + fm * coeff
    return _from_terms(terms)


def indicial(D, at="zero"):
    if at in ("zero", 0):
        return D.terms[0]
    if at in ("infinity", INFINITY):
        return D.terms[-1].reflect()
    raise ValueError("indicial equation is computed at 'zero' or 'infinity'")


def rational_roots(p):
    """
    Rational roots of p with multiplicity, plus the residual factor with
    no rational roots.  Returns ([(root, mult), ...] sorted, residual Poly).
    """
    from sympy import Poly as SPoly, Rational, symbols

    p = Poly.promote(p)
    if p.degree <= 0:
        return [], p
    x = symbols("x")
    sp = SPoly([Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    _, factors = sp.factor_list()
    roots = []
    residual = Poly([1])
    for fac, mult in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        fp = Poly(cs)
        if fp.degree == 1:
            roots.append((-fp[0] / fp[1], mult))
        else:
            residual = residual * fp ** mult
    roots.sort()
    return roots, residual.integer_primitive() if residual.degree > 0 else Poly([1])


@dataclass(frozen=True)
class LocalExponents:
    point: object
    roots: tuple          # ((Fraction, multiplicity), ...)
    unresolved: Poly      # factor without rational roots (constant 1 if none)

    def multiset(self):
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out

    @property
    def total(self):
        return sum(m for _, m in self.roots) + max(self.unresolved.degree, 0)


def indicial_at(D, z0):
    """Indicial polynomial of D at a finite point z0 (or at infinity)."""
    if z0 == INFINITY:
        return indicial(D, "infinity")
    z0 = rat(z0)
    cs = [c.shift(z0) for c in classical_polys(D)]
    best = None
    for m, c in enumerate(cs):
        v = c.valuation()
        if v is None:
            continue
        if best is None or v - m < best:
            best = v - m
    poly = Poly()
    for m, c in enumerate(cs):
        v = c.valuation()
        if v is not None and v - m == best:
            poly = poly + falling(m) * c[v]
    return poly


def local_exponents(D, z0):
    p = indicial_at(D, z0)
    roots, residual = rational_roots(p)
    return LocalExponents(z0, tuple(roots), residual)


def normalize(D):
    """Integer coefficients, overall content 1, positive leading coefficient of P_0."""
    allc = [c for p in D.terms for c in p.coeffs]
    d = denominator_lcm(allc)
    g = content([c * d for c in allc])
    scale = Fraction(d, g)
    if D.terms[0].lead() < 0:
        scale = -scale
    return ThetaOperator([p * scale for p in D.terms])


def translate_mum(D, z0, a):
    """
    Move the point z0 to w = 0 (z = z0 + w) and conjugate so the new
    operator annihilates w^-a times the translated solutions.
    """
    z0, a = rat(z0), rat(a)
    cs = [c.shift(z0) for c in classical_polys(D)]
    # drop a common left polynomial factor so translations compose
    g = Poly()
    for c in cs:
        g = poly_gcd(g, c) if not g.is_zero() else c.monic()
    if g.degree > 0:
        cs = [c // g for c in cs]
    E = from_classical(cs)
    return normalize(ThetaOperator([p.shift(a) for p in E.terms]))


def reflect_infinity(D, twist=0):
    """
    w = 1/z: sum_i w^i P_{k-i}(-theta_w), then conjugated by w^-twist so
    exponents at w = 0 shift down by twist.
    """
    try:
        lam = rat(twist)
    except (TypeError, ValueError) as exc:
        raise NonClearableTwist("twist must be an exact rational: %r" % (twist,)) from exc
    minus = Poly([-lam, -1])  # theta -> -theta - lam
    return normalize(ThetaOperator([p.compose(minus) for p in reversed(D.terms)]))


def scale_z(D, lam):
    """Replace z by lam*z: the holomorphic solution becomes y(lam z)."""
    lam = rat(lam)
    if lam == 0:
        raise ZeroScale("scale factor must be nonzero")
    return ThetaOperator([p * lam ** i for i, p in enumerate(D.terms)])


def _rational_root_of(r, i):
    """All rational x with x**i == r."""
    out = []
    if r == 0:
        return [Fraction(0)]
    num, den = abs(r.numerator), r.denominator
    a, b = _iroot(num, i), _iroot(den, i)
    if a is None or b is None:
        return out
    x = Fraction(a, b)
    for cand in (x, -x):
        if cand ** i == r and cand not in out:
            out.append(cand)
    return out


def _iroot(n, i):
    lo, hi = 0, 1
    while hi ** i < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** i < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** i == n else None


def scaling_between(D1, D2):
    """
    lam with normalize(scale_z(D1, lam)) == normalize(D2), or None.
    Candidates come from the ratio of the first nonzero term beyond P_0.
    """
    A, B = normalize(D1), normalize(D2)
    if A.k != B.k or A.order != B.order:
        return None
    if A == B:
        return Fraction(1)
    # P_0 fixes the overall constant
    p0a, p0b = A.terms[0], B.terms[0]
    mu = p0b.lead() / p0a.lead()
    if p0a * mu != p0b:
        return None
    for i in range(1, A.k + 1):
        pa, pb = A.terms[i], B.terms[i]
        if pa.is_zero() != pb.is_zero():
            return None
        if pa.is_zero():
            continue
        r = pb.lead() / (pa.lead() * mu)
        for lam in _rational_root_of(r, i):
            if lam != 0 and normalize(scale_z(A, lam)) == B:
                return lam
        return None
    return None
