"""
Series solutions at a point of maximal unipotent monodromy: the Frobenius
pair (y0, y1), mirror map, normalized Yukawa coupling, instanton numbers,
fingerprints and power structure of q/z and y0.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Optional

from .exact import (PowerSeries, Poly, series_exp, series_reversion, integral_nth_root,
                    denominator_lcm)
from .operator import classical_polys

DEFAULT_DEPTH = 20
DEFAULT_POWER_ORDER = 50
INDETERMINATE = "indeterminate"


class NotMUM(ValueError):
    pass


class VanishingP0AtPositiveInteger(ArithmeticError):
    pass


class NotSelfDual(ValueError):
    pass


def is_mum(D):
    p0 = D.terms[0]
    n = D.order
    return p0.degree == n and all(c == 0 for c in p0.coeffs[:n])


def _require_mum(D):
    if not is_mum(D):
        raise NotMUM("P_0 is not a multiple of theta^%d" % D.order)


def _term_values(D, N):
    """vals[i][j] = P_i(j) for 0 <= j < N."""
    return [[p.eval_int(j) for j in range(N)] for p in D.terms]


def holomorphic_coeffs(D, N):
    """A_0 = 1 and P_0(n) A_n = -sum_{i>=1} P_i(n-i) A_{n-i}."""
    _require_mum(D)
    vals = _term_values(D, N)
    A = [Fraction(1)]
    for n in range(1, N):
        p0 = vals[0][n]
        if p0 == 0:
            raise VanishingP0AtPositiveInteger("P_0(%d) = 0" % n)
        s = Fraction(0)
        for i in range(1, min(n, D.k) + 1):
            s += vals[i][n - i] * A[n - i]
        A.append(-s / p0)
    return PowerSeries(A[:N])


def integral_prefix(D, M):
    """
    Index of the first non-integral A_n with n < M, or None if A_0..A_{M-1}
    are all integers.  Integer arithmetic only; stops at the first failure.
    """
    _require_mum(D)
    d = denominator_lcm(c for p in D.terms for c in p.coeffs)
    polys = [[int(c * d) for c in p.coeffs] for p in D.terms]

    def ev(cs, x):
        acc = 0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    A = [1]
    k = D.k
    for n in range(1, M):
        s = 0
        for i in range(1, min(n, k) + 1):
            s += ev(polys[i], n - i) * A[n - i]
        p0 = ev(polys[0], n)
        q, r = divmod(-s, p0)
        if r:
            return n
        A.append(q)
    return None


def log_coeffs(D, A):
    """
    B_n with y1 = y0 log z + sum B_n z^n:
    P_0(n) B_n = -sum_{i>=1} P_i(n-i) B_{n-i} - sum_{i>=0} P_i'(n-i) A_{n-i}.
    """
    _require_mum(D)
    N = A.trunc
    vals = _term_values(D, N)
    dvals = [[p.derivative().eval_int(j) for j in range(N)] for p in D.terms]
    B = [Fraction(0)]
    for n in range(1, N):
        s = Fraction(0)
        for i in range(0, min(n, D.k) + 1):
            s += dvals[i][n - i] * A[n - i]
            if i:
                s += vals[i][n - i] * B[n - i]
        B.append(-s / vals[0][n])
    return PowerSeries(B[:N])


@dataclass(frozen=True)
class FrobeniusPair:
    A: PowerSeries
    B: PowerSeries


def frobenius_pair(D, N):
    A = holomorphic_coeffs(D, N)
    return FrobeniusPair(A, log_coeffs(D, A))


def mirror_map(pair):
    """q/z = exp(g / y0) with g = sum B_n z^n."""
    return series_exp(pair.B / pair.A)


def w_series(D, N):
    """
    Power series part of W(z) = z^-3 exp(-1/2 int (a_3 - 6/z) dz) for an
    order-4 operator; the z^-3 prefactor is left implicit.
    """
    if D.order != 4:
        raise ValueError("Yukawa coupling is defined for order-4 operators")
    cs = classical_polys(D)
    q4 = Poly(cs[4].coeffs[4:])   # c_4 = z^4 Q_4
    q3 = Poly(cs[3].coeffs[3:])   # c_3 = z^3 Q_3, a_3 = Q_3 / (z Q_4)
    if q4[0] == 0:
        raise NotMUM("leading coefficient vanishes at z = 0")
    top = q3 - q4 * 6
    if top[0] != 0:
        raise NotMUM("a_3 does not have residue 6 at z = 0")
    reg = PowerSeries.from_poly(Poly(top.coeffs[1:]), N) / PowerSeries.from_poly(q4, N)
    return series_exp(reg.integral().truncate(N).scale(Fraction(-1, 2)))


def lambert_inversion(K):
    """N_1..N_{len-1} from K = 1 + sum_m c_m q^m = 1 + sum_d N_d d^3 q^d/(1-q^d)."""
    depth = K.trunc - 1
    N = [Fraction(0)] * (depth + 1)
    for m in range(1, depth + 1):
        s = K[m]
        for d in range(1, m):
            if m % d == 0:
                s -= d ** 3 * N[d]
        N[m] = s / m ** 3
    return tuple(N[1:])


def lambert_sum(N):
    """Inverse of lambert_inversion: the coupling series from N_1..N_D."""
    depth = len(N)
    c = [Fraction(1)] + [Fraction(0)] * depth
    for d, nd in enumerate(N, start=1):
        for m in range(d, depth + 1, d):
            c[m] += d ** 3 * nd
    return PowerSeries(c)


@dataclass(frozen=True)
class InstantonReport:
    qmap: PowerSeries     # q/z as a series in z
    K: PowerSeries        # normalized coupling in q, K(0) = 1
    N: tuple              # N_1 .. N_depth
    N0: int               # lcm of the denominators of N

    @property
    def depth(self):
        return len(self.N)

    def fingerprint(self):
        return fingerprint(self)


def coupling_from_pair(D, pair):
    """K(q) = W(z) (q dz/dq)^3 / y0(z)^2 with z = z(q), normalized K(0) = 1."""
    n = pair.A.trunc
    qz = mirror_map(pair)
    zq = series_reversion(qz.shift_up(1))          # z(q), trunc n + 1
    h = zq.shift_down(1)                           # z/q
    log_deriv = h.theta() / h + 1                  # (q dz/dq) / z
    y0q = pair.A.compose(zq)
    wq = w_series(D, n).compose(zq)
    K = wq * log_deriv ** 3 / (y0q * y0q)
    return qz, K


def yukawa_instantons(D, depth=DEFAULT_DEPTH, check_selfdual=True):
    _require_mum(D)
    if D.order != 4:
        raise ValueError("instanton numbers need an order-4 operator")
    if check_selfdual:
        from .criteria import check_selfdual as _selfdual
        if not _selfdual(D):
            raise NotSelfDual("Condition a_1 = ... fails; W is not defined")
    pair = frobenius_pair(D, depth + 1)
    qz, K = coupling_from_pair(D, pair)
    N = lambert_inversion(K)
    return InstantonReport(qz, K, N, denominator_lcm(N))


def fingerprint(report):
    if report.depth < 3:
        raise ValueError("fingerprint needs depth >= 3")
    n0 = report.N0
    return (n0, abs(int(n0 * report.N[0])), abs(int(n0 * report.N[2])))


class KqWitness(NamedTuple):
    """K2(q) = K1(lam q) read on instanton numbers (r = 1), or K2(q) = K1(q^r)."""
    lam: Fraction
    r: int = 1


def _rational_roots_of(value, d):
    from .operator import _rational_root_of
    return _rational_root_of(value, d)


def kq_equivalent(r1, r2, depth):
    """
    Witness that two couplings agree up to q-rescaling K2(q) = K1(lam q)
    or up to thinning K2(q) = K1(q^r) in either direction (r < 0 means
    K1(q) = K2(q^|r|)); None otherwise.

    Rescaling is tested on the coefficients of K, c2_m = lam^m c1_m.  The
    coefficient-wise relation N2_d = lam^d N1_d on instanton numbers is
    accepted as well; for lam = 1 the two agree.
    """
    if r1.depth < depth or r2.depth < depth:
        raise ValueError("reports are shallower than the requested depth")
    k1, k2 = r1.K.truncate(depth + 1), r2.K.truncate(depth + 1)
    for a, b in ((k1.coeffs[1:], k2.coeffs[1:]), (r1.N[:depth], r2.N[:depth])):
        lam = _rescaling(a, b)
        if lam is not None:
            return KqWitness(lam)
    for r in range(2, depth + 1):
        if _is_thinning(k1, k2, r):
            return KqWitness(Fraction(1), r)
        if _is_thinning(k2, k1, r):
            return KqWitness(Fraction(1), -r)
    return None


def _rescaling(a, b):
    """lam with b[j] == lam^(j+1) a[j] for all j, or None."""
    first = next((j for j in range(len(a)) if a[j] != 0), None)
    if first is None:
        return Fraction(1) if all(x == 0 for x in b) else None
    if b[first] == 0:
        return None
    for lam in _rational_roots_of(b[first] / a[first], first + 1):
        if all(b[j] == a[j] * lam ** (j + 1) for j in range(len(a))):
            return lam
    return None


def _is_thinning(k1, k2, r):
    for m in range(1, k2.trunc):
        expect = k1[m // r] if m % r == 0 else 0
        if k2[m] != expect:
            return False
    return any(k2[m] != 0 for m in range(1, k2.trunc))


@dataclass(frozen=True)
class PowerExponents:
    r: object   # int or INDETERMINATE
    s: object


def _divisors(n):
    from sympy import divisors
    return divisors(abs(n))


def maximal_power(f):
    """
    Largest s such that f is the s-th power of an integral series (to the
    available order).  Candidates are divisors of the first nonzero
    non-constant coefficient, tried in descending order.
    """
    if f.trunc == 0 or f[0] != 1:
        return None
    m = next((i for i in range(1, f.trunc) if f[i] != 0), None)
    if m is None:
        return INDETERMINATE
    lead = f[m]
    if lead.denominator != 1:
        return None
    for s in reversed(_divisors(int(lead))):
        if integral_nth_root(f, s) is not None:
            return s
    return None


def power_exponents(pair, qz, order=DEFAULT_POWER_ORDER):
    if order < 10:
        raise ValueError("power detection needs order >= 10")
    return PowerExponents(maximal_power(qz.truncate(min(order, qz.trunc))),
                          maximal_power(pair.A.truncate(min(order, pair.A.trunc))))


def powers_of(D, order=DEFAULT_POWER_ORDER):
    pair = frobenius_pair(D, order)
    return power_exponents(pair, mirror_map(pair), order)
