from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from cyeq.exact import (Poly, PowerSeries, RatFunc, poly_gcd, series_arith, series_exp, series_log,
                        series_exp_log, series_reversion, series_nth_root, integral_nth_root,
                        DivisionByZeroSeries, BadConstantTerm, NotInvertible, rat)

small = st.fractions(min_value=-20, max_value=20, max_denominator=7)
coeffs = st.lists(small, min_size=0, max_size=6)
series_coeffs = st.lists(small, min_size=8, max_size=8)


def S(*cs):
    return PowerSeries(cs)


# ---------------------------------------------------------------------------
# Poly

def test_poly_strips_and_degree():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
    assert Poly().degree == -1
    assert Poly([0, 0, 3]).degree == 2


def test_poly_rejects_float():
    with pytest.raises(TypeError):
        Poly([0.5])
    with pytest.raises(TypeError):
        rat(1.0)


def test_poly_shift_reflect_compose():
    p = Poly([1, 2, 3])                     # 1 + 2x + 3x^2
    assert p.shift(1) == Poly([6, 8, 3])    # p(x+1)
    assert p.reflect() == Poly([1, -2, 3])
    assert p.compose(Poly([0, 2])) == Poly([1, 4, 12])


def test_poly_divmod_and_gcd():
    a = Poly.from_roots([1, 2, 3])
    b = Poly.from_roots([2, 5])
    assert poly_gcd(a, b) == Poly([-2, 1])
    q, r = a.divmod(b)
    assert q * b + r == a and r.degree < b.degree


@given(coeffs, coeffs, coeffs)
def test_poly_ring_axioms(a, b, c):
    p, q, r = Poly(a), Poly(b), Poly(c)
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Poly()


@given(coeffs, small)
def test_poly_eval_matches_horner_oracle(a, x):
    p = Poly(a)
    assert p(x) == sum((c * x ** i for i, c in enumerate(a)), Fraction(0))


# ---------------------------------------------------------------------------
# PowerSeries arithmetic

def test_series_arith_examples():
    assert series_arith("mul", S(1, 1), S(1, -1)) == S(1, 0)
    assert series_arith("mul", S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)
    geo = series_arith("div", S(1, 0, 0, 0, 0), S(1, -1, 0, 0, 0))
    assert geo == S(1, 1, 1, 1, 1)
    y0 = S(1, 120, 113400)
    assert series_arith("mul", y0, S(1, 0, 0)) == y0


def test_series_division_by_nonunit():
    with pytest.raises(DivisionByZeroSeries):
        S(1, 2) / S(0, 1)


def test_truncation_is_minimum():
    assert (S(1, 2, 3) * S(1, 1)).trunc == 2
    assert (S(1, 2, 3) + S(1, 1, 1, 1)).trunc == 3


@given(series_coeffs, series_coeffs, series_coeffs)
@settings(max_examples=60)
def test_series_ring_axioms(a, b, c):
    f, g, h = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(series_coeffs, series_coeffs)
@settings(max_examples=60)
def test_mul_then_div_by_unit(a, b):
    f = PowerSeries(a)
    u = PowerSeries([1] + b[1:])
    assert (f * u) / u == f


# ---------------------------------------------------------------------------
# exp / log

def test_exp_log_definitions():
    n = 10
    z = PowerSeries.variable(n)
    assert series_exp(z) == PowerSeries([Fraction(1, factorial(k)) for k in range(n)])
    expect = [0] + [Fraction((-1) ** (k + 1), k) for k in range(1, n)]
    assert series_log(PowerSeries.one(n) + z) == PowerSeries(expect)
    assert series_exp_log("exp", z) == series_exp(z)


def test_log_exp_round_trip_example():
    f = PowerSeries([0, 3, 5] + [0] * 7)
    assert series_log(series_exp(f)) == f


def test_exp_log_constant_term_errors():
    with pytest.raises(BadConstantTerm):
        series_exp(S(1, 1))
    with pytest.raises(BadConstantTerm):
        series_log(S(2, 1))


@given(st.lists(small, min_size=9, max_size=9))
@settings(max_examples=40)
def test_exp_log_round_trip(a):
    f = PowerSeries([0] + a)
    assert series_log(series_exp(f)) == f
    g = PowerSeries([1] + a)
    assert series_exp(series_log(g)) == g


def test_exp_is_homomorphism():
    f = PowerSeries([0, 1, 2, 3, 0, 0, 0])
    g = PowerSeries([0, Fraction(1, 2), 0, -1, 4, 0, 0])
    assert series_exp(f + g) == series_exp(f) * series_exp(g)


# ---------------------------------------------------------------------------
# reversion

def test_reversion_examples():
    z = PowerSeries.variable(8)
    assert series_reversion(z) == z
    g = series_reversion(PowerSeries([0, 1, 1, 0, 0, 0]))
    assert g == PowerSeries([0, 1, -1, 2, -5, 14])
    f = PowerSeries([0, 1, 0, 7] + [0] * 8)
    assert series_reversion(series_reversion(f)) == f


def test_reversion_errors():
    with pytest.raises(NotInvertible):
        series_reversion(S(0, 0, 1))
    with pytest.raises(NotInvertible):
        series_reversion(S(1, 1, 1))


@given(st.lists(small, min_size=7, max_size=7), st.fractions(min_value=1, max_value=5, max_denominator=3))
@settings(max_examples=40)
def test_reversion_composes_to_identity(a, lead):
    f = PowerSeries([0, lead] + a)
    g = series_reversion(f)
    n = f.trunc
    assert f.compose(g) == PowerSeries.variable(n)
    assert g.compose(f) == PowerSeries.variable(n)


# ---------------------------------------------------------------------------
# nth roots

def test_nth_root_examples():
    assert series_nth_root(S(1, 2, 1, 0, 0), 2) == S(1, 1, 0, 0, 0)
    # binomial series oracle for (1+2z)^(1/2)
    n = 8
    r = series_nth_root(PowerSeries([1, 2] + [0] * (n - 2)), 2)
    half = Fraction(1, 2)
    expect = []
    for k in range(n):
        b = Fraction(1)
        for j in range(k):
            b *= (half - j)
        expect.append(b / factorial(k) * 2 ** k)
    assert r == PowerSeries(expect)
    assert list(r.coeffs[:3]) == [1, 1, Fraction(-1, 2)]


def test_nth_root_round_trip_example():
    f = PowerSeries([1, 3, 0, 0, 0, 1] + [0] * 14)
    assert series_nth_root(f, 3) ** 3 == f


def test_nth_root_errors():
    with pytest.raises(BadConstantTerm):
        series_nth_root(S(2, 1), 2)
    with pytest.raises(ValueError):
        series_nth_root(S(1, 1), 0)


def test_integral_nth_root_stops_on_fraction():
    assert integral_nth_root(S(1, 2, 1, 0), 2) == S(1, 1, 0, 0)
    assert integral_nth_root(S(1, 2, 0, 0), 2) is None


@given(st.lists(st.integers(-9, 9), min_size=9, max_size=9), st.integers(1, 6))
@settings(max_examples=40)
def test_nth_root_power_round_trip(a, s):
    f = PowerSeries([1] + a)
    assert series_nth_root(f, s) ** s == f


# ---------------------------------------------------------------------------
# calculus, composition, Hadamard

def test_theta_integral_derivative():
    f = S(5, 1, 2, 3)
    assert f.theta() == S(0, 1, 4, 9)
    assert f.integral().derivative() == f
    assert f.derivative().trunc == 3 and f.integral().trunc == 5


def test_hadamard_of_binomials():
    n = 12
    a = PowerSeries([comb(2 * k, k) for k in range(n)])
    assert a.hadamard(a) == PowerSeries([comb(2 * k, k) ** 2 for k in range(n)])


def test_series_immutable():
    f = S(1, 2)
    with pytest.raises(AttributeError):
        f.coeffs = (3,)


# ---------------------------------------------------------------------------
# RatFunc

def test_ratfunc_reduces():
    r = RatFunc(Poly.from_roots([1, 2]), Poly.from_roots([1, 3]))
    assert r.num == Poly([-2, 1]) and r.den == Poly([-3, 1])


@given(coeffs, st.lists(small, min_size=1, max_size=4).filter(lambda c: any(c)))
def test_ratfunc_field(a, b):
    x = RatFunc(Poly(a), Poly(b))
    y = RatFunc(Poly([1, 1]), Poly([2, 0, 1]))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert (x * y).derivative() == x.derivative() * y + x * y.derivative()
