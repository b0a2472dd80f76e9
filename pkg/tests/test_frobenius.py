from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from cyeq import load_dataset, dataset_index
from cyeq.exact import Poly, PowerSeries, series_reversion, integral_nth_root
from cyeq.operator import ThetaOperator, make_operator, apply, scale_z
from cyeq.frobenius import (holomorphic_coeffs, log_coeffs, frobenius_pair, FrobeniusPair,
                            mirror_map, yukawa_instantons, fingerprint, lambert_inversion,
                            lambert_sum, kq_equivalent, KqWitness, power_exponents, powers_of,
                            maximal_power, InstantonReport, NotMUM, NotSelfDual, INDETERMINATE)

from oracles import eps_oracle

F = Fraction
RECORDS = load_dataset()
DB = dataset_index(RECORDS)
Q1 = DB["1"].operator
TH4 = make_operator([[0, 0, 0, 0, 1]])


def flat_report(depth):
    K = PowerSeries([1] + [0] * depth)
    return InstantonReport(PowerSeries([1] * (depth + 1)), K, lambert_inversion(K), 1)


# ---------------------------------------------------------------------------
# log solution against the epsilon-expansion oracle

@pytest.mark.parametrize("rec", RECORDS, ids=lambda r: r.id)
def test_log_coeffs_match_eps_oracle(rec):
    D = rec.operator
    A, B = eps_oracle(D, 21)
    assert holomorphic_coeffs(D, 21) == A
    assert log_coeffs(D, A) == B


# ---------------------------------------------------------------------------
# holomorphic solution

def test_holomorphic_examples():
    assert list(holomorphic_coeffs(Q1, 4).coeffs) == [1, 120, 113400, 168168000]
    assert list(holomorphic_coeffs(TH4, 5).coeffs) == [1, 0, 0, 0, 0]
    assert list(holomorphic_coeffs(DB["22"].operator, 4).coeffs) == [1, 2, 34, 488]


def test_quintic_closed_form():
    A = holomorphic_coeffs(Q1, 60)
    assert all(A[n] == F(factorial(5 * n), factorial(n) ** 5) for n in range(60))


def test_not_mum_rejected():
    with pytest.raises(NotMUM):
        holomorphic_coeffs(make_operator([[0, 0, 0, -1, 1], [-1]]), 5)


@pytest.mark.parametrize("rec", RECORDS, ids=lambda r: r.id)
def test_holomorphic_solution_is_annihilated(rec):
    A = holomorphic_coeffs(rec.operator, 30)
    assert apply(rec.operator, A) == PowerSeries([0] * 30)


def test_log_coeffs_theta4():
    A = holomorphic_coeffs(TH4, 10)
    assert log_coeffs(TH4, A) == PowerSeries([0] * 10)


# ---------------------------------------------------------------------------
# mirror map

def test_mirror_map_trivial():
    pair = FrobeniusPair(PowerSeries([1, 0, 0, 0]), PowerSeries([0, 0, 0, 0]))
    assert mirror_map(pair) == PowerSeries([1, 0, 0, 0])


@pytest.mark.parametrize("key,r", [("1", 10), ("3", 64)])
def test_mirror_map_root_integral(key, r):
    qz = mirror_map(frobenius_pair(DB[key].operator, 50))
    g = integral_nth_root(qz, r)
    assert g is not None and g ** r == qz


@pytest.mark.parametrize("key", ["1", "3", "15", "25"])
def test_mirror_map_reversion_round_trip(key):
    qz = mirror_map(frobenius_pair(DB[key].operator, 25))
    q = qz.shift_up(1)
    z = series_reversion(q)
    ident = PowerSeries.variable(q.trunc)
    assert q.compose(z) == ident and z.compose(q) == ident


# ---------------------------------------------------------------------------
# Yukawa coupling and instantons

def test_quintic_instantons():
    rep = yukawa_instantons(Q1, 3)
    assert rep.N == (575, 121850, 63441275) and rep.N0 == 1


@pytest.mark.parametrize("key,fp", [
    ("1", (1, 575, 63441275)),
    ("2", (1, 231200, 1700894366474400)),
    ("3", (1, 32, 26016)),
    ("5", (1, 60, 134292)),
    ("9", (1, 678816, 69080128815414048)),
    ("14", (1, 1248, 683015008)),
    ("15", (1, 21, 15894)),
    ("22", (7, 10, 295)),
    ("25", (1, 20, 8220)),
])
def test_fingerprints(key, fp):
    assert fingerprint(yukawa_instantons(DB[key].operator, 20)) == fp


@pytest.mark.parametrize("rec", [r for r in RECORDS if r.operator.order == 4], ids=lambda r: r.id)
def test_coupling_normalized(rec):
    rep = yukawa_instantons(rec.operator, 8)
    assert rep.K[0] == 1
    assert lambert_sum(rep.N) == rep.K


def test_flat_coupling():
    rep = flat_report(10)
    assert rep.N == (0,) * 10
    assert fingerprint(rep) == (1, 0, 0)


def test_not_selfdual_raises():
    bad = ThetaOperator([Q1.terms[0], Q1.terms[1] + Poly([0, 1])])
    with pytest.raises(NotSelfDual):
        yukawa_instantons(bad, 5)


@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=12), min_size=1, max_size=15))
@settings(max_examples=80)
def test_lambert_round_trip(ns):
    assert lambert_inversion(lambert_sum(ns)) == tuple(ns)
    K = PowerSeries([1] + ns)
    assert lambert_sum(lambert_inversion(K)) == K


# ---------------------------------------------------------------------------
# K(q) equivalence

def test_kq_self_and_tags():
    r1 = yukawa_instantons(Q1, 12)
    assert kq_equivalent(r1, r1, 12) == KqWitness(F(1))
    assert kq_equivalent(yukawa_instantons(DB["79"].operator, 12), r1, 12) is not None
    r85 = yukawa_instantons(DB["85"].operator, 12)
    assert kq_equivalent(yukawa_instantons(DB["86"].operator, 12), r85, 12) is not None
    assert kq_equivalent(r1, yukawa_instantons(DB["3"].operator, 12), 12) is None


def test_kq_rescaling_witness():
    r1 = yukawa_instantons(Q1, 12)
    r2 = yukawa_instantons(scale_z(Q1, -2), 12)
    w = kq_equivalent(r1, r2, 12)
    assert w == KqWitness(F(-2))
    assert all(r2.K[m] == r1.K[m] * F(-2) ** m for m in range(13))


def test_kq_thinning_witness():
    r1 = yukawa_instantons(Q1, 12)
    K2 = PowerSeries([r1.K[m // 2] if m % 2 == 0 else 0 for m in range(13)])
    r2 = InstantonReport(r1.qmap, K2, lambert_inversion(K2), 1)
    assert kq_equivalent(r1, r2, 12) == KqWitness(F(1), 2)
    assert kq_equivalent(r2, r1, 12) == KqWitness(F(1), -2)


# ---------------------------------------------------------------------------
# power structure

def test_powers_examples():
    pe = powers_of(Q1, 50)
    assert (pe.r, pe.s) == (10, 4)
    pe = powers_of(DB["22"].operator, 50)
    assert (pe.r, pe.s) == (5, 1)
    pair = frobenius_pair(TH4, 20)
    pe = power_exponents(pair, mirror_map(pair), 20)
    assert pe.r == INDETERMINATE and pe.s == INDETERMINATE


def test_power_order_guard():
    pair = frobenius_pair(Q1, 20)
    with pytest.raises(ValueError):
        power_exponents(pair, mirror_map(pair), 5)


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6), st.integers(2, 6))
@settings(max_examples=60)
def test_maximal_power_is_multiple_of_any_power(cs, s):
    g = PowerSeries([1] + cs + [0] * 8)
    f = g ** s
    m = maximal_power(f)
    if m == INDETERMINATE:
        assert all(c == 0 for c in cs)
        return
    assert m % s == 0
    root = integral_nth_root(f, m)
    assert root ** m == f
