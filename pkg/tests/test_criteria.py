import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cyeq import load_dataset, dataset_index
from cyeq.exact import Poly, PowerSeries
from cyeq.operator import ThetaOperator, make_operator, scale_z, normalize
from cyeq.frobenius import yukawa_instantons, lambert_inversion, InstantonReport, NotMUM
from cyeq.criteria import (check_mum, check_selfdual, selfdual_defect, analyze_spectrum,
                           analyze_lambdas, enumerate_spectra, decompose_cyclotomic, cyclo_name,
                           check_integrality, check_instantons, classify, WrongOrder,
                           InsufficientDepth, PHI)

F = Fraction
RECORDS = load_dataset()
DB = dataset_index(RECORDS)
Q1 = DB["1"].operator
ORDER4 = [r for r in RECORDS if r.operator.order == 4]


def sympy_selfdual(D):
    """Independent symbolic check of a_1 = a_2 a_3/2 - a_3^3/8 + a_2' - 3/4 a_3 a_3' - a_3''/2."""
    z = sp.symbols("z")
    y = sp.Function("y")(z)
    expr = 0
    for i, p in enumerate(D.terms):
        g = y
        acc = 0
        for c in p.coeffs:
            acc += sp.Rational(c.numerator, c.denominator) * g
            g = z * sp.diff(g, z)
        expr += z ** i * acc
    expr = sp.expand(expr)
    c = [expr.coeff(sp.Derivative(y, (z, m))) for m in range(1, 5)]
    a1, a2, a3 = (sp.cancel(c[m] / c[3]) for m in range(3))
    rhs = a2 * a3 / 2 - a3 ** 3 / 8 + sp.diff(a2, z) - sp.Rational(3, 4) * a3 * sp.diff(a3, z) \
        - sp.diff(a3, z, 2) / 2
    return sp.cancel(a1 - rhs) == 0


def perturb(D, i, j, delta):
    cs = list(D.terms[i].coeffs) + [F(0)] * (5 - len(D.terms[i].coeffs))
    cs[j] += delta
    terms = list(D.terms)
    terms[i] = Poly(cs)
    return ThetaOperator(terms)


# ---------------------------------------------------------------------------
# Condition 1

def test_check_mum_examples():
    assert check_mum(Q1).ok
    assert not check_mum(make_operator([[0, 0, 0, -1, 1], [-1]])).ok
    d99 = DB["99"].operator
    assert d99.terms[0] == Poly([0, 0, 0, 0, 169])
    assert check_mum(d99).ok


# ---------------------------------------------------------------------------
# Condition 2

def test_selfdual_examples():
    assert check_selfdual(Q1).ok
    assert check_selfdual(make_operator([[0, 0, 0, 0, 1]])).ok
    with pytest.raises(WrongOrder):
        check_selfdual(make_operator([[0, 0, 1], [1]]))


def test_selfdual_ignores_constant_terms():
    # theta^0 only feeds a_0, which the a_1 identity does not involve
    E = perturb(Q1, 1, 0, -1)
    assert E.terms[1][0] == -121
    assert check_selfdual(E).ok
    assert sympy_selfdual(E)


@pytest.mark.parametrize("rec", ORDER4, ids=lambda r: r.id)
def test_selfdual_on_dataset(rec):
    assert check_selfdual(rec.operator).ok


@pytest.mark.parametrize("key", ["1", "3", "15", "25"])
def test_selfdual_matches_sympy_on_dataset(key):
    assert sympy_selfdual(DB[key].operator)


def test_selfdual_random_perturbations_agree_with_sympy():
    rng = random.Random(7)
    small = [DB[k].operator for k in ("1", "2", "3", "5", "15")]
    for _ in range(12):
        D = rng.choice(small)
        i = rng.randrange(D.k + 1)
        j = rng.randrange(5)
        delta = rng.choice([-3, -1, 1, 2, F(1, 2)])
        try:
            E = perturb(D, i, j, delta)
        except ValueError:
            continue
        assert check_selfdual(E).ok == sympy_selfdual(E)


@given(st.sampled_from(ORDER4), st.data())
@settings(max_examples=40, deadline=None)
def test_odd_theta_perturbation_breaks_selfduality(rec, data):
    D = rec.operator
    i = data.draw(st.integers(0, D.k))
    j = data.draw(st.sampled_from([1, 3]))
    delta = data.draw(st.integers(-5, 5).filter(bool))
    assert not check_selfdual(perturb(D, i, j, delta)).ok


@given(st.fractions(min_value=-7, max_value=7, max_denominator=7).filter(bool))
@settings(max_examples=20, deadline=None)
def test_selfdual_invariant_under_scaling(lam):
    for key in ("1", "15"):
        D = DB[key].operator
        assert check_selfdual(scale_z(D, lam)).ok
        assert selfdual_defect(normalize(scale_z(D, lam))).is_zero()


# ---------------------------------------------------------------------------
# Condition 3

CYCLOTOMIC_ROWS = {
    "1": (5,), "2": (10,), "3": (2, 2, 2, 2), "4": (3, 3), "5": (2, 2, 3), "6": (2, 2, 4),
    "7": (8,), "8": (3, 6), "9": (12,), "10": (4, 4), "11": (3, 4), "12": (4, 6),
    "13": (6, 6), "14": (2, 2, 6),
}


def test_enumerate_spectra_s1():
    spectra = enumerate_spectra(1)
    assert len(spectra) == 14
    assert sorted(sp_.cyclo for sp_ in spectra) == sorted(CYCLOTOMIC_ROWS.values())
    lams = {sp_.lambdas for sp_ in spectra}
    assert (F(1, 8), F(3, 8), F(5, 8), F(7, 8)) in lams
    for sp_ in spectra:
        assert sum(PHI[m] for m in sp_.cyclo) == 4
        assert analyze_lambdas(sp_.lambdas).ok


def test_enumerate_spectra_s2_phi1():
    phi1 = [sp_ for sp_ in enumerate_spectra(2) if sp_.cyclo == (1, 1, 1, 1)]
    assert [sp_.lambdas for sp_ in phi1] == [(1, 1, 1, 1)]


@pytest.mark.parametrize("key", sorted(CYCLOTOMIC_ROWS, key=int))
def test_table1_rows(key):
    sa = analyze_spectrum(DB[key].operator)
    assert sa.ok and sa.s == 1 and sa.cyclo == CYCLOTOMIC_ROWS[key]
    assert sa.lambdas in {sp_.lambdas for sp_ in enumerate_spectra(1)}


def test_analyze_spectrum_examples():
    sa = analyze_spectrum(Q1)
    assert sa.lambdas == (F(1, 5), F(2, 5), F(3, 5), F(4, 5)) and sa.cyclo == (5,)
    assert cyclo_name(sa.cyclo) == "phi5"
    assert analyze_spectrum(DB["8"].operator).lambdas == (F(1, 6), F(1, 3), F(2, 3), F(5, 6))
    assert not analyze_lambdas([F(1, 5), F(1, 5), F(4, 5), F(4, 5)]).ok
    assert not analyze_lambdas([0, F(1, 2), F(1, 2), 1]).ok
    assert decompose_cyclotomic([F(1, 3), F(2, 3), F(1, 4), F(3, 4)]) == (3, 4)


# ---------------------------------------------------------------------------
# Condition 4

def test_integrality_examples():
    assert check_integrality(Q1, 300).ok
    # A_n / 5^n has 5-adic valuation -4 v_5(n!): integral until n = 5
    c = check_integrality(scale_z(Q1, F(1, 5)), 50)
    assert not c.ok and c.data == 5
    with pytest.raises(NotMUM):
        check_integrality(make_operator([[0, 0, 0, -1, 1], [-1]]), 10)


def test_integrality_seeded_random_operator():
    D = make_operator([[0, 0, 0, 0, 1], [-1, -2, -3, -2, -1]])
    c = check_integrality(D, 30)
    from cyeq.frobenius import holomorphic_coeffs
    A = holomorphic_coeffs(D, 30)
    first = next(n for n in range(30) if A[n].denominator != 1)
    assert not c.ok and c.data == first


# ---------------------------------------------------------------------------
# Condition 5

def test_check_instantons_quintic():
    c = check_instantons(yukawa_instantons(Q1, 20))
    assert c.ok and c.data == 1


def test_check_instantons_new_denominator():
    N = [F(1)] * 20
    N[15] = F(1, 7)     # N_16
    K = PowerSeries([1])
    rep = InstantonReport(K, K, tuple(N), 7)
    assert not check_instantons(rep).ok
    with pytest.raises(InsufficientDepth):
        check_instantons(InstantonReport(K, K, tuple(N[:10]), 1))


def test_check_instantons_large_denominator():
    N = tuple([F(1, 101)] + [F(0)] * 19)
    K = PowerSeries([1])
    assert not check_instantons(InstantonReport(K, K, N, 101)).ok


# ---------------------------------------------------------------------------
# classify

@pytest.mark.parametrize("rec", ORDER4, ids=lambda r: r.id)
def test_classify_dataset(rec):
    v = classify(rec.operator, N=50, M=200)
    assert v.overall, v.rows()


def test_classify_rejects_structural_failures():
    v = classify(perturb(Q1, 1, 1, 1))
    assert v.c1.ok and not v.c2.ok and not v.overall
    v = classify(make_operator([[0, 0, 1], [1]]))
    assert not v.overall
