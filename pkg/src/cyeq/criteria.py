"""
The five conditions defining a Calabi-Yau operator, spectrum analysis at
infinity and enumeration of the admissible spectra.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import gcd, lcm

from .operator import to_classical, indicial, rational_roots, DegenerateLeadingCoefficient
from .frobenius import is_mum, integral_prefix, yukawa_instantons, NotMUM, DEFAULT_DEPTH

SCREEN_N = 50
CONFIRM_M = 1000
LCM_BOUND = 100

# m with Euler phi(m) <= 4
PHI = {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 5: 4, 8: 4, 10: 4, 12: 4}


class WrongOrder(ValueError):
    pass


class InsufficientDepth(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    ok: bool
    detail: str = ""
    data: object = None

    def __bool__(self):
        return self.ok


def check_mum(D):
    if is_mum(D):
        return Check(True, "P_0 = %s * theta^%d" % (D.terms[0].lead(), D.order))
    return Check(False, "P_0 = %s is not a multiple of theta^%d" % (D.terms[0].pretty("θ"), D.order))


def selfdual_defect(D):
    """a_1 - (a_2 a_3/2 - a_3^3/8 + a_2' - 3/4 a_3 a_3' - a_3''/2) as a RatFunc."""
    if D.order != 4:
        raise WrongOrder("the a_1 identity is stated for order-4 operators")
    a0, a1, a2, a3 = to_classical(D).a
    d2, d3 = a2.derivative(), a3.derivative()
    rhs = (a2 * a3 * Fraction(1, 2) - a3 ** 3 * Fraction(1, 8) + d2
           - a3 * d3 * Fraction(3, 4) - d3.derivative() * Fraction(1, 2))
    return a1 - rhs


def check_selfdual(D):
    try:
        defect = selfdual_defect(D)
    except DegenerateLeadingCoefficient as exc:
        return Check(False, str(exc))
    if defect.is_zero():
        return Check(True, "a_1 identity holds exactly")
    return Check(False, "a_1 identity fails, defect %s" % (defect,), defect)


# ---------------------------------------------------------------------------
# Spectra and cyclotomic products

def primitive_residues(m):
    if m == 1:
        return [Fraction(0)]
    return [Fraction(k, m) for k in range(1, m) if gcd(k, m) == 1]


def cyclotomic_products(degree=4):
    """All multisets of m (sorted tuples) with sum phi(m) == degree."""
    ms = sorted(PHI)
    out = []
    for size in range(1, degree + 1):
        for combo in combinations_with_replacement(ms, size):
            if sum(PHI[m] for m in combo) == degree:
                out.append(combo)
    return out


def fractional_multiset(cyclo):
    fr = []
    for m in cyclo:
        fr.extend(primitive_residues(m))
    return sorted(fr)


def decompose_cyclotomic(lambdas):
    """
    Multiset of m whose primitive residues are exactly the fractional parts
    of the lambdas, or None.
    """
    fr = sorted(l - (l.numerator // l.denominator) for l in lambdas)
    remaining = list(fr)
    out = []
    while remaining:
        m = remaining[0].denominator
        if m not in PHI:
            return None
        for r in primitive_residues(m):
            if r in remaining:
                remaining.remove(r)
            else:
                return None
        out.append(m)
    return tuple(sorted(out))


def _is_symmetric(lams):
    return lams[0] + lams[3] == lams[1] + lams[2]


@dataclass(frozen=True)
class Spectrum:
    lambdas: tuple
    s: Fraction
    cyclo: tuple

    def __str__(self):
        return "{%s}" % ", ".join(str(l) for l in self.lambdas)


def enumerate_spectra(s):
    """
    Spectra {l1 <= l2 <= l3 <= l4} of positive rationals with
    l1 + l4 = l2 + l3 = s whose exp(2 pi i l) are the roots of a degree-4
    product of cyclotomic polynomials.
    """
    s = Fraction(s)
    found = set()
    out = []
    for cyclo in cyclotomic_products(4):
        fr = fractional_multiset(cyclo)
        choices = []
        for f in fr:
            lifts = []
            j = 0
            while f + j < s:
                if f + j > 0:
                    lifts.append(f + j)
                j += 1
            choices.append(lifts)
        for pick in product(*choices):
            lams = tuple(sorted(pick))
            if lams[0] + lams[3] == s and lams[1] + lams[2] == s and lams not in found:
                found.add(lams)
                out.append(Spectrum(lams, s, cyclo))
    out.sort(key=lambda sp: (sp.cyclo, sp.lambdas))
    return out


@dataclass(frozen=True)
class SpectrumAnalysis:
    lambdas: tuple
    s: object
    cyclo: object
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def analyze_spectrum(D):
    if D.order != 4:
        raise WrongOrder("spectrum analysis is for order-4 operators")
    roots, residual = rational_roots(indicial(D, "infinity"))
    lams = []
    for r, m in roots:
        lams.extend([r] * m)
    lams = tuple(sorted(lams))
    if residual.degree > 0 or len(lams) != 4:
        return SpectrumAnalysis(lams, None, None, False, "non-rational exponents at infinity")
    return analyze_lambdas(lams)


def analyze_lambdas(lams):
    lams = tuple(sorted(Fraction(l) for l in lams))
    if any(l <= 0 for l in lams):
        return SpectrumAnalysis(lams, None, None, False, "exponent at infinity not positive")
    if not _is_symmetric(lams):
        return SpectrumAnalysis(lams, None, None, False, "l1 + l4 != l2 + l3")
    s = lams[0] + lams[3]
    cyclo = decompose_cyclotomic(lams)
    if cyclo is None:
        return SpectrumAnalysis(lams, s, None, False, "not a product of cyclotomic polynomials")
    return SpectrumAnalysis(lams, s, cyclo, True, "")


def cyclo_name(cyclo):
    parts = []
    for m in sorted(set(cyclo)):
        e = cyclo.count(m)
        parts.append("phi%d%s" % (m, "^%d" % e if e > 1 else ""))
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Integrality and instanton checks

def check_integrality(D, N):
    if not is_mum(D):
        raise NotMUM("integrality is checked at a MUM point")
    bad = integral_prefix(D, N)
    if bad is None:
        return Check(True, "A_0..A_%d integral" % (N - 1))
    return Check(False, "A_%d is not integral" % bad, bad)


def check_instantons(report):
    if report.depth < 20:
        raise InsufficientDepth("need instanton numbers N_1..N_20")
    l15 = 1
    for x in report.N[:15]:
        l15 = lcm(l15, x.denominator)
    l20 = 1
    for x in report.N[:20]:
        l20 = lcm(l20, x.denominator)
    if l15 != l20:
        return Check(False, "denominator lcm grows from %d to %d" % (l15, l20), l20)
    if l20 >= LCM_BOUND:
        return Check(False, "denominator lcm %d >= %d" % (l20, LCM_BOUND), l20)
    return Check(True, "denominator lcm %d" % l20, l20)


@dataclass(frozen=True)
class CyVerdict:
    c1: Check
    c2: Check
    c3: Check
    c4: Check
    c5: Check
    report: object = field(default=None, compare=False)

    @property
    def overall(self):
        return all((self.c1.ok, self.c2.ok, self.c3.ok, self.c4.ok, self.c5.ok))

    def __bool__(self):
        return self.overall

    def rows(self):
        names = ("MUM at z=0", "a_1 identity", "spectrum at infinity",
                 "integral y_0", "integral instantons")
        return [(i + 1, n, c) for i, (n, c) in enumerate(zip(names, (self.c1, self.c2, self.c3, self.c4, self.c5)))]


_SKIPPED = Check(False, "not run")


def classify(D, N=SCREEN_N, M=CONFIRM_M, depth=DEFAULT_DEPTH):
    """Conditions 1-5 in order; structural failures (1, 2) skip the rest."""
    c1 = check_mum(D)
    if D.order != 4:
        return CyVerdict(c1, Check(False, "order %d != 4" % D.order), _SKIPPED, _SKIPPED, _SKIPPED)
    c2 = check_selfdual(D)
    if not (c1 and c2):
        return CyVerdict(c1, c2, _SKIPPED, _SKIPPED, _SKIPPED)
    sa = analyze_spectrum(D)
    if sa:
        c3 = Check(True, "%s, s = %s, %s" % ("{%s}" % ", ".join(map(str, sa.lambdas)), sa.s,
                                              cyclo_name(sa.cyclo)), sa)
    else:
        c3 = Check(False, sa.reason, sa)
    c4 = check_integrality(D, N)
    if c4 and M > N:
        c4 = check_integrality(D, M)
    report = yukawa_instantons(D, depth, check_selfdual=False)
    if depth >= 20:
        c5 = check_instantons(report)
    else:
        c5 = Check(report.N0 < LCM_BOUND, "N0 = %d at depth %d" % (report.N0, depth), report.N0)
    return CyVerdict(c1, c2, c3, c4, c5, report)
