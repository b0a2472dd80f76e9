"""
Hadamard products, recovery of a theta-operator from a coefficient stream,
and checking closed-form coefficient formulas against an operator.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exact import PowerSeries, Poly
from .operator import ThetaOperator, _from_terms, normalize
from .frobenius import holomorphic_coeffs
from .criteria import Check
from .formula import Formula, formula_eval


class NotFound(LookupError):
    pass


def hadamard_series(f, g):
    return f.hadamard(g)


@dataclass(frozen=True)
class FitSpec:
    max_order: int = 4      # rho_max, degree in theta
    max_degree: int = 2     # delta_max, degree in z
    guard: int = 8

    def __post_init__(self):
        if self.guard < 8:
            raise ValueError("guard must be at least 8")


def nullspace(rows, ncols):
    """Basis of the right nullspace of a rational matrix (list of rows)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def _annihilates(D, A):
    k = D.k
    for n in range(A.trunc):
        s = Fraction(0)
        for i in range(0, min(n, k) + 1):
            s += D.terms[i].eval_int(n - i) * A[n - i]
        if s:
            return False
    return True


def _shapes(spec):
    shapes = [(rho, delta) for rho in range(1, spec.max_order + 1)
              for delta in range(0, spec.max_degree + 1)]
    shapes.sort(key=lambda sh: (sh[0] + sh[1], sh[0]))
    return shapes


def fit_operator(A, spec=FitSpec()):
    """
    Smallest theta-operator sum_{i<=delta} z^i Q_i(theta), deg Q_i <= rho,
    annihilating every available coefficient of A.  Shapes are tried by
    increasing rho + delta, then rho.
    """
    for rho, delta in _shapes(spec):
        unknowns = (rho + 1) * (delta + 1)
        if A.trunc < unknowns + spec.guard:
            continue
        rows = []
        for n in range(unknowns + spec.guard):
            row = []
            for i in range(delta + 1):
                a = A[n - i] if n >= i else Fraction(0)
                x = n - i
                row.extend(a * x ** j for j in range(rho + 1))
            rows.append(row)
        for vec in nullspace(rows, unknowns):
            terms = [Poly(vec[i * (rho + 1):(i + 1) * (rho + 1)]) for i in range(delta + 1)]
            if all(t.is_zero() for t in terms):
                continue
            D = normalize(_from_terms(terms))
            if _annihilates(D, A):
                return D
    raise NotFound("no annihilating operator within rho <= %d, delta <= %d"
                   % (spec.max_order, spec.max_degree))


def verify_entry(D, formula, N=100):
    """
    Compare a coefficient formula (source text, AST or Formula) with the
    operator's holomorphic solution.
    """
    if isinstance(formula, str):
        formula = Formula(formula)
    if not isinstance(formula, Formula):
        f = formula
        formula = lambda n: formula_eval(f, n)  # noqa: E731
    A = holomorphic_coeffs(D, N)
    for n in range(N):
        v = formula(n)
        if v != A[n]:
            return Check(False, "n = %d: formula gives %s, operator gives %s" % (n, v, A[n]), n)
    return Check(True, "formula matches A_0..A_%d" % (N - 1))
