"""
Brute-force parameter sweeps over two-term (k = 2) operator families.

Step 1 keeps points whose holomorphic solution is integral after the
(c, d) rescaling; step 2 keeps candidates with well-behaved instanton
denominators and no first-order right factor.

Families (all with a z^2 term carrying d):

    had2   t^2 - c z (A t^2 + A t + B) - d z^2 (t+1)^2
    had3   t^3 - c z (2t+1)(A t^2 + A t + B) - d z^2 (t+1)^3
    gen4   t^4 - c z (A t^4 + 2A t^3 + (A+B) t^2 + B t + C)
               - d z^2 (v t + u)(x t + w)(x t + 2x - w)(v t + 2v - u)
    fact4  t^4 - c z (v t + u)(v t + v - u)(A t^2 + A t + B)
               - d z^2 (v t + u)(x t + w)(x t + 2x - w)(v t + 2v - u)
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import ceil
import logging

from .exact import Poly, RatFunc
from .operator import ThetaOperator, normalize, rational_roots, indicial, _from_terms
from .frobenius import integral_prefix, yukawa_instantons, fingerprint
from .criteria import check_instantons, enumerate_spectra, CONFIRM_M, SCREEN_N
from .constructions import nullspace

log = logging.getLogger(__name__)

FAMILIES = ("had2", "had3", "gen4", "fact4")
PRIMES = (2, 3, 5, 7)

PARAM_NAMES = {
    "had2": ("A", "B", "c", "d"),
    "had3": ("A", "B", "c", "d"),
    "gen4": ("A", "B", "C", "c", "d", "u/v", "w/x"),
    "fact4": ("A", "B", "c", "d", "u/v", "w/x"),
}


class InvalidSpectrumParams(ValueError):
    pass


class Reject:
    """Returned by rescale_cd when no admissible scaling exists."""

    def __init__(self, reason):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return "Reject(%r)" % self.reason


@dataclass(frozen=True)
class FamilyPoint:
    family: str
    params: tuple   # ((name, value), ...) in PARAM_NAMES order

    @classmethod
    def make(cls, family, **kw):
        if family not in FAMILIES:
            raise ValueError("unknown family %r" % family)
        kw = dict(kw)
        if "uv" in kw:
            kw["u/v"] = kw.pop("uv")
        if "wx" in kw:
            kw["w/x"] = kw.pop("wx")
        names = PARAM_NAMES[family]
        missing = [n for n in names if n not in kw]
        if missing:
            raise ValueError("missing parameters %s" % ", ".join(missing))
        extra = set(kw) - set(names)
        if extra:
            raise ValueError("unexpected parameters %s" % ", ".join(sorted(extra)))
        return cls(family, tuple((n, Fraction(kw[n])) for n in names))

    def __getitem__(self, name):
        for n, v in self.params:
            if n == name:
                return v
        raise KeyError(name)

    def with_params(self, **kw):
        d = dict(self.params)
        d.update({k: Fraction(v) for k, v in kw.items()})
        return FamilyPoint(self.family, tuple((n, d[n]) for n in PARAM_NAMES[self.family]))

    def label(self):
        return "%s %s" % (self.family, " ".join("%s=%s" % (n, v) for n, v in self.params))


def _lin(a, b):
    return Poly([Fraction(b), Fraction(a)])   # a t + b


def _spectrum_factors(p):
    uv, wx = p["u/v"], p["w/x"]
    if not (0 < uv <= 2 and 0 < wx <= 2):
        raise InvalidSpectrumParams("u/v and w/x must lie in (0, 2]")
    u, v = uv.numerator, uv.denominator
    w, x = wx.numerator, wx.denominator
    return u, v, w, x


def family_instantiate(point):
    """The family operator at the given parameters (not normalized)."""
    p = point
    c, d = p["c"], p["d"]
    fam = point.family
    if c == 0:
        raise InvalidSpectrumParams("c = 0 gives no z-term")
    if fam in ("had2", "had3"):
        A, B = p["A"], p["B"]
        quad = Poly([B, A, A])
        if fam == "had2":
            p0, p1, p2 = Poly([0, 0, 1]), quad * (-c), Poly([1, 2, 1]) * (-d)
        else:
            p0, p1, p2 = Poly([0, 0, 0, 1]), _lin(2, 1) * quad * (-c), Poly([1, 3, 3, 1]) * (-d)
        terms = [p0, p1] if d == 0 else [p0, p1, p2]
        return ThetaOperator(terms)
    if d == 0:
        raise InvalidSpectrumParams("d = 0 removes the spectrum at infinity")
    u, v, w, x = _spectrum_factors(p)
    top = _lin(v, u) * _lin(x, w) * _lin(x, 2 * x - w) * _lin(v, 2 * v - u)
    A, B = p["A"], p["B"]
    if fam == "gen4":
        C = p["C"]
        mid = Poly([C, B, A + B, 2 * A, A])
    else:
        mid = _lin(v, u) * _lin(v, v - u) * Poly([B, A, A])
    return ThetaOperator([Poly([0, 0, 0, 0, 1]), mid * (-c), top * (-d)])


# ---------------------------------------------------------------------------
# (c, d) rescaling

def _split_primes(n, primes):
    """Exponents of the given primes in n, or None if another prime divides n."""
    exps = {}
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        exps[p] = e
    return exps if n == 1 else None


def scaling_factor(A, primes=PRIMES):
    """
    Least lam = prod p^e over the given primes with lam^n A_n integral for
    every listed n, i.e. e_p = max_n ceil(v_p(den A_n) / n); Reject when a
    denominator has another prime factor.
    """
    need = {p: 0 for p in primes}
    for n in range(1, len(A)):
        exps = _split_primes(Fraction(A[n]).denominator, primes)
        if exps is None:
            return Reject("A_%d has a denominator prime outside %s" % (n, tuple(primes)))
        for p, e in exps.items():
            need[p] = max(need[p], ceil(e / n))
    lam = 1
    for p, e in need.items():
        lam *= p ** e
    return lam


def rescale_cd(point, N=SCREEN_N, primes=PRIMES):
    """
    Put c = 1, keep d/c^2, and find the least lam (a product of the
    allowed primes) making lam^n A_n integral for n <= N.  Returns the
    point with c = lam, d = (d/c^2) lam^2, or Reject.
    """
    c, d = point["c"], point["d"]
    if c == 0:
        return Reject("c = 0")
    base = point.with_params(c=1, d=d / (c * c))
    try:
        D = family_instantiate(base)
    except InvalidSpectrumParams as exc:
        return Reject(str(exc))
    A = [Fraction(1)]
    vals = [[q.eval_int(j) for j in range(N + 1)] for q in D.terms]
    for n in range(1, N + 1):
        s = Fraction(0)
        for i in range(1, min(n, D.k) + 1):
            s += vals[i][n - i] * A[n - i]
        A.append(-s / vals[0][n])
    lam = scaling_factor(A, primes)
    if isinstance(lam, Reject):
        return lam
    out = base.with_params(c=lam, d=base["d"] * lam * lam)
    # soundness: lam^n A_n integral, re-checked
    if any((A[n] * lam ** n).denominator != 1 for n in range(N + 1)):
        return Reject("scaling did not clear denominators")
    return out


# ---------------------------------------------------------------------------
# Step 1 sweep

@dataclass(frozen=True)
class SweepConfig:
    family: str = "fact4"
    A: tuple = (1, 10)
    B: tuple = (1, 5)
    C: tuple = (1, 1)
    c: tuple = (1, 1)
    d_exponents: tuple = ((2, 4), (3, 3))     # (prime, max exponent)
    d_signs: tuple = (1,)
    spectra: tuple = ()                         # ((u/v, w/x), ...); default s = 2 list
    N: int = SCREEN_N
    M: int = CONFIRM_M
    mode: str = "plain"                         # or "search4q" (gen4 only)

    def __post_init__(self):
        if self.N > self.M:
            raise ValueError("screen length N must not exceed confirm length M")
        if self.family not in FAMILIES:
            raise ValueError("unknown family %r" % self.family)
        if self.mode not in ("plain", "search4q"):
            raise ValueError("unknown mode %r" % self.mode)
        if self.mode == "search4q" and self.family != "gen4":
            raise ValueError("search4q mode applies to gen4")

    def header(self):
        lines = ["# sweep family %s mode %s" % (self.family, self.mode)]
        names = PARAM_NAMES[self.family]
        for key in ("A", "B", "C", "c"):
            if key in names:
                lo, hi = getattr(self, key)
                lines.append("# range %s %d:%d" % (key, lo, hi))
        if self.mode != "search4q":
            lines.append("# d = %s%s" % ("+-" if len(self.d_signs) > 1 else ("-" if self.d_signs == (-1,) else ""),
                                        "*".join("%d^(0..%d)" % pe for pe in self.d_exponents)))
        if "u/v" in names:
            lines.append("# spectra %s" % " ".join("%s,%s" % sp for sp in self.spectrum_pairs()))
        lines.append("# screen N %d confirm M %d" % (self.N, self.M))
        return "\n".join(lines) + "\n"

    def spectrum_pairs(self):
        if self.spectra:
            return tuple((Fraction(a), Fraction(b)) for a, b in self.spectra)
        return default_spectrum_pairs()

    def d_values(self):
        vals = {1}
        for p, emax in self.d_exponents:
            vals = {v * p ** e for v in vals for e in range(emax + 1)}
        return sorted(s * v for v in vals for s in self.d_signs)


def default_spectrum_pairs(s=2):
    """(u/v, w/x) choices realising each admissible spectrum with l1 + l4 = s."""
    out = []
    for sp in enumerate_spectra(s):
        l1, l2 = sp.lambdas[0], sp.lambdas[1]
        for pair in ((l1, l2), (l2, l1)):
            if pair not in out:
                out.append(pair)
    return tuple(out)


def _rng(t):
    lo, hi = t
    return range(lo, hi + 1)


def sweep_points(cfg):
    """All parameter points in lexicographic order."""
    names = PARAM_NAMES[cfg.family]
    axes = []
    for n in names:
        if n in ("A", "B", "C", "c"):
            axes.append(list(_rng(getattr(cfg, n))))
        elif n == "d":
            axes.append([None] if cfg.mode == "search4q" else cfg.d_values())
        elif n == "u/v":
            axes.append(list(cfg.spectrum_pairs()))
        elif n == "w/x":
            continue
    out = []
    for combo in product(*axes):
        kw = {}
        it = iter(combo)
        for n in names:
            if n == "w/x":
                continue
            val = next(it)
            if n == "u/v":
                kw["u/v"], kw["w/x"] = val
            else:
                kw[n] = val
        if cfg.mode == "search4q":
            kw["d"] = search4q_d(kw)
        out.append(FamilyPoint.make(cfg.family, **kw))
    return out


def search4q_d(kw):
    """
    d making the leading polynomial 1 - cA z - d v^2 x^2 z^2 a perfect square,
    so that z = 2/(cA) is the only singular point besides 0 and infinity.
    """
    uv, wx = Fraction(kw["u/v"]), Fraction(kw["w/x"])
    v, x = uv.denominator, wx.denominator
    c, A = Fraction(kw["c"]), Fraction(kw["A"])
    return -(c * A) ** 2 / (4 * v * v * x * x)


@dataclass(frozen=True)
class Candidate:
    point: FamilyPoint            # as swept
    rescaled: FamilyPoint         # after rescale_cd
    operator: ThetaOperator       # normalized
    step2: object = None          # (Check, fingerprint) after filter_step2

    @property
    def cd(self):
        return self.rescaled["c"], self.rescaled["d"]


def evaluate_point(point, N, M):
    """Pure per-point step 1: Candidate or None."""
    r = rescale_cd(point, N)
    if not r:
        return None
    try:
        D = normalize(family_instantiate(r))
    except InvalidSpectrumParams:
        return None
    if integral_prefix(D, M + 1) is not None:
        return None
    return Candidate(point, r, D)


def _evaluate_chunk(args):
    points, N, M = args
    return [evaluate_point(p, N, M) for p in points]


def sweep_step1(cfg, jobs=1, chunk=64):
    points = sweep_points(cfg)
    chunks = [points[i:i + chunk] for i in range(0, len(points), chunk)]
    if jobs <= 1 or len(chunks) <= 1:
        results = [_evaluate_chunk((ch, cfg.N, cfg.M)) for ch in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_evaluate_chunk, [(ch, cfg.N, cfg.M) for ch in chunks]))
    seen = set()
    out = []
    for res in results:
        for cand in res:
            if cand is None or cand.operator in seen:
                continue
            seen.add(cand.operator)
            out.append(cand)
    log.info("step 1: %d points, %d candidates", len(points), len(out))
    return out


# ---------------------------------------------------------------------------
# First-order right factors

def _leading_singular_poly(D):
    """sum_i lead(theta^n coeff of P_i) z^i with the power of z at 0 removed."""
    n = D.order
    cs = [p[n] for p in D.terms]
    L = Poly(cs)
    v = L.valuation()
    return Poly(L.coeffs[v:])


def _theta_rat(r):
    return RatFunc(Poly([0, 1])) * r.derivative()


def _annihilates_hyperexp(D, logder):
    """
    Exact test that D y = 0 for y with theta y / y = logder (a RatFunc):
    theta^j y = y R_j with R_0 = 1, R_{j+1} = theta R_j + R_j * logder.
    """
    R = [RatFunc(1)]
    for _ in range(D.order):
        R.append(_theta_rat(R[-1]) + R[-1] * logder)
    total = RatFunc(0)
    for i, p in enumerate(D.terms):
        acc = RatFunc(0)
        for j, c in enumerate(p.coeffs):
            if c:
                acc = acc + R[j] * c
        total = total + acc * RatFunc(Poly([0] * i + [1]))
    return total.is_zero()


def _series_power(L, e, T):
    """
    (L(z)/L(0))^(-e) to T terms from L theta f = -e (theta L) f:
    L_0 n f_n = -sum_{i>=1} L_i (n - i + e i) f_{n-i}.
    """
    f = [Fraction(1)]
    l0 = L[0]
    for n in range(1, T):
        s = Fraction(0)
        for i in range(1, min(n, L.degree) + 1):
            s += L[i] * (n - i + e * i) * f[n - i]
        f.append(-s / (l0 * n))
    return f


_P = (1 << 61) - 1


def _mod(x):
    return x.numerator % _P * pow(x.denominator % _P, -1, _P) % _P


def _rank_mod(rows, ncols):
    m = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, _P)
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] * inv % _P
                m[i] = [(a - f * b) % _P for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _ansatz_factors(D, L):
    """
    Candidate singular parts as lists of (polynomial, exponent rho) with
    y = z^a p(z) prod poly^rho.  One family uses L^(-e) with e free (fixed
    later by the exponents at infinity, marked None); the other assigns a
    local exponent to each rational root of L separately.
    """
    yield [(L, None)]
    roots, _ = rational_roots(L)
    roots = [r for r, _ in roots if r != 0]
    if not roots:
        return
    from .operator import local_exponents
    choices = []
    for r in roots:
        rhos = sorted({rho for rho, _ in local_exponents(D, r).roots})
        choices.append([(Poly([1, -1 / r]), rho) for rho in rhos] or [(Poly([1, -1 / r]), Fraction(0))])
    count = 0
    for combo in product(*choices):
        count += 1
        if count > 256:
            break
        yield list(combo)


def has_first_order_right_factor(D, search_bound=24):
    """
    True if D has a solution z^a p(z) S(z) with deg p <= search_bound and
    S a power of the leading singular polynomial L (or a product of
    powers of its rational linear factors).  Such a solution has a
    rational logarithmic derivative and spans a first-order right factor.
    a runs over rational exponents at 0; the exponents at infinity fix
    deg p.  Candidates are confirmed exactly.
    """
    if D.order < 2:
        raise ValueError("order must be at least 2")
    alphas = [r for r, _ in rational_roots(indicial(D, "zero"))[0]]
    lams = [r for r, _ in rational_roots(indicial(D, "infinity"))[0]]
    L = _leading_singular_poly(D)
    theta_z = Poly([0, 1])
    tried = set()
    for a in alphas:
        Da = ThetaOperator([p.shift(a) for p in D.terms])
        for factors in _ansatz_factors(D, L):
            for lam in lams:
                for m in range(search_bound + 1):
                    # y ~ z^(a + m + sum rho deg) at infinity must be z^(-lam)
                    if factors[0][1] is None:
                        if L.degree == 0:
                            if a + m != -lam:
                                continue
                            fs = []
                        else:
                            fs = [(L, Fraction(-(a + m + lam), L.degree))]
                    else:
                        if a + m + sum(rho * q.degree for q, rho in factors) != -lam:
                            continue
                        fs = [(q, rho) for q, rho in factors if rho != 0]
                    key = (a, m, tuple((q.coeffs, rho) for q, rho in fs))
                    if key in tried:
                        continue
                    tried.add(key)
                    p = _solve_polynomial_part(Da, fs, m)
                    if p is None:
                        continue
                    logder = RatFunc(a) + RatFunc(theta_z * p.derivative(), p)
                    for q, rho in fs:
                        logder = logder + RatFunc(theta_z * q.derivative(), q) * rho
                    if _annihilates_hyperexp(D, logder):
                        return True
    return False


def _solve_polynomial_part(Da, factors, m):
    """Polynomial p of degree <= m with Da(p prod q^rho) = 0 to series precision, or None."""
    T = m + 2 * Da.k + 16
    f = [Fraction(1)] + [Fraction(0)] * (T - 1)
    for q, rho in factors:
        g = _series_power(q, -rho, T)
        f = [sum(f[i] * g[n - i] for i in range(n + 1)) for n in range(T)]
    vals = [[q.eval_int(j) for j in range(T)] for q in Da.terms]

    def entry(r, j):
        # coefficient of z^r in Da(z^j f)
        s = Fraction(0)
        for i in range(min(r, Da.k) + 1):
            t = r - i - j
            if t >= 0:
                s += vals[i][r - i] * f[t]
        return s

    rows = [[entry(r, j) for j in range(m + 1)] for r in range(T)]
    # a solution over Q survives reduction mod a large prime
    if _rank_mod([[_mod(x) for x in row] for row in rows], m + 1) == m + 1:
        return None
    basis = nullspace(rows, m + 1)
    if not basis:
        return None
    p = Poly(basis[0])
    return None if p.is_zero() else p


# ---------------------------------------------------------------------------
# Step 2

def filter_step2(cands, depth=20, search_bound=24):
    out = []
    for cand in cands:
        D = cand.operator
        if D.order == 4:
            report = yukawa_instantons(D, depth, check_selfdual=False)
            chk = check_instantons(report)
            if not chk:
                continue
            fp = fingerprint(report)
        else:
            chk, fp = None, None
        if has_first_order_right_factor(D, search_bound):
            continue
        out.append(replace(cand, step2=(chk, fp)))
    return out


# ---------------------------------------------------------------------------
# Output

def candidate_record(cand):
    from .cyop import serialize_cyop
    c, d = cand.cd
    text = serialize_cyop(cand.operator, cand.rescaled.label())
    text += "note swept:%s\n" % cand.point.label().replace(" ", ",")
    if cand.step2 is not None and cand.step2[1] is not None:
        text += "note fingerprint:%d,%d,%d\n" % cand.step2[1]
    return text


def write_sweep(cfg, cands):
    return cfg.header() + "---\n".join(candidate_record(c) for c in cands)
