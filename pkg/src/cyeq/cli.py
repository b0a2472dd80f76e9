"""Command-line interface: ``cy <subcommand> ...``.

Exit codes: 0 success, 1 a verdict failed, 2 usage or parse error.
Operator arguments are .cyop files or ids from the bundled dataset.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .cyop import (parse_cyop, serialize_cyop, load_dataset, dataset_index, CyopSyntaxError,
                   serialize_record)
from .exact import PowerSeries
from .operator import (apply, local_exponents, translate_mum, reflect_infinity, scale_z, INFINITY,
                       ThetaOperator)
from .frobenius import (frobenius_pair, yukawa_instantons, fingerprint, powers_of, NotMUM,
                        NotSelfDual, holomorphic_coeffs, DEFAULT_DEPTH, DEFAULT_POWER_ORDER)
from .criteria import classify, analyze_spectrum, cyclo_name, WrongOrder, SCREEN_N, CONFIRM_M
from .constructions import fit_operator, FitSpec, NotFound, verify_entry, hadamard_series
from .formula import Formula, FormulaSyntaxError, DomainError

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rat(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected a rational number, got %r" % text)


def _range(text):
    key, sep, span = text.partition("=")
    lo, sep2, hi = span.partition(":")
    if not sep or not sep2:
        raise argparse.ArgumentTypeError("expected K=lo:hi, got %r" % text)
    try:
        return key, (int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError("bounds must be integers in %r" % text)


def _load_operator(arg):
    """(operator, label) from a file path or a dataset id."""
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
        if not any(line.strip() == "---" or line.startswith(("formula:", "note ", "base "))
                   for line in text.split("\n")):
            D, meta = parse_cyop(text)
        else:
            # a one-record dataset file
            from .cyop import parse_dataset
            recs = parse_dataset(text)
            if len(recs) != 1:
                raise UsageError("%s holds %d records; give a dataset id instead" % (arg, len(recs)))
            return recs[0].operator, recs[0].id
        return D, meta["id"] or arg
    idx = dataset_index(load_dataset())
    if arg in idx:
        return idx[arg].operator, arg
    raise UsageError("no such file or dataset id: %s" % arg)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(a):
    D, label = _load_operator(a.operator)
    v = classify(D, a.coeffs, max(a.confirm, a.coeffs), a.depth)
    print("operator %s" % label)
    for i, name, chk in v.rows():
        print("  %d  %-22s %-4s %s" % (i, name, "ok" if chk else "FAIL", chk.detail))
    print("verdict: %s" % ("Calabi-Yau" if v.overall else "not Calabi-Yau"))
    return OK if v.overall else FAIL


def cmd_solve(a):
    D, _ = _load_operator(a.operator)
    pair = frobenius_pair(D, a.coeffs)
    for n in range(a.coeffs):
        print("%d %s %s" % (n, pair.A[n], pair.B[n]))
    return OK


def cmd_spectrum(a):
    D, _ = _load_operator(a.operator)
    point = INFINITY if a.z0 in (None, "infinity", "inf") else _rat(a.z0)
    le = local_exponents(D, point)
    print("point %s: exponents %s" % (point, " ".join(str(r) for r in le.multiset())))
    if le.unresolved.degree > 0:
        print("  irrational factor %s" % le.unresolved.pretty("t"))
    if point == INFINITY and D.order == 4:
        sa = analyze_spectrum(D)
        if sa:
            print("  s = %s, %s" % (sa.s, cyclo_name(sa.cyclo)))
        else:
            print("  not admissible: %s" % sa.reason)
            return FAIL
    return OK


def cmd_instanton(a):
    D, _ = _load_operator(a.operator)
    r = yukawa_instantons(D, a.depth)
    for d, nd in enumerate(r.N, start=1):
        print("N%d=%s" % (d, nd))
    print("N0=%d" % r.N0)
    return OK


def cmd_fingerprint(a):
    D, _ = _load_operator(a.operator)
    n0, n1, n3 = fingerprint(yukawa_instantons(D, a.depth))
    print("N0=%d N1=%d N3=%d" % (n0, n1, n3))
    return OK


def cmd_powers(a):
    D, _ = _load_operator(a.operator)
    pe = powers_of(D, a.coeffs)
    print("r=%s s=%s" % (pe.r, pe.s))
    return OK


def _series_from(arg, n):
    """Holomorphic solution of an operator, or a DSL formula 'f:<text>'."""
    if arg.startswith("f:"):
        f = Formula(arg[2:])
        return PowerSeries([f(k) for k in range(n)])
    D, _ = _load_operator(arg)
    return holomorphic_coeffs(D, n)


def _fit_and_print(series, a):
    D = fit_operator(series, FitSpec(a.max_order, a.max_degree, a.guard))
    if any(apply(D, series).coeffs):
        raise NotFound("fitted operator does not annihilate the series")
    _emit(serialize_cyop(D), a.out)
    return OK


def cmd_hadamard(a):
    f = _series_from(a.left, a.coeffs)
    g = _series_from(a.right, a.coeffs)
    return _fit_and_print(hadamard_series(f, g), a)


def cmd_fit(a):
    if a.formula:
        series = PowerSeries([Formula(a.formula)(k) for k in range(a.coeffs)])
    else:
        with open(a.file) as fh:
            vals = [Fraction(t) for t in fh.read().split()]
        series = PowerSeries(vals)
    return _fit_and_print(series, a)


def cmd_translate(a):
    D, _ = _load_operator(a.operator)
    if a.z0 is None:
        raise UsageError("translate needs --z0")
    _emit(serialize_cyop(translate_mum(D, _rat(a.z0), a.exp)), a.out)
    return OK


def cmd_reflect(a):
    D, _ = _load_operator(a.operator)
    _emit(serialize_cyop(reflect_infinity(D, a.exp)), a.out)
    return OK


def cmd_scale(a):
    D, _ = _load_operator(a.operator)
    if a.lam is None:
        raise UsageError("scale needs --lambda")
    _emit(serialize_cyop(scale_z(D, a.lam)), a.out)
    return OK


def cmd_search(a):
    from .search import SweepConfig, sweep_step1, filter_step2, write_sweep
    kw = {"family": a.family, "N": a.coeffs, "M": max(a.confirm, a.coeffs), "mode": a.mode}
    for key, span in a.range or []:
        if key not in ("A", "B", "C", "c"):
            raise UsageError("unknown range key %r (A, B, C, c)" % key)
        kw[key] = span
    if a.d_exp:
        pairs = []
        for item in a.d_exp:
            p, _, e = item.partition("=")
            pairs.append((int(p), int(e)))
        kw["d_exponents"] = tuple(pairs)
    if a.negative_d:
        kw["d_signs"] = (1, -1)
    if a.spectrum:
        sp = []
        for item in a.spectrum:
            x, _, y = item.partition(",")
            sp.append((Fraction(x), Fraction(y)))
        kw["spectra"] = tuple(sp)
    try:
        cfg = SweepConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc))
    cands = sweep_step1(cfg, jobs=a.jobs)
    if not a.step1_only:
        cands = filter_step2(cands, a.depth)
    _emit(write_sweep(cfg, cands), a.out)
    return OK


def cmd_verify(a):
    idx = dataset_index(load_dataset(a.db))
    if a.id not in idx:
        raise UsageError("no dataset record %s" % a.id)
    rec = idx[a.id]
    if not rec.formula:
        raise UsageError("record %s has no formula" % a.id)
    chk = verify_entry(rec.operator, Formula(rec.formula, dict(rec.base_cases)), a.coeffs)
    print("PASS" if chk else "FAIL %s" % chk.detail)
    return OK if chk else FAIL


def cmd_db(a):
    recs = load_dataset(a.db)
    if a.action == "list":
        for r in recs:
            extra = " ".join(r.notes)
            print("%-6s k=%d %s%s" % (r.id, r.operator.k, "formula " if r.formula else "", extra))
        return OK
    if not a.id:
        raise UsageError("db %s needs an id" % a.action)
    idx = dataset_index(recs)
    if a.id not in idx:
        raise UsageError("no dataset record %s" % a.id)
    rec = idx[a.id]
    if a.action == "show":
        print(rec.operator)
        if rec.formula:
            print("A_n = %s" % rec.formula)
        for t in rec.notes:
            print("note %s" % t)
    else:  # export
        _emit(serialize_record(rec), a.out)
    return OK


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="cy", description="Calabi-Yau operator toolkit")
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, operator=True):
        p = sub.add_parser(name, help=help)
        if operator:
            p.add_argument("operator", help=".cyop file or dataset id")
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, "run the five Calabi-Yau conditions")
    p.add_argument("-n", "--coeffs", type=int, default=SCREEN_N)
    p.add_argument("-M", "--confirm", type=int, default=CONFIRM_M)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = add("solve", cmd_solve, "print A_n and B_n of the Frobenius pair")
    p.add_argument("-n", "--coeffs", type=int, default=10)

    p = add("spectrum", cmd_spectrum, "local exponents at a point (default infinity)")
    p.add_argument("--z0", default=None)

    p = add("instanton", cmd_instanton, "instanton numbers N_1..N_depth")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = add("fingerprint", cmd_fingerprint, "print N0, |N0 N1|, |N0 N3|")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = add("powers", cmd_powers, "maximal powers r, s of q/z and y0")
    p.add_argument("-n", "--coeffs", type=int, default=DEFAULT_POWER_ORDER)

    def fit_opts(p, n):
        p.add_argument("-n", "--coeffs", type=int, default=n)
        p.add_argument("--max-order", type=int, default=4)
        p.add_argument("--max-degree", type=int, default=2)
        p.add_argument("--guard", type=int, default=8)
        p.add_argument("--out")

    p = add("hadamard", cmd_hadamard, "operator for the Hadamard product of two solutions", operator=False)
    p.add_argument("left", help=".cyop file, dataset id, or f:<formula>")
    p.add_argument("right", help=".cyop file, dataset id, or f:<formula>")
    fit_opts(p, 60)

    p = add("fit", cmd_fit, "recover an operator from coefficients", operator=False)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--file", help="whitespace-separated coefficients")
    fit_opts(p, 60)

    p = add("translate", cmd_translate, "move a MUM point z0 to 0")
    p.add_argument("--z0")
    p.add_argument("--exp", type=_rat, default=Fraction(0))
    p.add_argument("--out")

    p = add("reflect", cmd_reflect, "reflect at infinity with twist --exp")
    p.add_argument("--exp", type=_rat, default=Fraction(0))
    p.add_argument("--out")

    p = add("scale", cmd_scale, "replace z by lambda z")
    p.add_argument("--lambda", dest="lam", type=_rat)
    p.add_argument("--out")

    p = add("search", cmd_search, "parameter sweep over a family", operator=False)
    p.add_argument("--family", default="fact4", choices=("had2", "had3", "gen4", "fact4"))
    p.add_argument("--mode", default="plain", choices=("plain", "search4q"))
    p.add_argument("--range", type=_range, action="append", help="K=lo:hi for A, B, C, c")
    p.add_argument("--d-exp", action="append", help="prime=max exponent for d, e.g. 2=4")
    p.add_argument("--negative-d", action="store_true", help="also try -d")
    p.add_argument("--spectrum", action="append", help="u/v,w/x pair, e.g. 1/3,2/3")
    p.add_argument("-n", "--coeffs", type=int, default=SCREEN_N)
    p.add_argument("-M", "--confirm", type=int, default=CONFIRM_M)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--step1-only", action="store_true")
    p.add_argument("--out")

    p = add("verify", cmd_verify, "check a dataset formula against its operator", operator=False)
    p.add_argument("id")
    p.add_argument("-n", "--coeffs", type=int, default=100)
    p.add_argument("--db", help="dataset file (default: bundled)")

    p = add("db", cmd_db, "list, show or export dataset records", operator=False)
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("id", nargs="?")
    p.add_argument("--db", help="dataset file (default: bundled)")
    p.add_argument("--out")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return a.fn(a)
    except (UsageError, CyopSyntaxError, FormulaSyntaxError, OSError) as exc:
        print("cy: error: %s" % exc, file=sys.stderr)
        return USAGE
    except (NotMUM, NotSelfDual, WrongOrder, NotFound, DomainError, ValueError, ArithmeticError) as exc:
        print("cy: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
