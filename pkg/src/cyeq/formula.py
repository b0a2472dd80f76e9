"""
A small expression language for closed-form coefficient formulas.

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := int | '-' int | 'n' | ident | '(' expr ')'
    atom   := int | 'n' | ident | call | '(' expr ')'
    call   := binom(a, b) | fact(a) | H(a) | poch(r, k) | floor(a)
            | sum(ident = expr .. expr, expr)

Whitespace is insignificant and '#' starts a comment.  Values are exact:
ints while they stay integral, Fractions otherwise.

>>> formula_eval(formula_parse("sum(k=0..n, binom(n,k)^3)"), 3)
Fraction(56, 1)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
import re


class FormulaSyntaxError(SyntaxError):
    def __init__(self, msg, line, col):
        super().__init__("%s at line %d, column %d" % (msg, line, col))
        self.line = line
        self.col = col


class DomainError(ArithmeticError):
    pass


class FormulaZeroDivision(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Sum:
    var: str
    lo: object
    hi: object
    body: object


FUNCTIONS = {"binom": 2, "fact": 1, "H": 1, "poch": 2, "floor": 1}


# ---------------------------------------------------------------------------
# Lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<range>\.\.)
  | (?P<op>[-+*/^(),=])
""", re.VERBOSE)


def _tokenize(text):
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError("unexpected character %r" % text[pos], line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group(kind)
        col = pos - line_start + 1
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            toks.append((kind, value, line, col))
        pos = m.end()
    toks.append(("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.bound = []

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(msg, tok[2], tok[3])

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            self.error("expected %r, found %r" % (value, tok[1] or "end of input"), tok)
        return tok

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "eof":
            self.error("unexpected %r" % self.peek()[1])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.next()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.next()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.next()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        tok = self.peek()
        if tok[0] == "int":
            self.next()
            return Num(int(tok[1]))
        if tok[1] == "-":
            self.next()
            t2 = self.next()
            if t2[0] != "int":
                self.error("expected integer exponent", t2)
            return Num(-int(t2[1]))
        if tok[1] == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok[0] == "ident":
            return self.variable(self.next())
        self.error("bad exponent")

    def variable(self, tok):
        name = tok[1]
        if name != "n" and name not in self.bound:
            self.error("unbound variable %r" % name, tok)
        return Var(name)

    def atom(self):
        tok = self.peek()
        if tok[0] == "int":
            self.next()
            return Num(int(tok[1]))
        if tok[1] == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok[0] == "ident":
            self.next()
            if tok[1] == "sum":
                return self.sum_call(tok)
            if tok[1] in FUNCTIONS:
                return self.call(tok)
            return self.variable(tok)
        self.error("unexpected %r" % (tok[1] or "end of input"))

    def call(self, tok):
        name = tok[1]
        self.expect("(")
        args = [self.expr()]
        while self.peek()[1] == ",":
            self.next()
            args.append(self.expr())
        self.expect(")")
        if len(args) != FUNCTIONS[name]:
            self.error("%s takes %d argument(s)" % (name, FUNCTIONS[name]), tok)
        return Call(name, tuple(args))

    def sum_call(self, tok):
        self.expect("(")
        vt = self.next()
        if vt[0] != "ident" or vt[1] in FUNCTIONS or vt[1] in ("n", "sum"):
            self.error("expected summation variable", vt)
        self.expect("=")
        lo = self.expr()
        if self.peek()[0] != "range":
            self.error("expected '..'")
        self.next()
        if self.peek()[1] in (",", ")"):
            self.error("open summation bound")
        hi = self.expr()
        self.expect(",")
        self.bound.append(vt[1])
        body = self.expr()
        self.bound.pop()
        self.expect(")")
        return Sum(vt[1], lo, hi, body)


def formula_parse(text):
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Exact evaluation

def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _as_int(x, what):
    x = _norm(x)
    if not isinstance(x, int):
        raise DomainError("%s must be an integer, got %s" % (what, x))
    return x


def binom(a, b):
    """Generalized binomial: b integer; a rational; 0 for b < 0."""
    b = _as_int(b, "binomial lower index")
    a = _norm(a)
    if b < 0:
        return 0
    if isinstance(a, int) and a >= 0:
        return comb(a, b) if b <= a else 0
    num = Fraction(1)
    for j in range(b):
        num *= a - j
    return _norm(num / factorial(b))


@lru_cache(maxsize=4096)
def harmonic(a):
    if a < 0:
        raise DomainError("H of negative argument %d" % a)
    s = Fraction(0)
    for j in range(1, a + 1):
        s += Fraction(1, j)
    return s


def poch(r, k):
    k = _as_int(k, "Pochhammer length")
    if k < 0:
        raise DomainError("Pochhammer length must be nonnegative")
    out = Fraction(1)
    for j in range(k):
        out *= r + j
    return _norm(out)


def _div(a, b):
    if b == 0:
        raise FormulaZeroDivision("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(Fraction(a) / b)


def _power(base, e):
    e = _as_int(e, "exponent")
    if e >= 0:
        return base ** e
    if base == 0:
        raise FormulaZeroDivision("zero raised to a negative power")
    return _norm(Fraction(1) / Fraction(base) ** (-e))


def _floor(x):
    x = _norm(x)
    if isinstance(x, int):
        return x
    return x.numerator // x.denominator


def _fact(x):
    x = _as_int(x, "factorial argument")
    if x < 0:
        raise DomainError("factorial of negative %d" % x)
    return factorial(x)


def _compile(node):
    """Turn the AST into a closure env -> value."""
    if isinstance(node, Num):
        v = node.value
        return lambda env: v
    if isinstance(node, Var):
        name = node.name
        return lambda env: env[name]
    if isinstance(node, Neg):
        f = _compile(node.arg)
        return lambda env: -f(env)
    if isinstance(node, BinOp):
        l, r = _compile(node.left), _compile(node.right)
        if node.op == "+":
            return lambda env: l(env) + r(env)
        if node.op == "-":
            return lambda env: l(env) - r(env)
        if node.op == "*":
            return lambda env: l(env) * r(env)
        return lambda env: _div(l(env), r(env))
    if isinstance(node, Pow):
        b = _compile(node.base)
        if isinstance(node.exp, Num):
            e = node.exp.value
            if e >= 0:
                return lambda env: b(env) ** e
            return lambda env: _power(b(env), e)
        ef = _compile(node.exp)
        return lambda env: _power(b(env), ef(env))
    if isinstance(node, Call):
        args = [_compile(a) for a in node.args]
        if node.name == "binom":
            a0, a1 = args
            return lambda env: binom(a0(env), a1(env))
        if node.name == "fact":
            a0 = args[0]
            return lambda env: _fact(a0(env))
        if node.name == "H":
            a0 = args[0]
            return lambda env: harmonic(_as_int(a0(env), "harmonic argument"))
        if node.name == "poch":
            a0, a1 = args
            return lambda env: poch(a0(env), a1(env))
        if node.name == "floor":
            a0 = args[0]
            return lambda env: _floor(a0(env))
    if isinstance(node, Sum):
        lo, hi, body = _compile(node.lo), _compile(node.hi), _compile(node.body)
        var = node.var

        def run(env):
            a = _as_int(lo(env), "summation bound")
            b = _as_int(hi(env), "summation bound")
            total = 0
            inner = dict(env)
            for j in range(a, b + 1):
                inner[var] = j
                total += body(inner)
            return total
        return run
    raise TypeError("unknown node %r" % (node,))


class Formula:
    """Parsed formula with optional base cases A_j = v for small j."""

    def __init__(self, text, base_cases=None):
        self.text = text
        self.ast = formula_parse(text)
        self.base_cases = dict(base_cases or {})
        self._fn = _compile(self.ast)

    def __call__(self, n):
        if n in self.base_cases:
            return Fraction(self.base_cases[n])
        try:
            return Fraction(self._fn({"n": n}))
        except ZeroDivisionError as exc:
            raise FormulaZeroDivision(str(exc)) from exc

    def __repr__(self):
        return "Formula(%r)" % (self.text,)


def formula_eval(ast, n):
    if isinstance(ast, Formula):
        return ast(n)
    try:
        return Fraction(_compile(ast)({"n": n}))
    except ZeroDivisionError as exc:
        raise FormulaZeroDivision(str(exc)) from exc
