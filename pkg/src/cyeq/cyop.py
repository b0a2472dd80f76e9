"""
Reading and writing operators in the .cyop text format, and the bundled
dataset of curated records.

    cyop 1
    id 1
    order 4
    terms 2
    P0: 0 0 0 0 1
    P1: -120 -1250 -4375 -6250 -3125

A dataset file is a sequence of such blocks separated by ``---`` lines;
each block may end with ``formula: <text>``, ``base <n> <value>`` and
``note <tag>`` lines.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
import re

from .exact import Poly
from .operator import ThetaOperator

VERSION = "1"


class CyopSyntaxError(SyntaxError):
    def __init__(self, msg, line, record=None):
        where = "line %d" % line
        if record is not None:
            where = "record %s, %s" % (record, where)
        super().__init__("%s: %s" % (where, msg))
        self.line = line
        self.record = record


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    operator: ThetaOperator
    formula: str = None
    base_cases: tuple = ()
    notes: tuple = ()

    def tags(self, prefix):
        """Values of notes of the form ``prefix:value``."""
        p = prefix + ":"
        return [n[len(p):] for n in self.notes if n.startswith(p)]

    @property
    def unverified(self):
        return "unverified-as-printed" in self.notes


@dataclass
class _Block:
    start: int
    lines: list = field(default_factory=list)   # (lineno, text)


def _strip(line):
    i = line.find("#")
    if i >= 0:
        line = line[:i]
    return line.strip()


def _number(tok, lineno):
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", tok):
        raise CyopSyntaxError("bad coefficient %r" % tok, lineno)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise CyopSyntaxError("zero denominator in %r" % tok, lineno) from None


def _parse_block(lines, allow_extras):
    """lines: [(lineno, raw)] -> (operator, meta dict)."""
    body = []
    for no, raw in lines:
        # formula text may legitimately contain '#'-free DSL; comments still apply
        text = _strip(raw)
        if text:
            body.append((no, text))
    if not body:
        raise CyopSyntaxError("empty block", lines[0][0] if lines else 1)
    no, head = body[0]
    if head.split() != ["cyop", VERSION]:
        raise CyopSyntaxError("expected 'cyop %s' header" % VERSION, no)
    meta = {"id": None, "order": None, "terms": None}
    polys = {}
    formula, base, notes = None, [], []
    for no, text in body[1:]:
        if text.startswith("formula:"):
            if not allow_extras:
                raise CyopSyntaxError("formula lines only appear in dataset files", no)
            formula = text[len("formula:"):].strip()
            continue
        m = re.fullmatch(r"P(\d+):\s*(.*)", text)
        if m:
            i = int(m.group(1))
            if i in polys:
                raise CyopSyntaxError("duplicate P%d" % i, no)
            polys[i] = (no, [_number(t, no) for t in m.group(2).split()])
            continue
        key, _, val = text.partition(" ")
        val = val.strip()
        if key in ("order", "terms"):
            if meta[key] is not None or not val.isdigit():
                raise CyopSyntaxError("bad %s line" % key, no)
            meta[key] = int(val)
        elif key == "id":
            if not val or meta["id"] is not None:
                raise CyopSyntaxError("bad id line", no)
            meta["id"] = val
        elif key == "base" and allow_extras:
            parts = val.split()
            if len(parts) != 2 or not parts[0].isdigit():
                raise CyopSyntaxError("expected 'base <n> <value>'", no)
            base.append((int(parts[0]), _number(parts[1], no)))
        elif key == "note" and allow_extras:
            if not val:
                raise CyopSyntaxError("empty note", no)
            notes.append(val)
        else:
            raise CyopSyntaxError("unknown line %r" % text, no)
    first = body[0][0]
    if meta["order"] is None or meta["terms"] is None:
        raise CyopSyntaxError("missing order or terms line", first)
    if meta["terms"] < 1:
        raise CyopSyntaxError("terms must be at least 1", first)
    if sorted(polys) != list(range(meta["terms"])):
        raise CyopSyntaxError("expected P0..P%d, found %d polynomial lines"
                              % (meta["terms"] - 1, len(polys)), first)
    for i, (no, cs) in polys.items():
        if len(cs) != meta["order"] + 1:
            raise CyopSyntaxError("P%d has %d coefficients, order %d needs %d"
                                  % (i, len(cs), meta["order"], meta["order"] + 1), no)
    D = ThetaOperator([Poly(polys[i][1]) for i in range(meta["terms"])])
    if D.order != meta["order"]:
        raise CyopSyntaxError("declared order %d but polynomials have degree %d"
                              % (meta["order"], D.order), first)
    meta.update(formula=formula, base_cases=tuple(base), notes=tuple(notes))
    return D, meta


def parse_cyop(text):
    """Parse a single-operator file; returns (operator, metadata dict)."""
    lines = list(enumerate(text.split("\n"), start=1))
    return _parse_block(lines, allow_extras=False)


def _fmt(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def serialize_cyop(D, id=None):
    out = ["cyop %s" % VERSION]
    if id is not None:
        out.append("id %s" % id)
    out.append("order %d" % D.order)
    out.append("terms %d" % (D.k + 1))
    for i, p in enumerate(D.terms):
        cs = list(p.coeffs) + [0] * (D.order + 1 - len(p.coeffs))
        out.append("P%d: %s" % (i, " ".join(_fmt(c) for c in cs)))
    return "\n".join(out) + "\n"


def canonical_cyop(text):
    D, meta = parse_cyop(text)
    return serialize_cyop(D, meta["id"])


def serialize_record(rec):
    s = serialize_cyop(rec.operator, rec.id)
    extra = []
    if rec.formula:
        extra.append("formula: %s" % rec.formula)
    extra += ["base %d %s" % (n, _fmt(v)) for n, v in rec.base_cases]
    extra += ["note %s" % t for t in rec.notes]
    return s + "".join(line + "\n" for line in extra)


def serialize_dataset(records):
    return "---\n".join(serialize_record(r) for r in records)


def parse_dataset(text):
    blocks = [_Block(1)]
    for no, raw in enumerate(text.split("\n"), start=1):
        if raw.strip() == "---":
            blocks.append(_Block(no + 1))
        else:
            blocks[-1].lines.append((no, raw))
    records = []
    errors = []
    for b in blocks:
        if not any(_strip(t) for _, t in b.lines):
            continue
        try:
            D, meta = _parse_block(b.lines, allow_extras=True)
        except (CyopSyntaxError, ValueError) as exc:
            ident = next((_strip(t)[3:].strip() for _, t in b.lines if _strip(t).startswith("id ")), None)
            errors.append("record %s: %s" % (ident or "at line %d" % b.start, exc))
            continue
        if meta["id"] is None:
            errors.append("record at line %d: missing id" % b.start)
            continue
        records.append(DatasetRecord(meta["id"], D, meta["formula"], meta["base_cases"], meta["notes"]))
    if errors:
        raise CyopSyntaxError("; ".join(errors), 0)
    return records


def load_dataset(path=None):
    """Records from a dataset file; the bundled curated set by default."""
    if path is None:
        text = resources.files("cyeq").joinpath("data/aesz.cyop").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_dataset(text)


def dataset_index(records):
    return {r.id: r for r in records}
