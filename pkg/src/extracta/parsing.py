"""Text grammars: polynomials, order specs, input files, decomposition files.

Polynomials::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*      # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?                 # INT >= 1
    atom   := INT | IDENT | "(" expr ")"

Input files are ``;``-terminated statements with ``#`` comments::

    ring x, y;
    ideal I = x^2, x*y;
    poly f = x;
    order M = matrix([[-1,-1,0],[0,0,1],[0,1,0]]);
    order B = block(negdegrevlex: x; degrevlex: y);
    points P = (0,0), (1,1/2);
    principal F = (x, 1), (x - y, 1);
    decomposition D of I = [x], [x^2, y];
    decomposition R of I = [x] radical [x], [x^2, y] radical [x, y];
    decomposition E of I = file("decomp.txt");
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .orders import NAMED_ORDERS, block_order, named_order, validate_matrix
from .poly import QQ, Ideal, Ring

TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>[-+*/^()\[\],;:=])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text, ring=None):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def at(self, text):
        return self.tok.text == text and self.tok.kind in ("sym", "ident")

    def accept(self, text):
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def expect_kind(self, kind):
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind}, found {found!r}")
        self.i += 1
        return tok

    def expect_eof(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # polynomials

    def expr(self):
        result = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok
            self.i += 1
            rhs = self.unary()
            if op.text == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division only by a nonzero constant", op)
                result = result.scale(1 / rhs.constant_coeff())
        return result

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.i += 1
            tok = self.tok
            if tok.kind != "int":
                raise self.error("'^' must be followed by a positive integer literal")
            self.i += 1
            k = int(tok.text)
            if k < 1:
                raise self.error("exponent must be positive", tok)
            return base ** k
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return self.ring.const(int(tok.text))
        if tok.kind == "ident":
            if tok.text not in self.ring.var_names:
                raise self.error(f"undeclared variable {tok.text!r}")
            self.i += 1
            return self.ring.var(tok.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        raise self.error(f"unexpected {tok.text or 'end of input'!r} in polynomial")

    def poly_list(self, closer=";"):
        out = [self.expr()]
        while self.accept(","):
            out.append(self.expr())
        return out

    # numbers, names, orders

    def rational(self):
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        num = int(self.expect_kind("int").text)
        den = 1
        if self.accept("/"):
            tok = self.expect_kind("int")
            den = int(tok.text)
            if den == 0:
                raise self.error("zero denominator", tok)
        return sign * QQ(num, den)

    def integer(self):
        sign = -1 if self.accept("-") else 1
        return sign * int(self.expect_kind("int").text)

    def name_list(self):
        names = [self.expect_kind("ident").text]
        while self.accept(","):
            names.append(self.expect_kind("ident").text)
        return names

    def order(self):
        tok = self.expect_kind("ident")
        name = tok.text
        try:
            if name in NAMED_ORDERS:
                return named_order(self.ring, name)
            if name == "matrix":
                self.expect("(")
                self.expect("[")
                rows = [self.int_row()]
                while self.accept(","):
                    rows.append(self.int_row())
                self.expect("]")
                self.expect(")")
                return validate_matrix(self.ring, rows)
            if name == "block":
                self.expect("(")
                blocks = [self.block_part()]
                while self.accept(";"):
                    blocks.append(self.block_part())
                self.expect(")")
                for _, names in blocks:
                    for v in names:
                        if v not in self.ring.var_names:
                            raise ParseError(f"undeclared variable {v!r} in block order", tok.line, tok.col)
                return block_order(self.ring, blocks)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"malformed order: {exc}", tok.line, tok.col) from None
        raise ParseError(f"unknown order {name!r}", tok.line, tok.col)

    def block_part(self):
        tok = self.expect_kind("ident")
        if tok.text not in NAMED_ORDERS:
            raise self.error(f"unknown block order {tok.text!r}", tok)
        self.expect(":")
        return tok.text, self.name_list()

    def int_row(self):
        self.expect("[")
        row = [self.integer()]
        while self.accept(","):
            row.append(self.integer())
        self.expect("]")
        return row


def parse_polynomial(text, ring):
    p = Parser(text, ring)
    f = p.expr()
    p.expect_eof()
    return f


def parse_order(text, ring):
    p = Parser(text, ring)
    o = p.order()
    p.expect_eof()
    return o


@dataclass
class InputDocument:
    """Everything declared in one input file, by name."""

    ring: Ring = None
    ideals: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    orders: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    decompositions: dict = field(default_factory=dict)  # ideal name -> decomposition
    decomposition_names: dict = field(default_factory=dict)  # decomposition name -> ideal name
    named_decompositions: dict = field(default_factory=dict)
    base_dir: Path = None

    def ideal(self, name):
        try:
            return self.ideals[name]
        except KeyError:
            raise KeyError(f"no ideal named {name!r}") from None

    def order(self, name):
        try:
            return self.orders[name]
        except KeyError:
            raise KeyError(f"no order named {name!r}") from None


def parse_input(text, base_dir=None):
    from . import oracle

    p = Parser(text)
    doc = InputDocument(base_dir=Path(base_dir) if base_dir else Path.cwd())
    taken = set()

    def declare(tok):
        if tok.text in taken:
            raise ParseError(f"name {tok.text!r} declared twice", tok.line, tok.col)
        if doc.ring and tok.text in doc.ring.var_names:
            raise ParseError(f"name {tok.text!r} shadows a ring variable", tok.line, tok.col)
        taken.add(tok.text)
        return tok.text

    while p.tok.kind != "eof":
        kw = p.expect_kind("ident")
        if kw.text != "ring" and doc.ring is None:
            raise ParseError("the first statement must be a ring declaration", kw.line, kw.col)
        if kw.text == "ring":
            if doc.ring is not None:
                raise ParseError("ring declared twice", kw.line, kw.col)
            names = p.name_list()
            try:
                doc.ring = Ring(tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), kw.line, kw.col) from None
            p.ring = doc.ring
        elif kw.text == "ideal":
            name = declare(p.expect_kind("ident"))
            p.expect("=")
            doc.ideals[name] = Ideal(doc.ring, tuple(p.poly_list()))
        elif kw.text == "poly":
            name = declare(p.expect_kind("ident"))
            p.expect("=")
            doc.polys[name] = p.expr()
        elif kw.text == "order":
            name = declare(p.expect_kind("ident"))
            p.expect("=")
            doc.orders[name] = p.order()
        elif kw.text == "points":
            name_tok = p.expect_kind("ident")
            name = declare(name_tok)
            p.expect("=")
            pts = [_point(p, doc.ring)]
            while p.accept(","):
                pts.append(_point(p, doc.ring))
            try:
                pset = oracle.RationalPointSet(doc.ring, tuple(pts))
            except ValueError as exc:
                raise ParseError(str(exc), name_tok.line, name_tok.col) from None
            ideal, dec = oracle.point_ideal(pset)
            doc.points[name] = pset
            doc.ideals[name] = ideal
            doc.decompositions[name] = dec
        elif kw.text == "principal":
            name_tok = p.expect_kind("ident")
            name = declare(name_tok)
            p.expect("=")
            factors = [_factor(p)]
            while p.accept(","):
                factors.append(_factor(p))
            try:
                dec = oracle.principal_decomposition(factors)
            except ValueError as exc:
                raise ParseError(str(exc), name_tok.line, name_tok.col) from None
            doc.ideals[name] = dec.ideal
            doc.decompositions[name] = dec
        elif kw.text == "decomposition":
            dname = declare(p.expect_kind("ident"))
            p.expect("of")
            itok = p.expect_kind("ident")
            if itok.text not in doc.ideals:
                raise ParseError(f"no ideal named {itok.text!r}", itok.line, itok.col)
            ideal = doc.ideals[itok.text]
            p.expect("=")
            if p.at("file"):
                p.i += 1
                p.expect("(")
                stok = p.expect_kind("string")
                p.expect(")")
                path = doc.base_dir / stok.text[1:-1]
                try:
                    ftext = path.read_text(encoding="utf-8")
                except OSError as exc:
                    raise ParseError(f"cannot read {path}: {exc}", stok.line, stok.col) from None
                dec = parse_decomposition(ftext, ideal)
            else:
                parts = [_component_with_radical(p)]
                while p.accept(","):
                    parts.append(_component_with_radical(p))
                comps = [Ideal(doc.ring, tuple(c)) for c, _ in parts]
                rads = [r for _, r in parts]
                if all(r is None for r in rads):
                    rads = None
                elif any(r is None for r in rads):
                    raise ParseError(
                        "radical annotations must cover every component or none", itok.line, itok.col
                    )
                else:
                    rads = [Ideal(doc.ring, tuple(r)) for r in rads]
                dec = _verified(ideal, comps, "user-supplied", rads, itok)
            doc.decompositions[itok.text] = dec
            doc.decomposition_names[dname] = itok.text
            doc.named_decompositions[dname] = dec
        else:
            raise ParseError(f"unknown statement {kw.text!r}", kw.line, kw.col)
        p.expect(";")
    if doc.ring is None:
        raise ParseError("missing ring declaration", 1, 1)
    return doc


def _verified(ideal, comps, provenance, radicals, tok):
    from . import oracle

    try:
        return oracle.user_decomposition(ideal, comps, radicals=radicals, provenance=provenance)
    except ValueError as exc:
        raise ParseError(str(exc), tok.line, tok.col) from None


def _point(p, ring):
    p.expect("(")
    coords = [p.rational()]
    while p.accept(","):
        coords.append(p.rational())
    p.expect(")")
    if len(coords) != ring.nvars:
        raise p.error(f"point has {len(coords)} coordinates, ring has {ring.nvars} variables")
    return tuple(coords)


def _factor(p):
    p.expect("(")
    f = p.expr()
    p.expect(",")
    tok = p.expect_kind("int")
    if int(tok.text) < 1:
        raise p.error("multiplicity must be positive", tok)
    p.expect(")")
    return f, int(tok.text)


def _component(p):
    p.expect("[")
    gens = p.poly_list()
    p.expect("]")
    return gens


def _component_with_radical(p):
    comp = _component(p)
    if p.at("radical"):
        p.i += 1
        return comp, _component(p)
    return comp, None


def parse_decomposition(text, ideal):
    """Decomposition file: a ``provenance:`` line, then blocks each opened by
    ``component:`` with one generator per line; an optional ``radical:``
    block after a component annotates its radical."""
    ring = ideal.ring
    provenance = None
    comps, radicals = [], []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("provenance:"):
            provenance = line.split(":", 1)[1].strip()
            continue
        if line == "component:":
            comps.append([])
            radicals.append(None)
            current = comps[-1]
            continue
        if line == "radical:":
            if not comps:
                raise ParseError("radical: block before any component", lineno, 1)
            radicals[-1] = []
            current = radicals[-1]
            continue
        if current is None:
            raise ParseError("generator outside a component block", lineno, 1)
        try:
            current.append(parse_polynomial(line, ring))
        except ParseError as exc:
            raise ParseError(exc.message, lineno, exc.col) from None
    if provenance is None:
        raise ParseError("missing provenance line", 1, 1)
    comps = [Ideal(ring, tuple(c)) for c in comps]
    rads = None
    if any(r is not None for r in radicals):
        if any(r is None for r in radicals):
            raise ParseError("radical annotations must cover every component or none", 1, 1)
        rads = [Ideal(ring, tuple(r)) for r in radicals]
    from . import oracle

    try:
        return oracle.user_decomposition(ideal, comps, radicals=rads, provenance=provenance)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def format_decomposition(dec, order=None):
    lines = [f"provenance: {dec.provenance}"]
    for i, comp in enumerate(dec.components):
        lines.append("component:")
        lines.extend(g.to_str(order) for g in comp.gens)
        if dec.radicals is not None:
            lines.append("radical:")
            lines.extend(g.to_str(order) for g in dec.radicals[i].gens)
    return "\n".join(lines) + "\n"
