"""Presentation file format: parsing and printing.

Line-oriented grammar, `#` starts a comment:

    presentation <name>
    field Q | GF(<p>) | Q(<param>)
    generators A > B > C
    relation <name>: <expr>
    central all | none | <name-list>
    lie <name> { basis e,f,h; bracket [e,f]=h; ... }
    enveloping <liename> [restricted]

Expressions use explicit `*` for multiplication (juxtaposition is not a
product), `^` for powers (negative exponents and `/` only on scalars), and
parentheses.  Inside a `lie` block the statements are `basis`, `bracket`,
`pstructure <p>`, `ppower <name> = <combo>` and `chi <name>=<value>, ...`;
bracket combinations allow `2e` as well as `2*e`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .centrify import Presentation
from .coeffs import CoeffError, FieldDescriptor
from .freealg import Alphabet, NcPoly
from .presets import LieData, build_ruea, build_uea


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"""
    (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<sym>[-+*/^(),>:;={}\[\]])
  | (?P<ws>\s+)
  | (?P<bad>.)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str  # "name" | "int" | "sym" | "end"
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int) -> List[Token]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", line, m.start() + 1)
        out.append(Token(kind, m.group(), line, m.start() + 1))
    out.append(Token("end", "", line, len(text) + 1))
    return out


class _TokenStream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.cur
        if t.kind != "end":
            self.pos += 1
        return t

    def accept(self, text: str) -> bool:
        if self.cur.kind == "sym" and self.cur.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not (self.cur.kind == "sym" and self.cur.text == text):
            raise ParseError(f"expected {text!r}, found {self.cur.text!r}",
                             self.cur.line, self.cur.col)
        return self.next()

    def expect_name(self) -> Token:
        if self.cur.kind != "name":
            raise ParseError(f"expected a name, found {self.cur.text!r}",
                             self.cur.line, self.cur.col)
        return self.next()

    def expect_int(self) -> int:
        if self.cur.kind != "int":
            raise ParseError(f"expected an integer, found {self.cur.text!r}",
                             self.cur.line, self.cur.col)
        return int(self.next().text)

    def expect_end(self):
        if self.cur.kind != "end":
            raise ParseError(f"unexpected trailing {self.cur.text!r}",
                             self.cur.line, self.cur.col)

    def at_end(self) -> bool:
        return self.cur.kind == "end"


# ---------------------------------------------------------------------------
# Expression parsing
# ---------------------------------------------------------------------------

class _ExprParser:
    def __init__(self, ts: _TokenStream, alphabet: Alphabet, fd: FieldDescriptor):
        self.ts = ts
        self.alphabet = alphabet
        self.field = fd

    def _scalar_of(self, p: NcPoly):
        if set(p.terms) - {()}:
            return None
        return p.coeff(())

    def parse(self) -> NcPoly:
        return self._expr()

    def _expr(self) -> NcPoly:
        p = self._term()
        while True:
            if self.ts.accept("+"):
                p = p + self._term()
            elif self.ts.accept("-"):
                p = p - self._term()
            else:
                return p

    def _term(self) -> NcPoly:
        p = self._factor()
        while True:
            if self.ts.accept("*"):
                p = p * self._factor()
            elif self.ts.accept("/"):
                tok = self.ts.cur
                d = self._factor()
                c = self._scalar_of(d)
                if c is None:
                    raise ParseError("division by a non-scalar", tok.line, tok.col)
                inv = self.field.invert(c)
                if inv is None:
                    raise ParseError("division by zero", tok.line, tok.col)
                p = p.scale(inv)
            else:
                return p

    def _factor(self) -> NcPoly:
        if self.ts.accept("-"):
            return -self._factor()
        if self.ts.accept("+"):
            return self._factor()
        return self._power()

    def _power(self) -> NcPoly:
        base = self._atom()
        if not self.ts.accept("^"):
            return base
        neg = self.ts.accept("-")
        tok = self.ts.cur
        n = self.ts.expect_int()
        if neg:
            c = self._scalar_of(base)
            if c is None:
                raise ParseError("negative power of a non-scalar", tok.line, tok.col)
            inv = self.field.invert(c)
            if inv is None:
                raise ParseError("negative power of zero", tok.line, tok.col)
            base = NcPoly.constant(self.alphabet, self.field, inv)
        out = NcPoly.one(self.alphabet, self.field)
        for _ in range(n):
            out = out * base
        return out

    def _atom(self) -> NcPoly:
        tok = self.ts.cur
        if tok.kind == "int":
            self.ts.next()
            return NcPoly.constant(self.alphabet, self.field,
                                   self.field.from_int(int(tok.text)))
        if tok.kind == "name":
            self.ts.next()
            if tok.text in self.alphabet.names:
                return NcPoly.generator(self.alphabet, self.field, tok.text)
            if self.field.param == tok.text:
                return NcPoly.constant(self.alphabet, self.field,
                                       self.field.parameter_value())
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.col)
        if self.ts.accept("("):
            p = self._expr()
            self.ts.expect(")")
            return p
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)


# ---------------------------------------------------------------------------
# Document parsing
# ---------------------------------------------------------------------------

@dataclass
class PresentationDocument:
    source: str
    presentation: Presentation
    lie_data: Dict[str, LieData] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)


def _logical_lines(text: str):
    """Yield (first_line_number, directive_text); lie blocks span lines."""
    raw = text.splitlines()
    i = 0
    while i < len(raw):
        line = raw[i].split("#", 1)[0].rstrip()
        if not line.strip():
            i += 1
            continue
        start = i + 1
        if line.lstrip().startswith("lie") and "{" in line:
            depth = line.count("{") - line.count("}")
            chunk = [line]
            while depth > 0:
                i += 1
                if i >= len(raw):
                    raise ParseError("unterminated lie block", start, 1)
                nxt = raw[i].split("#", 1)[0].rstrip()
                depth += nxt.count("{") - nxt.count("}")
                chunk.append(nxt)
            yield start, " ".join(chunk)
        else:
            yield start, line
        i += 1


def _parse_field(ts: _TokenStream) -> FieldDescriptor:
    name = ts.expect_name().text
    if name == "Q":
        if ts.accept("("):
            param = ts.expect_name().text
            ts.expect(")")
            return FieldDescriptor.rational_functions(param)
        return FieldDescriptor.rationals()
    if name == "GF":
        ts.expect("(")
        p = ts.expect_int()
        ts.expect(")")
        try:
            return FieldDescriptor.prime_field(p)
        except CoeffError as e:
            raise ParseError(str(e), ts.cur.line, ts.cur.col)
    raise ParseError(f"unknown field {name!r}", ts.cur.line, ts.cur.col)


def _parse_scalar_fraction(ts: _TokenStream) -> Fraction:
    neg = ts.accept("-")
    num = ts.expect_int()
    den = 1
    if ts.accept("/"):
        den = ts.expect_int()
    fr = Fraction(num, den)
    return -fr if neg else fr


def _parse_combo(ts: _TokenStream, names: Tuple[str, ...], line: int) -> Dict[int, Fraction]:
    """Linear combination of basis names; `2e`, `2*e`, `-e`, `1/2*e`, `0`."""
    out: Dict[int, Fraction] = {}
    sign = Fraction(1)
    first = True
    while True:
        if ts.accept("-"):
            sign = -sign
        elif ts.accept("+"):
            pass
        elif not first:
            break
        first = False
        coeff = Fraction(1)
        if ts.cur.kind == "int":
            coeff = Fraction(ts.expect_int())
            if ts.accept("/"):
                coeff /= ts.expect_int()
            ts.accept("*")
        if ts.cur.kind == "name":
            name = ts.expect_name().text
            if name not in names:
                raise ParseError(f"unknown basis element {name!r}", line, ts.cur.col)
            idx = names.index(name)
            out[idx] = out.get(idx, Fraction(0)) + sign * coeff
        elif coeff != 0:
            raise ParseError("a combination term needs a basis name (or 0)",
                             line, ts.cur.col)
        sign = Fraction(1)
        if ts.at_end() or (ts.cur.kind == "sym" and ts.cur.text not in "+-"):
            break
    return {k: v for k, v in out.items() if v}


def _parse_lie_block(ts: _TokenStream, fd: Optional[FieldDescriptor],
                     line: int) -> Tuple[str, LieData]:
    lie_name = ts.expect_name().text
    ts.expect("{")
    basis: Tuple[str, ...] = ()
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    p: Optional[int] = None
    ppowers: Dict[int, Dict[int, Fraction]] = {}
    chi: Dict[int, Fraction] = {}
    while not ts.accept("}"):
        kw = ts.expect_name().text
        if kw == "basis":
            parts = [ts.expect_name().text]
            while ts.accept(","):
                parts.append(ts.expect_name().text)
            basis = tuple(parts)
        elif kw == "bracket":
            ts.expect("[")
            a = ts.expect_name().text
            ts.expect(",")
            b = ts.expect_name().text
            ts.expect("]")
            ts.expect("=")
            combo = _parse_combo(ts, basis, line)
            if a not in basis or b not in basis:
                raise ParseError("bracket of unknown basis elements", line, ts.cur.col)
            i, j = basis.index(a), basis.index(b)
            if i == j:
                raise ParseError("bracket of an element with itself", line, ts.cur.col)
            if i > j:
                i, j = j, i
                combo = {k: -v for k, v in combo.items()}
            if (i, j) in brackets:
                raise ParseError(f"duplicate bracket [{a},{b}]", line, ts.cur.col)
            brackets[(i, j)] = combo
        elif kw == "pstructure":
            p = ts.expect_int()
        elif kw == "ppower":
            name = ts.expect_name().text
            ts.expect("=")
            ppowers[basis.index(name)] = _parse_combo(ts, basis, line)
        elif kw == "chi":
            while True:
                name = ts.expect_name().text
                ts.expect("=")
                chi[basis.index(name)] = _parse_scalar_fraction(ts)
                if not ts.accept(","):
                    break
        else:
            raise ParseError(f"unknown lie statement {kw!r}", line, ts.cur.col)
        ts.accept(";")
    if not basis:
        raise ParseError("lie block without a basis", line, 1)
    if fd is None:
        raise ParseError("field must be declared before a lie block", line, 1)

    def vec(combo: Dict[int, Fraction]):
        return {k: fd.from_fraction(v) for k, v in combo.items()
                if fd.from_fraction(v)}

    data = LieData(
        fd, basis,
        {ij: vec(c) for ij, c in brackets.items() if vec(c)},
        p=p,
        p_images=tuple(vec(ppowers.get(i, {})) for i in range(len(basis)))
        if p is not None else None,
        chi=tuple(fd.from_fraction(chi.get(i, Fraction(0))) for i in range(len(basis)))
        if p is not None else None,
    )
    return lie_name, data


def parse_presentation(text: str) -> PresentationDocument:
    name: Optional[str] = None
    fd: Optional[FieldDescriptor] = None
    alphabet: Optional[Alphabet] = None
    relations: List[Tuple[str, NcPoly]] = []
    central: Optional[Tuple[str, ...]] = None
    lie_data: Dict[str, LieData] = {}
    from_enveloping = False
    diagnostics: List[str] = []

    for line_no, text_line in _logical_lines(text):
        ts = _TokenStream(_tokenize(text_line, line_no))
        kw = ts.expect_name().text
        if kw == "presentation":
            name = ts.expect_name().text
            ts.expect_end()
        elif kw == "field":
            fd = _parse_field(ts)
            ts.expect_end()
        elif kw == "generators":
            gens = [ts.expect_name().text]
            while ts.accept(">"):
                gens.append(ts.expect_name().text)
            ts.expect_end()
            if fd is not None and fd.param in gens:
                raise ParseError(f"generator {fd.param!r} clashes with the "
                                 "field parameter", line_no, 1)
            alphabet = Alphabet(tuple(gens))
        elif kw == "relation":
            if alphabet is None or fd is None:
                raise ParseError("relation before field/generators", line_no, 1)
            rel_name = ts.expect_name().text
            ts.expect(":")
            poly = _ExprParser(ts, alphabet, fd).parse()
            ts.expect_end()
            if any(rel_name == n for n, _ in relations):
                raise ParseError(f"duplicate relation {rel_name!r}", line_no, 1)
            relations.append((rel_name, poly))
        elif kw == "central":
            if ts.cur.kind == "name" and ts.cur.text == "all":
                ts.next()
                ts.expect_end()
                central = tuple(n for n, _ in relations)
            elif ts.cur.kind == "name" and ts.cur.text == "none":
                ts.next()
                ts.expect_end()
                central = ()
            else:
                names = [ts.expect_name().text]
                while ts.accept(",") or ts.cur.kind == "name":
                    names.append(ts.expect_name().text)
                ts.expect_end()
                for n in names:
                    if not any(n == rn for rn, _ in relations):
                        raise ParseError(f"central names undefined relation {n!r}",
                                         line_no, 1)
                central = tuple(names)
        elif kw == "lie":
            lie_name, data = _parse_lie_block(ts, fd, line_no)
            ts.expect_end()
            lie_data[lie_name] = data
        elif kw == "enveloping":
            lie_name = ts.expect_name().text
            restricted = False
            if ts.cur.kind == "name" and ts.cur.text == "restricted":
                ts.next()
                restricted = True
            ts.expect_end()
            if lie_name not in lie_data:
                raise ParseError(f"unknown lie data {lie_name!r}", line_no, 1)
            if relations or alphabet is not None:
                raise ParseError("enveloping cannot be mixed with explicit "
                                 "generators/relations", line_no, 1)
            built = build_ruea(lie_data[lie_name]) if restricted \
                else build_uea(lie_data[lie_name])
            alphabet = built.alphabet
            relations = list(built.relations)
            if central is None:
                central = built.central
            from_enveloping = True
        else:
            raise ParseError(f"unknown directive {kw!r}", line_no, 1)

    if name is None:
        raise ParseError("missing `presentation <name>` directive")
    if fd is None:
        raise ParseError("missing `field` directive")
    if alphabet is None:
        raise ParseError("missing `generators` (or `enveloping`) directive")
    if not relations:
        raise ParseError("no relations")
    pres = Presentation(name, fd, alphabet, tuple(relations),
                        central if central is not None else ())
    return PresentationDocument(text, pres, lie_data, diagnostics)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def print_presentation(p: Presentation) -> str:
    lines = [f"presentation {p.name}", f"field {p.field}"]
    lines.append("generators " + " > ".join(p.alphabet.names))
    for n, r in p.relations:
        lines.append(f"relation {n}: {r.render()}")
    if p.central == p.relation_names() and p.central:
        lines.append("central all")
    elif p.central:
        lines.append("central " + ", ".join(p.central))
    else:
        lines.append("central none")
    return "\n".join(lines) + "\n"
