"""Words of the free monoid, the deg-lex order, and noncommutative polynomials.

Generators get their precedence from their position in the alphabet: earlier
means larger.  Words are tuples of alphabet indices; the empty tuple is the
monoid identity.  Coefficients are either field scalars or CentralPoly values,
fixed per polynomial by its ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Tuple, Union

from .coeffs import (CentralPoly, CentralRing, FieldDescriptor, FieldMismatchError,
                     Scalar, _scalar_is_simple)


class FreeAlgebraError(Exception):
    pass


Word = Tuple[int, ...]
EMPTY_WORD: Word = ()

Ring = Union[FieldDescriptor, CentralRing]


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names; earlier position = higher precedence."""

    names: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise FreeAlgebraError("duplicate generator names")
        for n in self.names:
            if not n.isidentifier():
                raise FreeAlgebraError(f"bad generator name {n!r}")

    @staticmethod
    def of(*names: str) -> "Alphabet":
        return Alphabet(tuple(names))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __len__(self):
        return len(self.names)

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def render_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def deglex_key(w: Word):
    """Sort key under which greater key means deg-lex greater word."""
    return (len(w), tuple(-i for i in w))


def deglex_cmp(u: Word, v: Word) -> int:
    """-1, 0, or 1 as u is less than, equal to, or greater than v."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


class NcPoly:
    """Sparse noncommutative polynomial: finite map Word -> coefficient."""

    __slots__ = ("alphabet", "ring", "terms")

    def __init__(self, alphabet: Alphabet, ring: Ring, terms: Mapping[Word, object]):
        self.alphabet = alphabet
        self.ring = ring
        self.terms = {w: c for w, c in terms.items() if c}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(alphabet: Alphabet, ring: Ring) -> "NcPoly":
        return NcPoly(alphabet, ring, {})

    @staticmethod
    def one(alphabet: Alphabet, ring: Ring) -> "NcPoly":
        return NcPoly(alphabet, ring, {EMPTY_WORD: ring.one()})

    @staticmethod
    def constant(alphabet: Alphabet, ring: Ring, c) -> "NcPoly":
        return NcPoly(alphabet, ring, {EMPTY_WORD: c})

    @staticmethod
    def generator(alphabet: Alphabet, ring: Ring, name: str) -> "NcPoly":
        return NcPoly(alphabet, ring, {(alphabet.index(name),): ring.one()})

    @staticmethod
    def from_word(alphabet: Alphabet, ring: Ring, w: Word) -> "NcPoly":
        return NcPoly(alphabet, ring, {w: ring.one()})

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "NcPoly"):
        if self.alphabet != other.alphabet:
            raise FreeAlgebraError("alphabet mismatch")
        if self.ring != other.ring:
            raise FieldMismatchError("coefficient ring mismatch")

    def __add__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NcPoly(self.alphabet, self.ring, out)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.alphabet, self.ring, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NcPoly(self.alphabet, self.ring, out)

    def scale(self, c) -> "NcPoly":
        return NcPoly(self.alphabet, self.ring, {w: c * x for w, x in self.terms.items()})

    def shift(self, left: Word, right: Word) -> "NcPoly":
        """left * self * right for plain words."""
        return NcPoly(self.alphabet, self.ring,
                      {left + w + right: c for w, c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, NcPoly) and self.alphabet == other.alphabet
                and self.ring == other.ring and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ----------------------------------------------------------

    def coeff(self, w: Word):
        return self.terms.get(w, self.ring.zero())

    def words_desc(self):
        return sorted(self.terms, key=deglex_key, reverse=True)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def leading(self):
        """Deg-lex greatest word with its coefficient."""
        if not self.terms:
            raise FreeAlgebraError("zero polynomial has no leading term")
        w = max(self.terms, key=deglex_key)
        return w, self.terms[w]

    def monicize(self) -> "NcPoly":
        """Divide by the leading coefficient; error when it is not a unit."""
        w, c = self.leading()
        inv = self.ring.invert(c)
        if inv is None:
            raise FreeAlgebraError(
                f"leading coefficient {self.ring.render(c)} is not invertible")
        return self.scale(inv)

    def lift(self, ring: CentralRing) -> "NcPoly":
        """View a field-coefficient polynomial over the central ring."""
        return NcPoly(self.alphabet, ring,
                      {w: ring.embed(c) for w, c in self.terms.items()})

    def map_coeffs(self, fn, ring: Ring) -> "NcPoly":
        return NcPoly(self.alphabet, ring, {w: fn(c) for w, c in self.terms.items()})

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.words_desc():
            c = self.terms[w]
            cs = self.ring.render(c)
            neg = cs.startswith("-")
            if neg and _coeff_is_simple(self.ring, c):
                cs = cs[1:]
            else:
                neg = False
            simple = _coeff_is_simple(self.ring, c)
            if w == EMPTY_WORD:
                body = cs if simple else f"({cs})"
            elif cs == "1":
                body = self.alphabet.render_word(w)
            else:
                if not simple:
                    cs = f"({cs})"
                body = f"{cs}*{self.alphabet.render_word(w)}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        text = body if sign == "+" else "-" + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    __repr__ = __str__


def _coeff_is_simple(ring: Ring, c) -> bool:
    if isinstance(c, CentralPoly):
        if len(c.terms) != 1:
            return False
        (m, s), = c.terms.items()
        return _scalar_is_simple(s)
    return _scalar_is_simple(c)


class TensorElement:
    """Element of the tensor square of the free algebra over the base field."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet: Alphabet, field: FieldDescriptor,
                 terms: Mapping[Tuple[Word, Word], Scalar]):
        self.alphabet = alphabet
        self.field = field
        self.terms = {k: c for k, c in terms.items() if c}

    @staticmethod
    def zero(alphabet: Alphabet, field: FieldDescriptor) -> "TensorElement":
        return TensorElement(alphabet, field, {})

    def _check(self, other: "TensorElement"):
        if self.alphabet != other.alphabet or self.field != other.field:
            raise FreeAlgebraError("tensor context mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.alphabet, self.field, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.alphabet, self.field,
                             {k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out: dict = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                k = (u1 + u2, v1 + v2)
                c = c1 * c2
                out[k] = out[k] + c if k in out else c
        return TensorElement(self.alphabet, self.field, out)

    def scale(self, c: Scalar) -> "TensorElement":
        return TensorElement(self.alphabet, self.field,
                             {k: c * x for k, x in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.alphabet == other.alphabet
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        def key(k):
            return (deglex_key(k[0]), deglex_key(k[1]))
        parts = []
        for u, v in sorted(self.terms, key=key, reverse=True):
            c = self.terms[(u, v)]
            cs = str(c)
            neg = cs.startswith("-") and _scalar_is_simple(c)
            if neg:
                cs = cs[1:]
            body = f"{self.alphabet.render_word(u)} (x) {self.alphabet.render_word(v)}"
            if cs != "1":
                if not _scalar_is_simple(c):
                    cs = f"({cs})"
                body = f"{cs}*{body}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        text = body if sign == "+" else "-" + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    __repr__ = __str__
