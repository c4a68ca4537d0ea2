"""Exact coefficient arithmetic.

Three base fields are supported: the rationals, a prime field GF(p), and
rational functions in one generic parameter over the rationals.  On top of
any of these sits the free commutative ring on a set of central variables
(CentralPoly), used as the coefficient ring of Z-presentations.

Everything here is immutable and exact; there is no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union


class CoeffError(Exception):
    """Invalid coefficient construction or operation."""


class FieldMismatchError(CoeffError):
    """Operands belong to different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# GF(p) residues
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mod:
    """Least nonnegative residue modulo a prime."""

    n: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "n", self.n % self.p)

    def _coerce(self, other) -> "Mod":
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return Mod(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.n + other.n, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.n - other.n, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(other.n - self.n, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Mod(self.n * other.n, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.n, self.p)

    def inverse(self) -> "Mod":
        if self.n == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return Mod(pow(self.n, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.n, k, self.p), self.p)

    def __bool__(self):
        return self.n != 0

    def __str__(self):
        return str(self.n)


# ---------------------------------------------------------------------------
# Univariate rational functions over Q
# ---------------------------------------------------------------------------
# Polynomials are tuples of Fractions, index = power of the parameter,
# no trailing zeros; the zero polynomial is ().

def _ptrim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and any(x != 0 for x in r):
        if r[-1] == 0:
            r.pop()
            continue
        d = len(r) - len(b)
        c = r[-1] / lb
        q[d] = c
        for i, x in enumerate(b):
            r[d + i] -= c * x
        r.pop()
    return _ptrim(q), _ptrim(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lc = a[-1]
        a = tuple(x / lc for x in a)  # monic gcd
    return a


def _prender(a, param: str) -> str:
    """Render a polynomial in the parameter, descending powers."""
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            body = str(abs(c))
        else:
            pw = param if i == 1 else f"{param}^{i}"
            body = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = first_body if first_sign == "+" else "-" + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class RatFunc:
    """Reduced ratio of univariate polynomials over Q; denominator monic."""

    num: tuple
    den: tuple
    param: str

    @staticmethod
    def make(num, den, param: str) -> "RatFunc":
        num = _ptrim(list(Fraction(x) for x in num))
        den = _ptrim(list(Fraction(x) for x in den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return RatFunc((), (Fraction(1),), param)
        g = _pgcd(num, den)
        num, _ = _pdivmod(num, g)
        den, _ = _pdivmod(den, g)
        lc = den[-1]
        num = tuple(x / lc for x in num)
        den = tuple(x / lc for x in den)
        return RatFunc(num, den, param)

    @staticmethod
    def constant(c, param: str) -> "RatFunc":
        return RatFunc.make((Fraction(c),), (1,), param)

    @staticmethod
    def parameter(param: str) -> "RatFunc":
        return RatFunc.make((0, 1), (1,), param)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.param != self.param:
                raise FieldMismatchError(f"parameter {self.param} vs {other.param}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(other, self.param)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RatFunc.make(num, _pmul(self.den, other.den), self.param)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc.make(_pmul(self.num, other.num),
                            _pmul(self.den, other.den), self.param)

    __rmul__ = __mul__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, self.param)

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("0 is not invertible")
        return RatFunc.make(self.den, self.num, self.param)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.constant(1, self.param)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == (Fraction(1),)

    def __str__(self):
        num = _prender(self.num, self.param)
        if self.den == (Fraction(1),):
            return num
        den = _prender(self.den, self.param)
        if len([x for x in self.num if x != 0]) > 1 or num.startswith("-"):
            num = f"({num})"
        if len([x for x in self.den if x != 0]) > 1:
            den = f"({den})"
        return f"{num}/{den}"


Scalar = Union[Fraction, Mod, RatFunc]


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    """One of Q, GF(p), or Q(param) with a generic parameter."""

    kind: str  # "Q" | "GF" | "Qparam"
    p: Optional[int] = None
    param: Optional[str] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None or self.param is not None:
                raise CoeffError("rationals take no parameters")
        elif self.kind == "GF":
            if self.p is None or not is_prime(self.p):
                raise CoeffError(f"{self.p} is not prime")
        elif self.kind == "Qparam":
            if not self.param or not self.param.isidentifier():
                raise CoeffError(f"bad parameter name {self.param!r}")
        else:
            raise CoeffError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldDescriptor":
        return FieldDescriptor("Q")

    @staticmethod
    def prime_field(p: int) -> "FieldDescriptor":
        return FieldDescriptor("GF", p=p)

    @staticmethod
    def rational_functions(param: str = "q") -> "FieldDescriptor":
        return FieldDescriptor("Qparam", param=param)

    # -- construction -------------------------------------------------------

    def zero(self) -> Scalar:
        return self.from_int(0)

    def one(self) -> Scalar:
        return self.from_int(1)

    def from_int(self, n: int) -> Scalar:
        return self.from_fraction(Fraction(n))

    def from_fraction(self, fr: Fraction) -> Scalar:
        if self.kind == "Q":
            return Fraction(fr)
        if self.kind == "GF":
            if fr.denominator % self.p == 0:
                raise ZeroDivisionError(f"{fr} has no image in GF({self.p})")
            return Mod(fr.numerator, self.p) / Mod(fr.denominator, self.p)
        return RatFunc.constant(fr, self.param)

    def parameter_value(self) -> Scalar:
        if self.kind != "Qparam":
            raise CoeffError("field has no parameter")
        return RatFunc.parameter(self.param)

    # -- generic helpers ----------------------------------------------------

    def contains(self, x) -> bool:
        if self.kind == "Q":
            return isinstance(x, Fraction)
        if self.kind == "GF":
            return isinstance(x, Mod) and x.p == self.p
        return isinstance(x, RatFunc) and x.param == self.param

    def invert(self, x: Scalar) -> Optional[Scalar]:
        """Inverse of x, or None for zero."""
        if not x:
            return None
        if isinstance(x, Fraction):
            return 1 / x
        return x.inverse()

    def embed(self, x: Scalar) -> Scalar:
        """Identity embedding; mirrors CentralRing.embed."""
        return x

    def render(self, x: Scalar) -> str:
        return str(x)

    def __str__(self):
        if self.kind == "Q":
            return "Q"
        if self.kind == "GF":
            return f"GF({self.p})"
        return f"Q({self.param})"


# ---------------------------------------------------------------------------
# Free commutative ring on central variables
# ---------------------------------------------------------------------------
# Monomials are tuples of (name, exponent) pairs sorted by name, exponents
# positive; the empty tuple is the constant monomial.

Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items()))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(name, 0) >= e for name, e in a)

def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    out = dict(b)
    for name, e in a:
        out[name] -= e
    return tuple(sorted((n, e) for n, e in out.items() if e > 0))


def _mono_key(m: Monomial):
    # deg-lex: total degree first, then lex on the expanded word with the
    # most significant letter first (later variable names are larger)
    word = tuple(sorted((n for n, e in m for _ in range(e)), reverse=True))
    return (sum(e for _, e in m), word)


class CentralPoly:
    """Sparse commutative polynomial in central variables over a field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldDescriptor, terms: Mapping[Monomial, Scalar]):
        self.field = field
        self.terms = {m: c for m, c in terms.items() if c}

    @staticmethod
    def constant(field: FieldDescriptor, c: Scalar) -> "CentralPoly":
        return CentralPoly(field, {(): c})

    @staticmethod
    def variable(field: FieldDescriptor, name: str) -> "CentralPoly":
        return CentralPoly(field, {((name, 1),): field.one()})

    def _check(self, other: "CentralPoly"):
        if self.field != other.field:
            raise FieldMismatchError("central polynomials over different fields")

    def __add__(self, other: "CentralPoly") -> "CentralPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.field.zero()) + c
        return CentralPoly(self.field, out)

    def __sub__(self, other: "CentralPoly") -> "CentralPoly":
        return self + (-other)

    def __neg__(self) -> "CentralPoly":
        return CentralPoly(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "CentralPoly") -> "CentralPoly":
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                if m in out:
                    out[m] = out[m] + c
                else:
                    out[m] = c
        return CentralPoly(self.field, out)

    def scale(self, c: Scalar) -> "CentralPoly":
        return CentralPoly(self.field, {m: x * c for m, x in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, CentralPoly) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> Scalar:
        return self.terms.get((), self.field.zero())

    def variables(self) -> set:
        return {name for m in self.terms for name, _ in m}

    def leading(self):
        """Deg-lex greatest monomial with its coefficient."""
        if not self.terms:
            raise CoeffError("zero polynomial has no leading monomial")
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Scalar:
        """Substitute a scalar for every variable and fold to one scalar."""
        total = self.field.zero()
        for m, c in self.terms.items():
            val = c
            for name, e in m:
                if name not in assignment:
                    raise CoeffError(f"no assignment for central variable {name}")
                for _ in range(e):
                    val = val * assignment[name]
            total = total + val
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        def mono_str(m):
            return "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if m == ():
                body = cs if _scalar_is_simple(c) else f"({cs})"
            elif cs == "1":
                body = mono_str(m)
            else:
                if not _scalar_is_simple(c):
                    cs = f"({cs})"
                body = f"{cs}*{mono_str(m)}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        text = body if sign == "+" else "-" + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.render()

    __repr__ = __str__


def _scalar_is_simple(c: Scalar) -> bool:
    """True when str(c) can be used as a product factor without parens."""
    s = str(c)
    body = s[1:] if s.startswith("-") else s
    return not any(op in body for op in (" + ", " - "))


@dataclass(frozen=True)
class CentralRing:
    """The free commutative ring on central variables, as a coefficient ring."""

    field: FieldDescriptor

    def zero(self) -> CentralPoly:
        return CentralPoly(self.field, {})

    def one(self) -> CentralPoly:
        return CentralPoly.constant(self.field, self.field.one())

    def from_int(self, n: int) -> CentralPoly:
        return CentralPoly.constant(self.field, self.field.from_int(n))

    def embed(self, x: Scalar) -> CentralPoly:
        return CentralPoly.constant(self.field, x)

    def variable(self, name: str) -> CentralPoly:
        return CentralPoly.variable(self.field, name)

    def invert(self, c: CentralPoly) -> Optional[CentralPoly]:
        """Inverse when c is a nonzero scalar constant, else None."""
        if not c or not c.is_constant():
            return None
        return CentralPoly.constant(self.field, self.field.invert(c.constant_value()))

    def render(self, c: CentralPoly) -> str:
        return c.render()

    def __str__(self):
        return f"{self.field}[central]"


def central_reduce(f: CentralPoly, relations: Iterable[CentralPoly]) -> CentralPoly:
    """Reduce f modulo the leading monomials of the given relations.

    Plain multivariate division: any term divisible by a relation's deg-lex
    leading monomial is cancelled.  The relation list is used as given; it is
    not completed to a Groebner basis here.
    """
    rels = [r for r in relations if r]
    if not rels or not f:
        return f
    leads = []
    for r in rels:
        m, c = r.leading()
        inv = f.field.invert(c)
        leads.append((m, r.scale(inv)))
    changed = True
    while changed and f:
        changed = False
        for m in sorted(f.terms, key=_mono_key, reverse=True):
            c = f.terms.get(m)
            if c is None or not c:
                continue
            for lm, rmonic in leads:
                if _mono_divides(lm, m):
                    shift = _mono_div(m, lm)
                    cofactor = CentralPoly(f.field, {shift: c})
                    f = f - cofactor * rmonic
                    changed = True
                    break
            if changed:
                break
    return f
