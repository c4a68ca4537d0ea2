"""Standard Hopf structure on the free algebra and primitivity certificates.

Every generator is primitive: Delta(X) = 1 (x) X + X (x) 1, extended as an
algebra map; the counit is the constant term; the antipode reverses words
with sign.  Primitivity of a family of relations (and of their pairwise
commutators) is the checkable hypothesis behind the Hopf-theoretic
flatness conclusions; the report records those conclusions as certified
hypotheses, not re-proved theorems.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

from .centrify import Presentation
from .coeffs import FieldDescriptor, Scalar
from .freealg import Alphabet, EMPTY_WORD, NcPoly, TensorElement, Word


class HopfError(Exception):
    pass


@dataclass(frozen=True)
class HopfContext:
    alphabet: Alphabet
    field: FieldDescriptor


def word_coproduct(w: Word) -> List[Tuple[Word, Word]]:
    """All 2^n splits of a word of primitives into an (ordered) shuffle pair."""
    n = len(w)
    out = []
    positions = range(n)
    for k in range(n + 1):
        for left in combinations(positions, k):
            leftset = set(left)
            lw = tuple(w[i] for i in positions if i in leftset)
            rw = tuple(w[i] for i in positions if i not in leftset)
            out.append((lw, rw))
    return out


def _require_field(f: NcPoly) -> FieldDescriptor:
    if not isinstance(f.ring, FieldDescriptor):
        raise HopfError("Hopf operations require field coefficients")
    return f.ring


def coproduct(f: NcPoly) -> TensorElement:
    field = _require_field(f)
    terms: dict = {}
    for w, c in f.terms.items():
        for key in word_coproduct(w):
            terms[key] = terms[key] + c if key in terms else c
    return TensorElement(f.alphabet, field, terms)


def counit(f: NcPoly) -> Scalar:
    _require_field(f)
    return f.coeff(EMPTY_WORD)


def antipode(f: NcPoly) -> NcPoly:
    """Reverse every word with sign (-1)^length."""
    _require_field(f)
    terms = {}
    for w, c in f.terms.items():
        rw = tuple(reversed(w))
        nc = c if len(w) % 2 == 0 else -c
        terms[rw] = terms[rw] + nc if rw in terms else nc
    return NcPoly(f.alphabet, f.ring, terms)


def collapse_left(t: TensorElement) -> NcPoly:
    """Apply the counit to the left leg: sum of c * eps(u) * v."""
    terms: dict = {}
    for (u, v), c in t.terms.items():
        if u != EMPTY_WORD:
            continue
        terms[v] = terms[v] + c if v in terms else c
    return NcPoly(t.alphabet, t.field, terms)


def collapse_right(t: TensorElement) -> NcPoly:
    terms: dict = {}
    for (u, v), c in t.terms.items():
        if v != EMPTY_WORD:
            continue
        terms[u] = terms[u] + c if u in terms else c
    return NcPoly(t.alphabet, t.field, terms)


def antipode_convolution(f: NcPoly, side: str = "left") -> NcPoly:
    """multiply o (S (x) id) o Delta, or the (id (x) S) variant."""
    field = _require_field(f)
    total = NcPoly.zero(f.alphabet, field)
    for (u, v), c in coproduct(f).terms.items():
        if side == "left":
            part = antipode(NcPoly.from_word(f.alphabet, field, u)) \
                * NcPoly.from_word(f.alphabet, field, v)
        else:
            part = NcPoly.from_word(f.alphabet, field, u) \
                * antipode(NcPoly.from_word(f.alphabet, field, v))
        total = total + part.scale(c)
    return total


def primitivity_defect(f: NcPoly) -> TensorElement:
    """Delta(f) - 1 (x) f - f (x) 1; zero exactly when f is primitive."""
    field = _require_field(f)
    flank = TensorElement(f.alphabet, field, {
        **{(EMPTY_WORD, w): c for w, c in f.terms.items()},
    })
    flank2 = TensorElement(f.alphabet, field, {
        (w, EMPTY_WORD): c for w, c in f.terms.items()})
    return coproduct(f) - flank - flank2


def is_primitive(f: NcPoly) -> Tuple[bool, TensorElement]:
    defect = primitivity_defect(f)
    return (not defect, defect)


@dataclass(frozen=True)
class PrimitivityEntry:
    label: str
    primitive: bool
    defect: TensorElement


@dataclass(frozen=True)
class PrimitivityReport:
    entries: Tuple[PrimitivityEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.primitive for e in self.entries)

    @property
    def failures(self) -> Tuple[PrimitivityEntry, ...]:
        return tuple(e for e in self.entries if not e.primitive)

    def certified_conclusions(self) -> Tuple[str, ...]:
        """Consequences whose hypotheses this report certifies."""
        if not self.ok:
            return ()
        return (
            "all relations are primitive under the standard coproduct",
            "all pairwise commutators of relations are primitive",
            "certified hypothesis: the free algebra, the presented algebra "
            "and its centrification all carry Hopf structures",
            "certified hypothesis: the centrification is a Galois extension "
            "of its central subalgebra",
        )


def certify_primitive_family(p: Presentation) -> PrimitivityReport:
    """Check primitivity of every relation and of all pairwise commutators."""
    entries = []
    for name, r in p.relations:
        ok, defect = is_primitive(r)
        entries.append(PrimitivityEntry(name, ok, defect))
    for (n1, r1), (n2, r2) in combinations(p.relations, 2):
        comm = r1 * r2 - r2 * r1
        ok, defect = is_primitive(comm)
        entries.append(PrimitivityEntry(f"[{n1},{n2}]", ok, defect))
    return PrimitivityReport(tuple(entries))
