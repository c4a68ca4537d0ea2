"""Reduction, compositions, Groebner-Shirshov verification and completion.

Rules rewrite their deg-lex leading word to minus-their-tail.  The
deterministic strategy is: greatest reducible word first; among matching
rules, lowest rule index; among occurrences, leftmost.  A randomized strategy
(for confluence cross-checks) picks uniformly among all admissible steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .coeffs import CentralPoly, CentralRing, central_reduce, _mono_key
from .freealg import (Alphabet, EMPTY_WORD, NcPoly, Ring, Word,
                      deglex_cmp, deglex_key)


class RewriteError(Exception):
    pass


class CompletionError(RewriteError):
    """A completion step produced a non-monicizable rule."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


@dataclass(frozen=True)
class Rule:
    name: str
    poly: NcPoly

    @property
    def lead(self) -> Word:
        return self.poly.leading()[0]

    @property
    def tail(self) -> NcPoly:
        w, c = self.poly.leading()
        return NcPoly(self.poly.alphabet, self.poly.ring,
                      {u: x for u, x in self.poly.terms.items() if u != w})


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: Alphabet
    ring: Ring
    rules: Tuple[Rule, ...]
    central_relations: Tuple[CentralPoly, ...] = ()

    def __post_init__(self):
        seen = set()
        for r in self.rules:
            w, c = r.poly.leading()
            if len(w) < 1:
                raise RewriteError(f"rule {r.name} has empty leading word")
            if c != self.ring.one():
                raise RewriteError(f"rule {r.name} is not monic")
            key = (r.name, frozenset(r.poly.terms.items()))
            if key in seen:
                raise RewriteError(f"duplicate rule {r.name}")
            seen.add(key)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class Composition:
    """Overlap d(R_j) = ab, d(R_k) = bc, or inclusion d(R_j) = a d(R_k) c."""

    j: str
    k: str
    a: Word
    b: Word
    c: Word
    kind: str  # "overlap" | "inclusion"

    @property
    def abc(self) -> Word:
        return self.a + self.b + self.c

    def describe(self, alphabet: Alphabet) -> str:
        return (f"{self.kind}({self.j}, {self.k}) at "
                f"{alphabet.render_word(self.abc)}")


@dataclass(frozen=True)
class ReductionTrace:
    """input = sum of coeff * u * R_rule * v over steps, plus remainder."""

    input: NcPoly
    steps: Tuple[Tuple[object, Word, str, Word], ...]
    remainder: NcPoly
    system: RewriteSystem

    def verify(self) -> bool:
        total = self.remainder
        for coeff, u, name, v in self.steps:
            total = total + self.system.rule(name).poly.shift(u, v).scale(coeff)
        return total == self.input


def _clean(f: NcPoly, sys: RewriteSystem) -> NcPoly:
    if sys.central_relations and isinstance(sys.ring, CentralRing):
        return f.map_coeffs(
            lambda c: central_reduce(c, sys.central_relations), sys.ring)
    return f


def _occurrences(w: Word, lead: Word):
    n, m = len(w), len(lead)
    return [pos for pos in range(n - m + 1) if w[pos:pos + m] == lead]


def _pick_step(f: NcPoly, sys: RewriteSystem, bound: Optional[Word], rng):
    """Choose a reduction step (word, rule_index, position), or None."""
    if rng is None:
        for w in f.words_desc():
            if bound is not None and deglex_cmp(w, bound) >= 0:
                continue
            for i, r in enumerate(sys.rules):
                occ = _occurrences(w, r.lead)
                if occ:
                    return (w, i, occ[0])
        return None
    options = []
    for w in f.words_desc():
        if bound is not None and deglex_cmp(w, bound) >= 0:
            continue
        for i, r in enumerate(sys.rules):
            for pos in _occurrences(w, r.lead):
                options.append((w, i, pos))
    if not options:
        return None
    return options[rng.randrange(len(options))]


def _reduce(f: NcPoly, sys: RewriteSystem, bound=None, rng=None, record=False):
    f = _clean(f, sys)
    steps = []
    while True:
        step = _pick_step(f, sys, bound, rng)
        if step is None:
            break
        w, i, pos = step
        rule = sys.rules[i]
        c = f.terms[w]
        u, v = w[:pos], w[pos + len(rule.lead):]
        f = _clean(f - rule.poly.shift(u, v).scale(c), sys)
        if record:
            steps.append((c, u, rule.name, v))
    return f, tuple(steps)


def normal_form(f: NcPoly, sys: RewriteSystem, rng=None) -> NcPoly:
    """Fully reduce f; terminates because every step replaces a word by
    deg-lex smaller ones."""
    return _reduce(f, sys, rng=rng)[0]


def trace_reduce(f: NcPoly, sys: RewriteSystem, bound: Optional[Word] = None,
                 rng=None) -> ReductionTrace:
    """Reduce f recording every step; steps with u*lead*v not below the bound
    are forbidden, leaving the offending word in the remainder."""
    rem, steps = _reduce(f, sys, bound=bound, rng=rng, record=True)
    return ReductionTrace(input=f, steps=steps, remainder=rem, system=sys)


# ---------------------------------------------------------------------------
# Compositions
# ---------------------------------------------------------------------------

def find_compositions(sys: RewriteSystem) -> List[Composition]:
    comps = []
    for j, rj in enumerate(sys.rules):
        dj = rj.lead
        for k, rk in enumerate(sys.rules):
            dk = rk.lead
            # overlaps: proper nonempty suffix of dj equals proper prefix of dk
            for blen in range(1, min(len(dj), len(dk))):
                b = dj[len(dj) - blen:]
                if dk[:blen] == b:
                    comps.append(Composition(rj.name, rk.name,
                                             dj[:len(dj) - blen], b, dk[blen:],
                                             "overlap"))
            # inclusions: dk a factor of dj (proper, or equal for j != k)
            if len(dk) < len(dj) or (j != k and dk == dj):
                for pos in _occurrences(dj, dk):
                    comps.append(Composition(rj.name, rk.name,
                                             dj[:pos], dk, dj[pos + len(dk):],
                                             "inclusion"))
    comps.sort(key=lambda c: (len(c.abc), c.abc, c.j, c.k, c.kind, c.a))
    return comps


def composition_element(sys: RewriteSystem, comp: Composition) -> NcPoly:
    rj = sys.rule(comp.j).poly
    rk = sys.rule(comp.k).poly
    if comp.kind == "overlap":
        return rj.shift(EMPTY_WORD, comp.c) - rk.shift(comp.a, EMPTY_WORD)
    return rj - rk.shift(comp.a, comp.c)


@dataclass(frozen=True)
class GsCertificate:
    ok: bool
    witness: Optional[Composition] = None
    remainder: Optional[NcPoly] = None


def is_gs_basis(sys: RewriteSystem) -> GsCertificate:
    """Diamond Lemma criterion: every composition reduces to zero below abc."""
    for comp in find_compositions(sys):
        t = trace_reduce(composition_element(sys, comp), sys, bound=comp.abc)
        if t.remainder:
            return GsCertificate(False, comp, t.remainder)
    return GsCertificate(True)


# ---------------------------------------------------------------------------
# Completion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompletionRecord:
    j: str
    k: str
    abc: Word
    remainder: NcPoly
    action: str  # "zero" | "new-rule" | "central" | "truncated"


@dataclass(frozen=True)
class CompletionResult:
    system: RewriteSystem
    status: str  # "complete" | "truncated"
    log: Tuple[CompletionRecord, ...]


def _canonical_central(central: Sequence[CentralPoly]) -> List[CentralPoly]:
    """Monicize, mutually reduce and deduplicate central relations."""
    out = [c for c in central if c]
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            others = out[:i] + out[i + 1:]
            r = central_reduce(out[i], others)
            if r:
                _, lc = r.leading()
                r = r.scale(r.field.invert(lc))
            if r != out[i]:
                changed = True
                out = others if not r else out[:i] + [r] + out[i + 1:]
                break
    uniq: List[CentralPoly] = []
    for c in out:
        if c not in uniq:
            uniq.append(c)
    uniq.sort(key=lambda c: _mono_key(c.leading()[0]))
    return uniq


def _interreduce(alphabet, ring, rules: List[Rule], central: List[CentralPoly]):
    central = _canonical_central(central)
    changed = True
    while changed:
        changed = False
        for i in range(len(rules)):
            others = tuple(rules[:i] + rules[i + 1:])
            sub = RewriteSystem(alphabet, ring, others, tuple(central))
            h = normal_form(rules[i].poly, sub)
            if h == rules[i].poly:
                continue
            changed = True
            if not h:
                rules = rules[:i] + rules[i + 1:]
            else:
                w, c = h.leading()
                if w == EMPTY_WORD:
                    if not isinstance(ring, CentralRing):
                        raise CompletionError(
                            f"presentation collapses: unit relation {h.render()}",
                            element=h)
                    central = _canonical_central(central + [c])
                    rules = rules[:i] + rules[i + 1:]
                else:
                    inv = ring.invert(c)
                    if inv is None:
                        raise CompletionError(
                            f"non-invertible leading coefficient in {h.render()}",
                            element=h)
                    rules = rules[:i] + [Rule(rules[i].name, h.scale(inv))] \
                        + rules[i + 1:]
            break
    return rules, central


def complete(sys: RewriteSystem, max_degree: int) -> CompletionResult:
    """Bounded Shirshov completion.

    Nonzero composition remainders become new monic rules; remainders with
    empty leading word (pure central elements) join the central relation
    ideal.  Compositions whose overlap word exceeds max_degree are skipped
    and flagged as truncation.
    """
    if sys.rules and max_degree < max(len(r.lead) for r in sys.rules):
        raise RewriteError("max_degree below the maximal rule degree")
    rules = list(sys.rules)
    central = list(sys.central_relations)
    log: List[CompletionRecord] = []
    truncated = False
    counter = 0
    rules, central = _interreduce(sys.alphabet, sys.ring, rules, central)
    while True:
        cur = RewriteSystem(sys.alphabet, sys.ring, tuple(rules), tuple(central))
        adjoined = False
        for comp in find_compositions(cur):
            if len(comp.abc) > max_degree:
                truncated = True
                log.append(CompletionRecord(
                    comp.j, comp.k, comp.abc,
                    NcPoly.zero(sys.alphabet, sys.ring), "truncated"))
                continue
            rem = normal_form(composition_element(cur, comp), cur)
            if not rem:
                log.append(CompletionRecord(comp.j, comp.k, comp.abc, rem, "zero"))
                continue
            w, c = rem.leading()
            if w == EMPTY_WORD:
                if not isinstance(sys.ring, CentralRing):
                    raise CompletionError(
                        f"presentation collapses: unit relation {rem.render()}",
                        element=rem)
                central = _canonical_central(central + [c])
                log.append(CompletionRecord(comp.j, comp.k, comp.abc, rem, "central"))
            else:
                inv = sys.ring.invert(c)
                if inv is None:
                    raise CompletionError(
                        f"non-invertible leading coefficient in {rem.render()}",
                        element=rem)
                counter += 1
                rules.append(Rule(f"S{counter}", rem.scale(inv)))
                log.append(CompletionRecord(comp.j, comp.k, comp.abc, rem, "new-rule"))
            adjoined = True
            break
        if not adjoined:
            break
        rules, central = _interreduce(sys.alphabet, sys.ring, rules, central)
    final = RewriteSystem(sys.alphabet, sys.ring, tuple(rules), tuple(central))
    status = "truncated" if truncated else "complete"
    return CompletionResult(final, status, tuple(log))


def irreducible_words(sys: RewriteSystem, max_len: int) -> List[Word]:
    """All words of length <= max_len containing no rule's leading word."""
    leads = [r.lead for r in sys.rules]
    out: List[Word] = []

    def ends_reducible(w: Word) -> bool:
        return any(len(l) <= len(w) and w[len(w) - len(l):] == l for l in leads)

    def grow(w: Word):
        out.append(w)
        if len(w) == max_len:
            return
        for i in range(len(sys.alphabet)):
            nxt = w + (i,)
            if not ends_reducible(nxt):
                grow(nxt)

    grow(EMPTY_WORD)
    return out
