"""Centrification transforms, obstacle elements and flatness certificates.

A Presentation holds named relations over a base field together with a
designated central subset J0.  Centrifying replaces each relation in J0 by
the requirement that it commute with every generator; the Z-presentation
instead rewrites R_j = z_j over the free commutative ring on fresh central
variables z_j.  Obstacles measure how a composition of the Z-presentation
fails to mirror the base reduction; if every obstacle rewrites to zero the
Z-presentation is a flat deformation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coeffs import CentralPoly, CentralRing, FieldDescriptor, Scalar
from .freealg import Alphabet, EMPTY_WORD, NcPoly, Word
from .rewrite import (Composition, CompletionResult, ReductionTrace, Rule,
                      RewriteSystem, complete, composition_element,
                      find_compositions, is_gs_basis, normal_form, trace_reduce)


class CentrifyError(Exception):
    pass


class ObstacleError(CentrifyError):
    """The base composition did not reduce to zero below its bound."""


@dataclass(frozen=True)
class Presentation:
    name: str
    field: FieldDescriptor
    alphabet: Alphabet
    relations: Tuple[Tuple[str, NcPoly], ...]
    central: Tuple[str, ...] = ()  # the designated subset J0

    def __post_init__(self):
        names = [n for n, _ in self.relations]
        if len(set(names)) != len(names):
            raise CentrifyError("duplicate relation names")
        for n in self.central:
            if n not in names:
                raise CentrifyError(f"unknown relation {n!r} in central subset")
        for n, r in self.relations:
            if not r:
                raise CentrifyError(f"relation {n} is zero")
            if r.alphabet != self.alphabet or r.ring != self.field:
                raise CentrifyError(f"relation {n} over wrong context")

    def relation(self, name: str) -> NcPoly:
        for n, r in self.relations:
            if n == name:
                return r
        raise KeyError(name)

    def relation_names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def rewrite_system(self) -> RewriteSystem:
        rules = tuple(Rule(n, r.monicize()) for n, r in self.relations)
        return RewriteSystem(self.alphabet, self.field, rules)


def _central_name(relation_name: str) -> str:
    base = relation_name[2:] if relation_name.startswith("R_") else relation_name
    return f"z_{base}"


@dataclass(frozen=True)
class ZPresentation:
    """The same algebra presented over the central-variable ring."""

    base: Presentation
    j0: Tuple[str, ...]
    central_vars: Tuple[Tuple[str, str], ...]  # (relation name, variable name)
    relations: Tuple[Tuple[str, NcPoly], ...]  # monic, over CentralRing
    discovered: Tuple[CentralPoly, ...] = ()

    @property
    def ring(self) -> CentralRing:
        return CentralRing(self.base.field)

    def variable_of(self, relation_name: str) -> str:
        for rel, var in self.central_vars:
            if rel == relation_name:
                return var
        raise KeyError(relation_name)

    def zeta(self, relation_name: str) -> CentralPoly:
        """Central tail of the monic rule: z_j / leadingcoeff(R_j), or 0."""
        ring = self.ring
        if relation_name not in self.j0:
            return ring.zero()
        _, lc = self.base.relation(relation_name).leading()
        inv = self.base.field.invert(lc)
        return ring.variable(self.variable_of(relation_name)).scale(inv)

    def rewrite_system(self) -> RewriteSystem:
        rules = tuple(Rule(n, p) for n, p in self.relations)
        return RewriteSystem(self.base.alphabet, self.ring, rules, self.discovered)

    def with_discovered(self, relations: Sequence[CentralPoly]) -> "ZPresentation":
        return replace(self, discovered=tuple(relations))


def centrify(p: Presentation, j0: Optional[Sequence[str]] = None) -> Presentation:
    """Replace each relation in J0 by its commutators with all generators.

    Identically-zero commutators (a relation commuting with a generator in
    the free algebra already) are dropped.
    """
    j0 = tuple(j0 if j0 is not None else p.central)
    names = p.relation_names()
    for n in j0:
        if n not in names:
            raise CentrifyError(f"unknown relation {n!r}")
    relations: List[Tuple[str, NcPoly]] = []
    for j in j0:
        r = p.relation(j)
        for g in p.alphabet.names:
            x = NcPoly.generator(p.alphabet, p.field, g)
            comm = x * r - r * x
            if comm:
                relations.append((f"comm({g},{j})", comm))
    for n, r in p.relations:
        if n not in j0:
            relations.append((n, r))
    return Presentation(f"{p.name}_c", p.field, p.alphabet, tuple(relations))


def z_presentation(p: Presentation, j0: Optional[Sequence[str]] = None) -> ZPresentation:
    """Present the centrification over the free central-variable ring."""
    j0 = tuple(j0 if j0 is not None else p.central)
    names = p.relation_names()
    for n in j0:
        if n not in names:
            raise CentrifyError(f"unknown relation {n!r}")
    taken = set(p.alphabet.names)
    if p.field.param:
        taken.add(p.field.param)
    central_vars = []
    for j in j0:
        var = _central_name(j)
        if var in taken:
            raise CentrifyError(f"central variable name {var} clashes")
        taken.add(var)
        central_vars.append((j, var))
    ring = CentralRing(p.field)
    vars_map = dict(central_vars)
    relations = []
    for n, r in p.relations:
        poly = r.monicize().lift(ring)
        if n in j0:
            _, lc = r.leading()
            zeta = ring.variable(vars_map[n]).scale(p.field.invert(lc))
            poly = poly - NcPoly.constant(p.alphabet, ring, zeta)
        relations.append((n, poly))
    return ZPresentation(p, j0, tuple(central_vars), tuple(relations))


@dataclass(frozen=True)
class Obstacle:
    composition: Composition
    element: NcPoly  # over the central ring
    trace: ReductionTrace  # of the base composition


def obstacle(zp: ZPresentation, comp: Composition, rng=None) -> Obstacle:
    """Compute the obstacle of a base composition.

    The base composition element is trace-reduced below abc; the obstacle
    collects the central tails displaced by that reduction.  The defining
    identity (Z-composition = lifted trace + obstacle) is verified by
    symbolic expansion before returning.
    """
    base_sys = zp.base.rewrite_system()
    elem = composition_element(base_sys, comp)
    trace = trace_reduce(elem, base_sys, bound=comp.abc, rng=rng)
    if trace.remainder:
        raise ObstacleError(
            f"base composition {comp.describe(zp.base.alphabet)} has nonzero "
            f"remainder {trace.remainder.render()}; base is not a "
            "Groebner-Shirshov basis")
    ring = zp.ring
    alphabet = zp.base.alphabet

    def mono(word: Word, coeff: CentralPoly) -> NcPoly:
        return NcPoly(alphabet, ring, {word: coeff})

    if comp.kind == "overlap":
        obs = mono(comp.a, zp.zeta(comp.k)) - mono(comp.c, zp.zeta(comp.j))
    else:
        obs = mono(comp.a + comp.c, zp.zeta(comp.k)) - mono(EMPTY_WORD, zp.zeta(comp.j))
    for beta, u, l, v in trace.steps:
        obs = obs + mono(u + v, zp.zeta(l).scale(beta))

    # verify the lifted identity exactly
    z_sys = zp.rewrite_system()
    lhs = composition_element(z_sys, comp)
    rhs = obs
    for beta, u, l, v in trace.steps:
        rhs = rhs + z_sys.rule(l).poly.shift(u, v).scale(ring.embed(beta))
    if lhs != rhs:
        raise CentrifyError("obstacle identity failed to verify")  # pragma: no cover
    return Obstacle(comp, obs, trace)


@dataclass(frozen=True)
class ObstacleCheck:
    composition: Composition
    obstacle: Obstacle
    reduced_to_zero: bool
    remainder: Optional[NcPoly] = None


@dataclass(frozen=True)
class FlatnessCertificate:
    flat: bool
    checks: Tuple[ObstacleCheck, ...]

    @property
    def witness(self) -> Optional[Obstacle]:
        for c in self.checks:
            if not c.reduced_to_zero:
                return c.obstacle
        return None


def check_prop_gsbasis(zp: ZPresentation, search_budget: int = 16) -> FlatnessCertificate:
    """Certify that every obstacle rewrites to zero below its bound.

    The canonical obstacle is tried first; on failure, obstacles from up to
    search_budget alternative reduction traces of the base composition are
    tried before reporting a witness.
    """
    base_sys = zp.base.rewrite_system()
    cert = is_gs_basis(base_sys)
    if not cert.ok:
        raise CentrifyError(
            f"base presentation is not a Groebner-Shirshov basis: "
            f"{cert.witness.describe(zp.base.alphabet)} leaves "
            f"{cert.remainder.render()}")
    z_sys = zp.rewrite_system()
    checks = []
    for comp in find_compositions(base_sys):
        obs = obstacle(zp, comp)
        t = trace_reduce(obs.element, z_sys, bound=comp.abc)
        ok = not t.remainder
        chosen = obs
        rem = t.remainder
        if not ok:
            for seed in range(search_budget):
                alt = obstacle(zp, comp, rng=random.Random(seed))
                if alt.element == obs.element:
                    continue
                t2 = trace_reduce(alt.element, z_sys, bound=comp.abc)
                if not t2.remainder:
                    ok, chosen, rem = True, alt, t2.remainder
                    break
        checks.append(ObstacleCheck(comp, chosen, ok, None if ok else rem))
    return FlatnessCertificate(all(c.reduced_to_zero for c in checks), tuple(checks))


def central_relations(zp: ZPresentation, max_degree: int):
    """Bounded-degree relation ideal of the central subalgebra.

    Returns (generators, status, completion_result); generators are the
    canonicalized pure-central completion remainders.  Relations of degree
    beyond the bound may be missed when status is "truncated".
    """
    result = complete(zp.rewrite_system(), max_degree)
    return list(result.system.central_relations), result.status, result


def specialize(zp: ZPresentation, omega: Mapping[str, Scalar]) -> Presentation:
    """Evaluate every central variable, yielding a field presentation."""
    for _, var in zp.central_vars:
        if var not in omega:
            raise CentrifyError(f"no value for central variable {var}")
    for rel in zp.discovered:
        if rel.evaluate(omega):
            raise CentrifyError(
                f"assignment violates central relation {rel.render()}")
    relations = tuple(
        (n, poly.map_coeffs(lambda c: c.evaluate(omega), zp.base.field))
        for n, poly in zp.relations)
    return Presentation(f"{zp.base.name}_at", zp.base.field,
                        zp.base.alphabet, relations)
