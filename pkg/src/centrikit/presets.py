"""Builders for the named example presentations.

Covers the anticommutator spin algebra, both Askey-Wilson presentations, the
Bannai-Ito family, and (restricted) enveloping algebras built from structure
constants, plus Lie-structure validation and the 2-cocycle ideal of the
versal central extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .centrify import Presentation
from .coeffs import (CentralPoly, CentralRing, CoeffError, FieldDescriptor,
                     Scalar)
from .freealg import Alphabet, NcPoly


class PresetError(Exception):
    pass


def _coerce(field: FieldDescriptor, v) -> Scalar:
    if isinstance(v, (int, Fraction)):
        return field.from_fraction(Fraction(v))
    if field.contains(v):
        return v
    raise PresetError(f"scalar {v!r} does not belong to {field}")


# ---------------------------------------------------------------------------
# Lie data
# ---------------------------------------------------------------------------

Vector = Dict[int, Scalar]  # sparse vector in the basis


@dataclass
class LieData:
    """Structure constants for i < j; antisymmetry is implicit.

    An optional p-structure holds the prime, the p-power image of each basis
    element as a linear combination, and the linear form chi.
    """

    field: FieldDescriptor
    basis: Tuple[str, ...]
    brackets: Dict[Tuple[int, int], Vector]
    p: Optional[int] = None
    p_images: Optional[Tuple[Vector, ...]] = None
    chi: Optional[Tuple[Scalar, ...]] = None

    def __post_init__(self):
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise PresetError("duplicate basis names")
        for (i, j), vec in self.brackets.items():
            if not (0 <= i < j < n):
                raise PresetError(f"bracket index ({i},{j}) out of range")
            for k in vec:
                if not 0 <= k < n:
                    raise PresetError("bracket value index out of range")
        if self.p is not None:
            if self.field != FieldDescriptor.prime_field(self.p):
                raise PresetError("p-structure requires the base field GF(p)")
            if self.p_images is None or len(self.p_images) != n:
                raise PresetError("p-structure needs one p-power image per basis element")
            if self.chi is None or len(self.chi) != n:
                raise PresetError("p-structure needs a chi value per basis element")

    def bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vec(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket(i, j).items():
                    val = a * b * c
                    out[k] = out[k] + val if k in out else val
        return {k: c for k, c in out.items() if c}

    def ad_power(self, i: int, v: Vector, n: int) -> Vector:
        for _ in range(n):
            v = self.bracket_vec({i: self.field.one()}, v)
        return v


@dataclass(frozen=True)
class LieFailure:
    kind: str  # "jacobi" | "restricted"
    witness: Tuple[int, ...]
    value: str


@dataclass(frozen=True)
class LieReport:
    ok: bool
    failures: Tuple[LieFailure, ...]


def lie_validate(d: LieData) -> LieReport:
    """Check the Jacobi identity on all basis triples and, when a p-structure
    is present, the restrictedness identity on all basis pairs."""
    failures = []
    n = len(d.basis)
    one = d.field.one()
    for i, j, k in combinations(range(n), 3):
        total: Vector = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            term = d.bracket_vec(d.bracket(a, b), {c: one})
            for m, x in term.items():
                total[m] = total[m] + x if m in total else x
        total = {m: x for m, x in total.items() if x}
        if total:
            failures.append(LieFailure("jacobi", (i, j, k), _render_vec(d, total)))
    if d.p is not None:
        for i in range(n):
            for j in range(n):
                lhs = d.bracket_vec(d.p_images[i], {j: one})
                rhs = d.ad_power(i, {j: one}, d.p)
                diff = dict(lhs)
                for m, x in rhs.items():
                    diff[m] = diff.get(m, d.field.zero()) - x
                diff = {m: x for m, x in diff.items() if x}
                if diff:
                    failures.append(LieFailure("restricted", (i, j),
                                               _render_vec(d, diff)))
    return LieReport(not failures, tuple(failures))


def _render_vec(d: LieData, v: Vector) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{d.basis[k]}" for k, c in sorted(v.items()))


def cocycle_ideal(d: LieData) -> List[CentralPoly]:
    """Linear forms in z_ij expressing that an antisymmetric form on the Lie
    algebra is a 2-cocycle; identically-zero forms are omitted."""
    report = lie_validate(d)
    if not report.ok:
        raise PresetError("Lie data fails validation")
    ring = CentralRing(d.field)
    n = len(d.basis)

    def lam(a: int, b: int) -> CentralPoly:
        if a == b:
            return ring.zero()
        if a < b:
            return ring.variable(_zvar(d, a, b))
        return -ring.variable(_zvar(d, b, a))

    out = []
    for i, j, k in combinations(range(n), 3):
        total = ring.zero()
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in d.bracket(a, b).items():
                total = total + lam(m, c).scale(x)
        if total:
            out.append(total)
    return out


def _zvar(d: LieData, i: int, j: int) -> str:
    return f"z_{d.basis[i]}{d.basis[j]}"


# ---------------------------------------------------------------------------
# Presentation builders
# ---------------------------------------------------------------------------

def _aw_like(name: str, field: FieldDescriptor, gens: Tuple[str, str, str],
             relations) -> Presentation:
    alphabet = Alphabet(gens)
    return Presentation(name, field, alphabet, tuple(relations),
                        tuple(n for n, _ in relations))


def build_as(field: Optional[FieldDescriptor] = None) -> Presentation:
    """Anticommutator spin algebra: YZ+ZY = X and cyclic, X > Y > Z."""
    field = field or FieldDescriptor.rationals()
    alphabet = Alphabet.of("X", "Y", "Z")
    X, Y, Z = (NcPoly.generator(alphabet, field, g) for g in "XYZ")
    rels = (("R_X", Y * Z + Z * Y - X),
            ("R_Y", X * Z + Z * X - Y),
            ("R_Z", X * Y + Y * X - Z))
    return Presentation("as", field, alphabet, rels, ("R_X", "R_Y", "R_Z"))


def build_bi(omega: Sequence, field: Optional[FieldDescriptor] = None) -> Presentation:
    """Bannai-Ito algebra for a triple omega."""
    field = field or FieldDescriptor.rationals()
    if len(omega) != 3:
        raise PresetError("bi needs a triple omega")
    w = [_coerce(field, v) for v in omega]
    base = build_as(field)
    rels = []
    for (n, r), wi in zip(base.relations, w):
        rels.append((n, r - NcPoly.constant(base.alphabet, field, wi)))
    return Presentation("bi", field, base.alphabet, tuple(rels))


def build_aw1(s: Sequence = (0, 0, 0, 0, 0), param: str = "q") -> Presentation:
    """Zhedanov-style Askey-Wilson presentation with five structure constants."""
    field = FieldDescriptor.rational_functions(param)
    if len(s) != 5:
        raise PresetError("aw1 needs five structure constants (b, c0, c1, d0, d1)")
    b, c0, c1, d0, d1 = (_coerce(field, v) for v in s)
    alphabet = Alphabet.of("X", "Y", "Z")
    X, Y, Z = (NcPoly.generator(alphabet, field, g) for g in "XYZ")
    q = field.parameter_value()
    qi = field.invert(q)
    one = NcPoly.one(alphabet, field)
    rels = (
        ("R_X", (Y * Z).scale(q) - (Z * Y).scale(qi) - Y.scale(b) - X.scale(c0)
         - one.scale(d0)),
        ("R_Y", (Z * X).scale(q) - (X * Z).scale(qi) - X.scale(b) - Y.scale(c1)
         - one.scale(d1)),
        ("R_Z", (X * Y).scale(q) - (Y * X).scale(qi) - Z),
    )
    return Presentation("aw1", field, alphabet, rels, ("R_X", "R_Y", "R_Z"))


def build_aw2(a=0, b=0, c=0, param: str = "q") -> Presentation:
    """Symmetrized Askey-Wilson presentation; A > B > C."""
    field = FieldDescriptor.rational_functions(param)
    av, bv, cv = (_coerce(field, v) for v in (a, b, c))
    alphabet = Alphabet.of("A", "B", "C")
    A, B, C = (NcPoly.generator(alphabet, field, g) for g in "ABC")
    q = field.parameter_value()
    qi = field.invert(q)
    denom = field.invert(q * q - qi * qi)
    shift = field.invert(q + qi)
    one = NcPoly.one(alphabet, field)

    def rel(main, x, y, const):
        skew = (x * y).scale(q * denom) - (y * x).scale(qi * denom)
        return main + skew - one.scale(const * shift)

    rels = (("R_A", rel(A, B, C, av)),
            ("R_B", rel(B, C, A, bv)),
            ("R_C", rel(C, A, B, cv)))
    return Presentation("aw2", field, alphabet, rels, ("R_A", "R_B", "R_C"))


def _uea_relations(d: LieData):
    alphabet = Alphabet(d.basis)
    field = d.field
    gens = [NcPoly.generator(alphabet, field, g) for g in d.basis]
    rels = []
    for i, j in combinations(range(len(d.basis)), 2):
        poly = gens[i] * gens[j] - gens[j] * gens[i]
        for k, c in d.bracket(i, j).items():
            poly = poly - gens[k].scale(c)
        rels.append((f"R_{d.basis[i]}{d.basis[j]}", poly))
    return alphabet, gens, rels


def build_uea(lie: LieData) -> Presentation:
    """Universal enveloping algebra presentation from structure constants."""
    report = lie_validate(lie)
    if not report.ok:
        raise PresetError(f"Lie data fails validation: {report.failures[0]}")
    alphabet, _, rels = _uea_relations(lie)
    return Presentation("uea", lie.field, alphabet, tuple(rels),
                        tuple(n for n, _ in rels))


def build_ruea(lie: LieData) -> Presentation:
    """Restricted enveloping algebra U_chi; the p-power relations form J0."""
    if lie.p is None:
        raise PresetError("ruea needs a p-structure")
    report = lie_validate(lie)
    if not report.ok:
        raise PresetError(f"Lie data fails validation: {report.failures[0]}")
    alphabet, gens, rels = _uea_relations(lie)
    field = lie.field
    central = []
    for i, name in enumerate(lie.basis):
        poly = NcPoly.one(alphabet, field)
        for _ in range(lie.p):
            poly = poly * gens[i]
        for k, c in lie.p_images[i].items():
            poly = poly - gens[k].scale(c)
        chi_p = lie.chi[i] ** lie.p
        if chi_p:
            poly = poly - NcPoly.constant(alphabet, field, chi_p)
        rels.append((f"R_{name}", poly))
        central.append(f"R_{name}")
    return Presentation("ruea", field, alphabet, tuple(rels), tuple(central))


def build_preset(name: str, **params) -> Presentation:
    builders = {"as": build_as, "bi": build_bi, "aw1": build_aw1,
                "aw2": build_aw2, "uea": build_uea, "ruea": build_ruea}
    if name not in builders:
        raise PresetError(f"unknown preset {name!r}")
    return builders[name](**params)


# ---------------------------------------------------------------------------
# Stock Lie algebras used throughout the examples and tests
# ---------------------------------------------------------------------------

def sl2(field: Optional[FieldDescriptor] = None) -> LieData:
    """sl2 with [e,f]=h, [h,e]=2e, [h,f]=-2f; basis order e, f, h."""
    field = field or FieldDescriptor.rationals()
    two = field.from_int(2)
    return LieData(field, ("e", "f", "h"), {
        (0, 1): {2: field.one()},        # [e,f] = h
        (0, 2): {0: -two},               # [e,h] = -2e
        (1, 2): {1: two},                # [f,h] = 2f
    })


def solvable3(field: Optional[FieldDescriptor] = None) -> LieData:
    """Solvable x, y, z with [x,y]=y, [x,z]=z, [y,z]=0."""
    field = field or FieldDescriptor.rationals()
    return LieData(field, ("x", "y", "z"), {
        (0, 1): {1: field.one()},
        (0, 2): {2: field.one()},
    })


def abelian3(field: Optional[FieldDescriptor] = None) -> LieData:
    field = field or FieldDescriptor.rationals()
    return LieData(field, ("x", "y", "z"), {})


def sl2_restricted_gf3(chi: Sequence = (0, 0, 0)) -> LieData:
    """Restricted sl2 over GF(3): e^[3]=0, f^[3]=0, h^[3]=h."""
    field = FieldDescriptor.prime_field(3)
    base = sl2(field)
    p_images = ({}, {}, {2: field.one()})
    chi_vals = tuple(_coerce(field, v) for v in chi)
    return LieData(field, base.basis, base.brackets, p=3,
                   p_images=p_images, chi=chi_vals)
