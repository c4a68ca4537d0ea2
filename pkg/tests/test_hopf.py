import random
from fractions import Fraction

import pytest

from centrikit.coeffs import CentralRing, FieldDescriptor
from centrikit.freealg import Alphabet, EMPTY_WORD, NcPoly, TensorElement
from centrikit.hopf import (HopfError, antipode, antipode_convolution,
                            certify_primitive_family, collapse_left,
                            collapse_right, coproduct, counit, is_primitive,
                            primitivity_defect, word_coproduct)
from centrikit.presets import build_as, build_uea, sl2

Q = FieldDescriptor.rationals()
ABC = Alphabet.of("x", "y", "z")


def gen(name):
    return NcPoly.generator(ABC, Q, name)


def test_word_coproduct_counts():
    assert len(word_coproduct(())) == 1
    assert len(word_coproduct((0, 1))) == 4
    assert len(word_coproduct((0, 1, 2))) == 8
    # splits preserve the relative order of letters
    for u, v in word_coproduct((0, 1, 2)):
        assert list(u) == sorted(u) and list(v) == sorted(v)


def test_generators_are_primitive():
    for name in ABC.names:
        ok, defect = is_primitive(gen(name))
        assert ok and not defect


def test_products_are_not_primitive():
    f = gen("x") * gen("y")
    ok, defect = is_primitive(f)
    assert not ok
    assert defect == TensorElement(ABC, Q, {((0,), (1,)): Fraction(1),
                                            ((1,), (0,)): Fraction(1)})


def test_coproduct_is_algebra_map():
    f = gen("x") + gen("y") * gen("z")
    g = gen("z") - NcPoly.one(ABC, Q)
    assert coproduct(f * g) == coproduct(f) * coproduct(g)


def test_counit_and_antipode_basics():
    f = gen("x") * gen("y") - NcPoly.one(ABC, Q).scale(Fraction(3))
    assert counit(f) == Fraction(-3)
    assert antipode(f) == gen("y") * gen("x") - NcPoly.one(ABC, Q).scale(Fraction(3))
    assert antipode(antipode(f)) == f


def test_hopf_requires_field_coefficients():
    ring = CentralRing(Q)
    f = NcPoly.generator(ABC, ring, "x")
    with pytest.raises(HopfError):
        coproduct(f)


def rand_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 3)))
        terms[w] = Fraction(rng.randint(-5, 5))
    return NcPoly(ABC, Q, terms)


def coassociativity_holds(f):
    """(Delta x id) Delta = (id x Delta) Delta, computed on triple splits."""
    left, right = {}, {}
    for (u, v), c in coproduct(f).terms.items():
        for (u1, u2) in word_coproduct(u):
            k = (u1, u2, v)
            left[k] = left.get(k, Fraction(0)) + c
        for (v1, v2) in word_coproduct(v):
            k = (u, v1, v2)
            right[k] = right.get(k, Fraction(0)) + c
    strip = lambda d: {k: c for k, c in d.items() if c}
    return strip(left) == strip(right)


def test_hopf_axioms_randomized():
    rng = random.Random(11)
    one = NcPoly.one(ABC, Q)
    for _ in range(40):
        f = rand_poly(rng)
        d = coproduct(f)
        assert coassociativity_holds(f)
        assert collapse_left(d) == f and collapse_right(d) == f
        eps = one.scale(counit(f))
        assert antipode_convolution(f, "left") == eps
        assert antipode_convolution(f, "right") == eps


def test_primitivity_report():
    rep = certify_primitive_family(build_uea(sl2()))
    assert rep.ok
    assert rep.failures == ()
    assert len(rep.certified_conclusions()) == 4

    rep2 = certify_primitive_family(build_as())
    assert not rep2.ok
    assert rep2.certified_conclusions() == ()
    defects = {e.label: e.defect for e in rep2.entries}
    # per-relation defect 2*(Y (x) Z + Z (x) Y) and its cyclic analogues
    alphabet = build_as().alphabet
    Y, Z = (alphabet.index("Y"),), (alphabet.index("Z"),)
    assert defects["R_X"] == TensorElement(alphabet, Q, {
        (Y, Z): Fraction(2), (Z, Y): Fraction(2)})
