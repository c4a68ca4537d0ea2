from fractions import Fraction

import pytest

from centrikit.centrify import (CentrifyError, Presentation, central_relations,
                                centrify, check_prop_gsbasis, obstacle,
                                specialize, z_presentation)
from centrikit.coeffs import FieldDescriptor
from centrikit.freealg import Alphabet, NcPoly
from centrikit.presets import (build_as, build_aw1, build_aw2, build_bi,
                               build_uea, sl2, solvable3)
from centrikit.rewrite import find_compositions

Q = FieldDescriptor.rationals()


def test_presentation_validation():
    ab = Alphabet.of("x")
    x = NcPoly.generator(ab, Q, "x")
    with pytest.raises(CentrifyError):
        Presentation("p", Q, ab, (("r", x), ("r", x + x)))
    with pytest.raises(CentrifyError):
        Presentation("p", Q, ab, (("r", x),), central=("missing",))
    with pytest.raises(CentrifyError):
        Presentation("p", Q, ab, (("r", NcPoly.zero(ab, Q)),))


def test_centrify_commutator_relations():
    p = build_as()
    c = centrify(p)
    assert len(c.relations) == 9  # three relations times three generators
    assert c.central == ()
    x = NcPoly.generator(p.alphabet, Q, "X")
    assert c.relation("comm(X,R_X)") == x * p.relation("R_X") - p.relation("R_X") * x


def test_centrify_drops_zero_commutators():
    ab = Alphabet.of("x", "y")
    x, y = (NcPoly.generator(ab, Q, n) for n in "xy")
    # x^2 commutes with x identically in the free algebra
    p = Presentation("p", Q, ab, (("r", x * x),), central=("r",))
    c = centrify(p)
    assert c.relation_names() == ("comm(y,r)",)


def test_z_presentation_shape():
    zp = z_presentation(build_as())
    assert zp.central_vars == (("R_X", "z_X"), ("R_Y", "z_Y"), ("R_Z", "z_Z"))
    r = dict(zp.relations)["R_X"]
    assert r.coeff(()).render() == "-z_X"
    assert zp.zeta("R_X").render() == "z_X"
    # non-monic base relation: zeta is scaled by the inverse leading coeff
    ab = Alphabet.of("x")
    x = NcPoly.generator(ab, Q, "x")
    p2 = Presentation("p", Q, ab, (("r", (x * x).scale(Fraction(2)) + x),),
                      central=("r",))
    assert z_presentation(p2).zeta("r").render() == "1/2*z_r"


def test_obstacle_values():
    p = build_as()
    zp = z_presentation(p)
    comp, = find_compositions(p.rewrite_system())
    obs = obstacle(zp, comp)
    assert not obs.element
    assert obs.trace.verify()

    u = build_uea(solvable3())
    zu = z_presentation(u)
    comp, = find_compositions(u.rewrite_system())
    obs = obstacle(zu, comp)
    assert obs.element.render() == "-2*z_yz"


def test_obstacle_requires_gs_base():
    ab = Alphabet.of("a", "b")
    a, b = (NcPoly.generator(ab, Q, n) for n in "ab")
    p = Presentation("p", Q, ab,
                     (("r1", a * b - NcPoly.one(ab, Q)), ("r2", b * a - b)),
                     central=("r1",))
    zp = z_presentation(p)
    comp = find_compositions(p.rewrite_system())[0]
    from centrikit.centrify import ObstacleError
    with pytest.raises(ObstacleError):
        obstacle(zp, comp)


def test_flatness_certificates():
    for p in (build_as(), build_aw2(), build_aw1()):
        cert = check_prop_gsbasis(z_presentation(p))
        assert cert.flat
        assert cert.witness is None
        assert all(c.reduced_to_zero for c in cert.checks)


def test_flatness_witness_for_solvable():
    zp = z_presentation(build_uea(solvable3()))
    cert = check_prop_gsbasis(zp)
    # the obstacle -2 z_yz is a nonzero constant: not reducible, not flat
    assert not cert.flat
    assert cert.witness is not None
    assert cert.witness.element.render() == "-2*z_yz"


def test_central_relations_bounded():
    zp = z_presentation(build_uea(solvable3()))
    gens, status, result = central_relations(zp, 6)
    assert status == "complete"
    assert [g.render() for g in gens] == ["z_yz"]

    zp2 = z_presentation(build_uea(sl2()))
    gens2, status2, _ = central_relations(zp2, 6)
    assert status2 == "complete" and gens2 == []


def test_specialize():
    zp = z_presentation(build_as())
    omega = {"z_X": Fraction(1), "z_Y": Fraction(-2), "z_Z": Fraction(1, 3)}
    out = specialize(zp, omega)
    want = build_bi([Fraction(1), Fraction(-2), Fraction(1, 3)])
    assert dict(out.relations) == dict(want.relations)
    with pytest.raises(CentrifyError):
        specialize(zp, {"z_X": Fraction(1)})


def test_specialize_respects_discovered_relations():
    zp = z_presentation(build_uea(solvable3()))
    gens, _, _ = central_relations(zp, 6)
    zp = zp.with_discovered(gens)  # z_yz must vanish
    bad = {"z_xy": Fraction(0), "z_xz": Fraction(0), "z_yz": Fraction(1)}
    with pytest.raises(CentrifyError):
        specialize(zp, bad)
    good = dict(bad, z_yz=Fraction(0))
    assert specialize(zp, good).relation("R_yz").render() == "y*z - z*y"
