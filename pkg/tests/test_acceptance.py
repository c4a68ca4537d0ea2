"""Acceptance suite.

Each test covers one numbered acceptance criterion, checks its exact
(tolerance-free) expected values within the stated time budget, and prints
one PASS/FAIL line directly to the terminal.
"""

import glob
import json
import os
import random
import time
from fractions import Fraction

import pytest

from centrikit.centrify import (central_relations, check_prop_gsbasis,
                                obstacle, specialize, z_presentation)
from centrikit.cli import main
from centrikit.coeffs import FieldDescriptor
from centrikit.freealg import NcPoly, TensorElement
from centrikit.hopf import (antipode_convolution, certify_primitive_family,
                            collapse_left, collapse_right, coproduct, counit,
                            word_coproduct)
from centrikit.parser import parse_presentation, print_presentation
from centrikit.presets import (abelian3, build_as, build_aw2, build_bi,
                               build_ruea, build_uea, cocycle_ideal, sl2,
                               sl2_restricted_gf3, solvable3)
from centrikit.rewrite import (complete, composition_element,
                               find_compositions, irreducible_words,
                               is_gs_basis, normal_form)
from centrikit.rewrite import _canonical_central

PRESET_DIR = os.path.join(os.path.dirname(__file__), "..",
                          "src", "centrikit", "data", "presets")


@pytest.fixture
def report(capsys, request):
    start = time.perf_counter()
    outcome = {"ok": False, "label": request.node.name}

    def done(label):
        outcome["ok"] = True
        outcome["label"] = label

    yield done
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        status = "PASS" if outcome["ok"] else "FAIL"
        print(f"{status} {outcome['label']} ({elapsed:.2f}s)")


def run_cli_json(args, tmp_path, name="report.json"):
    out = tmp_path / name
    code = main(list(args) + ["--format", "structured", "--out", str(out)])
    with open(out) as fh:
        return code, json.load(fh)


# -- criterion 1 -------------------------------------------------------------

def test_criterion_1_as_obstacle_vanishes(tmp_path, report):
    t0 = time.perf_counter()
    code, rep = run_cli_json(["obstacles", "--preset", "as"], tmp_path)
    assert code == 0
    assert len(rep["elements"]) == 1
    entry = rep["elements"][0]
    assert "overlap(R_Z, R_X)" in entry["composition"]
    assert entry["obstacle"] == "0"
    assert time.perf_counter() - t0 < 1.0
    report("criterion 1: spin-algebra obstacle is exactly 0 "
           "(single composition R_Z over R_X)")


# -- criterion 2 -------------------------------------------------------------

def test_criterion_2_aw_obstacle_vanishes(tmp_path, report):
    t0 = time.perf_counter()
    code, rep = run_cli_json(["obstacles", "--preset", "aw2"], tmp_path)
    assert code == 0
    assert len(rep["elements"]) == 1
    entry = rep["elements"][0]
    assert "overlap(R_C, R_A)" in entry["composition"]
    assert entry["obstacle"] == "0"
    assert time.perf_counter() - t0 < 1.0
    report("criterion 2: Askey-Wilson obstacle over Q(q) is exactly 0")


# -- criterion 3 -------------------------------------------------------------

def test_criterion_3_flatness_certificates(report):
    for p in (build_as(), build_aw2()):
        t0 = time.perf_counter()
        cert = check_prop_gsbasis(z_presentation(p))
        assert cert.flat
        assert time.perf_counter() - t0 < 1.0
    report("criterion 3: flatness certificates for the spin algebra and "
           "universal Askey-Wilson Z-presentations")


# -- criterion 4 -------------------------------------------------------------

def test_criterion_4_bannai_ito_specialization(report):
    t0 = time.perf_counter()
    rng = random.Random(42)
    zp = z_presentation(build_as())
    field = zp.base.field
    for _ in range(5):
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                for _ in range(3)]
        omega = {var: field.from_fraction(v)
                 for (_, var), v in zip(zp.central_vars, vals)}
        got = specialize(zp, omega)
        want = build_bi(vals)
        assert {n: r.monicize() for n, r in got.relations} == \
            {n: r.monicize() for n, r in want.relations}
        assert time.perf_counter() - t0 < 1.0
        t0 = time.perf_counter()
    report("criterion 4: specializing the spin-algebra Z-presentation at 5 "
           "random omega matches the Bannai-Ito builder")


# -- criterion 5 -------------------------------------------------------------

def test_criterion_5_central_relations_vs_cocycle_oracle(report):
    t0 = time.perf_counter()
    cases = ((sl2(), 0), (solvable3(), 1), (abelian3(), 0))
    for lie, count in cases:
        zp = z_presentation(build_uea(lie))
        gens, status, _ = central_relations(zp, 6)
        assert status == "complete"
        oracle = _canonical_central(cocycle_ideal(lie))
        assert _canonical_central(gens) == oracle
        assert len(oracle) == count
    assert time.perf_counter() - t0 < 5.0
    report("criterion 5: degree-6 central relations equal the 2-cocycle "
           "oracle for sl2 (none), solvable (z_yz), abelian (none)")


# -- criterion 6 -------------------------------------------------------------

def test_criterion_6_restricted_sl2_gf3(report):
    t0 = time.perf_counter()
    lie = sl2_restricted_gf3()
    p = build_ruea(lie)
    zp = z_presentation(p)  # J0 = the three p-power relations
    res = complete(zp.rewrite_system(), 8)
    assert res.status == "complete"

    # rules = the (already confluent) enveloping-algebra commutator rules ...
    gf3 = p.field
    uea_gf3 = build_uea(sl2(gf3)).rewrite_system()
    commutator_rules = {r.name: r.poly for r in res.system.rules
                        if r.name in ("R_ef", "R_eh", "R_fh")}
    expected = {r.name: r.poly.lift(zp.ring) for r in uea_gf3.rules}
    assert commutator_rules == expected

    # ... together with the p-centre generators e^3, f^3, h^3 - h
    ring = zp.ring
    e, f, h = (NcPoly.generator(p.alphabet, ring, g) for g in "efh")
    zvals = {name: ring.variable(var) for name, var in zp.central_vars}
    central_rules = {r.name: r.poly for r in res.system.rules
                     if r.name in ("R_e", "R_f", "R_h")}
    assert central_rules == {
        "R_e": e * e * e - NcPoly.constant(p.alphabet, ring, zvals["R_e"]),
        "R_f": f * f * f - NcPoly.constant(p.alphabet, ring, zvals["R_f"]),
        "R_h": h * h * h - h - NcPoly.constant(p.alphabet, ring, zvals["R_h"]),
    }
    assert len(res.system.rules) == 6

    # irreducible words: exactly the 27 = 3^3 monomials with exponents < 3
    words = irreducible_words(res.system, 8)
    assert len(words) == 27
    for w in words:
        assert all(w.count(i) < 3 for i in range(3))
    assert time.perf_counter() - t0 < 30.0
    report("criterion 6: restricted sl2 over GF(3) completes to the "
           "enveloping rules plus the p-centre; 27 irreducible words")


# -- criterion 7 -------------------------------------------------------------

def test_criterion_7_primitivity_suite(report):
    t0 = time.perf_counter()
    assert certify_primitive_family(build_uea(sl2())).ok
    assert certify_primitive_family(build_ruea(sl2_restricted_gf3())).ok

    rep_q = certify_primitive_family(build_as())
    assert not rep_q.ok
    p = build_as()
    Q = p.field
    idx = {g: (p.alphabet.index(g),) for g in "XYZ"}
    two = Fraction(2)
    expected = {
        "R_X": TensorElement(p.alphabet, Q, {(idx["Y"], idx["Z"]): two,
                                             (idx["Z"], idx["Y"]): two}),
        "R_Y": TensorElement(p.alphabet, Q, {(idx["X"], idx["Z"]): two,
                                             (idx["Z"], idx["X"]): two}),
        "R_Z": TensorElement(p.alphabet, Q, {(idx["X"], idx["Y"]): two,
                                             (idx["Y"], idx["X"]): two}),
    }
    defects = {e.label: e.defect for e in rep_q.entries if e.label in expected}
    assert defects == expected

    assert certify_primitive_family(
        build_as(FieldDescriptor.prime_field(2))).ok
    assert time.perf_counter() - t0 < 1.0
    report("criterion 7: primitivity certificates (sl2 and restricted pass; "
           "spin algebra fails over Q with defect 2(Y@Z+Z@Y), passes over GF(2))")


# -- criterion 8 -------------------------------------------------------------

def test_criterion_8_hopf_axiom_property_tests(report):
    t0 = time.perf_counter()
    p = build_as()
    alphabet, field = p.alphabet, p.field
    one = NcPoly.one(alphabet, field)
    rng = random.Random(8)

    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 5)):
            w = tuple(rng.randrange(3) for _ in range(rng.randint(0, 3)))
            terms[w] = Fraction(rng.randint(-6, 6))
        return NcPoly(alphabet, field, terms)

    for _ in range(100):
        f = rand_poly()
        d = coproduct(f)
        # coassociativity via triple splits
        left, right = {}, {}
        for (u, v), c in d.terms.items():
            for u1, u2 in word_coproduct(u):
                left[(u1, u2, v)] = left.get((u1, u2, v), Fraction(0)) + c
            for v1, v2 in word_coproduct(v):
                right[(u, v1, v2)] = right.get((u, v1, v2), Fraction(0)) + c
        assert {k: c for k, c in left.items() if c} == \
            {k: c for k, c in right.items() if c}
        # counit axioms
        assert collapse_left(d) == f and collapse_right(d) == f
        # antipode convolution identities
        eps = one.scale(counit(f))
        assert antipode_convolution(f, "left") == eps
        assert antipode_convolution(f, "right") == eps
    assert time.perf_counter() - t0 < 10.0
    report("criterion 8: Hopf axioms hold exactly on 100 random polynomials "
           "of degree <= 3 over Q")


# -- criterion 9 -------------------------------------------------------------

def test_criterion_9_confluence_oracle(report):
    t0 = time.perf_counter()
    systems = [build_as().rewrite_system(),
               complete(build_uea(sl2()).rewrite_system(), 6).system]
    for sys_ in systems:
        n = len(sys_.alphabet)
        all_words = [()]
        frontier = [()]
        for _ in range(5):
            frontier = [w + (i,) for w in frontier for i in range(n)]
            all_words.extend(frontier)
        for w in all_words:
            f = NcPoly.from_word(sys_.alphabet, sys_.ring, w)
            det = normal_form(f, sys_)
            for seed in range(10):
                assert normal_form(f, sys_, rng=random.Random(seed)) == det
    assert time.perf_counter() - t0 < 30.0
    report("criterion 9: strategy-independent normal forms for all words of "
           "length <= 5 (deterministic plus 10 random strategies)")


# -- criterion 10 ------------------------------------------------------------

def obstacle_identity_holds(zp, comp):
    """(R_j - z_j) composed below abc equals the lifted base trace plus Obs."""
    obs = obstacle(zp, comp)
    z_sys = zp.rewrite_system()
    ring = zp.ring
    lhs = composition_element(z_sys, comp)
    rhs = obs.element
    for beta, u, name, v in obs.trace.steps:
        rhs = rhs + z_sys.rule(name).poly.shift(u, v).scale(ring.embed(beta))
    return lhs == rhs


def test_criterion_10_obstacle_identity(report):
    bases = [build_as(), build_aw2(),
             build_uea(sl2()), build_uea(solvable3()), build_uea(abelian3())]
    checked = 0
    for p in bases:
        zp = z_presentation(p)
        for comp in find_compositions(p.rewrite_system()):
            assert obstacle_identity_holds(zp, comp)
            checked += 1
    assert checked >= 5
    report(f"criterion 10: obstacle defining identity verified by symbolic "
           f"expansion on all {checked} compositions from criteria 1-5")


# -- criterion 11 ------------------------------------------------------------

def test_criterion_11_round_trip_determinism_verify_paper(tmp_path, report):
    t0 = time.perf_counter()
    files = sorted(glob.glob(os.path.join(PRESET_DIR, "*.alg")))
    assert files
    for path in files:
        with open(path) as fh:
            p = parse_presentation(fh.read()).presentation
        canonical = print_presentation(p)
        assert parse_presentation(canonical).presentation == p
        assert print_presentation(parse_presentation(canonical).presentation) \
            == canonical
        # byte-identical structured reports, timing excluded
        code1, rep1 = run_cli_json(["gsb-check", path], tmp_path, "a.json")
        code2, rep2 = run_cli_json(["gsb-check", path], tmp_path, "b.json")
        assert code1 == code2
        rep1.pop("timing"), rep2.pop("timing")
        assert json.dumps(rep1) == json.dumps(rep2)
    code, rep = run_cli_json(["verify-paper"], tmp_path)
    assert code == 0
    assert rep["verdicts"]["all_passed"] is True
    assert time.perf_counter() - t0 < 60.0
    report("criterion 11: parser round-trip and report determinism on all "
           "bundled presets; verify-paper exits 0")
