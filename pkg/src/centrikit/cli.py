"""Command line interface and the paper-reproduction suite.

Exit status: 0 on mathematical success (e.g. certificate flat), 1 on
mathematical failure (witness found), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from .centrify import (CentrifyError, Presentation, ZPresentation, centrify,
                       central_relations, check_prop_gsbasis, obstacle,
                       specialize, z_presentation)
from .coeffs import CoeffError, FieldDescriptor
from .hopf import certify_primitive_family
from .parser import ParseError, parse_presentation, print_presentation
from .presets import (PresetError, abelian3, build_as, build_aw1, build_aw2,
                      build_bi, build_ruea, build_uea, cocycle_ideal,
                      sl2, sl2_restricted_gf3, solvable3)
from .rewrite import (CompletionError, find_compositions, is_gs_basis,
                      complete as complete_system)


class UsageError(Exception):
    pass


def _fractions(text: str) -> List[Fraction]:
    return [Fraction(part.strip()) for part in text.split(",")]


def load_presentation(args) -> Presentation:
    if getattr(args, "preset", None) and getattr(args, "source", None):
        raise UsageError("give either a file or --preset, not both")
    if getattr(args, "preset", None):
        name = args.preset
        if name == "as":
            return build_as()
        if name == "aw1":
            return build_aw1()
        if name == "aw2":
            return build_aw2()
        if name == "bi":
            if not getattr(args, "omega", None):
                raise UsageError("preset bi needs --omega w1,w2,w3")
            return build_bi(_fractions(args.omega))
        if name == "uea-sl2":
            return build_uea(sl2())
        if name == "uea-solvable":
            return build_uea(solvable3())
        if name == "uea-abelian":
            return build_uea(abelian3())
        if name == "ruea-sl2-gf3":
            return build_ruea(sl2_restricted_gf3())
        raise UsageError(f"unknown preset {name!r}")
    if getattr(args, "source", None):
        with open(args.source, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read()).presentation
    raise UsageError("no input: give a presentation file or --preset")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def make_report(command: str, p: Optional[Presentation], args) -> Dict:
    digest_src = ""
    if p is not None:
        digest_src = print_presentation(p)
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("func", "format", "out") and v is not None}
    digest = hashlib.sha256((digest_src + repr(flags)).encode()).hexdigest()[:16]
    return {
        "command": command,
        "inputs": {"digest": digest,
                   "presentation": p.name if p is not None else None},
        "verdicts": {},
        "elements": [],
        "_t0": time.perf_counter(),
    }


def emit(report: Dict, args, text_lines: List[str]):
    report["timing"] = {"seconds": round(time.perf_counter() - report.pop("_t0"), 6)}
    if args.format == "structured":
        payload = json.dumps(report, indent=2) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_parse(args) -> int:
    p = load_presentation(args)
    report = make_report("parse", p, args)
    canonical = print_presentation(p)
    report["verdicts"]["parsed"] = True
    report["elements"] = canonical.splitlines()
    emit(report, args, [canonical.rstrip("\n")])
    return 0


def cmd_preset(args) -> int:
    p = load_presentation(args)
    report = make_report("preset", p, args)
    canonical = print_presentation(p)
    report["elements"] = canonical.splitlines()
    emit(report, args, [canonical.rstrip("\n")])
    return 0


def cmd_centrify(args) -> int:
    p = load_presentation(args)
    report = make_report("centrify", p, args)
    out = centrify(p)
    canonical = print_presentation(out)
    report["verdicts"]["relations"] = len(out.relations)
    report["elements"] = canonical.splitlines()
    emit(report, args, [canonical.rstrip("\n")])
    return 0


def cmd_zpres(args) -> int:
    p = load_presentation(args)
    report = make_report("zpres", p, args)
    zp = z_presentation(p)
    lines = [f"central variables: {', '.join(v for _, v in zp.central_vars)}"]
    for n, poly in zp.relations:
        lines.append(f"relation {n}: {poly.render()}")
    report["elements"] = lines
    emit(report, args, lines)
    return 0


def cmd_gsb_check(args) -> int:
    p = load_presentation(args)
    report = make_report("gsb-check", p, args)
    cert = is_gs_basis(p.rewrite_system())
    report["verdicts"]["groebner_shirshov"] = cert.ok
    lines = [f"groebner-shirshov: {cert.ok}"]
    if not cert.ok:
        witness = cert.witness.describe(p.alphabet)
        report["elements"] = [witness, cert.remainder.render()]
        lines.append(f"witness: {witness} leaves {cert.remainder.render()}")
    emit(report, args, lines)
    return 0 if cert.ok else 1


def cmd_complete(args) -> int:
    p = load_presentation(args)
    report = make_report("complete", p, args)
    zp = z_presentation(p)
    sys_in = zp.rewrite_system() if zp.j0 else p.rewrite_system()
    result = complete_system(sys_in, args.max_degree)
    lines = [f"status: {result.status}"]
    report["verdicts"]["status"] = result.status
    for r in result.system.rules:
        lines.append(f"rule {r.name}: {r.poly.render()}")
        report["elements"].append(f"rule {r.name}: {r.poly.render()}")
    for c in result.system.central_relations:
        lines.append(f"central relation: {c.render()}")
        report["elements"].append(f"central relation: {c.render()}")
    report["log"] = [{"j": rec.j, "k": rec.k,
                      "abc": p.alphabet.render_word(rec.abc),
                      "remainder": rec.remainder.render(),
                      "action": rec.action} for rec in result.log]
    emit(report, args, lines)
    return 0


def cmd_obstacles(args) -> int:
    p = load_presentation(args)
    report = make_report("obstacles", p, args)
    base_sys = p.rewrite_system()
    cert = is_gs_basis(base_sys)
    if not cert.ok:
        report["verdicts"]["base_groebner_shirshov"] = False
        emit(report, args, ["base presentation is not a Groebner-Shirshov basis"])
        return 1
    zp = z_presentation(p)
    lines = []
    all_zero = True
    for comp in find_compositions(base_sys):
        obs = obstacle(zp, comp)
        rendered = obs.element.render()
        all_zero = all_zero and not obs.element
        lines.append(f"{comp.describe(p.alphabet)}: obstacle {rendered}")
        report["elements"].append({
            "composition": comp.describe(p.alphabet),
            "obstacle": rendered,
            "trace_steps": len(obs.trace.steps),
        })
    report["verdicts"]["base_groebner_shirshov"] = True
    report["verdicts"]["all_obstacles_zero"] = all_zero
    emit(report, args, lines)
    return 0


def cmd_prop_check(args) -> int:
    p = load_presentation(args)
    report = make_report("prop-check", p, args)
    zp = z_presentation(p)
    cert = check_prop_gsbasis(zp, search_budget=args.search_budget)
    report["verdicts"]["flat"] = cert.flat
    lines = [f"certificate: {'flat' if cert.flat else 'witness found'}"]
    for chk in cert.checks:
        desc = chk.composition.describe(p.alphabet)
        status = "reduces to zero" if chk.reduced_to_zero \
            else f"remainder {chk.remainder.render()}"
        lines.append(f"{desc}: obstacle {chk.obstacle.element.render()} ({status})")
        report["elements"].append({"composition": desc,
                                   "obstacle": chk.obstacle.element.render(),
                                   "reduced_to_zero": chk.reduced_to_zero})
    emit(report, args, lines)
    return 0 if cert.flat else 1


def cmd_central_relations(args) -> int:
    p = load_presentation(args)
    report = make_report("central-relations", p, args)
    zp = z_presentation(p)
    gens, status, _ = central_relations(zp, args.max_degree)
    report["verdicts"]["status"] = status
    report["verdicts"]["generators"] = len(gens)
    lines = [f"status: {status}"]
    for g in gens:
        lines.append(f"generator: {g.render()}")
        report["elements"].append(g.render())
    if not gens:
        lines.append("no central relations up to the degree bound")
    emit(report, args, lines)
    return 0


def cmd_specialize(args) -> int:
    p = load_presentation(args)
    report = make_report("specialize", p, args)
    zp = z_presentation(p)
    if not args.omega:
        raise UsageError("specialize needs --omega v1,v2,...")
    values = _fractions(args.omega)
    if len(values) != len(zp.central_vars):
        raise UsageError(f"expected {len(zp.central_vars)} omega values")
    omega = {var: p.field.from_fraction(v)
             for (_, var), v in zip(zp.central_vars, values)}
    try:
        out = specialize(zp, omega)
    except CentrifyError as e:
        report["verdicts"]["specialized"] = False
        emit(report, args, [str(e)])
        return 1
    canonical = print_presentation(out)
    report["verdicts"]["specialized"] = True
    report["elements"] = canonical.splitlines()
    emit(report, args, [canonical.rstrip("\n")])
    return 0


def cmd_hopf_check(args) -> int:
    p = load_presentation(args)
    report = make_report("hopf-check", p, args)
    rep = certify_primitive_family(p)
    report["verdicts"]["all_primitive"] = rep.ok
    lines = [f"all primitive: {rep.ok}"]
    for e in rep.entries:
        if e.primitive:
            report["elements"].append({"element": e.label, "primitive": True})
        else:
            lines.append(f"{e.label}: defect {e.defect.render()}")
            report["elements"].append({"element": e.label, "primitive": False,
                                       "defect": e.defect.render()})
    for c in rep.certified_conclusions():
        lines.append(f"certified: {c}")
        report["elements"].append({"certified": c})
    emit(report, args, lines)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------

def _check_obstacles_vanish(p: Presentation, expected: str):
    base_sys = p.rewrite_system()
    if not is_gs_basis(base_sys).ok:
        return False, "base is not a Groebner-Shirshov basis"
    comps = find_compositions(base_sys)
    if len(comps) != 1:
        return False, f"{len(comps)} compositions, expected 1"
    comp = comps[0]
    if (comp.j, comp.k) != tuple(expected.split("|")):
        return False, f"unexpected composition {comp.j}, {comp.k}"
    obs = obstacle(z_presentation(p), comp)
    if obs.element:
        return False, f"obstacle {obs.element.render()}"
    return True, "single composition, obstacle 0"


def _check_bi_specialization(seed: int = 20200123):
    rng = random.Random(seed)
    zp = z_presentation(build_as())
    field = zp.base.field
    for _ in range(5):
        values = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)]
        omega = {var: field.from_fraction(v)
                 for (_, var), v in zip(zp.central_vars, values)}
        got = specialize(zp, omega)
        want = build_bi(values)
        got_rel = {n: r.monicize() for n, r in got.relations}
        want_rel = {n: r.monicize() for n, r in want.relations}
        if got_rel != want_rel:
            return False, f"mismatch at omega={values}"
    return True, "5 randomized specializations match"


def _check_central_vs_cocycle():
    from .rewrite import _canonical_central
    cases = (("sl2", sl2(), 0), ("solvable", solvable3(), 1),
             ("abelian", abelian3(), 0))
    for label, lie, expected_count in cases:
        zp = z_presentation(build_uea(lie))
        gens, status, _ = central_relations(zp, 6)
        oracle = _canonical_central(cocycle_ideal(lie))
        if status != "complete":
            return False, f"{label}: completion truncated"
        if _canonical_central(gens) != oracle:
            return False, (f"{label}: completion gives "
                           f"{[g.render() for g in gens]}, cocycle oracle "
                           f"{[g.render() for g in oracle]}")
        if len(oracle) != expected_count:
            return False, f"{label}: expected {expected_count} generators"
    return True, "completion matches the 2-cocycle oracle on all three cases"


def cmd_verify_paper(args) -> int:
    report = make_report("verify-paper", None, args)
    checks = []

    ok, detail = _check_obstacles_vanish(build_as(), "R_Z|R_X")
    checks.append(("spin-algebra obstacle vanishes", ok, detail))
    ok, detail = _check_obstacles_vanish(build_aw2(), "R_C|R_A")
    checks.append(("askey-wilson obstacle vanishes", ok, detail))
    for label, p in (("spin-algebra", build_as()), ("askey-wilson", build_aw2())):
        cert = check_prop_gsbasis(z_presentation(p),
                                  search_budget=args.search_budget)
        checks.append((f"{label} centrification is flat", cert.flat,
                       "all obstacles reduce to zero" if cert.flat
                       else "witness found"))
    ok, detail = _check_bi_specialization()
    checks.append(("bannai-ito specialization", ok, detail))
    ok, detail = _check_central_vs_cocycle()
    checks.append(("central relations vs cocycle oracle", ok, detail))

    lines = []
    all_ok = True
    for label, ok, detail in checks:
        all_ok = all_ok and ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
        report["elements"].append({"check": label, "pass": ok, "detail": detail})
    report["verdicts"]["all_passed"] = all_ok
    lines.append(f"verify-paper: {'all checks passed' if all_ok else 'FAILURES'}")
    emit(report, args, lines)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="centrikit",
        description="Exact workbench for centrification of algebra "
                    "presentations and Groebner-Shirshov certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True):
        sp = sub.add_parser(name)
        if needs_input:
            sp.add_argument("source", nargs="?", help="presentation file")
            sp.add_argument("--preset", help="built-in presentation name")
            sp.add_argument("--omega", help="comma-separated scalar values")
        sp.add_argument("--max-degree", type=int, default=6)
        sp.add_argument("--search-budget", type=int, default=16)
        sp.add_argument("--format", choices=("text", "structured"),
                        default="text")
        sp.add_argument("--out", help="write the report to a file")
        sp.set_defaults(func=fn)
        return sp

    add("parse", cmd_parse)
    add("preset", cmd_preset)
    add("centrify", cmd_centrify)
    add("zpres", cmd_zpres)
    add("gsb-check", cmd_gsb_check)
    add("complete", cmd_complete)
    add("obstacles", cmd_obstacles)
    add("prop-check", cmd_prop_check)
    add("central-relations", cmd_central_relations)
    add("specialize", cmd_specialize)
    add("hopf-check", cmd_hopf_check)
    add("verify-paper", cmd_verify_paper, needs_input=False)
    return ap


def _apply_memory_cap():
    """Honor CENTRIKIT_MEMORY_LIMIT_MB for completion runs."""
    limit = os.environ.get("CENTRIKIT_MEMORY_LIMIT_MB")
    if not limit:
        return
    try:
        import resource
        nbytes = int(limit) * 1024 * 1024
        resource.setrlimit(resource.RLIMIT_AS, (nbytes, nbytes))
    except (ImportError, ValueError, OSError):
        pass


def main(argv=None) -> int:
    args = build_argparser().parse_args(argv)
    _apply_memory_cap()
    try:
        return args.func(args)
    except (UsageError, ParseError, FileNotFoundError, PresetError,
            CoeffError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CentrifyError, CompletionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
