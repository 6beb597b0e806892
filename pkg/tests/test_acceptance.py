"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line.  Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""

import contextlib
import io
import sys
import time
from pathlib import Path

import pytest

from oracle import h1_oracle
from pushout.algebra import square_span
from pushout.bimodule import annihilators, dual_module, is_induced, regular, restrict
from pushout.centralizer import absorbs, attach_envelope_actions, double_centralizer, universal_map
from pushout.cli import main as cli_main
from pushout.corpus import CORPUS_DIR
from pushout.derivation import (
    derivation_basis,
    h1,
    h1_enumerated,
    inner_witness_b,
    pull_back_inner,
    pushout,
    pushout_map,
    pushout_solution_space,
)
from pushout.documents import Library, load_json, parse_matrix
from pushout.duality import induced_dual_check, dual_iso, factorization_check, injectivity_surjectivity_check
from pushout.exactla import kernel
from pushout.verify import Report, _annihilator_checks, check_difference_form

LIB = Library(CORPUS_DIR)
MANIFEST = load_json(CORPUS_DIR / "manifest.json")


def _derivations(entry, env, x):
    out = []
    for ref in entry["derivations"]:
        if ref == "basis":
            out += derivation_basis(env.sub, x)
        else:
            out.append(LIB.derivation(ref, module=x))
    return out


def _pushout_instances():
    for entry in MANIFEST["pushout"]:
        env = LIB.envelope(entry["envelope"])
        xb = LIB.module(entry["module"])
        x = restrict(xb, env)
        dc = attach_envelope_actions(double_centralizer(x), env, xb)
        yield entry["name"], env, xb, dc, _derivations(entry, env, x)


def criterion_1():
    required = {"M2 identity envelope", "N3 in T3", "N2 in N2+"}
    names = {e["name"] for e in MANIFEST["pushout"]}
    t0 = time.perf_counter()
    bad, count = [], 0
    for name, env, xb, dc, derivs in _pushout_instances():
        for d in derivs:
            r = pushout(env, xb, d, dc)
            count += 1
            if not (r.membership_ok and r.derivation_ok and r.diagram_ok):
                bad.append(name)
    elapsed = time.perf_counter() - t0
    ok = required <= names and not bad and count > 0 and elapsed < 5
    return ok, f"{count} derivations, {len(bad)} failing, {elapsed:.2f} s (limit 5 s)"


def criterion_2():
    dense = checked = inner = 0
    bad = []
    for name, env, xb, dc, derivs in _pushout_instances():
        if not square_span(env.sub).is_full():
            continue
        dense += 1
        for d in derivs:
            r = pushout(env, xb, d, dc)
            checked += 1
            sol = pushout_solution_space(r)
            if sol is None or sol[1].dim != 0 or sol[0] != r.d_tilde.vec():
                bad.append(f"{name}: not unique")
            if inner_witness_b(r) is not None:
                pair = pull_back_inner(r)
                inner += 1
                if pair is None or pair.s - pair.t != d.map:
                    bad.append(f"{name}: D != S - T")
    ok = dense > 0 and checked > 0 and not bad
    return ok, f"{dense} dense instances, {checked} derivations unique, {inner} inner pulled back; failures={bad}"


def criterion_3():
    bad = []
    for ref in MANIFEST["modules"]:
        x = LIB.module(ref)
        data = dual_iso(x)
        checks = (data.predual.n_in_ker_mu(), data.ok, factorization_check(x, data),
                  injectivity_surjectivity_check(x, data))
        if not all(checks):
            bad.append((Path(ref).stem, checks))
    return not bad, f"{len(MANIFEST['modules'])} modules; failures={bad}"


def criterion_4():
    induced, bad = 0, []
    for ref in MANIFEST["modules"]:
        x = LIB.module(ref)
        if not is_induced(x)[0]:
            continue
        induced += 1
        rep = induced_dual_check(x)
        if not rep.ok:
            bad.append(Path(ref).stem)
    return induced > 0 and not bad, f"{induced} induced modules; failures={bad}"


def criterion_5():
    bad, runs = [], 0
    for ref in MANIFEST["modules"]:
        x = LIB.module(ref)
        for side in ("left", "right", "two-sided"):
            runs += 1
            passed, detail = _annihilator_checks(x, side)
            if not passed:
                bad.append(f"{Path(ref).stem}/{side}: {detail}")
    return not bad, f"{runs} module/side runs; failures={bad}"


def criterion_6():
    bad, done = [], 0
    for ref in MANIFEST["universal"]:
        doc, path = LIB.raw(ref)
        x = LIB.module(doc["module"], path.parent)
        xt = LIB.module(doc["x_tilde"], path.parent)
        j = parse_matrix(doc["j"], str(path), xt.dim, x.dim)
        if not annihilators(x).both.is_zero() or absorbs(xt, j) is not None:
            bad.append(f"{path.stem}: preconditions")
            continue
        u = universal_map(x, j, xt)
        done += 1
        if not (u.factors and u.solution_dim == 0):
            bad.append(path.stem)
    return done > 0 and not bad, f"{done} extensions factor uniquely; failures={bad}"


def criterion_7():
    bad = []
    t0 = time.perf_counter()
    results = []
    for entry in MANIFEST["h1"]:
        x = LIB.module(entry["module"])
        a, b = h1(x.alg, x), h1_enumerated(x.alg, x)
        results.append((entry, x, a, b))
    elapsed = time.perf_counter() - t0
    for entry, x, a, b in results:
        exp = entry["expected"]
        oracle = h1_oracle(x.alg, x)
        if not (a == b and a.as_dict() == exp and (exp["z1"], exp["b1"], exp["h1"]) == oracle):
            bad.append(Path(entry["module"]).stem)
    names = {Path(e["module"]).stem for e in MANIFEST["h1"]}
    ok = {"k_regular", "N2_regular", "M2_regular"} <= names and not bad and elapsed < 2
    return ok, f"{len(results)} table rows, both routes and sympy oracle agree; {elapsed:.2f} s (limit 2 s); failures={bad}"


def criterion_8():
    bad = []
    # commutative pair with dense square, X = A*: D~ = 0 forces D = 0
    comm = 0
    for entry in MANIFEST["scenarios"]["commutative_weak"]:
        env = LIB.envelope(entry["envelope"])
        xb = LIB.module(entry["module"])
        x = restrict(xb, env)
        a_star = dual_module(regular(env.sub))
        if not (env.sub.is_commutative() and env.amb.is_commutative() and square_span(env.sub).is_full()
                and x.left == a_star.left and x.right == a_star.right):
            bad.append(f"{entry['envelope']}: not a commutative dense A* instance")
            continue
        comm += 1
        dc = attach_envelope_actions(double_centralizer(x), env, xb)
        for d in derivation_basis(env.sub, x):
            if pushout(env, xb, d, dc).d_tilde.is_zero() and not d.map.is_zero():
                bad.append(f"{entry['envelope']}: D~ = 0 but D != 0")
        if not kernel(pushout_map(env, xb, dc)).is_zero():
            bad.append(f"{entry['envelope']}: some nonzero D has D~ = 0")
    # D = S - T whenever D~ is inner
    report = Report()
    for entry in MANIFEST["scenarios"]["difference_form"]:
        check_difference_form(report, LIB, entry)
    bad += [c.instance for c in report.checks if not c.passed]
    ok = comm > 0 and report.checks and not bad
    return ok, f"{comm} commutative instances, {len(report.checks)} S - T instances; failures={bad}"


def criterion_9():
    outs = []
    codes = []
    for _ in range(2):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            codes.append(cli_main(["--json", "verify"]))
        outs.append(buf.getvalue().encode())
    ok = outs[0] == outs[1] and codes == [0, 0] and len(outs[0]) > 0
    return ok, f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}, exit codes={codes}"


CRITERIA = [
    (1, "push-out derivation: membership, derivation rule, diagram", criterion_1),
    (2, "uniqueness and pull-back", criterion_2),
    (3, "predual identification of the dual's double centralizer", criterion_3),
    (4, "induced modules: iota of the dual bijective, ker mu in N", criterion_4),
    (5, "annihilator-free quotient stabilises", criterion_5),
    (6, "universal factoring through the double centralizer", criterion_6),
    (7, "H1 regression table", criterion_7),
    (8, "commutative and S - T scenarios", criterion_8),
    (9, "verify --json determinism", criterion_9),
]


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail))
    sys.exit(0 if all(results) else 1)
