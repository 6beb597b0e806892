"""Corpus-wide verification driver.

Reads ``manifest.json`` from a corpus directory and runs every identity check
on every listed instance.  Each check yields one :class:`Check` row; the
report is deterministic so that ``--json`` output can be compared byte for byte.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import square_span
from .bimodule import (
    Bimodule,
    annihilator_free_quotient,
    dual_module,
    hom_tensor_duality_check,
    is_induced,
    is_invariant,
    multiplication_map,
    outer_tensor,
    quotient_module,
    regular,
    restrict,
    side_annihilator,
    submodule,
)
from .centralizer import attach_envelope_actions, double_centralizer, iota, universal_map
from .derivation import (
    Derivation,
    derivation_basis,
    h1,
    h1_enumerated,
    inner_witness_b,
    is_inner,
    pull_back_inner,
    pushout,
    pushout_map,
    pushout_of_inner_matches,
    pushout_unique,
)
from .documents import Library, load_json, parse_matrix
from .duality import induced_dual_check, dual_iso, factorization_check, injectivity_surjectivity_check
from .errors import PushoutError
from .exactla import LinMap, kernel

log = logging.getLogger(__name__)

GROUPS = (
    "pushout",
    "pushout-uniqueness",
    "pull-back",
    "predual",
    "induced-dual",
    "annihilator-quotient",
    "universal",
    "hom-tensor",
    "h1-table",
    "amenable-ideal",
    "commutative-weak",
    "difference-form",
    "self-induced-ideal",
)


@dataclass(frozen=True)
class Check:
    group: str
    instance: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"group": self.group, "instance": self.instance,
                "status": "PASS" if self.passed else "FAIL", "detail": self.detail}


@dataclass
class Report:
    instances: int = 0
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, group: str, instance: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(group, instance, bool(passed), detail))

    def summary(self) -> dict:
        out = {}
        for g in GROUPS:
            rows = [c for c in self.checks if c.group == g]
            if rows:
                out[g] = {"pass": sum(c.passed for c in rows), "fail": sum(not c.passed for c in rows)}
        return out

    def as_dict(self) -> dict:
        return {
            "instances": self.instances,
            "ok": self.ok,
            "summary": self.summary(),
            "checks": [c.as_dict() for c in self.checks],
            "warnings": list(self.warnings),
        }

    def text(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.group:<22} {c.instance}" + (f"  ({c.detail})" if c.detail else "")
                 for c in self.checks]
        lines.append("")
        lines.append(f"{self.instances} instances")
        for g, s in self.summary().items():
            status = "PASS" if s["fail"] == 0 else "FAIL"
            lines.append(f"{status}  {g:<22} {s['pass']} passed, {s['fail']} failed")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _guard(report: Report, group: str, instance: str, fn) -> None:
    """Run fn(); document and validation errors become FAIL rows for this instance."""
    try:
        fn()
    except PushoutError as exc:
        report.add(group, instance, False, f"{type(exc).__name__}: {exc}")
    except (ValueError, AssertionError) as exc:
        report.add(group, instance, False, f"{type(exc).__name__}: {exc}")


# ---------------------------------------------------------------------------
# individual suites


def check_pushout_instance(report: Report, lib: Library, entry: dict) -> None:
    name = entry.get("name", entry["envelope"])
    env = lib.envelope(entry["envelope"])
    x_b = lib.module(entry["module"])
    x = restrict(x_b, env)
    dc = attach_envelope_actions(double_centralizer(x), env, x_b)
    dense = square_span(env.sub).is_full()

    derivs: list[tuple[str, Derivation]] = []
    for ref in entry.get("derivations", ["basis"]):
        if ref == "basis":
            derivs += [(f"basis[{i}]", d) for i, d in enumerate(derivation_basis(env.sub, x))]
        else:
            derivs.append((Path(ref).stem, lib.derivation(ref, module=x)))
    if not derivs:
        report.add("pushout", f"{name}", True, "Z1 = 0, nothing to extend")
    for label, d in derivs:
        inst = f"{name} / {label}"
        r = pushout(env, x_b, d, dc)
        report.add("pushout", inst, r.ok,
                   f"membership={r.membership_ok} derivation={r.derivation_ok} diagram={r.diagram_ok}")
        witness = is_inner(d)
        if witness is not None:
            report.add("pushout", inst + " / inner expansion", pushout_of_inner_matches(r, witness))
        if dense:
            report.add("pushout-uniqueness", inst, pushout_unique(r))
            pair = pull_back_inner(r)
            report.add("pull-back", inst, True,
                       "D~ not inner" if pair is None else "D = S - T verified")


def check_module(report: Report, lib: Library, ref: str) -> None:
    x = lib.module(ref)
    name = Path(ref).stem
    data = dual_iso(x)
    report.add("predual", f"{name} / N in ker mu", data.predual.n_in_ker_mu())
    report.add("predual", f"{name} / DC(X*) = Q*", data.ok,
               f"dim DC(X*)={data.dc_dual.dim} dim Q={data.predual.quotient.dim}")
    report.add("predual", f"{name} / q* iota = mu*", factorization_check(x, data))
    report.add("predual", f"{name} / injective iff onto", injectivity_surjectivity_check(x, data))

    hd = hom_tensor_duality_check(x)
    report.add("hom-tensor", name, hd.ok, f"left={hd.left_ok} right={hd.right_ok}")

    induced, _ = is_induced(x)
    if induced:
        c = induced_dual_check(x)
        report.add("induced-dual", name, c.ok, f"iota bijective={c.iota_bijective} ker mu in N={c.ker_mu_in_n}")

    for side in ("left", "right", "two-sided"):
        report.add("annihilator-quotient", f"{name} / {side}", *_annihilator_checks(x, side))


def _annihilator_checks(x: Bimodule, side: str) -> tuple[bool, str]:
    res = annihilator_free_quotient(x, side)
    ok_steps = res.steps <= x.dim
    ok_free = side_annihilator(res.quotient, side).is_zero()
    ok_idem = annihilator_free_quotient(res.quotient, side).n.is_zero()
    # every earlier stage still leaves a nonzero annihilator behind
    ok_minimal = all(
        is_invariant(x, st) and not side_annihilator(quotient_module(x, st)[0], side).is_zero()
        for st in res.stages[:-1]
    )
    ok_chain = all(b.contains(a) for a, b in zip(res.stages, res.stages[1:]))
    passed = ok_steps and ok_free and ok_idem and ok_minimal and ok_chain
    return passed, f"dim N={res.n.dim} steps={res.steps}"


def check_universal(report: Report, lib: Library, ref: str) -> None:
    doc, path = lib.raw(ref)
    base = path.parent
    x = lib.module(doc["module"], base)
    xt = lib.module(doc["x_tilde"], base)
    j = parse_matrix(doc["j"], f"{path}: j", xt.dim, x.dim)
    u = universal_map(x, j, xt)
    report.add("universal", Path(ref).stem, u.factors and u.solution_dim == 0,
               f"factors={u.factors} free parameters={u.solution_dim}")


def check_h1(report: Report, lib: Library, entry: dict) -> None:
    x = lib.module(entry["module"])
    name = Path(entry["module"]).stem
    a = h1(x.alg, x)
    b = h1_enumerated(x.alg, x)
    exp = entry.get("expected")
    passed = a == b and (exp is None or a.as_dict() == exp)
    report.add("h1-table", name, passed, f"solve={a.as_dict()} enumerated={b.as_dict()} expected={exp}")


def check_amenable_ideal(report: Report, lib: Library, entry: dict) -> None:
    """Ideal with identity in an amenable B, induced X: derivations into X* are inner."""
    env = lib.envelope(entry["envelope"])
    x_b = lib.module(entry["module"])
    name = f"{Path(entry['envelope']).stem} / {Path(entry['module']).stem}*"
    x = restrict(x_b, env)
    induced, _ = is_induced(x)
    xs_b = dual_module(x_b)
    xs = restrict(xs_b, env)
    dc = attach_envelope_actions(double_centralizer(xs), env, xs_b)
    io = iota(dc)
    iota_iso = io.rows == io.cols and io.rank() == io.rows
    b_cohomology = h1(env.amb, dc.b_module)
    all_inner = True
    for d in derivation_basis(env.sub, xs):
        r = pushout(env, xs_b, d, dc)
        pair = pull_back_inner(r)
        all_inner &= r.ok and pair is not None and is_inner(d) is not None
    passed = induced and iota_iso and b_cohomology.h1 == 0 and all_inner
    report.add("amenable-ideal", name, passed,
               f"induced={induced} iota iso={iota_iso} H1(B,DC(X*))={b_cohomology.h1} all inner={all_inner}")


def check_commutative_weak(report: Report, lib: Library, entry: dict) -> None:
    """Commutative pair, X = A*: D~ = 0 forces D = 0."""
    env = lib.envelope(entry["envelope"])
    x_b = lib.module(entry["module"])
    name = Path(entry["envelope"]).stem
    x = restrict(x_b, env)
    a_star = dual_module(regular(env.sub))
    is_a_star = x.dim == a_star.dim and x.left == a_star.left and x.right == a_star.right
    commutative = env.sub.is_commutative() and env.amb.is_commutative()
    dense = square_span(env.sub).is_full()
    dc = attach_envelope_actions(double_centralizer(x), env, x_b)
    symmetric = dc.b_module.left == dc.b_module.right
    iota_mono = kernel(iota(dc)).is_zero()
    pm = pushout_map(env, x_b, dc)
    injective = kernel(pm).is_zero()
    z_b = h1(env.amb, dc.b_module)
    # Z1(B, DC) = 0 (weak amenability of B on this module) must kill Z1(A, A*)
    z_a = h1(env.sub, x)
    consistent = z_b.z1 != 0 or z_a.z1 == 0
    passed = is_a_star and commutative and dense and symmetric and iota_mono and injective and consistent
    report.add("commutative-weak", name, passed,
               f"symmetric={symmetric} iota mono={iota_mono} D->D~ injective={injective} "
               f"Z1(B,DC)={z_b.z1} Z1(A,A*)={z_a.z1}")


def check_difference_form(report: Report, lib: Library, entry: dict) -> None:
    """Whenever D~ is inner, D = S - T for a double centralizer (S, T) of X*."""
    env = lib.envelope(entry["envelope"])
    x_b = lib.module(entry["module"])
    name = f"{Path(entry['envelope']).stem} / {Path(entry['module']).stem}*"
    xs_b = dual_module(x_b)
    xs = restrict(xs_b, env)
    dc = attach_envelope_actions(double_centralizer(xs), env, xs_b)
    total = inner = 0
    for d in derivation_basis(env.sub, xs):
        r = pushout(env, xs_b, d, dc)
        total += 1
        if inner_witness_b(r) is not None:
            pull_back_inner(r)  # raises if S - T != D
            inner += 1
    report.add("difference-form", name, True, f"{inner} of {total} push-outs inner, all of form S - T")


def check_self_induced_ideal(report: Report, lib: Library, entry: dict) -> None:
    """Ideal of a semisimple envelope: self-induced, and H1(A, DC(X)) = 0 for X = ker(A (x) A -> A)."""
    env = lib.envelope(entry["envelope"])
    a = env.sub
    name = Path(entry["envelope"]).stem
    self_ind = _self_induced(a)
    outer = outer_tensor(a)
    raw = LinMap.from_columns([a.mult[i][j] for i in range(a.dim) for j in range(a.dim)], a.dim)
    ker = kernel(raw)
    x = submodule(outer, ker, name=f"ker m on {a.name}")
    dc = double_centralizer(x)
    dc2 = double_centralizer(dc.module)
    io = iota(dc2)
    iota_iso = io.rows == io.cols and io.rank() == io.rows
    coh = h1(a, dc.module)
    passed = self_ind and iota_iso and coh.h1 == 0
    report.add("self-induced-ideal", name, passed,
               f"self-induced={self_ind} iota_DC iso={iota_iso} H1(A,DC(X))={coh.h1}")


def _self_induced(a) -> bool:
    _, m = multiplication_map(a)
    return m.rows == m.cols and m.rank() == m.rows


SCENARIOS = {
    "amenable_ideal": ("amenable-ideal", check_amenable_ideal),
    "commutative_weak": ("commutative-weak", check_commutative_weak),
    "difference_form": ("difference-form", check_difference_form),
    "self_induced_ideal": ("self-induced-ideal", check_self_induced_ideal),
}


def run_verification(root: Path) -> Report:
    root = Path(root)
    report = Report()
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        report.warnings.append(f"no manifest.json in {root}; 0 instances")
        return report
    manifest = load_json(manifest_path)
    lib = Library(root)

    for entry in manifest.get("pushout", []):
        report.instances += 1
        _guard(report, "pushout", entry.get("name", str(entry)), lambda e=entry: check_pushout_instance(report, lib, e))
    for ref in manifest.get("modules", []):
        report.instances += 1
        _guard(report, "predual", Path(ref).stem, lambda r=ref: check_module(report, lib, r))
    for entry in manifest.get("h1", []):
        report.instances += 1
        _guard(report, "h1-table", Path(entry["module"]).stem, lambda e=entry: check_h1(report, lib, e))
    for ref in manifest.get("universal", []):
        report.instances += 1
        _guard(report, "universal", Path(ref).stem, lambda r=ref: check_universal(report, lib, r))
    for key, entries in manifest.get("scenarios", {}).items():
        if key not in SCENARIOS:
            report.warnings.append(f"unknown scenario {key!r} skipped")
            continue
        group, fn = SCENARIOS[key]
        for entry in entries:
            report.instances += 1
            _guard(report, group, Path(entry["envelope"]).stem, lambda e=entry, f=fn: f(report, lib, e))
    if report.instances == 0:
        report.warnings.append("0 instances")
    return report
