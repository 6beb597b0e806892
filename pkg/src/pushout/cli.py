"""Command line front end.

Exit codes: 0 success, 1 validation or verification failure, 2 I/O or parse
failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .algebra import square_span
from .bimodule import (
    Bimodule,
    annihilators,
    balanced_tensor,
    dual_module,
    is_induced,
    regular,
    restrict,
    zero_module,
)
from .centralizer import attach_envelope_actions, double_centralizer, iota
from .corpus import CORPUS_DIR
from .derivation import h1, inner_witness_b, pull_back_inner, pushout, pushout_unique
from .documents import Library, document_kind, dumps, load_json, parse_matrix
from .duality import induced_dual_check, dual_iso, factorization_check, injectivity_surjectivity_check
from .errors import DocumentError, PushoutError, SquareSpanDeficient, ValidationError
from .verify import run_verification

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2
MODULE_KEYWORDS = ("regular", "dual", "zero")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _status(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


def _load_module(lib: Library, ref: str, algebra_ref: str | None = None) -> Bimodule:
    if algebra_ref is not None and ref in MODULE_KEYWORDS:
        alg = lib.algebra(algebra_ref, Path.cwd())
        if ref == "regular":
            return regular(alg)
        if ref == "dual":
            return dual_module(regular(alg))
        return zero_module(alg, 1)
    x = lib.module(ref, Path.cwd())
    if algebra_ref is not None:
        alg = lib.algebra(algebra_ref, Path.cwd())
        if alg.mult != x.alg.mult:
            raise ValidationError(f"module {ref} is not over algebra {algebra_ref}")
    return x


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args, lib: Library) -> int:
    results = []
    worst = EXIT_OK
    for p in args.paths:
        try:
            doc = load_json(Path(p))
            kind = document_kind(doc)
            here = Path(p).resolve().parent
            if kind == "algebra":
                lib.algebra(str(Path(p).resolve()))
            elif kind == "envelope":
                lib.envelope(str(Path(p).resolve()))
            elif kind == "module":
                lib.module(str(Path(p).resolve()))
            elif kind == "derivation":
                lib.derivation(str(Path(p).resolve()))
            elif kind == "extension":
                x = lib.module(doc["module"], here)
                xt = lib.module(doc["x_tilde"], here)
                parse_matrix(doc["j"], f"{p}: j", xt.dim, x.dim)
            elif kind == "pair":
                parse_matrix(doc["S"], f"{p}: S")
                parse_matrix(doc["T"], f"{p}: T")
            elif kind == "manifest":
                pass
            else:
                raise DocumentError(f"{p}: unrecognised document")
            results.append({"path": p, "kind": kind, "status": "OK"})
        except DocumentError as exc:
            results.append({"path": p, "status": "ERROR", "error": str(exc)})
            worst = EXIT_IO
        except ValidationError as exc:
            results.append({"path": p, "status": "INVALID", "error": f"{type(exc).__name__}: {exc}",
                            "indices": list(exc.indices)})
            worst = max(worst, EXIT_FAIL)
    text = "\n".join(
        f"OK       {r['path']} ({r['kind']})" if r["status"] == "OK" else f"{r['status']:<8} {r['path']}: {r['error']}"
        for r in results
    )
    _emit(args, {"results": results, "ok": worst == EXIT_OK}, text)
    return worst


def cmd_h1(args, lib: Library) -> int:
    if len(args.refs) == 1:
        x = _load_module(lib, args.refs[0])
    else:
        x = _load_module(lib, args.refs[1], args.refs[0])
    res = h1(x.alg, x)
    _emit(args, res.as_dict(), f"z1 = {res.z1}\nb1 = {res.b1}\nh1 = {res.h1}")
    return EXIT_OK


def cmd_centralizer(args, lib: Library) -> int:
    x = _load_module(lib, args.module, args.algebra)
    dc = double_centralizer(x)
    io = iota(dc)
    ann = annihilators(x)
    payload = {
        "dim": dc.dim,
        "module_dim": x.dim,
        "iota_rank": io.rank(),
        "annihilator_dim": ann.both.dim,
        "basis": [p.to_json() for p in dc.basis_pairs()],
        "iota": io.to_json(),
    }
    text = (f"dim DC(X) = {dc.dim}\ndim X = {x.dim}\nrank iota_X = {payload['iota_rank']}\n"
            f"dim ann X = {ann.both.dim}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_tensor(args, lib: Library) -> int:
    x = _load_module(lib, args.left)
    y = _load_module(lib, args.right) if args.right else x
    t = balanced_tensor(x, y)
    payload = {"dim": t.dim, "raw_dim": x.dim * y.dim, "relations_dim": t.relations.dim,
               "projection": t.projection.to_json()}
    lines = [f"dim X (x)_A Y = {t.dim}", f"raw dim = {x.dim * y.dim}", f"relations = {t.relations.dim}"]
    if args.right is None:
        induced, w = is_induced(x)
        payload["induced"] = induced
        payload["exterior_multiplication"] = w.multiplication.to_json()
        lines.append(f"induced = {induced}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_pushout(args, lib: Library) -> int:
    env = lib.envelope(args.envelope, Path.cwd())
    x_b = lib.module(args.module, Path.cwd())
    x = restrict(x_b, env)
    d = lib.derivation(args.derivation, Path.cwd(), module=x)
    dc = attach_envelope_actions(double_centralizer(x), env, x_b)
    r = pushout(env, x_b, d, dc)
    checks = {
        "centralizer_membership": r.membership_ok,
        "derivation_rule": r.derivation_ok,
        "diagram_commutes": r.diagram_ok,
    }
    extra = {}
    if square_span(env.sub).is_full():
        checks["unique"] = pushout_unique(r)
        pair = pull_back_inner(r)
        extra["d_tilde_inner"] = pair is not None
        if pair is not None:
            checks["pull_back"] = True
            extra["pulled_back_pair"] = pair.to_json()
    else:
        extra["d_tilde_inner"] = inner_witness_b(r) is not None
        extra["uniqueness"] = "not applicable: span(A^2) != A"
    payload = {
        "d_tilde": [p.to_json() for p in r.pairs()],
        "d_tilde_coordinates": r.d_tilde.to_json(),
        "checks": {k: _status(v) for k, v in checks.items()},
        **extra,
    }
    lines = [f"{_status(v)}  {k}" for k, v in checks.items()]
    lines.append(f"D~ inner: {extra['d_tilde_inner']}")
    if "uniqueness" in extra:
        lines.append(f"uniqueness: {extra['uniqueness']}")
    for b, p in enumerate(r.pairs()):
        lines.append(f"D~({env.amb.basis_names[b]}) = {json.dumps(p.to_json())}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_dualiso(args, lib: Library) -> int:
    x = _load_module(lib, args.module, args.algebra)
    data = dual_iso(x)
    checks = {
        "n_in_ker_mu": data.predual.n_in_ker_mu(),
        "dual_isomorphism": data.ok,
        "factorization": factorization_check(x, data),
        "injective_iff_surjective": injectivity_surjectivity_check(x, data),
    }
    induced, _ = is_induced(x)
    if induced:
        checks["induced_iota_bijective"] = induced_dual_check(x).ok
    payload = {
        "dc_dual_dim": data.dc_dual.dim,
        "quotient_dim": data.predual.quotient.dim,
        "induced": induced,
        "checks": {k: _status(v) for k, v in checks.items()},
    }
    lines = [f"dim DC(X*) = {data.dc_dual.dim}", f"dim quotient = {data.predual.quotient.dim}",
             f"induced = {induced}"] + [f"{_status(v)}  {k}" for k, v in checks.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_verify(args, lib: Library) -> int:
    report = run_verification(Path(args.corpus))
    for w in report.warnings:
        logging.getLogger("pushout").warning(w)
    if args.json:
        sys.stdout.write(dumps(report.as_dict()))
    else:
        sys.stdout.write(report.text())
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pushout", description="Exact double-centralizer and push-out computations.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--corpus", default=str(CORPUS_DIR), help="corpus directory (algebra name lookup, verify)")
    # the global flags are also accepted after the subcommand; SUPPRESS keeps an earlier value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--corpus", default=argparse.SUPPRESS, help="corpus directory")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate documents")
    c.add_argument("paths", nargs="+")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("h1", parents=[common], help="dimensions of Z1, B1, H1")
    c.add_argument("refs", nargs="+", metavar="[ALGEBRA] MODULE",
                   help="module document, or an algebra followed by a module document or regular|dual|zero")
    c.set_defaults(func=cmd_h1)

    c = sub.add_parser("centralizer", parents=[common], help="double-centralizer module of X")
    c.add_argument("module")
    c.add_argument("--algebra", help="build MODULE (regular|dual|zero) over this algebra")
    c.set_defaults(func=cmd_centralizer)

    c = sub.add_parser("tensor", parents=[common], help="balanced tensor product X (x)_A Y")
    c.add_argument("left")
    c.add_argument("right", nargs="?")
    c.set_defaults(func=cmd_tensor)

    c = sub.add_parser("pushout", parents=[common], help="push-out derivation and its checks")
    c.add_argument("envelope")
    c.add_argument("module", help="bimodule over the envelope's ambient algebra")
    c.add_argument("derivation")
    c.set_defaults(func=cmd_pushout)

    c = sub.add_parser("dualiso", parents=[common], help="dual-module identification checks")
    c.add_argument("module")
    c.add_argument("--algebra", help="build MODULE (regular|dual|zero) over this algebra")
    c.set_defaults(func=cmd_dualiso)

    c = sub.add_parser("verify", parents=[common], help="run every check on the corpus")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    lib = Library(Path(args.corpus))
    try:
        return args.func(args, lib)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SquareSpanDeficient, ValidationError) as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PushoutError as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
