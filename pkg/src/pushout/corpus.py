"""The bundled example corpus.

The JSON files under ``pushout/corpus/`` are generated by :func:`build_corpus`;
``python -m pushout.corpus DIR`` rewrites them.  Tests compare the shipped
files with a fresh build.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .algebra import Envelope, identity_envelope, new_envelope, unitization
from .bimodule import (
    Bimodule,
    dual_module,
    outer_tensor,
    regular,
    restrict,
    zero_module,
)
from .centralizer import double_centralizer, iota
from .derivation import derivation_basis
from .documents import derivation_doc, dumps, envelope_doc
from .exactla import LinMap, kron, unit_vector
from .standard import (
    diagonal,
    dual_numbers,
    first_summand,
    full_matrix,
    ground_field,
    matrix_unit_algebra,
    product_algebra,
    strict_in_triangular,
    strictly_upper,
    upper_triangular,
    zero_square,
)

CORPUS_DIR = Path(__file__).parent / "corpus"


def ideal_module(env: Envelope, name: str) -> Bimodule:
    """A as a B-bimodule through multiplication inside B."""
    nb = env.amb.dim
    return Bimodule(
        env.amb,
        env.sub.dim,
        tuple(env.left_mult(b) for b in range(nb)),
        tuple(env.right_mult(b) for b in range(nb)),
        name=name,
    )


def ideal_outer_module(env: Envelope, name: str) -> Bimodule:
    """A (x) A as a B-bimodule: b.(u (x) v).c = bu (x) vc."""
    nb, ia = env.amb.dim, LinMap.identity(env.sub.dim)
    return Bimodule(
        env.amb,
        env.sub.dim ** 2,
        tuple(kron(env.left_mult(b), ia) for b in range(nb)),
        tuple(kron(ia, env.right_mult(b)) for b in range(nb)),
        name=name,
    )


def _named(x: Bimodule, name: str) -> Bimodule:
    return Bimodule(x.alg, x.dim, x.left, x.right, name)


def build_corpus() -> dict[str, dict]:
    """Map of relative path -> JSON document."""
    docs: dict[str, dict] = {}

    k = ground_field()
    n2 = zero_square(1)
    n2p_env = unitization(n2)
    n2p = n2p_env.amb
    n3 = strictly_upper(3)
    t2 = upper_triangular(2)
    t3 = upper_triangular(3)
    m2 = full_matrix(2)
    m2k = product_algebra(m2, k, name="M2+k")
    k2 = diagonal(2)
    k3 = diagonal(3)
    r2 = matrix_unit_algebra(2, [(0, 0), (0, 1)], "R2")
    assert dual_numbers().mult == n2p.mult

    algebras = {"k": k, "N2": n2, "N2plus": n2p, "N3": n3, "T2": t2, "T3": t3, "M2": m2,
                "M2_k": m2k, "k2": k2, "k3": k3, "R2": r2}
    for fname, a in algebras.items():
        docs[f"algebras/{fname}.json"] = a.to_json()

    envs = {
        "M2_id": (identity_envelope(m2), "M2", "M2"),
        "N2plus_id": (identity_envelope(n2p), "N2+", "N2+"),
        "N3_in_T3": (strict_in_triangular(3), "N3", "T3"),
        "N2_in_N2plus": (n2p_env, "N2", "N2+"),
        "M2_in_M2_k": (first_summand(m2, k, m2k), "M2", "M2+k"),
        "R2_in_T2": (new_envelope(r2, t2, LinMap.from_columns([unit_vector(3, 0), unit_vector(3, 1)], 3)), "R2", "T2"),
        "k2_in_k3": (first_summand(k2, diagonal(1), k3), "k2", "k3"),
    }
    env_obj = {}
    for fname, (env, s, a) in envs.items():
        docs[f"envelopes/{fname}.json"] = envelope_doc(env, s, a, name=fname)
        env_obj[fname] = env

    modules: dict[str, Bimodule] = {}
    for fname, a in (("k", k), ("N2", n2), ("N2plus", n2p), ("N3", n3), ("T2", t2), ("T3", t3),
                     ("M2", m2), ("M2_k", m2k), ("R2", r2), ("k2", k2)):
        modules[f"{fname}_regular"] = regular(a)
    for fname in ("N2plus", "N3", "T2", "M2", "R2"):
        modules[f"{fname}_dual"] = dual_module(modules[f"{fname}_regular"])
    modules["M2_zero2"] = zero_module(m2, 2)
    modules["N3_zero1"] = zero_module(n3, 1)
    modules["T2_outer"] = outer_tensor(t2)
    modules["R2_outer"] = outer_tensor(r2)
    modules["T2_over_R2"] = _named(restrict(regular(t2), env_obj["R2_in_T2"]), "T2 over R2")
    modules["k3_over_k2"] = _named(restrict(regular(k3), env_obj["k2_in_k3"]), "k3 over k2")
    modules["k3_ideal_k2"] = ideal_module(env_obj["k2_in_k3"], "k2 as k3-bimodule")
    modules["k3_ideal_k2_dual"] = dual_module(modules["k3_ideal_k2"])
    modules["k3_ideal_k2_outer"] = ideal_outer_module(env_obj["k2_in_k3"], "k2 (x) k2 as k3-bimodule")
    modules["M2_k_ideal_M2"] = ideal_module(env_obj["M2_in_M2_k"], "M2 as (M2+k)-bimodule")
    dc_r2 = double_centralizer(regular(r2))
    modules["R2_centralizer"] = _named(dc_r2.module, "DC(R2 regular)")
    for fname, x in modules.items():
        name = x.name or fname
        docs[f"modules/{fname}.json"] = _named(x, name).to_json()

    # explicit derivations
    def first_derivation(env_name, module_name, fname):
        env = env_obj[env_name]
        x = restrict(modules[module_name], env)
        d = derivation_basis(env.sub, x)[0]
        docs[f"derivations/{fname}.json"] = derivation_doc(
            d, env.sub.name, f"../modules/{module_name}.json", name=fname,
            envelope_ref=None if env.sub is env.amb else f"../envelopes/{env_name}.json")

    first_derivation("N3_in_T3", "T3_regular", "N3_into_T3")
    first_derivation("N2_in_N2plus", "N2plus_regular", "N2_into_N2plus")
    first_derivation("N2plus_id", "N2plus_regular", "N2plus_outer")
    first_derivation("M2_id", "M2_regular", "M2_inner")

    # factorisation data (j, X~) with A.X~ + X~.A inside j(X)
    docs["extensions/R2_into_T2.json"] = {
        "name": "R2_into_T2", "module": "../modules/R2_regular.json",
        "x_tilde": "../modules/T2_over_R2.json",
        "j": env_obj["R2_in_T2"].embedding.to_json(),
    }
    docs["extensions/R2_into_centralizer.json"] = {
        "name": "R2_into_centralizer", "module": "../modules/R2_regular.json",
        "x_tilde": "../modules/R2_centralizer.json",
        "j": iota(dc_r2).to_json(),
    }
    docs["extensions/k2_into_k3.json"] = {
        "name": "k2_into_k3", "module": "../modules/k2_regular.json",
        "x_tilde": "../modules/k3_over_k2.json",
        "j": env_obj["k2_in_k3"].embedding.to_json(),
    }
    docs["extensions/M2_identity.json"] = {
        "name": "M2_identity", "module": "../modules/M2_regular.json",
        "x_tilde": "../modules/M2_regular.json",
        "j": LinMap.identity(4).to_json(),
    }

    docs["manifest.json"] = {
        "pushout": [
            {"name": "M2 identity envelope", "envelope": "envelopes/M2_id.json",
             "module": "modules/M2_regular.json", "derivations": ["basis", "derivations/M2_inner.json"]},
            {"name": "N3 in T3", "envelope": "envelopes/N3_in_T3.json",
             "module": "modules/T3_regular.json", "derivations": ["basis", "derivations/N3_into_T3.json"]},
            {"name": "N2 in N2+", "envelope": "envelopes/N2_in_N2plus.json",
             "module": "modules/N2plus_regular.json", "derivations": ["basis", "derivations/N2_into_N2plus.json"]},
            {"name": "N2+ identity envelope", "envelope": "envelopes/N2plus_id.json",
             "module": "modules/N2plus_regular.json", "derivations": ["basis", "derivations/N2plus_outer.json"]},
            {"name": "M2 in M2+k", "envelope": "envelopes/M2_in_M2_k.json",
             "module": "modules/M2_k_regular.json", "derivations": ["basis"]},
            {"name": "R2 in T2", "envelope": "envelopes/R2_in_T2.json",
             "module": "modules/T2_regular.json", "derivations": ["basis"]},
            {"name": "R2 in T2, dual module", "envelope": "envelopes/R2_in_T2.json",
             "module": "modules/T2_dual.json", "derivations": ["basis"]},
            {"name": "k2 in k3, dual module", "envelope": "envelopes/k2_in_k3.json",
             "module": "modules/k3_ideal_k2_dual.json", "derivations": ["basis"]},
        ],
        "modules": [f"modules/{f}.json" for f in (
            "k_regular", "N2_regular", "N2plus_regular", "N2plus_dual", "N3_regular", "N3_dual",
            "T2_regular", "T2_dual", "T2_outer", "T3_regular", "M2_regular", "M2_dual", "M2_zero2",
            "N3_zero1", "R2_regular", "R2_dual", "R2_outer", "k2_regular", "T2_over_R2", "R2_centralizer",
        )],
        "h1": [
            {"module": "modules/k_regular.json", "expected": {"z1": 0, "b1": 0, "h1": 0}},
            {"module": "modules/N2_regular.json", "expected": {"z1": 1, "b1": 0, "h1": 1}},
            {"module": "modules/M2_regular.json", "expected": {"z1": 3, "b1": 3, "h1": 0}},
        ],
        "universal": [f"extensions/{f}.json" for f in (
            "R2_into_T2", "R2_into_centralizer", "k2_into_k3", "M2_identity")],
        "scenarios": {
            "amenable_ideal": [
                {"envelope": "envelopes/M2_in_M2_k.json", "module": "modules/M2_k_ideal_M2.json"},
                {"envelope": "envelopes/k2_in_k3.json", "module": "modules/k3_ideal_k2_outer.json"},
            ],
            "commutative_weak": [
                {"envelope": "envelopes/k2_in_k3.json", "module": "modules/k3_ideal_k2_dual.json"},
                {"envelope": "envelopes/N2plus_id.json", "module": "modules/N2plus_dual.json"},
            ],
            "difference_form": [
                {"envelope": "envelopes/R2_in_T2.json", "module": "modules/T2_regular.json"},
                {"envelope": "envelopes/M2_in_M2_k.json", "module": "modules/M2_k_ideal_M2.json"},
                {"envelope": "envelopes/k2_in_k3.json", "module": "modules/k3_ideal_k2.json"},
                {"envelope": "envelopes/N2plus_id.json", "module": "modules/N2plus_regular.json"},
            ],
            "self_induced_ideal": [
                {"envelope": "envelopes/k2_in_k3.json"},
                {"envelope": "envelopes/M2_in_M2_k.json"},
            ],
        },
    }
    return docs


def write_corpus(root: Path) -> list[Path]:
    root = Path(root)
    written = []
    for rel, doc in sorted(build_corpus().items()):
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(doc))
        written.append(path)
    return written


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else CORPUS_DIR
    for p in write_corpus(target):
        print(p)
