"""JSON documents for algebras, envelopes, bimodules, derivations and pairs.

Rationals are strings "p/q" (or "p"); matrices are row-major lists of rows.
Documents refer to each other either by a relative path ending in ``.json``
or by the ``name`` of an algebra found in the corpus ``algebras/`` folder.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, Envelope, new_algebra, new_envelope
from .bimodule import Bimodule, new_bimodule, restrict
from .derivation import Derivation, new_derivation
from .errors import DocumentError
from .exactla import LinMap, parse_rational


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def load_json(path: Path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _scalar(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{where}: expected a rational string, got {value!r}")
    try:
        return parse_rational(str(value))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_matrix(data, where: str, rows: int | None = None, cols: int | None = None) -> LinMap:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise DocumentError(f"{where}: expected a list of rows")
    if rows is not None and len(data) != rows:
        raise DocumentError(f"{where}: expected {rows} rows, got {len(data)}")
    if cols is None:
        cols = len(data[0]) if data else 0
    out = []
    for r, row in enumerate(data):
        if len(row) != cols:
            raise DocumentError(f"{where}: row {r} has {len(row)} entries, expected {cols}")
        out.append([_scalar(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)])
    return LinMap.from_rows(out, cols)


def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{where}: missing field {key!r}")
    return doc[key]


def algebra_from_doc(doc: dict, where: str = "algebra") -> Algebra:
    dim = _require(doc, "dim", where)
    if not isinstance(dim, int) or dim < 0:
        raise DocumentError(f"{where}: dim must be a non-negative integer")
    mult = _require(doc, "mult", where)
    if not isinstance(mult, list) or len(mult) != dim:
        raise DocumentError(f"{where}: mult must have {dim} entries")
    c = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != dim:
            raise DocumentError(f"{where}: mult[{i}] must have {dim} entries")
        crow = []
        for j, vec in enumerate(row):
            if not isinstance(vec, list) or len(vec) != dim:
                raise DocumentError(f"{where}: mult[{i}][{j}] must be a vector of length {dim}")
            crow.append([_scalar(v, f"{where}: mult[{i}][{j}][{k}]") for k, v in enumerate(vec)])
        c.append(crow)
    basis = doc.get("basis") or [f"e{i}" for i in range(dim)]
    return new_algebra(dim, c, basis, name=doc.get("name", ""))


class Library:
    """Resolves document references relative to a corpus directory."""

    def __init__(self, root: Path | None = None):
        self.root = Path(root).resolve() if root is not None else None
        self._algebras: dict[str, Algebra] = {}
        self._by_path: dict[Path, object] = {}
        self._names: dict[str, Path] | None = None

    def _algebra_names(self) -> dict[str, Path]:
        if self._names is None:
            self._names = {}
            folder = self.root / "algebras" if self.root else None
            if folder and folder.is_dir():
                for p in sorted(folder.glob("*.json")):
                    doc = load_json(p)
                    if isinstance(doc, dict) and "name" in doc:
                        self._names[doc["name"]] = p
        return self._names

    def _path(self, ref: str, base: Path | None) -> Path:
        p = Path(ref)
        if not p.is_absolute():
            anchor = base if base is not None else (self.root or Path.cwd())
            cand = anchor / p
            if not cand.exists() and self.root is not None:
                cand = self.root / p
            p = cand
        return p.resolve()

    def algebra(self, ref, base: Path | None = None) -> Algebra:
        if isinstance(ref, dict):
            return algebra_from_doc(ref)
        if not isinstance(ref, str):
            raise DocumentError(f"bad algebra reference {ref!r}")
        if ref.endswith(".json"):
            path = self._path(ref, base)
            if path not in self._by_path:
                self._by_path[path] = algebra_from_doc(load_json(path), str(path))
            return self._by_path[path]
        names = self._algebra_names()
        if ref not in names:
            raise DocumentError(f"unknown algebra {ref!r}")
        return self.algebra(str(names[ref]))

    def envelope(self, ref, base: Path | None = None) -> Envelope:
        doc, path = self._doc(ref, base)
        where = str(path) if path else "envelope"
        d = path.parent if path else base
        sub = self.algebra(_require(doc, "sub", where), d)
        amb = self.algebra(_require(doc, "amb", where), d)
        emb = parse_matrix(_require(doc, "embedding", where), f"{where}: embedding", amb.dim, sub.dim)
        return new_envelope(sub, amb, emb)

    def module(self, ref, base: Path | None = None) -> Bimodule:
        doc, path = self._doc(ref, base)
        where = str(path) if path else "module"
        d = path.parent if path else base
        alg = self.algebra(_require(doc, "algebra", where), d)
        dim = _require(doc, "dim", where)
        if not isinstance(dim, int) or dim < 0:
            raise DocumentError(f"{where}: dim must be a non-negative integer")
        left = _require(doc, "left", where)
        right = _require(doc, "right", where)
        if not isinstance(left, list) or len(left) != alg.dim or not isinstance(right, list) or len(right) != alg.dim:
            raise DocumentError(f"{where}: need {alg.dim} left and right action matrices")
        lm = [parse_matrix(m, f"{where}: left[{i}]", dim, dim) for i, m in enumerate(left)]
        rm = [parse_matrix(m, f"{where}: right[{i}]", dim, dim) for i, m in enumerate(right)]
        return new_bimodule(alg, dim, lm, rm, name=doc.get("name", ""))

    def derivation(self, ref, base: Path | None = None, module: Bimodule | None = None) -> Derivation:
        """Load a derivation; ``module`` overrides the target named in the document."""
        doc, path = self._doc(ref, base)
        where = str(path) if path else "derivation"
        d = path.parent if path else base
        alg = self.algebra(_require(doc, "algebra", where), d)
        if module is not None:
            x = module
        else:
            x = self.module(_require(doc, "module", where), d)
            if x.alg.mult != alg.mult:
                # a module over the envelope: restrict it to the sub-algebra
                if "envelope" not in doc:
                    raise DocumentError(f"{where}: module is over {x.alg.name}; an 'envelope' field is needed")
                env = self.envelope(doc["envelope"], d)
                x = restrict(x, env)
        m = parse_matrix(_require(doc, "map", where), f"{where}: map", x.dim, alg.dim)
        return new_derivation(alg, x, m)

    def raw(self, ref, base: Path | None = None) -> tuple[dict, Path | None]:
        return self._doc(ref, base)

    def _doc(self, ref, base: Path | None):
        if isinstance(ref, dict):
            return ref, None
        if not isinstance(ref, str):
            raise DocumentError(f"bad document reference {ref!r}")
        path = self._path(ref, base)
        doc = load_json(path)
        if not isinstance(doc, dict):
            raise DocumentError(f"{path}: expected a JSON object")
        return doc, path


def document_kind(doc) -> str:
    if not isinstance(doc, dict):
        return "unknown"
    if "mult" in doc:
        return "algebra"
    if "embedding" in doc:
        return "envelope"
    if "map" in doc:
        return "derivation"
    if "j" in doc and "x_tilde" in doc:
        return "extension"
    if "left" in doc and "right" in doc:
        return "module"
    if "S" in doc and "T" in doc:
        return "pair"
    if "pushout" in doc or "modules" in doc:
        return "manifest"
    return "unknown"


def derivation_doc(d: Derivation, algebra_ref: str, module_ref: str, name: str = "",
                   envelope_ref: str | None = None) -> dict:
    out = {"name": name} if name else {}
    out.update({"algebra": algebra_ref, "module": module_ref})
    if envelope_ref:
        out["envelope"] = envelope_ref
    out["map"] = d.map.to_json()
    return out


def envelope_doc(env: Envelope, sub_ref: str, amb_ref: str, name: str = "") -> dict:
    out = {"name": name} if name else {}
    out.update({"sub": sub_ref, "amb": amb_ref, "embedding": env.embedding.to_json()})
    return out
