"""Bimodules over finite-dimensional algebras.

A bimodule is stored by its action matrices: ``left[i]`` is x -> e_i.x and
``right[i]`` is x -> x.e_i.  Duals use the convention (a.f)(x) = f(x.a),
(f.a)(x) = f(a.x), so the left action on X* is the transpose of the right
action on X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, Envelope
from .errors import (
    ActionsDontCommute,
    NotBimoduleMap,
    NotLeftAction,
    NotRightAction,
    RestrictionMismatch,
    ValidationError,
)
from .exactla import (
    ZERO,
    LinMap,
    Quotient,
    Subspace,
    block_diag,
    hstack,
    intersect_all,
    kernel,
    kron,
    preimage,
    quotient_basis,
    restrict_to,
    unit_vector,
)


@dataclass(frozen=True, eq=False)
class Bimodule:
    alg: Algebra
    dim: int
    left: tuple[LinMap, ...]
    right: tuple[LinMap, ...]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def act_left(self, a) -> LinMap:
        """Matrix of x -> a.x for a coordinate vector a of the algebra."""
        return self.alg.combine(a, self.left) if self.alg.dim else LinMap.zero(self.dim, self.dim)

    def act_right(self, a) -> LinMap:
        return self.alg.combine(a, self.right) if self.alg.dim else LinMap.zero(self.dim, self.dim)

    def to_json(self, algebra_ref: str | None = None) -> dict:
        return {
            "name": self.name,
            "algebra": algebra_ref if algebra_ref is not None else self.alg.name,
            "dim": self.dim,
            "left": [m.to_json() for m in self.left],
            "right": [m.to_json() for m in self.right],
        }


def same_algebra(a: Algebra, b: Algebra) -> bool:
    return a is b or (a.dim == b.dim and a.mult == b.mult)


def new_bimodule(alg: Algebra, dim: int, left, right, name: str = "") -> Bimodule:
    """Validate actions and build a :class:`Bimodule`.

    Checks, for every pair of basis indices (i, j): left(e_i e_j) = left(i) left(j),
    right(e_i e_j) = right(j) right(i), and left(i) right(j) = right(j) left(i).
    """
    left = tuple(m if isinstance(m, LinMap) else LinMap.from_rows(m, dim) for m in left)
    right = tuple(m if isinstance(m, LinMap) else LinMap.from_rows(m, dim) for m in right)
    if len(left) != alg.dim or len(right) != alg.dim:
        raise ValueError(f"need {alg.dim} left and right action matrices")
    if any(m.shape != (dim, dim) for m in left + right):
        raise ValueError(f"action matrices must be {dim}x{dim}")
    n, b = alg.dim, alg.basis_names
    for i in range(n):
        for j in range(n):
            prod = alg.mult[i][j]
            lhs = alg.combine(prod, left) if any(prod) else LinMap.zero(dim, dim)
            if lhs != left[i] @ left[j]:
                raise NotLeftAction(f"left action fails on ({b[i]}, {b[j]}): {b[i]}.({b[j]}.x) != ({b[i]} {b[j]}).x", i, j)
            rhs = alg.combine(prod, right) if any(prod) else LinMap.zero(dim, dim)
            if rhs != right[j] @ right[i]:
                raise NotRightAction(f"right action fails on ({b[i]}, {b[j]}): (x.{b[i]}).{b[j]} != x.({b[i]} {b[j]})", i, j)
    for i in range(n):
        for j in range(n):
            if left[i] @ right[j] != right[j] @ left[i]:
                raise ActionsDontCommute(f"left and right actions do not commute: ({b[i]}.x).{b[j]} != {b[i]}.(x.{b[j]})", i, j)
    return Bimodule(alg, dim, left, right, name)


def regular(alg: Algebra) -> Bimodule:
    """A as a bimodule over itself."""
    return Bimodule(
        alg,
        alg.dim,
        tuple(alg.left_mult(i) for i in range(alg.dim)),
        tuple(alg.right_mult(i) for i in range(alg.dim)),
        name=f"{alg.name} regular" if alg.name else "regular",
    )


def zero_module(alg: Algebra, dim: int) -> Bimodule:
    z = LinMap.zero(dim, dim)
    return Bimodule(alg, dim, (z,) * alg.dim, (z,) * alg.dim, name=f"zero-action k^{dim}")


def dual_module(x: Bimodule) -> Bimodule:
    name = f"{x.name}*" if x.name else ""
    return Bimodule(x.alg, x.dim, tuple(m.T for m in x.right), tuple(m.T for m in x.left), name)


def outer_tensor(alg: Algebra) -> Bimodule:
    """A (x) A with a.(u (x) v).b = au (x) vb; coordinates (i, j) -> i * dim + j."""
    ident = LinMap.identity(alg.dim)
    left = tuple(kron(alg.left_mult(i), ident) for i in range(alg.dim))
    right = tuple(kron(ident, alg.right_mult(i)) for i in range(alg.dim))
    return Bimodule(alg, alg.dim ** 2, left, right, name=f"{alg.name} (x) {alg.name} outer")


def direct_sum(x: Bimodule, y: Bimodule) -> Bimodule:
    if not same_algebra(x.alg, y.alg):
        raise ValueError("modules over different algebras")
    return Bimodule(
        x.alg,
        x.dim + y.dim,
        tuple(block_diag(a, b) for a, b in zip(x.left, y.left)),
        tuple(block_diag(a, b) for a, b in zip(x.right, y.right)),
        name=f"{x.name} + {y.name}",
    )


def restrict(x: Bimodule, env: Envelope) -> Bimodule:
    """View a B-bimodule as an A-bimodule through the embedding."""
    if not same_algebra(x.alg, env.amb):
        raise ValueError("module is not over the envelope's ambient algebra")
    cols = env.embedding.columns()
    left = tuple(x.act_left(c) for c in cols)
    right = tuple(x.act_right(c) for c in cols)
    return Bimodule(env.sub, x.dim, left, right, name=x.name)


def check_restriction(x_b: Bimodule, x: Bimodule, env: Envelope) -> None:
    r = restrict(x_b, env)
    if r.dim != x.dim:
        raise RestrictionMismatch("dimension differs")
    for i in range(x.alg.dim):
        if r.left[i] != x.left[i]:
            raise RestrictionMismatch(f"left action of a{i} differs", "left", i)
        if r.right[i] != x.right[i]:
            raise RestrictionMismatch(f"right action of a{i} differs", "right", i)


def is_invariant(x: Bimodule, sub: Subspace) -> bool:
    return all(sub.contains(Subspace.span(x.dim, (m @ b for b in sub.basis))) for m in x.left + x.right)


def submodule(x: Bimodule, sub: Subspace, name: str = "") -> Bimodule:
    """The sub-bimodule carried by an invariant subspace, in the subspace's basis."""
    try:
        left = tuple(restrict_to(m, sub, sub) for m in x.left)
        right = tuple(restrict_to(m, sub, sub) for m in x.right)
    except ValueError:
        raise ValidationError("subspace is not a sub-bimodule") from None
    return Bimodule(x.alg, sub.dim, left, right, name)


def quotient_module(x: Bimodule, sub: Subspace, name: str = "") -> tuple[Bimodule, Quotient]:
    """X / sub for an invariant subspace, with the quotient data."""
    if not is_invariant(x, sub):
        raise ValidationError("subspace is not a sub-bimodule")
    q = quotient_basis(x.dim, sub)
    left = tuple(q.projection @ m @ q.section for m in x.left)
    right = tuple(q.projection @ m @ q.section for m in x.right)
    return Bimodule(x.alg, q.dim, left, right, name), q


def is_bimodule_map(x: Bimodule, y: Bimodule, f: LinMap) -> bool:
    if f.shape != (y.dim, x.dim):
        return False
    return all(f @ a == b @ f for a, b in zip(x.left, y.left)) and all(
        f @ a == b @ f for a, b in zip(x.right, y.right)
    )


def check_bimodule_map(x: Bimodule, y: Bimodule, f: LinMap) -> None:
    if f.shape != (y.dim, x.dim):
        raise NotBimoduleMap(f"map has shape {f.shape}, expected {(y.dim, x.dim)}")
    for i, (a, b) in enumerate(zip(x.left, y.left)):
        if f @ a != b @ f:
            raise NotBimoduleMap(f"map does not commute with the left action of e{i}", "left", i)
    for i, (a, b) in enumerate(zip(x.right, y.right)):
        if f @ a != b @ f:
            raise NotBimoduleMap(f"map does not commute with the right action of e{i}", "right", i)


# ---------------------------------------------------------------------------
# annihilators


@dataclass(frozen=True)
class Annihilators:
    left: Subspace
    right: Subspace
    both: Subspace


def annihilators(x: Bimodule) -> Annihilators:
    ann_l = intersect_all([kernel(m) for m in x.left], x.dim)
    ann_r = intersect_all([kernel(m) for m in x.right], x.dim)
    return Annihilators(ann_l, ann_r, intersect_all([ann_l, ann_r], x.dim))


def _side_maps(x: Bimodule, side: str) -> tuple[LinMap, ...]:
    if side == "left":
        return x.left
    if side == "right":
        return x.right
    if side in ("two-sided", "both"):
        return x.left + x.right
    raise ValueError(f"unknown side {side!r}")


def colon(x: Bimodule, n: Subspace, side: str = "left") -> Subspace:
    """N : A = {x | A.x in N} (x.A for side='right', both for 'two-sided')."""
    return intersect_all([preimage(m, n) for m in _side_maps(x, side)], x.dim)


@dataclass(frozen=True)
class AnnihilatorFreeQuotient:
    n: Subspace
    quotient: Bimodule
    proj: LinMap
    section: LinMap
    stages: tuple[Subspace, ...]

    @property
    def steps(self) -> int:
        """Number of strict enlargements before the chain stabilised."""
        return len(self.stages) - 1


def annihilator_free_quotient(x: Bimodule, side: str = "two-sided") -> AnnihilatorFreeQuotient:
    """Smallest submodule N whose quotient has trivial annihilator on ``side``.

    Iterates N_0 = {0}, N_{k+1} = N_k : A until the chain is stable; at finite
    dimension this takes at most dim(X) strict steps.
    """
    stages = [Subspace.zero(x.dim)]
    while True:
        nxt = colon(x, stages[-1], side)
        if nxt == stages[-1]:
            break
        stages.append(nxt)
        if len(stages) > x.dim + 1:
            raise RuntimeError("annihilator chain failed to stabilise")
    n = stages[-1]
    quotient, q = quotient_module(x, n, name=f"{x.name}/N" if x.name else "")
    return AnnihilatorFreeQuotient(n, quotient, q.projection, q.section, tuple(stages))


def side_annihilator(x: Bimodule, side: str) -> Subspace:
    ann = annihilators(x)
    return {"left": ann.left, "right": ann.right, "two-sided": ann.both, "both": ann.both}[side]


# ---------------------------------------------------------------------------
# balanced tensor products


@dataclass(frozen=True, eq=False)
class BalancedTensor:
    """X (x)_A Y as a quotient of X (x) Y.

    Raw coordinates are ordered (u, v) -> u * dim(Y) + v.
    """

    x: Bimodule
    y: Bimodule
    relations: Subspace
    quotient: Quotient
    module: Bimodule

    @property
    def projection(self) -> LinMap:
        return self.quotient.projection

    @property
    def section(self) -> LinMap:
        return self.quotient.section

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def raw_index(self, u: int, v: int) -> int:
        return u * self.y.dim + v

    def descend(self, raw_map: LinMap) -> LinMap:
        """Factor a map defined on raw coordinates through the quotient.

        The map must vanish on the balancing relations.
        """
        for r in self.relations.basis:
            if any(raw_map @ r):
                raise ValueError("map does not vanish on the balancing relations")
        return raw_map @ self.section


def balancing_relations(x: Bimodule, y: Bimodule) -> list[tuple[Fraction, ...]]:
    """All generators (x_u . e_i) (x) y_v - x_u (x) (e_i . y_v)."""
    gens = []
    n = x.dim * y.dim
    for u in range(x.dim):
        for i in range(x.alg.dim):
            xa = x.right[i].column(u)
            for v in range(y.dim):
                ay = y.left[i].column(v)
                g = [ZERO] * n
                for w, c in enumerate(xa):
                    if c:
                        g[w * y.dim + v] += c
                for w, c in enumerate(ay):
                    if c:
                        g[u * y.dim + w] -= c
                gens.append(tuple(g))
    return gens


def balanced_tensor(x: Bimodule, y: Bimodule) -> BalancedTensor:
    if not same_algebra(x.alg, y.alg):
        raise ValueError("balanced tensor needs modules over the same algebra")
    n = x.dim * y.dim
    rel = Subspace.span(n, balancing_relations(x, y))
    q = quotient_basis(n, rel)
    iy = LinMap.identity(y.dim)
    ix = LinMap.identity(x.dim)
    left = tuple(q.projection @ kron(m, iy) @ q.section for m in x.left)
    right = tuple(q.projection @ kron(ix, m) @ q.section for m in y.right)
    name = f"({x.name}) (x)_A ({y.name})"
    return BalancedTensor(x, y, rel, q, Bimodule(x.alg, q.dim, left, right, name))


@dataclass(frozen=True, eq=False)
class InducedWitness:
    triple: Bimodule
    multiplication: LinMap
    bijective: bool


def exterior_multiplication(x: Bimodule) -> InducedWitness:
    """The map A (x)_A X (x)_A A -> X, a (x) x (x) b -> a.x.b."""
    a = regular(x.alg)
    inner = balanced_tensor(a, x)
    outer = balanced_tensor(inner.module, a)
    # a (x) x -> a.x on raw coordinates (i, u)
    raw_inner = hstack([x.left[i] for i in range(x.alg.dim)]) if x.alg.dim else LinMap.zero(x.dim, 0)
    m1 = inner.descend(raw_inner)
    # (t, k) -> m1(t).e_k
    cols = []
    for t in range(inner.dim):
        mt = m1.column(t)
        for k in range(x.alg.dim):
            cols.append(x.right[k] @ mt)
    raw_outer = LinMap.from_columns(cols, x.dim) if cols else LinMap.zero(x.dim, 0)
    mult = outer.descend(raw_outer)
    bijective = mult.rows == mult.cols and mult.rank() == mult.rows
    return InducedWitness(outer.module, mult, bijective)


def is_induced(x: Bimodule) -> tuple[bool, InducedWitness]:
    w = exterior_multiplication(x)
    return w.bijective, w


def multiplication_map(alg: Algebra) -> tuple[BalancedTensor, LinMap]:
    a = regular(alg)
    t = balanced_tensor(a, a)
    raw = hstack([alg.left_mult(i) for i in range(alg.dim)]) if alg.dim else LinMap.zero(0, 0)
    return t, t.descend(raw)


def is_self_induced(alg: Algebra) -> bool:
    _, m = multiplication_map(alg)
    return m.rows == m.cols and m.rank() == m.rows


# ---------------------------------------------------------------------------
# hom-modules


@dataclass(frozen=True, eq=False)
class HomModule:
    """Module maps A -> X as a subspace of all dim(X) x dim(A) matrices.

    Matrix coordinates are column-major: entry (r, c) sits at c * dim(X) + r.
    """

    space: Subspace
    module: Bimodule
    target: Bimodule
    kind: str  # "left" for _Ah(A,X), "right" for h_A(A,X)

    def to_map(self, coords) -> LinMap:
        return LinMap.unvec(self.space.element(coords), self.target.dim, self.target.alg.dim)


def _module_map_conditions(x: Bimodule, kind: str) -> LinMap:
    """Rows of the linear conditions on vec(F) for F: A -> X."""
    alg = x.alg
    n, m = alg.dim, x.dim
    rows = []
    for i in range(n):
        for j in range(n):
            for r in range(m):
                row = [ZERO] * (n * m)
                if kind == "left":
                    # F(e_i e_j) - e_i.F(e_j)
                    prod = alg.mult[i][j]
                    act, col = x.left[i], j
                else:
                    # F(e_j e_i) - F(e_j).e_i
                    prod = alg.mult[j][i]
                    act, col = x.right[i], j
                for k, c in enumerate(prod):
                    if c:
                        row[k * m + r] += c
                for rr in range(m):
                    v = act[r, rr]
                    if v:
                        row[col * m + rr] -= v
                rows.append(row)
    return LinMap.from_rows(rows, n * m) if rows else LinMap.zero(0, n * m)


def left_module_maps(x: Bimodule) -> Subspace:
    """{T : A -> X | T(a b) = a.T(b)} as vec-coordinates."""
    return kernel(_module_map_conditions(x, "left"))


def right_module_maps(x: Bimodule) -> Subspace:
    """{S : A -> X | S(b a) = S(b).a}."""
    return kernel(_module_map_conditions(x, "right"))


def _induced_actions(space: Subspace, ops: Sequence[LinMap]) -> tuple[LinMap, ...]:
    return tuple(restrict_to(op, space, space) for op in ops)


def left_map_actions(x: Bimodule) -> tuple[list[LinMap], list[LinMap]]:
    """Actions on vec(T) for left-module maps: a.T = T(. a), T.a = T(.).a."""
    alg = x.alg
    ix = LinMap.identity(x.dim)
    la = [kron(alg.right_mult(i).T, ix) for i in range(alg.dim)]
    ra = [kron(LinMap.identity(alg.dim), x.right[i]) for i in range(alg.dim)]
    return la, ra


def right_map_actions(x: Bimodule) -> tuple[list[LinMap], list[LinMap]]:
    """Actions on vec(S) for right-module maps: a.S = a.S(.), S.a = S(a .)."""
    alg = x.alg
    ix = LinMap.identity(x.dim)
    la = [kron(LinMap.identity(alg.dim), x.left[i]) for i in range(alg.dim)]
    ra = [kron(alg.left_mult(i).T, ix) for i in range(alg.dim)]
    return la, ra


def hom_left(x: Bimodule) -> HomModule:
    """_Ah(A, X): left-module maps."""
    space = left_module_maps(x)
    la, ra = left_map_actions(x)
    mod = Bimodule(x.alg, space.dim, _induced_actions(space, la), _induced_actions(space, ra),
                   name=f"_Ah(A,{x.name})")
    return HomModule(space, mod, x, "left")


def hom_right(x: Bimodule) -> HomModule:
    """h_A(A, X): right-module maps."""
    space = right_module_maps(x)
    la, ra = right_map_actions(x)
    mod = Bimodule(x.alg, space.dim, _induced_actions(space, la), _induced_actions(space, ra),
                   name=f"h_A(A,{x.name})")
    return HomModule(space, mod, x, "right")


@dataclass(frozen=True)
class DualityReport:
    left_ok: bool
    right_ok: bool
    tensor_dims: tuple[int, int]
    hom_dims: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok


def _pairing_iso(hom: HomModule, tensor: BalancedTensor, raw_functional) -> bool:
    """Check that S -> <., S> is a bimodule isomorphism hom -> tensor*."""
    dual = dual_module(tensor.module)
    cols = []
    for k in range(hom.space.dim):
        f = hom.to_map(unit_vector(hom.space.dim, k))
        raw = LinMap.from_rows([raw_functional(f)], tensor.x.dim * tensor.y.dim)
        cols.append(tensor.descend(raw).row(0))
    phi = LinMap.from_columns(cols, tensor.dim)
    if phi.rows != phi.cols or phi.rank() != phi.rows:
        return False
    return is_bimodule_map(hom.module, dual, phi)


def hom_tensor_duality_check(x: Bimodule) -> DualityReport:
    """(A (x)_A X)* = h_A(A, X*) and (X (x)_A A)* = _Ah(A, X*) via the natural pairings."""
    a = regular(x.alg)
    xs = dual_module(x)
    lt = balanced_tensor(a, x)
    rt = balanced_tensor(x, a)
    hr = hom_right(xs)
    hl = hom_left(xs)

    # <e_i (x) x_u, S> = S(e_i)[u]; raw index i * dim X + u
    def left_fn(s: LinMap):
        return [s[u, i] for i in range(x.alg.dim) for u in range(x.dim)]

    # <x_u (x) e_i, T> = T(e_i)[u]; raw index u * dim A + i
    def right_fn(t: LinMap):
        return [t[u, i] for u in range(x.dim) for i in range(x.alg.dim)]

    return DualityReport(
        _pairing_iso(hr, lt, left_fn),
        _pairing_iso(hl, rt, right_fn),
        (lt.dim, rt.dim),
        (hr.space.dim, hl.space.dim),
    )
