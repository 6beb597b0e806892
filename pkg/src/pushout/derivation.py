"""Derivations, inner derivations, H^1 and the push-out derivation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Envelope, square_span
from .bimodule import Bimodule, restrict, same_algebra
from .centralizer import (
    CentralizerModule,
    CentralizerPair,
    attach_envelope_actions,
    double_centralizer,
    iota,
    lr_pair,
)
from .errors import NotADerivation, NotClosed, PreconditionFailed, SquareSpanDeficient
from .exactla import (
    ZERO,
    LinMap,
    Subspace,
    image,
    kernel,
    kron,
    linear_system,
    solve_affine,
    unit_vector,
    vstack,
)


@dataclass(frozen=True, eq=False)
class Derivation:
    alg: Algebra
    module: Bimodule
    map: LinMap  # dim X x dim A, column k is D(e_k)

    def __call__(self, a) -> tuple[Fraction, ...]:
        return self.map @ a


def derivation_defect(alg: Algebra, x: Bimodule, d: LinMap, i: int, j: int) -> tuple[Fraction, ...]:
    """D(e_i e_j) - e_i.D(e_j) - D(e_i).e_j."""
    lhs = d @ alg.mult[i][j]
    a = x.left[i] @ d.column(j)
    b = x.right[j] @ d.column(i)
    return tuple(p - q - r for p, q, r in zip(lhs, a, b))


def new_derivation(alg: Algebra, x: Bimodule, d) -> Derivation:
    if not isinstance(d, LinMap):
        d = LinMap.from_rows(d, alg.dim)
    if d.shape != (x.dim, alg.dim):
        raise ValueError(f"derivation matrix must be {x.dim}x{alg.dim}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            if any(derivation_defect(alg, x, d, i, j)):
                raise NotADerivation(f"D(e{i}e{j}) != e{i}.D(e{j}) + D(e{i}).e{j}", i, j)
    return Derivation(alg, x, d)


def derivation_conditions(alg: Algebra, x: Bimodule) -> LinMap:
    """Coefficient matrix of the derivation rule acting on vec(D)."""
    n, m = alg.dim, x.dim
    rows = []
    for i in range(n):
        for j in range(n):
            for r in range(m):
                row = [ZERO] * (n * m)
                for k, c in enumerate(alg.mult[i][j]):
                    if c:
                        row[k * m + r] += c
                for rr in range(m):
                    v = x.left[i][r, rr]
                    if v:
                        row[j * m + rr] -= v
                    w = x.right[j][r, rr]
                    if w:
                        row[i * m + rr] -= w
                rows.append(row)
    return LinMap.from_rows(rows, n * m) if rows else LinMap.zero(0, n * m)


def derivation_operator(alg: Algebra, x: Bimodule) -> LinMap:
    """The same operator built column by column, by evaluating the coboundary
    (a, b) -> D(ab) - a.D(b) - D(a).b on each elementary map D = E_{r,k}.

    Independent of :func:`derivation_conditions`; used as a cross-check.
    """
    n, m = alg.dim, x.dim
    cols = []
    for k in range(n):
        for r in range(m):
            d = LinMap.unvec(unit_vector(n * m, k * m + r), m, n)
            col = []
            for i in range(n):
                for j in range(n):
                    col.extend(derivation_defect(alg, x, d, i, j))
            cols.append(col)
    return LinMap.from_columns(cols, n * n * m) if cols else LinMap.zero(n * n * m, 0)


def derivation_space(alg: Algebra, x: Bimodule) -> Subspace:
    """Z^1(A, X) as a subspace of vec-coordinates."""
    return kernel(derivation_conditions(alg, x))


def inner_map(alg: Algebra, x: Bimodule) -> LinMap:
    """x -> vec(a -> a.x - x.a)."""
    if alg.dim == 0:
        return LinMap.zero(0, x.dim)
    return vstack([x.left[j] - x.right[j] for j in range(alg.dim)], x.dim)


def inner_derivations(alg: Algebra, x: Bimodule) -> Subspace:
    """B^1(A, X)."""
    return image(inner_map(alg, x))


@dataclass(frozen=True)
class H1:
    z1: int
    b1: int
    h1: int

    def as_dict(self) -> dict:
        return {"z1": self.z1, "b1": self.b1, "h1": self.h1}


def h1(alg: Algebra, x: Bimodule) -> H1:
    z = derivation_space(alg, x)
    b = inner_derivations(alg, x)
    if not z.contains(b):
        raise NotClosed("an inner derivation failed the derivation rule")
    return H1(z.dim, b.dim, z.dim - b.dim)


def h1_enumerated(alg: Algebra, x: Bimodule) -> H1:
    """H^1 dimensions from the column-by-column operator and the rank of the inner map."""
    op = derivation_operator(alg, x)
    z1 = op.cols - op.rank()
    b1 = inner_map(alg, x).rank()
    return H1(z1, b1, z1 - b1)


def derivation_basis(alg: Algebra, x: Bimodule) -> list[Derivation]:
    z = derivation_space(alg, x)
    return [Derivation(alg, x, LinMap.unvec(v, x.dim, alg.dim)) for v in z.basis]


def is_inner(d: Derivation) -> tuple[Fraction, ...] | None:
    """A witness x with D(a) = a.x - x.a, or None."""
    sol = solve_affine(inner_map(d.alg, d.module), d.map.vec())
    return None if sol is None else sol[0]


# ---------------------------------------------------------------------------
# push-out


@dataclass(frozen=True, eq=False)
class PushoutResult:
    env: Envelope
    dc: CentralizerModule  # carries the B-actions
    derivation: Derivation
    d_tilde: LinMap  # dim DC(X) x dim B, columns in module coordinates
    membership_ok: bool
    derivation_ok: bool
    diagram_ok: bool

    @property
    def ok(self) -> bool:
        return self.membership_ok and self.derivation_ok and self.diagram_ok

    def pairs(self) -> list[CentralizerPair]:
        return [self.dc.pair(c) for c in self.d_tilde.columns()]


def pushout_pairs(env: Envelope, x_b: Bimodule, d: LinMap) -> list[CentralizerPair]:
    """(L(b), R(b)) with L(b)(a) = D(ba) - b.D(a), R(b)(a) = D(ab) - D(a).b."""
    out = []
    for b in range(env.amb.dim):
        lb = d @ env.left_mult(b) - x_b.left[b] @ d
        rb = d @ env.right_mult(b) - x_b.right[b] @ d
        out.append(CentralizerPair(lb, rb))
    return out


def _derivation_rule_holds(alg: Algebra, mod: Bimodule, m: LinMap) -> bool:
    return all(not any(derivation_defect(alg, mod, m, i, j)) for i in range(alg.dim) for j in range(alg.dim))


def pushout(env: Envelope, x_b: Bimodule, d: Derivation, dc: CentralizerModule | None = None) -> PushoutResult:
    """Extend D: A -> X to D~: B -> DC(X) and check the three conclusions."""
    if not same_algebra(x_b.alg, env.amb):
        raise PreconditionFailed("module is not a bimodule over the envelope's ambient algebra")
    if not same_algebra(d.alg, env.sub):
        raise PreconditionFailed("derivation is not defined on the envelope's sub-algebra")
    x = restrict(x_b, env)
    if d.map.shape != (x.dim, env.sub.dim):
        raise PreconditionFailed("derivation has the wrong shape for this module")
    if not _derivation_rule_holds(env.sub, x, d.map):
        raise PreconditionFailed("D is not a derivation into the restricted module")
    d = Derivation(env.sub, x, d.map)
    if dc is None or dc.b_module is None:
        dc = attach_envelope_actions(double_centralizer(x), env, x_b)

    cols = []
    membership_ok = True
    for pair in pushout_pairs(env, x_b, d.map):
        c = dc.coordinates(pair)
        if c is None:
            membership_ok = False
            break
        cols.append(c)
    if not membership_ok:
        return PushoutResult(env, dc, d, LinMap.zero(dc.dim, env.amb.dim), False, False, False)
    d_tilde = LinMap.from_columns(cols, dc.dim) if cols else LinMap.zero(dc.dim, 0)
    derivation_ok = _derivation_rule_holds(env.amb, dc.b_module, d_tilde)
    diagram_ok = d_tilde @ env.embedding == iota(dc) @ d.map
    return PushoutResult(env, dc, d, d_tilde, membership_ok, derivation_ok, diagram_ok)


def pushout_solution_space(result: PushoutResult):
    """All derivations G: B -> DC(X) with G o iota = iota_X o D, as (particular, homogeneous)."""
    env, dc = result.env, result.dc
    nb, d = env.amb.dim, dc.dim
    sys = linear_system(d * nb)
    # derivation rule over B on vec(G)
    for row in derivation_conditions(env.amb, dc.b_module).entries:
        sys.add({k: v for k, v in enumerate(row) if v})
    target = iota(dc) @ result.derivation.map
    sys.add_block(kron(env.embedding.T, LinMap.identity(d)), rhs=target.vec())
    return sys.solve()


def _require_dense_square(alg: Algebra) -> None:
    if not square_span(alg).is_full():
        raise SquareSpanDeficient("span(A^2) != A; the push-out need not be unique")


def pushout_unique(result: PushoutResult) -> bool:
    """True iff the diagram-commuting derivations B -> DC(X) reduce to D~ alone."""
    _require_dense_square(result.env.sub)
    sol = pushout_solution_space(result)
    if sol is None:
        return False
    particular, homogeneous = sol
    return homogeneous.dim == 0 and particular == result.d_tilde.vec()


def inner_witness_b(result: PushoutResult) -> tuple[Fraction, ...] | None:
    """w in DC(X) with D~(b) = b.w - w.b over B, or None."""
    return is_inner(Derivation(result.env.amb, result.dc.b_module, result.d_tilde))


def pull_back_inner(result: PushoutResult) -> CentralizerPair | None:
    """If D~ is inner, a pair (S, T) in DC(X) with D(a) = S(a) - T(a).

    With D~(b) = b.w - w.b the pair is -w, since D~(a) = (S,T).a - a.(S,T).
    """
    _require_dense_square(result.env.sub)
    w = inner_witness_b(result)
    if w is None:
        return None
    pair = result.dc.pair(tuple(-c for c in w))
    if pair.s - pair.t != result.derivation.map:
        raise NotClosed("pulled-back pair does not reproduce D")
    return pair


def pushout_of_inner_matches(result: PushoutResult, witness) -> bool:
    """For D(a) = a.x - x.a check D~(b) = b.(L_x,R_x) - (L_x,R_x).b on every b."""
    dc = result.dc
    w = dc.coordinates(lr_pair(dc.x, witness))
    if w is None:
        return False
    for b in range(result.env.amb.dim):
        expect = tuple(p - q for p, q in zip(dc.b_module.left[b] @ w, dc.b_module.right[b] @ w))
        if result.d_tilde.column(b) != expect:
            return False
    return True


def pushout_map(env: Envelope, x_b: Bimodule, dc: CentralizerModule) -> LinMap:
    """The linear map vec(D) -> vec(D~) restricted to Z^1(A, X), in Z^1 coordinates."""
    x = dc.x
    z = derivation_space(env.sub, x)
    cols = []
    for v in z.basis:
        d = Derivation(env.sub, x, LinMap.unvec(v, x.dim, env.sub.dim))
        cols.append(pushout(env, x_b, d, dc).d_tilde.vec())
    return LinMap.from_columns(cols, dc.dim * env.amb.dim) if cols else LinMap.zero(dc.dim * env.amb.dim, 0)


