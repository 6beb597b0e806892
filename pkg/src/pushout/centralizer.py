"""Double centralizers (S, T) from A into a bimodule X.

A pair is encoded as the vector [vec(S); vec(T)] where vec is the column-major
flattening of a dim(X) x dim(A) matrix.  The double-centralizer module is the
solution subspace of these vectors, and all actions are expressed in the
RREF basis of that subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, Envelope
from .bimodule import (
    Bimodule,
    _module_map_conditions,
    annihilators,
    check_bimodule_map,
    check_restriction,
    new_bimodule,
    same_algebra,
)
from .errors import AbsorptionFails, AnnihilatorNonzero, NotClosed, NotInjective, ValidationError
from .exactla import (
    ZERO,
    LinMap,
    Subspace,
    block_diag,
    hstack,
    image,
    kernel,
    kron,
    linear_system,
    restrict_to,
    solve_affine,
    unit_vector,
    vstack,
)


@dataclass(frozen=True)
class CentralizerPair:
    s: LinMap
    t: LinMap

    def vec(self) -> tuple:
        return self.s.vec() + self.t.vec()

    def to_json(self) -> dict:
        return {"S": self.s.to_json(), "T": self.t.to_json()}


def pair_conditions(x: Bimodule) -> LinMap:
    """All linear conditions on [vec(S); vec(T)] defining a double centralizer."""
    alg = x.alg
    n, m = alg.dim, x.dim
    half = n * m
    right_rows = _module_map_conditions(x, "right")
    left_rows = _module_map_conditions(x, "left")
    zeros_r = LinMap.zero(right_rows.rows, half)
    zeros_l = LinMap.zero(left_rows.rows, half)
    rows = [hstack([right_rows, zeros_r]), hstack([zeros_l, left_rows])]
    # a.S(alpha) = T(a).alpha, i.e. left(i) S(e_j) - right(j) T(e_i) = 0
    cent = []
    for i in range(n):
        for j in range(n):
            for r in range(m):
                row = [ZERO] * (2 * half)
                for rr in range(m):
                    v = x.left[i][r, rr]
                    if v:
                        row[j * m + rr] += v
                    w = x.right[j][r, rr]
                    if w:
                        row[half + i * m + rr] -= w
                cent.append(row)
    if cent:
        rows.append(LinMap.from_rows(cent, 2 * half))
    return vstack(rows, 2 * half)


def is_centralizer_pair(x: Bimodule, pair: CentralizerPair) -> bool:
    return not any(pair_conditions(x) @ pair.vec())


@dataclass(frozen=True, eq=False)
class CentralizerModule:
    alg: Algebra
    x: Bimodule
    space: Subspace
    module: Bimodule
    env: Envelope | None = None
    x_b: Bimodule | None = None
    b_module: Bimodule | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def pair(self, coords) -> CentralizerPair:
        v = self.space.element(coords)
        half = self.alg.dim * self.x.dim
        return CentralizerPair(
            LinMap.unvec(v[:half], self.x.dim, self.alg.dim),
            LinMap.unvec(v[half:], self.x.dim, self.alg.dim),
        )

    def basis_pairs(self) -> list[CentralizerPair]:
        return [self.pair(unit_vector(self.dim, k)) for k in range(self.dim)]

    def coordinates(self, pair: CentralizerPair):
        """Coordinates of a pair in the module basis, None if it is not a double centralizer."""
        return self.space.coordinates(pair.vec())


def _pair_actions(x: Bimodule, lmul, rmul, left_ops, right_ops) -> tuple[list[LinMap], list[LinMap]]:
    """Operators on pair vectors for b.(S,T) = (b.S(.), T(. b)), (S,T).b = (S(b .), T(.).b)."""
    n = x.alg.dim
    ix, ia = LinMap.identity(x.dim), LinMap.identity(n)
    la = [block_diag(kron(ia, lo), kron(rm.T, ix)) for lo, rm in zip(left_ops, rmul)]
    ra = [block_diag(kron(lm.T, ix), kron(ia, ro)) for lm, ro in zip(lmul, right_ops)]
    return la, ra


def _restrict_ops(space: Subspace, ops, label: str) -> tuple[LinMap, ...]:
    out = []
    for k, op in enumerate(ops):
        try:
            out.append(restrict_to(op, space, space))
        except ValueError:
            raise NotClosed(f"{label} action of basis element {k} leaves the double centralizer space") from None
    return tuple(out)


def double_centralizer(x: Bimodule, alg: Algebra | None = None) -> CentralizerModule:
    """The A-bimodule of double centralizers from A into X."""
    alg = alg or x.alg
    if not same_algebra(alg, x.alg):
        raise ValueError("module is not over this algebra")
    space = kernel(pair_conditions(x))
    n = alg.dim
    la, ra = _pair_actions(
        x,
        [alg.left_mult(i) for i in range(n)],
        [alg.right_mult(i) for i in range(n)],
        x.left,
        x.right,
    )
    mod = Bimodule(alg, space.dim, _restrict_ops(space, la, "left"), _restrict_ops(space, ra, "right"),
                   name=f"DC({x.name})")
    return CentralizerModule(alg, x, space, mod)


def iota_vectors(x: Bimodule) -> LinMap:
    """x -> [vec(L_x); vec(R_x)] with L_x(a) = x.a and R_x(a) = a.x."""
    n = x.alg.dim
    if n == 0:
        return LinMap.zero(0, x.dim)
    return vstack([vstack(list(x.right), x.dim), vstack(list(x.left), x.dim)], x.dim)


def iota(dc: CentralizerModule) -> LinMap:
    """The embedding X -> DC(X) in module coordinates."""
    raw = iota_vectors(dc.x)
    cols = []
    for c in raw.columns():
        coords = dc.space.coordinates(c)
        if coords is None:
            raise NotClosed("(L_x, R_x) is not a double centralizer")
        cols.append(coords)
    return LinMap.from_columns(cols, dc.dim)


def attach_envelope_actions(dc: CentralizerModule, env: Envelope, x_b: Bimodule) -> CentralizerModule:
    """Install the B-bimodule structure b.(L,R) = (b.L(.), R(. b)), (L,R).b = (L(b .), R(.).b)."""
    if not same_algebra(env.sub, dc.alg):
        raise ValueError("envelope's sub-algebra differs from the centralizer's algebra")
    check_restriction(x_b, dc.x, env)
    nb = env.amb.dim
    la, ra = _pair_actions(
        dc.x,
        [env.left_mult(b) for b in range(nb)],
        [env.right_mult(b) for b in range(nb)],
        x_b.left,
        x_b.right,
    )
    left = _restrict_ops(dc.space, la, "left B")
    right = _restrict_ops(dc.space, ra, "right B")
    b_module = new_bimodule(env.amb, dc.dim, left, right, name=f"DC({dc.x.name}) over {env.amb.name}")
    # restriction along the embedding must reproduce the A-actions
    for i, col in enumerate(env.embedding.columns()):
        if b_module.act_left(col) != dc.module.left[i] or b_module.act_right(col) != dc.module.right[i]:
            raise NotClosed(f"B-action restricted to a{i} disagrees with the A-action")
    return CentralizerModule(dc.alg, dc.x, dc.space, dc.module, env, x_b, b_module)


def pair_to_derivation(pair: CentralizerPair) -> LinMap:
    """The map a -> S(a) - T(a)."""
    return pair.s - pair.t


def lr_pair(x: Bimodule, vec) -> CentralizerPair:
    """(L_x, R_x) for a module element."""
    cols_l = [x.right[j] @ vec for j in range(x.alg.dim)]
    cols_r = [x.left[j] @ vec for j in range(x.alg.dim)]
    return CentralizerPair(LinMap.from_columns(cols_l, x.dim), LinMap.from_columns(cols_r, x.dim))


def absorbs(x_tilde: Bimodule, j: LinMap) -> tuple[str, int] | None:
    """First (side, index) where A.X~ + X~.A is not inside j(X), or None."""
    img = image(j)
    for side, maps in (("left", x_tilde.left), ("right", x_tilde.right)):
        for i, m in enumerate(maps):
            for col in m.columns():
                if col not in img:
                    return side, i
    return None


@dataclass(frozen=True)
class UniversalMap:
    j_hat: LinMap
    solution_dim: int  # dimension of the homogeneous part of the factoring system
    factors: bool


def universal_map(x: Bimodule, j: LinMap, x_tilde: Bimodule, dc: CentralizerModule | None = None) -> UniversalMap:
    """The unique bimodule map j^ : X~ -> DC(X) with iota_X = j^ o j.

    Built as j^(y) = (j^-1 o L_y, j^-1 o R_y); uniqueness is confirmed by
    solving for every bimodule map g with g o j = iota_X.
    """
    if not same_algebra(x.alg, x_tilde.alg):
        raise ValueError("modules over different algebras")
    if not annihilators(x).both.is_zero():
        raise AnnihilatorNonzero("X has a nonzero annihilator; pass X through annihilator_free_quotient first")
    if j.shape != (x_tilde.dim, x.dim):
        raise ValueError(f"j must be {x_tilde.dim}x{x.dim}")
    if j.rank() != x.dim:
        raise NotInjective("j is not injective")
    check_bimodule_map(x, x_tilde, j)
    bad = absorbs(x_tilde, j)
    if bad is not None:
        raise AbsorptionFails(f"{bad[0]} action of a{bad[1]} leaves j(X)", *bad)
    dc = dc or double_centralizer(x)

    def j_inv(v):
        return solve_affine(j, v)[0]

    cols = []
    for y in range(x_tilde.dim):
        ey = unit_vector(x_tilde.dim, y)
        s = LinMap.from_columns([j_inv(x_tilde.right[i] @ ey) for i in range(x.alg.dim)], x.dim)
        t = LinMap.from_columns([j_inv(x_tilde.left[i] @ ey) for i in range(x.alg.dim)], x.dim)
        coords = dc.coordinates(CentralizerPair(s, t))
        if coords is None:
            raise NotClosed("constructed pair is not a double centralizer")
        cols.append(coords)
    j_hat = LinMap.from_columns(cols, dc.dim)
    io = iota(dc)
    factors = j_hat @ j == io
    check_bimodule_map(x_tilde, dc.module, j_hat)

    # all g : X~ -> DC(X) bimodule maps with g j = iota_X; unknown vec(g)
    d, t = dc.dim, x_tilde.dim
    sys = linear_system(d * t)
    idd, idt = LinMap.identity(d), LinMap.identity(t)
    for a_t, a_dc in zip(x_tilde.left + x_tilde.right, dc.module.left + dc.module.right):
        # g a_t - a_dc g = 0
        sys.add_block(kron(a_t.T, idd) - kron(idt, a_dc))
    sys.add_block(kron(j.T, idd), rhs=io.vec())
    sol = sys.solve()
    if sol is None:
        raise ValidationError("factoring system is inconsistent")
    particular, homogeneous = sol
    if homogeneous.dim == 0 and LinMap.unvec(particular, d, t) != j_hat:
        raise NotClosed("the solved factoring map differs from the constructed one")
    return UniversalMap(j_hat, homogeneous.dim, factors)
