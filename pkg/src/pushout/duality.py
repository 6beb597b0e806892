"""Double centralizers of dual modules via their predual.

DC(X*) is identified with the dual of (A (x)_A X (+) X (x)_A A) / N, where N is
spanned by (a (x) x.c, -a.x (x) c).  The direct sum is coordinatised as the
A (x)_A X block followed by the X (x)_A A block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bimodule import (
    BalancedTensor,
    Bimodule,
    balanced_tensor,
    dual_module,
    is_bimodule_map,
    is_induced,
    regular,
)
from .centralizer import CentralizerModule, double_centralizer, iota
from .errors import NotInduced
from .exactla import (
    LinMap,
    block_diag,
    Quotient,
    Subspace,
    hstack,
    image,
    kernel,
    quotient_basis,
    unit_vector,
)


@dataclass(frozen=True, eq=False)
class PredualData:
    left: BalancedTensor  # A (x)_A X
    right: BalancedTensor  # X (x)_A A
    n_sub: Subspace
    quotient: Quotient
    mu: LinMap  # direct sum -> X
    module: Bimodule  # the quotient as an A-bimodule

    @property
    def sum_dim(self) -> int:
        return self.left.dim + self.right.dim

    @property
    def q(self) -> LinMap:
        return self.quotient.projection

    def n_in_ker_mu(self) -> bool:
        return all(not any(self.mu @ g) for g in self.n_sub.basis)


def build_predual(x: Bimodule) -> PredualData:
    alg = x.alg
    a = regular(alg)
    lt = balanced_tensor(a, x)
    rt = balanced_tensor(x, a)
    n, m = alg.dim, x.dim
    dl, dr = lt.dim, rt.dim

    # generators (e_i (x) x_u.e_k, -e_i.x_u (x) e_k)
    gens = []
    for i in range(n):
        for u in range(m):
            xu = unit_vector(m, u)
            for k in range(n):
                raw_l = [0] * (n * m)
                for w, c in enumerate(x.right[k] @ xu):
                    if c:
                        raw_l[i * m + w] += c
                raw_r = [0] * (m * n)
                for w, c in enumerate(x.left[i] @ xu):
                    if c:
                        raw_r[w * n + k] -= c
                gens.append(lt.projection @ raw_l + rt.projection @ raw_r)
    n_sub = Subspace.span(dl + dr, gens)
    quotient = quotient_basis(dl + dr, n_sub)

    # mu: a (x) x -> a.x, x (x) a -> x.a
    mu_l = lt.descend(hstack(list(x.left)) if n else LinMap.zero(m, 0))
    mu_r_cols = [x.right[k].column(u) for u in range(m) for k in range(n)]
    mu_r = rt.descend(LinMap.from_columns(mu_r_cols, m) if mu_r_cols else LinMap.zero(m, 0))
    mu = hstack([mu_l, mu_r]) if dl + dr else LinMap.zero(m, 0)

    left_ops = [block_diag(l, r) for l, r in zip(lt.module.left, rt.module.left)]
    right_ops = [block_diag(l, r) for l, r in zip(lt.module.right, rt.module.right)]
    module = Bimodule(
        alg,
        quotient.dim,
        tuple(quotient.projection @ op @ quotient.section for op in left_ops),
        tuple(quotient.projection @ op @ quotient.section for op in right_ops),
        name=f"predual of DC({x.name}*)",
    )
    return PredualData(lt, rt, n_sub, quotient, mu, module)


@dataclass(frozen=True, eq=False)
class DualIso:
    predual: PredualData
    dc_dual: CentralizerModule
    phi: LinMap  # DC(X*) -> Q*, columns are functionals on Q
    bijective: bool
    intertwines: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.intertwines


def canonical_map(x: Bimodule, predual: PredualData, dc_dual: CentralizerModule) -> LinMap:
    """(S, T) -> the functional <a (x) x, S> + <x' (x) a', T> on the quotient."""
    n, m = x.alg.dim, x.dim
    lt, rt = predual.left, predual.right
    cols = []
    for pair in dc_dual.basis_pairs():
        raw_l = LinMap.from_rows([[pair.s[u, i] for i in range(n) for u in range(m)]], n * m)
        raw_r = LinMap.from_rows([[pair.t[u, i] for u in range(m) for i in range(n)]], m * n)
        f = hstack([lt.descend(raw_l), rt.descend(raw_r)])
        for g in predual.n_sub.basis:
            if any(f @ g):
                raise AssertionError("functional does not vanish on N")
        cols.append((f @ predual.quotient.section).row(0))
    return LinMap.from_columns(cols, predual.quotient.dim)


def dual_iso(x: Bimodule) -> DualIso:
    predual = build_predual(x)
    dc_dual = double_centralizer(dual_module(x))
    phi = canonical_map(x, predual, dc_dual)
    bij = phi.rows == phi.cols and phi.rank() == phi.rows
    inter = is_bimodule_map(dc_dual.module, dual_module(predual.module), phi)
    return DualIso(predual, dc_dual, phi, bij, inter)


def dual_iso_check(x: Bimodule) -> bool:
    return dual_iso(x).ok


def factorization_check(x: Bimodule, data: DualIso | None = None) -> bool:
    """q* o iota_{X*} = mu*, read through the canonical identification of DC(X*)."""
    data = data or dual_iso(x)
    iota_dual = iota(data.dc_dual)
    lhs = data.predual.q.T @ data.phi @ iota_dual
    return lhs == data.predual.mu.T


def injectivity_surjectivity_check(x: Bimodule, data: DualIso | None = None) -> bool:
    """ker(iota_{X*}) = 0 exactly when mu is onto X."""
    data = data or dual_iso(x)
    injective = kernel(iota(data.dc_dual)).is_zero()
    surjective = image(data.predual.mu).is_full() if x.dim else True
    return injective == surjective


@dataclass(frozen=True)
class InducedDualReport:
    iota_bijective: bool
    ker_mu_in_n: bool

    @property
    def ok(self) -> bool:
        return self.iota_bijective and self.ker_mu_in_n


def induced_dual_check(x: Bimodule) -> InducedDualReport:
    """For induced X: iota_{X*} is bijective and ker(mu) is contained in N."""
    induced, _ = is_induced(x)
    if not induced:
        raise NotInduced("module is not induced")
    data = dual_iso(x)
    io = iota(data.dc_dual)
    bij = io.rows == io.cols and io.rank() == io.rows
    return InducedDualReport(bij, data.predual.n_sub.contains(kernel(data.predual.mu)))
