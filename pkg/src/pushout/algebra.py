"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import NotAssociative, NotIdeal, NotInjective, NotMultiplicative
from .exactla import (
    ONE,
    ZERO,
    LinMap,
    Subspace,
    image,
    solve_affine,
    to_fraction,
    unit_vector,
)


@dataclass(frozen=True, eq=False)
class Algebra:
    """Algebra with e_i * e_j = sum_k mult[i][j][k] e_k.

    Use :func:`new_algebra` to build a validated instance.
    """

    name: str
    dim: int
    basis_names: tuple[str, ...]
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def product(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.mult[i][j]

    def multiply(self, u, v) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def left_mult(self, i: int) -> LinMap:
        """Matrix of x -> e_i x."""
        key = ("L", i)
        if key not in self._cache:
            self._cache[key] = LinMap.from_columns([self.mult[i][j] for j in range(self.dim)], self.dim)
        return self._cache[key]

    def right_mult(self, i: int) -> LinMap:
        """Matrix of x -> x e_i."""
        key = ("R", i)
        if key not in self._cache:
            self._cache[key] = LinMap.from_columns([self.mult[j][i] for j in range(self.dim)], self.dim)
        return self._cache[key]

    def combine(self, coeffs, mats) -> LinMap:
        """sum_k coeffs[k] * mats[k] (with the zero map for an empty sum)."""
        out = None
        for c, m in zip(coeffs, mats):
            if c:
                term = m.scale(c)
                out = term if out is None else out + term
        if out is None:
            return LinMap.zero(mats[0].rows, mats[0].cols) if mats else LinMap.zero(0, 0)
        return out

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(self.dim))

    def unit(self) -> tuple[Fraction, ...] | None:
        """The identity element, if the algebra has one."""
        if self.dim == 0:
            return ()
        # u with L_u = R_u = id: linear in u
        n = self.dim
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                rows.append([self.mult[i][j][k] for i in range(n)])
                rhs.append(ONE if j == k else ZERO)
                rows.append([self.mult[j][i][k] for i in range(n)])
                rhs.append(ONE if j == k else ZERO)
        sol = solve_affine(LinMap.from_rows(rows, n), rhs)
        return None if sol is None else sol[0]

    def to_json(self) -> dict:
        from .exactla import format_rational

        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "mult": [[[format_rational(c) for c in self.mult[i][j]] for j in range(self.dim)] for i in range(self.dim)],
        }


def new_algebra(dim: int, mult, basis_names=None, name: str = "") -> Algebra:
    """Validate the structure constants and build an :class:`Algebra`.

    Raises :class:`NotAssociative` carrying the first failing quadruple
    (i, j, k, l) in lexicographic order.
    """
    if len(mult) != dim or any(len(row) != dim for row in mult) or any(
        len(v) != dim for row in mult for v in row
    ):
        raise ValueError(f"structure constants must have shape {dim}x{dim}x{dim}")
    c = tuple(tuple(tuple(to_fraction(x) for x in v) for v in row) for row in mult)
    if basis_names is None:
        basis_names = [f"e{i}" for i in range(dim)]
    if len(basis_names) != dim:
        raise ValueError("need one basis label per dimension")
    for i, j, k in product(range(dim), repeat=3):
        # (e_i e_j) e_k  vs  e_i (e_j e_k)
        lhs = [ZERO] * dim
        rhs = [ZERO] * dim
        for m in range(dim):
            a = c[i][j][m]
            if a:
                for l, v in enumerate(c[m][k]):
                    if v:
                        lhs[l] += a * v
            b = c[j][k][m]
            if b:
                for l, v in enumerate(c[i][m]):
                    if v:
                        rhs[l] += b * v
        if lhs != rhs:
            l = next(l for l in range(dim) if lhs[l] != rhs[l])
            n = basis_names
            raise NotAssociative(
                f"associativity fails at (i,j,k,l)=({i},{j},{k},{l}): "
                f"(({n[i]} {n[j]}) {n[k]})[{n[l]}]={lhs[l]} but ({n[i]} ({n[j]} {n[k]}))[{n[l]}]={rhs[l]}",
                i, j, k, l,
            )
    return Algebra(name, dim, tuple(basis_names), c)


def square_span(a: Algebra) -> Subspace:
    """span{ e_i e_j }."""
    return Subspace.span(a.dim, (a.mult[i][j] for i in range(a.dim) for j in range(a.dim)))


def has_dense_square(a: Algebra) -> bool:
    return square_span(a).is_full()


@dataclass(frozen=True, eq=False)
class Envelope:
    """B containing A as a two-sided ideal through the injective embedding."""

    sub: Algebra
    amb: Algebra
    embedding: LinMap
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def pull_back(self, v) -> tuple[Fraction, ...]:
        """The unique a in A with embedding(a) = v (v must lie in the image)."""
        sol = solve_affine(self.embedding, v)
        if sol is None:
            raise ValueError("vector is not in the image of the embedding")
        return sol[0]

    def left_mult(self, b: int) -> LinMap:
        """Matrix of A -> A, a -> b a (computed through the embedding)."""
        key = ("L", b)
        if key not in self._cache:
            cols = [self.pull_back(self.amb.multiply(unit_vector(self.amb.dim, b), self.embedding.column(j)))
                    for j in range(self.sub.dim)]
            self._cache[key] = LinMap.from_columns(cols, self.sub.dim)
        return self._cache[key]

    def right_mult(self, b: int) -> LinMap:
        """Matrix of A -> A, a -> a b."""
        key = ("R", b)
        if key not in self._cache:
            cols = [self.pull_back(self.amb.multiply(self.embedding.column(j), unit_vector(self.amb.dim, b)))
                    for j in range(self.sub.dim)]
            self._cache[key] = LinMap.from_columns(cols, self.sub.dim)
        return self._cache[key]

    def to_json(self) -> dict:
        return {"sub": self.sub.to_json(), "amb": self.amb.to_json(), "embedding": self.embedding.to_json()}


def new_envelope(sub: Algebra, amb: Algebra, embedding) -> Envelope:
    if not isinstance(embedding, LinMap):
        embedding = LinMap.from_rows(embedding, sub.dim)
    if embedding.shape != (amb.dim, sub.dim):
        raise ValueError(f"embedding must be {amb.dim}x{sub.dim}, got {embedding.rows}x{embedding.cols}")
    if embedding.rank() != sub.dim:
        raise NotInjective("embedding is not injective")
    cols = embedding.columns()
    for i in range(sub.dim):
        for j in range(sub.dim):
            if embedding @ sub.mult[i][j] != amb.multiply(cols[i], cols[j]):
                raise NotMultiplicative(f"embedding is not multiplicative on (e{i}, e{j})", i, j)
    img = image(embedding)
    for b in range(amb.dim):
        eb = unit_vector(amb.dim, b)
        for a in range(sub.dim):
            if amb.multiply(eb, cols[a]) not in img:
                raise NotIdeal(f"b{b} * a{a} leaves the image of A", "left", b, a)
            if amb.multiply(cols[a], eb) not in img:
                raise NotIdeal(f"a{a} * b{b} leaves the image of A", "right", b, a)
    return Envelope(sub, amb, embedding)


def identity_envelope(a: Algebra) -> Envelope:
    return new_envelope(a, a, LinMap.identity(a.dim))


def unitization(a: Algebra) -> Envelope:
    """A+ = A + k.1 with the adjoined unit as the last basis element."""
    n = a.dim + 1
    mult = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(a.dim):
        for j in range(a.dim):
            mult[i][j][: a.dim] = list(a.mult[i][j])
    for i in range(n):
        mult[i][n - 1][i] = ONE
        mult[n - 1][i][i] = ONE
    amb = new_algebra(n, mult, list(a.basis_names) + ["1"], name=f"{a.name}+" if a.name else "")
    emb = LinMap.from_columns([unit_vector(n, i) for i in range(a.dim)], n)
    return new_envelope(a, amb, emb)
