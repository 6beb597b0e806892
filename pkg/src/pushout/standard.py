"""Constructors for the small algebras, envelopes and modules used throughout."""

from __future__ import annotations

from .algebra import Algebra, Envelope, new_algebra, new_envelope, unitization
from .exactla import ONE, ZERO, LinMap, unit_vector


def matrix_unit_algebra(n: int, units: list[tuple[int, int]], name: str) -> Algebra:
    """Span of the given matrix units e_pq in M_n (must be closed under products)."""
    index = {u: k for k, u in enumerate(units)}
    d = len(units)
    mult = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i, (p, q) in enumerate(units):
        for j, (r, s) in enumerate(units):
            if q == r:
                mult[i][j][index[(p, s)]] = ONE
    names = [f"e{p + 1}{q + 1}" for p, q in units]
    return new_algebra(d, mult, names, name=name)


def ground_field() -> Algebra:
    return new_algebra(1, [[[1]]], ["1"], name="k")


def zero_square(dim: int = 1, name: str | None = None) -> Algebra:
    """dim-dimensional algebra with zero multiplication (N2 for dim 1)."""
    mult = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    return new_algebra(dim, mult, [f"n{i}" if dim > 1 else "n" for i in range(dim)], name=name or ("N2" if dim == 1 else f"Z{dim}"))


def strictly_upper(n: int) -> Algebra:
    units = [(p, q) for p in range(n) for q in range(n) if p < q]
    # order e12, e13, e23 for n = 3
    units.sort(key=lambda u: (u[0], u[1]))
    return matrix_unit_algebra(n, units, f"N{n}")


def upper_triangular(n: int) -> Algebra:
    units = [(p, q) for p in range(n) for q in range(n) if p <= q]
    return matrix_unit_algebra(n, units, f"T{n}")


def full_matrix(n: int) -> Algebra:
    units = [(p, q) for p in range(n) for q in range(n)]
    return matrix_unit_algebra(n, units, f"M{n}")


def diagonal(n: int) -> Algebra:
    """k^n with coordinatewise product."""
    mult = [[[ONE if i == j == k else ZERO for k in range(n)] for j in range(n)] for i in range(n)]
    return new_algebra(n, mult, [f"d{i + 1}" for i in range(n)], name=f"k{n}")


def product_algebra(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    """a (+) b with componentwise product; basis of a first."""
    n = a.dim + b.dim
    mult = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(a.dim):
        for j in range(a.dim):
            mult[i][j][: a.dim] = list(a.mult[i][j])
    for i in range(b.dim):
        for j in range(b.dim):
            mult[a.dim + i][a.dim + j][a.dim:] = list(b.mult[i][j])
    return new_algebra(n, mult, list(a.basis_names) + list(b.basis_names), name=name or f"{a.name}+{b.name}")


def first_summand(a: Algebra, b: Algebra, amb: Algebra) -> Envelope:
    """a as the ideal a (+) 0 of amb = product_algebra(a, b)."""
    emb = LinMap.from_columns([unit_vector(amb.dim, i) for i in range(a.dim)], amb.dim)
    return new_envelope(a, amb, emb)


def strict_in_triangular(n: int) -> Envelope:
    """N_n inside T_n through the matrix-unit inclusion."""
    sub = strictly_upper(n)
    amb = upper_triangular(n)
    pos = {name: k for k, name in enumerate(amb.basis_names)}
    emb = LinMap.from_columns([unit_vector(amb.dim, pos[nm]) for nm in sub.basis_names], amb.dim)
    return new_envelope(sub, amb, emb)


def dual_numbers() -> Algebra:
    """k[t]/(t^2), i.e. the unitization of N2 (basis n, 1)."""
    return unitization(zero_square(1)).amb
