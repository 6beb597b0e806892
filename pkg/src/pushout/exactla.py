"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries.  Matrices are
immutable (:class:`LinMap`), subspaces are stored in reduced row-echelon form
(:class:`Subspace`) so that two equal subspaces have identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# row reduction


def _rref_rows(rows: Iterable[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduce sparse rows (column -> nonzero Fraction) to RREF.

    Returns the nonzero reduced rows sorted by pivot, and the pivots.
    """
    work = [dict(r) for r in rows if r]
    pivot_rows: dict[int, dict] = {}
    for row in work:
        # eliminate existing pivots from the incoming row
        for p, prow in pivot_rows.items():
            f = row.get(p)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        p = min(row)
        inv = ONE / row[p]
        if inv != 1:
            for c in row:
                row[c] *= inv
        # back-substitute into earlier pivot rows
        for prow in pivot_rows.values():
            f = prow.get(p)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, ZERO) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivot_rows[p] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def _sparse(vec: Sequence[Fraction]) -> dict:
    return {i: Fraction(v) for i, v in enumerate(vec) if v}


def _dense(row: dict, n: int) -> tuple[Fraction, ...]:
    out = [ZERO] * n
    for c, v in row.items():
        out[c] = v
    return tuple(out)


# ---------------------------------------------------------------------------
# LinMap


@dataclass(frozen=True)
class LinMap:
    """A rows x cols rational matrix (the map R^cols -> R^rows)."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "LinMap":
        data = tuple(tuple(to_fraction(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns, rows: int) -> "LinMap":
        columns = [tuple(to_fraction(v) for v in c) for c in columns]
        data = tuple(tuple(c[r] for c in columns) for r in range(rows))
        return cls(rows, len(columns), data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinMap":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "LinMap":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def row(self, r: int) -> tuple[Fraction, ...]:
        return self.entries[r]

    def column(self, c: int) -> tuple[Fraction, ...]:
        return tuple(r[c] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(c) for c in range(self.cols)]

    def transpose(self) -> "LinMap":
        return LinMap(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple((() for _ in range(self.cols))))

    @property
    def T(self) -> "LinMap":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, LinMap):
            if self.cols != other.rows:
                raise ValueError(f"cannot compose {self.shape} with {other.shape}")
            ocols = other.columns()
            data = tuple(
                tuple(sum((a * b for a, b in zip(r, oc) if a and b), ZERO) for oc in ocols)
                for r in self.entries
            )
            return LinMap(self.rows, other.cols, data)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for map of shape {self.shape}")
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), ZERO) for r in self.entries)

    def apply(self, vec) -> tuple[Fraction, ...]:
        return self @ vec

    def __add__(self, other: "LinMap") -> "LinMap":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LinMap(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "LinMap") -> "LinMap":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LinMap(self.rows, self.cols, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def scale(self, k) -> "LinMap":
        k = to_fraction(k)
        return LinMap(self.rows, self.cols, tuple(tuple(k * a for a in r) for r in self.entries))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def rank(self) -> int:
        return len(_rref_rows((_sparse(r) for r in self.entries), self.cols)[0])

    def vec(self) -> tuple[Fraction, ...]:
        """Column-major flattening: images of e_0, e_1, ... concatenated."""
        return tuple(v for c in range(self.cols) for v in self.column(c))

    @classmethod
    def unvec(cls, vec, rows: int, cols: int) -> "LinMap":
        vec = tuple(vec)
        if len(vec) != rows * cols:
            raise ValueError("vector length does not match shape")
        return cls.from_columns([vec[c * rows:(c + 1) * rows] for c in range(cols)], rows)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in r] for r in self.entries]


def hstack(maps: Sequence[LinMap]) -> LinMap:
    rows = maps[0].rows
    if any(m.rows != rows for m in maps):
        raise ValueError("row counts differ")
    data = tuple(tuple(v for m in maps for v in m.entries[r]) for r in range(rows))
    return LinMap(rows, sum(m.cols for m in maps), data)


def vstack(maps: Sequence[LinMap], cols: int | None = None) -> LinMap:
    if cols is None:
        cols = maps[0].cols
    if any(m.cols != cols for m in maps):
        raise ValueError("column counts differ")
    data = tuple(r for m in maps for r in m.entries)
    return LinMap(len(data), cols, data)


def block_diag(a: LinMap, b: LinMap) -> LinMap:
    top = hstack([a, LinMap.zero(a.rows, b.cols)]) if a.rows else LinMap.zero(0, a.cols + b.cols)
    bot = hstack([LinMap.zero(b.rows, a.cols), b]) if b.rows else LinMap.zero(0, a.cols + b.cols)
    return vstack([top, bot], a.cols + b.cols)


def kron(a: LinMap, b: LinMap) -> LinMap:
    """Kronecker product, index (i, k) -> i * b.rows + k."""
    data = tuple(
        tuple(a.entries[i][j] * b.entries[k][l] for j in range(a.cols) for l in range(b.cols))
        for i in range(a.rows)
        for k in range(b.rows)
    )
    return LinMap(a.rows * b.rows, a.cols * b.cols, data)


def vector_is_zero(v) -> bool:
    return not any(v)


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add_vectors(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub_vectors(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale_vector(k, v):
    return tuple(k * a for a in v)


# ---------------------------------------------------------------------------
# Subspace


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim with a canonical RREF basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        rows = []
        for v in vectors:
            v = tuple(to_fraction(a) for a in v)
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(_sparse(v))
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(_dense(r, ambient_dim) for r in reduced), tuple(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def coordinates(self, v) -> tuple[Fraction, ...] | None:
        """Coefficients of v in this basis, or None if v is not in the subspace."""
        v = tuple(to_fraction(a) for a in v)
        coeffs = tuple(v[p] for p in self.pivots)
        rebuilt = [ZERO] * self.ambient_dim
        for c, b in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        rebuilt[i] += c * x
        if tuple(rebuilt) != v:
            return None
        return coeffs

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def element(self, coeffs) -> tuple[Fraction, ...]:
        out = [ZERO] * self.ambient_dim
        for c, b in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        out[i] += c * x
        return tuple(out)

    def basis_map(self) -> LinMap:
        """The inclusion Q^dim -> Q^ambient_dim as a matrix."""
        return LinMap.from_columns(self.basis, self.ambient_dim)

    def coordinate_map(self) -> LinMap:
        """A left inverse of basis_map (reads the pivot entries)."""
        return LinMap.from_rows([unit_vector(self.ambient_dim, p) for p in self.pivots], self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(v) for v in b] for b in self.basis]


def kernel(m: LinMap) -> Subspace:
    reduced, pivots = _rref_rows((_sparse(r) for r in m.entries), m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            a = row.get(f)
            if a:
                v[p] = -a
        vecs.append(v)
    return Subspace.span(m.cols, vecs)


def image(m: LinMap) -> Subspace:
    return Subspace.span(m.rows, m.columns())


def rank(m: LinMap) -> int:
    return m.rank()


def solve_affine(m: LinMap, target) -> tuple[tuple[Fraction, ...], Subspace] | None:
    """Solve m x = target.  Returns (particular, kernel(m)) or None."""
    target = tuple(to_fraction(t) for t in target)
    if len(target) != m.rows:
        raise ValueError("target length must equal the number of rows")
    n = m.cols
    rows = []
    for r, t in zip(m.entries, target):
        row = _sparse(r)
        if t:
            row[n] = t
        rows.append(row)
    reduced, pivots = _rref_rows(rows, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(reduced, pivots):
        x[p] = row.get(n, ZERO)
    return tuple(x), kernel(m)


@dataclass(frozen=True)
class Quotient:
    """Q^ambient / sub, coordinatised by the non-pivot coordinates of sub."""

    sub: Subspace
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.projection.rows

    def project(self, v) -> tuple[Fraction, ...]:
        return self.projection @ v

    def lift(self, v) -> tuple[Fraction, ...]:
        return self.section @ v


def quotient_basis(ambient_dim: int, sub: Subspace) -> Quotient:
    """Projection onto Q^ambient / sub with kernel exactly sub, plus a section."""
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    pivset = set(sub.pivots)
    free = [c for c in range(ambient_dim) if c not in pivset]
    proj_rows = []
    for c in free:
        row = [ZERO] * ambient_dim
        row[c] = ONE
        for b, p in zip(sub.basis, sub.pivots):
            if b[c]:
                row[p] -= b[c]
        proj_rows.append(row)
    projection = LinMap.from_rows(proj_rows, ambient_dim)
    section = LinMap.from_columns([unit_vector(ambient_dim, c) for c in free], ambient_dim)
    return Quotient(sub, projection, section)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # x = sum s_i a_i = sum t_j b_j  <=>  [A | -B] (s, t) = 0
    na = a.dim
    cols = [tuple(v) for v in a.basis] + [tuple(-x for x in v) for v in b.basis]
    ker = kernel(LinMap.from_columns(cols, a.ambient_dim))
    return Subspace.span(a.ambient_dim, (a.element(k[:na]) for k in ker.basis))


def intersect_all(spaces: Sequence[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.full(ambient_dim)
    for s in spaces:
        out = intersect(out, s)
    return out


def preimage(m: LinMap, sub: Subspace) -> Subspace:
    """{v | m v in sub}."""
    q = quotient_basis(m.rows, sub)
    return kernel(q.projection @ m)


def restrict_to(m: LinMap, domain: Subspace, codomain: Subspace) -> LinMap:
    """Matrix of m restricted to domain, in the bases of domain and codomain.

    Raises ValueError if m does not map domain into codomain.
    """
    cols = []
    for b in domain.basis:
        c = codomain.coordinates(m @ b)
        if c is None:
            raise ValueError("map does not preserve the subspace")
        cols.append(c)
    return LinMap.from_columns(cols, codomain.dim)


def inverse(m: LinMap) -> LinMap:
    if m.rows != m.cols:
        raise ValueError("only square maps are invertible")
    cols = []
    for i in range(m.rows):
        sol = solve_affine(m, unit_vector(m.rows, i))
        if sol is None or sol[1].dim:
            raise ValueError("map is singular")
        cols.append(sol[0])
    return LinMap.from_columns(cols, m.rows)


def linear_system(n_unknowns: int) -> "SystemBuilder":
    return SystemBuilder(n_unknowns)


class SystemBuilder:
    """Accumulates sparse linear equations sum coeff * x[idx] = rhs."""

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.rows: list[dict] = []
        self.rhs: list[Fraction] = []

    def add(self, coeffs: dict, rhs=ZERO) -> None:
        row = {k: Fraction(v) for k, v in coeffs.items() if v}
        self.rows.append(row)
        self.rhs.append(to_fraction(rhs))

    def add_block(self, block: LinMap, offset: int = 0, rhs=None) -> None:
        """Add block @ x[offset:offset+block.cols] = rhs (zero by default)."""
        for i, r in enumerate(block.entries):
            self.add({offset + j: v for j, v in enumerate(r) if v}, ZERO if rhs is None else rhs[i])

    def add_equation_rows(self, rows: Sequence[dict], rhs: Sequence | None = None) -> None:
        for i, r in enumerate(rows):
            self.add(r, ZERO if rhs is None else rhs[i])

    def matrix(self) -> LinMap:
        return LinMap(len(self.rows), self.n, tuple(_dense(r, self.n) for r in self.rows))

    def solution_space(self) -> Subspace:
        return kernel(self.matrix())

    def solve(self):
        return solve_affine(self.matrix(), self.rhs)
