from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fr, matrices, sympy_nullity, sympy_rank, to_sympy
from pushout.exactla import (
    LinMap,
    Subspace,
    format_rational,
    image,
    intersect,
    kernel,
    kron,
    parse_rational,
    preimage,
    quotient_basis,
    solve_affine,
)

M11 = LinMap.from_rows([[1, 1], [2, 2]])


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), ("0", Fraction(0)), (" 7/3 ", Fraction(7, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["3/0", "", "1.5", "a/b", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"


def test_kernel_examples():
    assert kernel(LinMap.identity(3)).dim == 0
    assert kernel(LinMap.zero(2, 3)).dim == 3
    k = kernel(M11)
    assert k.dim == 1 and fr(1, -1) in k
    assert k == Subspace.span(2, [fr(-2, 2)])


def test_image_examples():
    assert image(LinMap.identity(3)).is_full()
    assert image(LinMap.zero(3, 2)).is_zero()
    im = image(M11)
    assert im.dim == 1 and fr(1, 2) in im and fr(1, 0) not in im


def test_solve_affine_examples():
    t = fr(3, -1, 2)
    part, hom = solve_affine(LinMap.identity(3), t)
    assert part == t and hom.dim == 0
    assert solve_affine(LinMap.zero(2, 2), fr(1, 0)) is None
    part, hom = solve_affine(M11, fr(1, 2))
    assert part == fr(1, 0)
    assert M11 @ part == fr(1, 2)
    assert hom == Subspace.span(2, [fr(1, -1)])


def test_quotient_examples():
    q = quotient_basis(3, Subspace.zero(3))
    assert q.projection == LinMap.identity(3)
    assert quotient_basis(3, Subspace.full(3)).dim == 0
    sub = Subspace.span(2, [fr(1, -1)])
    q = quotient_basis(2, sub)
    assert q.dim == 1
    assert kernel(q.projection) == sub
    assert q.projection @ q.section == LinMap.identity(1)


def test_intersect_examples():
    a = Subspace.span(3, [fr(1, 2, 0), fr(0, 1, 1)])
    assert intersect(a, a) == a
    assert intersect(a, Subspace.zero(3)).is_zero()
    full2 = Subspace.span(2, [fr(1, 0), fr(0, 1)])
    diag = Subspace.span(2, [fr(1, 1)])
    assert intersect(full2, diag) == diag


def test_vec_is_column_major_and_kron_identity():
    p = LinMap.from_rows([[1, 2], [0, 1], [3, 0]])
    f = LinMap.from_rows([[1, -1, 2], [0, 1, 1]])
    m = LinMap.from_rows([[2], [1], [0]])
    assert f.vec() == fr(1, 0, -1, 1, 2, 1)
    assert (p @ f @ m).vec() == kron(m.T, p) @ f.vec()
    assert LinMap.unvec(f.vec(), 2, 3) == f


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity_matches_sympy(m):
    k = kernel(m)
    assert m.rank() == sympy_rank(m)
    assert k.dim == sympy_nullity(m)
    assert m.rank() + k.dim == m.cols
    for v in k.basis:
        assert not any(m @ v)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(rows=n, cols=n), matrices(rows=n, cols=n), matrices(rows=n, cols=n))))
def test_matrix_product_associative(abc):
    a, b, c = abc
    assert (a @ b) @ c == a @ (b @ c)
    assert to_sympy(a @ b) == to_sympy(a) * to_sympy(b)


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.randoms(use_true_random=False))
def test_echelon_basis_is_canonical(m, rnd):
    rows = [m.row(i) for i in range(m.rows)]
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    # recombine rows: span is unchanged, so the echelon basis must be too
    mixed = [tuple(a + 2 * b for a, b in zip(shuffled[i], shuffled[i - 1])) if i else shuffled[0]
             for i in range(len(shuffled))]
    a = Subspace.span(m.cols, rows)
    b = Subspace.span(m.cols, shuffled + mixed)
    assert a == b
    assert a.basis == b.basis and a.pivots == b.pivots


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, cols=4))
def test_quotient_kills_subspace(m):
    sub = Subspace.span(4, [m.row(i) for i in range(m.rows)])
    q = quotient_basis(4, sub)
    assert q.dim == 4 - sub.dim
    for v in sub.basis:
        assert not any(q.projection @ v)
    assert kernel(q.projection) == sub
    assert q.projection @ q.section == LinMap.identity(q.dim)


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, cols=3), matrices(max_rows=3, cols=3))
def test_preimage(m, s):
    sub = Subspace.span(3, [s.row(i) for i in range(s.rows)])
    pre = preimage(m, sub)
    for v in pre.basis:
        assert m @ v in sub
    # dimension: dim pre = dim ker m + dim(im m cap sub)
    assert pre.dim == kernel(m).dim + intersect(image(m), sub).dim


@settings(max_examples=40, deadline=None)
@given(matrices(rows=3, max_cols=4), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=2), min_size=3, max_size=3))
def test_solve_affine_consistent(m, t):
    sol = solve_affine(m, tuple(t))
    in_image = tuple(Fraction(x) for x in t) in image(m)
    assert (sol is not None) == in_image
    if sol:
        part, hom = sol
        assert m @ part == tuple(Fraction(x) for x in t)
        assert hom == kernel(m)
