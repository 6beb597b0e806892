from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fr, sympy_rank, to_sympy
from pushout.bimodule import (
    annihilator_free_quotient,
    annihilators,
    balanced_tensor,
    direct_sum,
    dual_module,
    hom_left,
    hom_right,
    hom_tensor_duality_check,
    is_bimodule_map,
    is_induced,
    is_self_induced,
    multiplication_map,
    new_bimodule,
    outer_tensor,
    quotient_module,
    regular,
    side_annihilator,
    zero_module,
)
from pushout.errors import NotLeftAction
from pushout.exactla import LinMap, Subspace, hstack, image, kernel
from pushout.standard import (
    diagonal,
    full_matrix,
    ground_field,
    matrix_unit_algebra,
    strictly_upper,
    upper_triangular,
    zero_square,
)

def _algebras():
    return [ground_field(), zero_square(), strictly_upper(3), upper_triangular(2), full_matrix(2), diagonal(2),
            matrix_unit_algebra(2, [(0, 0), (0, 1)], "R2")]


@pytest.mark.parametrize("alg", _algebras(), ids=lambda a: a.name)
def test_regular_and_zero_modules_validate(alg):
    r = regular(alg)
    new_bimodule(alg, r.dim, r.left, r.right)
    z = zero_module(alg, 2)
    new_bimodule(alg, 2, z.left, z.right)


def test_k_over_m2():
    m2 = full_matrix(2)
    zero = [LinMap.zero(1, 1)] * 4
    new_bimodule(m2, 1, zero, zero)
    bad = [LinMap.identity(1)] + [LinMap.zero(1, 1)] * 3
    with pytest.raises(NotLeftAction):
        new_bimodule(m2, 1, bad, zero)


@pytest.mark.parametrize("alg", _algebras(), ids=lambda a: a.name)
def test_dual_module(alg):
    x = regular(alg)
    xs = dual_module(x)
    new_bimodule(alg, xs.dim, xs.left, xs.right)
    assert xs.left == tuple(m.T for m in x.right)
    assert xs.right == tuple(m.T for m in x.left)
    xss = dual_module(xs)
    assert xss.left == x.left and xss.right == x.right
    z = zero_module(alg, 2)
    assert dual_module(z).left == z.left


def test_annihilators_examples():
    z = annihilators(zero_module(full_matrix(2), 3))
    assert z.left.is_full() and z.right.is_full() and z.both.is_full()
    m = annihilators(regular(full_matrix(2)))
    assert m.left.is_zero() and m.right.is_zero() and m.both.is_zero()
    n = annihilators(regular(zero_square()))
    assert n.left.is_full() and n.both.is_full()


def test_annihilator_free_quotient_examples():
    r = annihilator_free_quotient(regular(full_matrix(2)))
    assert r.n.is_zero() and r.quotient.dim == 4
    z = annihilator_free_quotient(zero_module(full_matrix(2), 2))
    assert z.n.is_full() and z.quotient.dim == 0


@pytest.mark.parametrize("side", ["left", "right", "two-sided"])
def test_annihilator_free_quotient_n3(side):
    x = regular(strictly_upper(3))
    r = annihilator_free_quotient(x, side)
    assert r.steps <= 3
    assert side_annihilator(r.quotient, side).is_zero()
    assert annihilator_free_quotient(r.quotient, side).n.is_zero()
    # first stage is the side annihilator itself
    assert r.stages[1] == side_annihilator(x, side)
    if side == "left":
        # A.e13 = 0 and A.e12 = 0 while e12.e23 = e13
        assert r.stages[1] == Subspace.span(3, [fr(1, 0, 0), fr(0, 1, 0)])


def test_quotient_module_is_bimodule_map():
    x = regular(upper_triangular(2))
    sub = Subspace.span(3, [fr(0, 1, 0)])
    q, quot = quotient_module(x, sub)
    new_bimodule(q.alg, q.dim, q.left, q.right)
    assert is_bimodule_map(x, q, quot.projection)


@pytest.mark.parametrize("alg", [ground_field(), full_matrix(2), upper_triangular(2), diagonal(2)], ids=lambda a: a.name)
def test_balanced_tensor_unital_regular(alg):
    t, m = multiplication_map(alg)
    assert t.dim == alg.dim
    assert sympy_rank(m) == alg.dim


def test_balanced_tensor_zero_action():
    # X zero-action: X (x)_A Y = X (x) (Y / span A.Y)
    alg = upper_triangular(2)
    x = zero_module(alg, 2)
    y = regular(alg)
    ay = image(hstack(list(y.left)))
    t = balanced_tensor(x, y)
    assert t.dim == x.dim * (y.dim - ay.dim)
    y2 = zero_module(strictly_upper(3), 0)
    assert balanced_tensor(zero_module(strictly_upper(3), 2), y2).dim == 0


def test_is_induced_examples():
    assert is_induced(regular(full_matrix(2)))[0]
    assert not is_induced(zero_module(full_matrix(2), 2))[0]
    ok, w = is_induced(regular(strictly_upper(3)))
    assert not ok and w.multiplication.rank() < 3


def test_is_self_induced_examples():
    assert is_self_induced(ground_field())
    assert is_self_induced(full_matrix(2))
    assert not is_self_induced(zero_square())
    assert is_self_induced(matrix_unit_algebra(2, [(0, 0), (0, 1)], "R2"))


def test_hom_modules_unital():
    for alg in (full_matrix(2), upper_triangular(2)):
        x = regular(alg)
        for hom in (hom_left(x), hom_right(x)):
            assert hom.space.dim == x.dim
            # T -> T(1) is injective on the hom space
            unit = alg.unit()
            ev = LinMap.from_columns([hom.to_map(c) @ unit for c in LinMap.identity(hom.space.dim).columns()], x.dim)
            assert to_sympy(ev).rank() == x.dim


def test_hom_modules_small():
    x = regular(zero_square())
    assert hom_left(x).space.dim == 1 and hom_right(x).space.dim == 1
    z = zero_module(full_matrix(2), 0)
    assert hom_left(z).space.dim == 0 and hom_right(z).space.dim == 0


@pytest.mark.parametrize("alg,dims", [(ground_field(), (1, 1)), (full_matrix(2), (4, 4)), (strictly_upper(3), None)],
                         ids=["k", "M2", "N3"])
def test_hom_tensor_duality(alg, dims):
    rep = hom_tensor_duality_check(regular(alg))
    assert rep.ok
    assert rep.tensor_dims == rep.hom_dims
    if dims:
        assert rep.tensor_dims == dims


def test_outer_tensor_and_direct_sum_validate():
    alg = upper_triangular(2)
    o = outer_tensor(alg)
    new_bimodule(alg, o.dim, o.left, o.right)
    s = direct_sum(regular(alg), dual_module(regular(alg)))
    new_bimodule(alg, s.dim, s.left, s.right)
    assert hom_tensor_duality_check(s).ok


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=3))
def test_quotient_by_random_submodule(gens):
    # the submodule generated by gens inside the regular T2-bimodule
    alg = upper_triangular(2)
    x = regular(alg)
    vecs = [tuple(map(Fraction, g)) for g in gens]
    sub = Subspace.span(3, vecs)
    while True:
        grown = Subspace.span(3, list(sub.basis) + [m @ v for m in x.left + x.right for v in sub.basis])
        if grown == sub:
            break
        sub = grown
    q, quot = quotient_module(x, sub)
    assert q.dim == 3 - sub.dim
    assert kernel(quot.projection) == sub
    assert is_bimodule_map(x, q, quot.projection)
