import pytest

from conftest import sympy_rank
from pushout.bimodule import dual_module, is_induced, outer_tensor, regular, zero_module
from pushout.centralizer import double_centralizer, iota
from pushout.duality import (
    build_predual,
    induced_dual_check,
    dual_iso,
    dual_iso_check,
    factorization_check,
    injectivity_surjectivity_check,
)
from pushout.errors import NotInduced
from pushout.exactla import image, kernel
from pushout.standard import full_matrix, ground_field, strictly_upper, upper_triangular, zero_square

MODULES = {
    "k": regular(ground_field()),
    "N2": regular(zero_square()),
    "N3": regular(strictly_upper(3)),
    "N3*": dual_module(regular(strictly_upper(3))),
    "T2": regular(upper_triangular(2)),
    "T2 outer": outer_tensor(upper_triangular(2)),
    "M2": regular(full_matrix(2)),
    "M2 zero": zero_module(full_matrix(2), 2),
    "N3 zero": zero_module(strictly_upper(3), 1),
}


@pytest.mark.parametrize("name", MODULES)
def test_predual_suite(name):
    x = MODULES[name]
    data = dual_iso(x)
    assert data.predual.n_in_ker_mu()
    assert data.ok
    assert factorization_check(x, data)
    assert injectivity_surjectivity_check(x, data)
    # independent rank comparison for the dual isomorphism
    assert data.dc_dual.dim == data.predual.quotient.dim
    assert sympy_rank(data.phi) == data.dc_dual.dim


def test_predual_unital_mu_surjective():
    x = regular(full_matrix(2))
    assert image(build_predual(x).mu).is_full()


def test_predual_zero_action():
    x = zero_module(full_matrix(2), 2)
    p = build_predual(x)
    assert p.mu.is_zero()
    assert not kernel(iota(double_centralizer(dual_module(x)))).is_zero()


def test_dual_iso_dims():
    assert dual_iso(regular(ground_field())).dc_dual.dim == 1
    assert dual_iso(regular(full_matrix(2))).dc_dual.dim == 4
    assert dual_iso_check(regular(zero_square()))


def test_factorization_zero_module():
    x = zero_module(upper_triangular(2), 0)
    assert factorization_check(x)


@pytest.mark.parametrize("name", ["M2", "T2", "T2 outer", "k"])
def test_induced_dual_bijective(name):
    x = MODULES[name]
    assert is_induced(x)[0]
    rep = induced_dual_check(x)
    assert rep.iota_bijective and rep.ker_mu_in_n
    assert sympy_rank(iota(double_centralizer(dual_module(x)))) == x.dim


def test_induced_dual_gate():
    with pytest.raises(NotInduced):
        induced_dual_check(regular(strictly_upper(3)))
