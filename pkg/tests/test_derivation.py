import time

import pytest

from oracle import h1_oracle
from pushout.algebra import identity_envelope, unitization
from pushout.bimodule import Bimodule, dual_module, regular, restrict, zero_module
from pushout.centralizer import attach_envelope_actions, double_centralizer, iota, lr_pair
from pushout.derivation import (
    Derivation,
    derivation_basis,
    derivation_conditions,
    derivation_operator,
    derivation_space,
    h1,
    h1_enumerated,
    inner_derivations,
    inner_witness_b,
    is_inner,
    new_derivation,
    pull_back_inner,
    pushout,
    pushout_of_inner_matches,
    pushout_unique,
)
from pushout.errors import NotADerivation, PreconditionFailed, SquareSpanDeficient
from pushout.exactla import LinMap, kernel
from pushout.standard import (
    first_summand,
    full_matrix,
    ground_field,
    product_algebra,
    strict_in_triangular,
    strictly_upper,
    upper_triangular,
    zero_square,
)

CASES = [
    (ground_field(), "regular", (0, 0, 0)),
    (zero_square(), "regular", (1, 0, 1)),
    (full_matrix(2), "regular", (3, 3, 0)),
    (unitization(zero_square()).amb, "regular", (1, 0, 1)),
    (strictly_upper(3), "regular", (4, 2, 2)),
    (upper_triangular(2), "regular", None),
    (upper_triangular(2), "dual", None),
    (strictly_upper(3), "dual", None),
]


def _module(alg, kind):
    x = regular(alg)
    return dual_module(x) if kind == "dual" else x


@pytest.mark.parametrize("alg,kind,expected", CASES, ids=lambda v: getattr(v, "name", str(v)))
def test_h1_against_sympy_oracle(alg, kind, expected):
    x = _module(alg, kind)
    oracle = h1_oracle(alg, x)
    got = h1(alg, x)
    assert (got.z1, got.b1, got.h1) == oracle
    assert h1_enumerated(alg, x) == got
    if expected is not None:
        assert oracle == expected


def test_two_constraint_routes_agree():
    for alg in (full_matrix(2), strictly_upper(3), upper_triangular(2)):
        x = regular(alg)
        assert kernel(derivation_conditions(alg, x)) == kernel(derivation_operator(alg, x))


def test_z1_examples():
    assert derivation_space(ground_field(), regular(ground_field())).dim == 0
    assert derivation_space(zero_square(), regular(zero_square())).dim == 1


def test_b1_examples():
    m2 = full_matrix(2)
    assert inner_derivations(m2, regular(m2)).dim == 3
    assert inner_derivations(m2, zero_module(m2, 2)).dim == 0
    # symmetric module: left and right actions equal
    k = ground_field()
    sym = Bimodule(k, 2, (LinMap.identity(2),), (LinMap.identity(2),))
    assert inner_derivations(k, sym).dim == 0


def test_is_inner_examples():
    n2 = zero_square()
    x = regular(n2)
    assert is_inner(Derivation(n2, x, LinMap.zero(1, 1))) is not None
    (d,) = derivation_basis(n2, x)
    assert is_inner(d) is None
    m2 = full_matrix(2)
    for d in derivation_basis(m2, regular(m2)):
        assert is_inner(d) is not None


def test_new_derivation_rejects():
    m2 = full_matrix(2)
    with pytest.raises(NotADerivation):
        new_derivation(m2, regular(m2), LinMap.identity(4))


def test_h1_runtime():
    t = time.perf_counter()
    for alg in (ground_field(), zero_square(), full_matrix(2)):
        h1(alg, regular(alg))
        h1_enumerated(alg, regular(alg))
    assert time.perf_counter() - t < 2


def _setup(env, xb):
    x = restrict(xb, env)
    dc = attach_envelope_actions(double_centralizer(x), env, xb)
    return x, dc


def test_pushout_identity_envelope_is_iota_d():
    m2 = full_matrix(2)
    env = identity_envelope(m2)
    xb = regular(m2)
    x, dc = _setup(env, xb)
    for d in derivation_basis(m2, x):
        r = pushout(env, xb, d, dc)
        assert r.ok
        assert r.d_tilde == iota(dc) @ d.map
        assert pushout_unique(r)


def test_pushout_n3_in_t3():
    env = strict_in_triangular(3)
    xb = regular(env.amb)
    x, dc = _setup(env, xb)
    basis = derivation_basis(env.sub, x)
    assert basis
    for d in basis:
        r = pushout(env, xb, d, dc)
        assert r.membership_ok and r.derivation_ok and r.diagram_ok
        w = is_inner(d)
        if w is not None:
            assert pushout_of_inner_matches(r, w)
        with pytest.raises(SquareSpanDeficient):
            pushout_unique(r)


def test_pushout_m2_in_m2_plus_k_unique():
    m2, k = full_matrix(2), ground_field()
    b = product_algebra(m2, k, name="M2+k")
    env = first_summand(m2, k, b)
    xb = regular(b)
    x, dc = _setup(env, xb)
    for d in derivation_basis(m2, x):
        r = pushout(env, xb, d, dc)
        assert r.ok and pushout_unique(r)


def test_pull_back_inner_sign():
    m2 = full_matrix(2)
    env = identity_envelope(m2)
    xb = regular(m2)
    x, dc = _setup(env, xb)
    for d in derivation_basis(m2, x):
        r = pushout(env, xb, d, dc)
        pair = pull_back_inner(r)
        assert pair is not None
        assert pair.s - pair.t == d.map
        w = is_inner(d)
        # D(a) = a.w - w.a, so the pulled-back pair is -(L_w, R_w) up to DC(X) ambiguity
        lw = lr_pair(x, w)
        assert (lw.t - lw.s) == d.map


def test_pull_back_absent_for_outer_derivation():
    env = identity_envelope(unitization(zero_square()).amb)
    xb = regular(env.amb)
    x, dc = _setup(env, xb)
    outer = [d for d in derivation_basis(env.sub, x) if is_inner(d) is None]
    assert outer
    r = pushout(env, xb, outer[0], dc)
    assert r.ok
    assert inner_witness_b(r) is None
    assert pull_back_inner(r) is None


def test_pushout_rejects_non_derivation():
    m2 = full_matrix(2)
    env = identity_envelope(m2)
    xb = regular(m2)
    with pytest.raises(PreconditionFailed):
        pushout(env, xb, Derivation(m2, xb, LinMap.identity(4)))
