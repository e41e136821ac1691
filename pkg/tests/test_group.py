import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import OracleField, oracle_group_mul
from imprimitive import kernels as K
from imprimitive.field import elem_pow, field_make, field_of_order
from imprimitive.group import (BetaKind, GroupElement, ParamsError, assoc_witness, beta_poly, group_inv,
                               group_mul, is_associative, params_validate, psi_polys, torus_apply,
                               unip_inv, unip_mul)
from imprimitive.poly import MultiPoly
from imprimitive.tables import all_elements, law_tables

BASE = dict(char=3, e2=2, e3=1, h2=1, h3=1, beta="zero")
NCM = dict(char=3, beta=BetaKind.ncm(0, 0, 0, 1))


def gp(**kw):
    return params_validate(kw)


# -- validation -----------------------------------------------------------------

def test_validate_examples():
    assert gp(**BASE).e1 == 3
    mono = gp(char=3, e2=1, e3=1, h2=3, h3=1, beta=BetaKind.monomial(0, 1))
    assert mono.e1 == 4
    nc = gp(**NCM)
    assert (nc.e2, nc.e1, nc.h2, nc.h3) == (4, 5, 1, 1)


@pytest.mark.parametrize("raw, code", [
    (dict(char=2, beta=BetaKind.ncm(0, 0, 0, 1)), "BadCharForBeta"),
    (dict(char=0, beta=BetaKind.monomial(0, 1), e2=1), "BadCharForBeta"),
    (dict(char=3, e2=1, e3=2, beta="zero"), "BadE3"),
    (dict(char=3, e2=1, h2=2, beta="zero"), "BadH"),
    (dict(char=3, beta=BetaKind.ncm(0, 0, 0, 1), e2=5), "BadE2NC"),
    (dict(char=3, beta=BetaKind.monomial(0, 1), h2=1, h3=1, e2=1), "BadE1Consistency"),
    (dict(char=3, beta=BetaKind.monomial(1, 0)), "BadExponentOrder"),
    (dict(char=3, beta=BetaKind.monomial(1, 1)), "BadExponentOrder"),
    (dict(char=3, beta=BetaKind.ncm(0, 2, 0, 1)), "BadExponentOrder"),
    (dict(char=3, beta="zero", e2=0), "BadE2"),
])
def test_validate_errors(raw, code):
    with pytest.raises(ParamsError) as exc:
        params_validate(raw)
    assert exc.value.code == code


def test_equal_exponents_only_in_char_2():
    g = params_validate(char=2, beta=BetaKind.monomial(0, 0), allow_equal_exponents=True)
    assert g.e2 * g.h2 + g.h3 == 2
    with pytest.raises(ParamsError):
        params_validate(char=3, beta=BetaKind.monomial(0, 0), allow_equal_exponents=True)


# -- polynomial data ------------------------------------------------------------

def test_beta_and_psi_examples():
    F3, F5 = field_make(3), field_make(5)
    V = ("x3", "y3")
    assert beta_poly(gp(char=3, beta=BetaKind.witt(0), h2=1, h3=1)) == MultiPoly(F3, V, {(1, 2): 1, (2, 1): 1})
    assert beta_poly(gp(char=5, beta=BetaKind.monomial(0, 1), h2=1, h3=1)) == MultiPoly(F5, V, {(1, 5): 1})
    assert beta_poly(gp(**NCM)) == MultiPoly(F3, V, {(2, 3): 2})
    psi1, psi2 = psi_polys(gp(**BASE))
    assert psi1 == MultiPoly(F3, ("x3", "y2", "y3"), {(1, 1, 0): 1}) and psi2.is_zero()
    psi1, psi2 = psi_polys(gp(**NCM))
    assert psi1 == MultiPoly(F3, ("x3", "y2", "y3"), {(1, 1, 0): 1, (2, 0, 3): 2})
    assert psi2 == MultiPoly(F3, V, {(1, 3): 1})


def test_psi_vanish_on_axes():
    for par in [gp(**BASE), gp(**NCM), gp(char=5, beta=BetaKind.witt(1), h2=1, h3=5)]:
        psi1, psi2 = psi_polys(par)
        assert all(e[1] + e[2] > 0 for e in psi1.terms)
        assert all(e[1] > 0 for e in psi2.terms)


# -- elementwise law --------------------------------------------------------------

def test_law_examples():
    base, nc = gp(**BASE), gp(**NCM)
    F = base.field
    assert unip_mul(base, (0, 0, 0), (1, 2, 0)) == (F(1), F(2), F(0))
    assert unip_mul(base, (1, 1, 1), (1, 1, 1)) == (F(0), F(2), F(2))
    assert unip_mul(nc, (0, 0, 1), (0, 0, 1)) == (F(2), F(1), F(2))
    assert unip_inv(base, (1, 1, 1)) == (F(0), F(2), F(2))
    assert unip_inv(base, (0, 0, 0)) == (F(0),) * 3
    assert torus_apply(base, 2, (1, 1, 1)) == (F(2), F(1), F(2))
    assert torus_apply(base, 1, (1, 2, 0)) == (F(1), F(2), F(0))
    g = GroupElement.make(F, 0, 0, 1, 1)
    h = GroupElement.make(F, 0, 0, 0, 2)
    assert group_mul(base, g, h) == GroupElement.make(F, 0, 0, 1, 2)
    e = GroupElement.identity(F)
    assert group_mul(base, e, h) == h


def test_elem_pow_examples():
    F5 = field_make(5)
    assert elem_pow(F5(2), 4) == F5(1)
    assert elem_pow(F5(2), -1) == F5(3)
    assert elem_pow(F5(0), 0) == F5(1)


def test_unip_inverse_exhaustive_f27():
    par = gp(**NCM).with_field(field_of_order(27))
    law = law_tables(par)
    r = np.arange(27)
    U = np.stack([g.ravel() for g in np.meshgrid(r, r, r, indexing="ij")], 1)
    assert np.all(K.unip_mul(law, U, K.unip_inv(law, U)) == 0)
    assert np.all(K.unip_mul(law, K.unip_inv(law, U), U) == 0)


@pytest.mark.parametrize("raw", [BASE, NCM])
def test_inverse_exhaustive_f3(raw):
    par = gp(**raw)
    F = par.field
    e = GroupElement.identity(F)
    for t in itertools.product(range(3), range(3), range(3), range(1, 3)):
        g = GroupElement.make(F, *t)
        assert group_mul(par, g, group_inv(par, g)) == e
        assert group_mul(par, group_inv(par, g), g) == e


def test_torus_is_automorphism_exhaustive_f9():
    par = gp(**NCM).with_field(field_of_order(9))
    law = law_tables(par)
    r = np.arange(9)
    U = np.stack([g.ravel() for g in np.meshgrid(r, r, r, indexing="ij")], 1)
    UU, VV = np.repeat(U, len(U), 0), np.tile(U, (len(U), 1))
    prod = K.unip_mul(law, UU, VV)
    for a in range(1, 9):
        A = np.full(len(UU), a)
        lhs = K.torus(law, A, prod)
        rhs = K.unip_mul(law, K.torus(law, A, UU), K.torus(law, A, VV))
        assert np.array_equal(lhs, rhs)


# -- symbolic associativity ------------------------------------------------------

def test_associator_examples():
    assert is_associative(gp(**BASE))
    assert is_associative(gp(**NCM))


def test_corrupted_beta_breaks_associativity(monkeypatch):
    import imprimitive.group as G
    par = gp(**NCM)
    F = par.field
    real_psi = G.psi_polys(par)
    fake_psi1 = MultiPoly(F, ("x3", "y2", "y3"), {(1, 1, 0): 1, (1, 0, 1): 1})
    monkeypatch.setattr(G, "psi_polys", lambda _p: (fake_psi1, real_psi[1]))
    w = assoc_witness(par)
    assert not w[0].is_zero()


# -- kernels against the object layer and the oracle ------------------------------

CROSS = [
    (3, dict(char=3, **{k: v for k, v in BASE.items() if k != "char"})),
    (9, NCM),
    (9, dict(char=3, beta=BetaKind.ncn(0, 1, 0, 1))),
    (4, dict(char=2, beta=BetaKind.monomial(0, 0), allow_equal_exponents=True)),
    (8, dict(char=2, beta=BetaKind.witt(0), h2=1, h3=1)),
    (5, dict(char=5, beta=BetaKind.witt(0), h2=1, h3=1)),
    (25, dict(char=5, beta=BetaKind.monomial(0, 1), h2=5, h3=1)),
]


@pytest.mark.parametrize("q, raw", CROSS)
def test_kernel_matches_oracle(q, raw):
    par = params_validate(raw).with_field(field_of_order(q))
    ctx = par.field
    F = OracleField(ctx.p, ctx.modulus)
    law = law_tables(par)
    rng = np.random.default_rng(q)
    G = all_elements(q)
    A = G[rng.integers(0, len(G), 300)]
    B = G[rng.integers(0, len(G), 300)]
    got = K.group_mul(law, A, B)
    for g, h, w in zip(A, B, got):
        assert tuple(w) == oracle_group_mul(F, par, tuple(map(int, g)), tuple(map(int, h)))
    # object layer agrees too
    for g, h, w in list(zip(A, B, got))[:40]:
        ge = GroupElement(*(ctx.at(int(x)) for x in g))
        he = GroupElement(*(ctx.at(int(x)) for x in h))
        assert group_mul(par, ge, he).as_tuple() == tuple(w)


@pytest.mark.skipif("numba" not in K.available_backends(), reason="numba not installed")
@pytest.mark.parametrize("q, raw", CROSS)
def test_backends_agree(q, raw):
    par = params_validate(raw).with_field(field_of_order(q))
    law = law_tables(par)
    G = all_elements(q)
    rng = np.random.default_rng(1)
    A, B = G[rng.integers(0, len(G), 2000)], G[rng.integers(0, len(G), 2000)]
    P = A[:, :2].copy()
    P[:, 1] = B[:, 2]
    res = {}
    for name in ("numpy", "numba"):
        with K.backend(name):
            res[name] = (K.group_mul(law, A, B), K.group_inv(law, A), K.act(law, A, P),
                         K.fixed_point_counts(law, A[:50], P[:50]))
    for x, y in zip(res["numpy"], res["numba"]):
        assert np.array_equal(x, y)


def test_backend_switch():
    assert set(K.available_backends()) >= {"numpy"}
    with K.backend("numpy"):
        assert K.backend_name() == "numpy"
    with pytest.raises(ValueError):
        K.use_backend("fortran")


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CROSS), st.data())
def test_group_axioms_sampled(case, data):
    q, raw = case
    par = params_validate(raw).with_field(field_of_order(q))
    law = law_tables(par)
    el = st.tuples(st.integers(0, q - 1), st.integers(0, q - 1), st.integers(0, q - 1), st.integers(1, q - 1))
    g, h, k = (np.array([data.draw(el)]) for _ in range(3))
    assert np.array_equal(K.group_mul(law, K.group_mul(law, g, h), k), K.group_mul(law, g, K.group_mul(law, h, k)))
    e = np.array([[0, 0, 0, 1]])
    assert np.array_equal(K.group_mul(law, g, K.group_inv(law, g)), e)
    assert np.array_equal(K.group_mul(law, K.group_inv(law, g), g), e)


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys
    env = {**os.environ, "IMPRIMITIVE_BACKEND": "numpy"}
    out = subprocess.run([sys.executable, "-c", "from imprimitive import kernels as K; print(K.backend_name())"],
                         env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
