import numpy as np
import pytest

from conftest import OracleField, oracle_act
from imprimitive import kernels as K
from imprimitive.action import Block, Point, act, act_on_block, block_of, canonical_point, printed_formula
from imprimitive.field import field_of_order
from imprimitive.group import BetaKind, GroupElement, params_validate, unip_mul
from imprimitive.tables import all_elements, all_points, law_tables

BASE = params_validate(char=3, e2=2, e3=1, h2=1, h3=1, beta="zero")


def pt(ctx, x, y):
    return Point(ctx(x), ctx(y))


def test_canonical_point_examples():
    F = BASE.field
    assert canonical_point(BASE, (1, 0, 2)) == pt(F, 1, 2)
    assert canonical_point(BASE, (0, 1, 1)) == pt(F, 2, 1)


def test_canonical_point_is_constant_on_cosets_f9():
    par = params_validate(char=3, beta=BetaKind.ncm(0, 0, 0, 1)).with_field(field_of_order(9))
    ctx = par.field
    els = list(ctx.elements())
    for z in [(a, b, c) for a in els[::2] for b in els for c in els[::3]]:
        ref = canonical_point(par, z)
        for w in els:
            assert canonical_point(par, unip_mul(par, z, (0, w, 0))) == ref


def test_act_examples():
    F = BASE.field
    e = GroupElement.identity(F)
    for x in range(3):
        for y in range(3):
            assert act(BASE, e, pt(F, x, y)) == pt(F, x, y)
    assert act(BASE, GroupElement.make(F, 0, 0, 1, 1), pt(F, 0, 0)) == pt(F, 0, 1)
    assert act(BASE, GroupElement.make(F, 0, 1, 0, 1), pt(F, 0, 1)) == pt(F, 2, 1)
    assert act_on_block(BASE, GroupElement.make(F, 0, 0, 1, 2), Block(F(1))) == Block(F(0))
    assert act_on_block(BASE, e, Block(F(2))) == Block(F(2))


def test_printed_formula_ignores_u2():
    F = BASE.field
    g = GroupElement.make(F, 0, 1, 0, 1)
    P = pt(F, 0, 1)
    assert printed_formula(BASE, g, P) == P
    assert act(BASE, g, P) != P


@pytest.mark.parametrize("q, beta", [(9, BetaKind.ncm(0, 0, 0, 1)), (8, BetaKind.witt(0)), (5, BetaKind.monomial(0, 1))])
def test_action_kernel_matches_oracle_and_objects(q, beta):
    raw = dict(char=field_of_order(q).p, beta=beta)
    if not beta.is_nc:
        raw.update(h2=1, h3=1)
        if beta.tag == "monomial":
            raw.update(h2=q)
    par = params_validate(raw).with_field(field_of_order(q))
    ctx = par.field
    F = OracleField(ctx.p, ctx.modulus)
    law = law_tables(par)
    G, P = all_elements(q), all_points(q)
    rng = np.random.default_rng(7)
    Gs = G[rng.integers(0, len(G), 150)]
    img = K.act_all_pairs(law, Gs, P)
    for gi, g in enumerate(Gs):
        gt = tuple(map(int, g))
        ge = GroupElement(*(ctx.at(v) for v in gt))
        for pi in range(0, len(P), 7):
            Pt = tuple(map(int, P[pi]))
            want = oracle_act(F, par, gt, Pt)
            assert tuple(img[gi, pi]) == want
            obj = act(par, ge, Point(ctx.at(Pt[0]), ctx.at(Pt[1])))
            assert obj.as_tuple() == want
            assert block_of(obj) == act_on_block(par, ge, Block(ctx.at(Pt[1])))


def test_block_compatibility_exhaustive_f9():
    par = BASE.with_field(field_of_order(9))
    law = law_tables(par)
    G, P = all_elements(9), all_points(9)
    img = K.act_all_pairs(law, G, P)
    pe3 = law.pw[2]
    mul, add = law.field.mul, law.field.add
    want = add[G[:, 2][:, None], mul[pe3[G[:, 3]][:, None], P[None, :, 1]]]
    assert np.array_equal(img[:, :, 1], want)
