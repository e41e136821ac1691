import numpy as np
import pytest

from imprimitive.field import field_of_order
from imprimitive.group import BetaKind, params_validate
from imprimitive.tables import all_elements, law_tables
from imprimitive.verify import (NotEnumerable, check_action_axioms, check_assoc, check_block_axioms,
                                check_in_block, check_lambda_sharp, check_structure, closure, enumerate_group,
                                expand_suites, generators, run_verification)

BASE = params_validate(char=3, e2=2, e3=1, h2=1, h3=1, beta="zero")
NCM = params_validate(char=3, beta=BetaKind.ncm(0, 0, 0, 1))
CHAR2 = params_validate(char=2, e2=1, e3=1, h2=1, h3=1, beta="zero")


def by_name(results):
    return {r.name: r for r in results}


@pytest.mark.parametrize("par, q, n", [(BASE, 3, 54), (CHAR2, 4, 192), (BASE, 9, 5832)])
def test_enumerate_group_counts(par, q, n):
    els = enumerate_group(par, q)
    assert len(els) == n == len(set(els))


def test_enumerate_needs_finite_field():
    with pytest.raises(NotEnumerable):
        enumerate_group(params_validate(char=0, e2=1, beta="zero"))


def test_generators_span():
    for par, q in [(BASE, 9), (CHAR2, 8)]:
        law = law_tables(par.with_field(field_of_order(q)))
        assert closure(law, generators(q, law.field.ctx.k)).size == q**3 * (q - 1)


@pytest.mark.parametrize("par, q", [(BASE, 3), (CHAR2, 4)])
def test_block_axioms_pass(par, q):
    res = by_name(check_block_axioms(par, q))
    assert all(r.status == "pass" for r in res.values())
    assert res["blocks.sharply_2_transitive"].counts["induced_permutations"] == q * (q - 1)


def test_block_axioms_negative_control():
    res = by_name(check_block_axioms(BASE, 3, elements=np.array([[0, 0, 0, 1]])))
    r = res["blocks.sharply_2_transitive"]
    assert r.status == "fail" and r.witness


@pytest.mark.parametrize("par, q, gate", [(BASE, 3, "pass"), (BASE, 9, "pass"), (CHAR2, 4, "pass")])
def test_in_block_gcd_one(par, q, gate):
    res = by_name(check_in_block(par, q))
    assert res["inblock.sharply_2_transitive"].status == gate
    assert all(r.status == "pass" for r in res.values())


def test_in_block_gcd_four():
    mono = params_validate(char=3, e2=1, e3=1, h2=3, h3=1, beta=BetaKind.monomial(0, 1))
    res = by_name(check_in_block(mono, 9))
    assert res["inblock.sharply_2_transitive"].status == "skipped"
    assert res["inblock.multiplier_group_order"].status == "pass"
    assert res["inblock.multiplier_group_order"].counts["expected"] == 2
    assert res["inblock.induced_group_is_affine"].status == "pass"


def test_in_block_e1_zero_fails():
    par = params_validate(char=3, e2=-1, e3=1, h2=1, h3=1, beta="zero")
    assert par.e1 == 0
    res = by_name(check_in_block(par, 3))
    assert res["inblock.sharply_2_transitive"].status == "fail"
    assert res["inblock.induced_group_is_affine"].counts["affine_maps"] == 3


@pytest.mark.parametrize("par, q", [(BASE, 3), (CHAR2, 4), (NCM, 3)])
def test_lambda_sharp(par, q):
    res = by_name(check_lambda_sharp(par, q))
    assert res["lambda.cardinality"].counts["Lambda"] == q**3 * (q - 1)
    assert all(r.status == "pass" for r in res.values())


def test_lambda_negative_control_without_torus():
    G = all_elements(3)
    res = by_name(check_lambda_sharp(BASE, 3, elements=G[G[:, 3] == 1]))
    assert res["lambda.transitive"].status == "fail"
    assert res["lambda.transitive"].witness


def test_structure_baseline_q3():
    res = by_name(check_structure(BASE, 3))
    assert res["structure.inertia_shape"].counts["inertia"] == 9
    assert res["structure.centre_shape"].counts["centre"] == 3
    assert res["structure.centre_bruteforce_agrees"].status == "pass"
    assert all(r.status == "pass" for r in res.values())


def test_structure_nc_kinds():
    res3 = by_name(check_structure(NCM, 3))
    assert res3["structure.inertia_shape"].status == "pass"
    assert res3["structure.centre_shape"].status == "pass"
    assert "structure.quotient_is_vector_group" not in res3
    # x^3 = x on F_3 makes the quotient commutative there
    assert res3["structure.quotient_noncommutative_witness"].status == "skipped"
    res9 = by_name(check_structure(NCM, 9))
    assert res9["structure.quotient_noncommutative_witness"].status == "pass"
    assert not any(r.status == "fail" for r in res9.values())


def test_assoc_and_action_suites():
    for par, q in [(NCM, 9), (CHAR2, 8)]:
        assert all(r.status == "pass" for r in check_assoc(par, q))
        assert all(r.status == "pass" for r in check_action_axioms(par, q, sample=5000))


def test_run_verification_examples():
    rep = run_verification(BASE, [3], ["all"])
    assert rep.ok and rep.summary()["fail"] == 0
    assert any(c.name == "q=3/inblock.sharply_2_transitive" and c.status == "pass" for c in rep.checks)
    rep = run_verification(NCM, [3], ["all"])
    assert rep.ok


def test_expand_suites():
    assert expand_suites(["all"]) == ["assoc", "action", "blocks", "inblock", "lambda", "structure"]
    assert expand_suites(["assoc,lambda"]) == ["assoc", "lambda"]
    with pytest.raises(ValueError):
        expand_suites(["nope"])
