import pytest

from imprimitive.census import catalogue, classify, classify_q, exponent_shadow, fixed_point_profile, law_fingerprint
from imprimitive.field import field_of_order
from imprimitive.group import params_validate


def class_of(report, label):
    return next(c for c in report.extra["classes"] if label in c["members"])


@pytest.fixture(scope="module")
def census3():
    return classify_q(3, 3, 9)


@pytest.fixture(scope="module")
def census2():
    return classify_q(2, 4, 4)


def test_catalogue_is_validated_and_unique():
    tuples = catalogue(field_of_order(9), 3)
    keys = {(t.invariants, t.beta) for t in tuples}
    assert len(keys) == len(tuples)
    assert all(1 <= t.e2 <= 3 and max(t.h2, t.h3, t.e3) <= 3 for t in tuples)


def test_census_checks_pass(census3, census2):
    assert census3.ok and census2.ok
    assert "heuristic" in census3.extra["evidence"]


def test_case_14_2_merge_char3(census3):
    cls = class_of(census3, "G[e2=1,e3=1,h2=3,h3=1;zero]")
    assert "G[e2=1,e3=1,h2=3,h3=1;monomial(r=0,s=1)]" in cls["members"]


def test_case_14_3_merge_char2(census2):
    # (h2, h3) = ((e3/e2) p^r, p^r) with r = 0
    cls = class_of(census2, "G[e2=1,e3=1,h2=1,h3=1;zero]")
    assert "G[e2=1,e3=1,h2=1,h3=1;monomial(r=0,s=0)]" in cls["members"]


def test_distinct_parameters_stay_apart(census3):
    # no two exponents up to 3 alias on F_9, so every class has one tuple
    for cls in census3.extra["classes"]:
        assert len(cls["invariants"]) == 1


def test_invariants_are_deterministic():
    a = params_validate(char=3, e2=2, e3=1, h2=1, h3=1, beta="zero").with_field(field_of_order(9))
    b = params_validate(char=3, e2=2, e3=1, h2=1, h3=1, beta="zero").with_field(field_of_order(9))
    assert law_fingerprint(a) == law_fingerprint(b)
    assert fixed_point_profile(a) == fixed_point_profile(b)
    c = params_validate(char=3, e2=1, e3=1, h2=1, h3=1, beta="zero").with_field(field_of_order(9))
    assert exponent_shadow(a) != exponent_shadow(c)


def test_aliasing_is_reported_not_failed():
    # e2 = 1 and e2 = 9 give the same power maps on F_9
    r = classify(field_of_order(9), 9)
    chk = {c.name: c for c in r.checks}["classify.distinct_tuples_never_merge"]
    assert chk.status == "pass" and chk.counts["classes_merged_by_field_aliasing"] > 0
