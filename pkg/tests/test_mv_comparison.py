import itertools

import pytest
from hypothesis import given, strategies as st

from recolle import catalog
from recolle.recollement.axioms import verify_axioms
from recolle.recollement.comparison import (comparison_check, prehereditary_check, r_star_checks,
                                            semidirect_suite)
from recolle.recollement.mv import mv_construct, zero_transformation
from recolle.recollement.sequences import check_sequences


def failing(checks):
    return [c.to_json() for c in checks if not c.passed]


def test_orbit_representatives_match_pairwise_classification(mv21):
    mv, _ = mv21
    cat = mv.a
    reps = cat.iso_class_reps((2, 2))
    assert len(reps) == 24
    for a, b in itertools.combinations(reps, 2):
        if cat.dims(a) == cat.dims(b):
            assert not cat.is_isomorphic(a, b)
    pairwise = cat.iso_classes(list(cat.enumerate((1, 2))))
    assert len(pairwise) == len(cat.iso_class_reps((1, 2)))


@st.composite
def mv_morphisms(draw):
    from recolle.catalog import build_mv_of, build_rec_2_1
    cat = build_mv_of(build_rec_2_1())[0].a
    objs = cat.iso_class_reps((2, 2))
    a, b = draw(st.sampled_from(objs)), draw(st.sampled_from(objs))
    hs = cat.hom(a, b)
    return cat, hs.element(draw(st.integers(0, (1 << hs.dim) - 1)))


@given(mv_morphisms())
def test_glued_category_is_abelian_on_samples(pair):
    cat, f = pair
    k, ki = cat.kernel(f)
    c, cp = cat.cokernel(f)
    assert cat.is_object(k) and cat.is_object(c)
    assert cat.exact_at(ki, f) and cat.exact_at(f, cp)
    assert ki.is_mono() and cp.is_epi()


def test_glued_axioms_and_sequences_small(mv21):
    mv, _ = mv21
    assert not failing(verify_axioms(mv, (1, 2), (2,), (2,), samples=30))
    assert not failing(check_sequences(mv, (1, 2), (2,)))


def test_r_star(mv21):
    mv, _ = mv21
    assert not failing(r_star_checks(mv, (2,), (2, 2)))


def test_audit_rejects_wrongly_sided_functors():
    f = catalog.invariants_functor()          # left exact, not right exact
    g = catalog.coinvariants_functor()        # right exact, not left exact
    with pytest.raises(ValueError):
        mv_construct(f, g, zero_transformation(f, g))


def test_prehereditary_verdicts(rec21, rec22, mv21):
    v1, v2 = prehereditary_check(rec21), prehereditary_check(rec22)
    assert not (v1.verdict and v2.verdict)
    assert (v1.verdict, v2.verdict) == (True, False)
    assert v1.l2_dims == {"(1,)": [0]} and v2.l2_dims == {"(1,)": [1]}
    assert not failing(v1.checks)
    assert prehereditary_check(mv21[0]).verdict


def test_inclusion_comparison(rec21, rec22):
    res = comparison_check(catalog.inclusion_functor(), rec22, rec21, (2, 2))
    assert res.commutes_with_structure and res.exact
    assert res.equivalence_at_budget is False
    assert res.witness is not None
    assert res.ker_i_star_equivalence and res.ker_i_shriek_equivalence


def test_glued_comparison_is_equivalence_iff_prehereditary(rec21, rec22):
    for rec in (rec21, rec22):
        mv, e = catalog.build_mv_of(rec)
        res = comparison_check(e, rec, mv, (2, 2), (2, 2))
        assert res.commutes_with_structure
        assert res.equivalence_at_budget == prehereditary_check(rec).verdict


def test_semidirect_split_case():
    sd = catalog.build_semidirect()
    checks = semidirect_suite(sd, other_adjoint=catalog.coinvariants_adjunction)
    assert not failing(checks)
    ids = {c.id: c for c in checks}
    assert "i^!j_!=0=false" in ids[f"split {sd.name} i^* exact iff i^!j_! = 0"].detail
    assert "i^! exact=true i^*j_*=0=true" in ids[f"split {sd.name} i^! exact iff i^*j_* = 0"].detail
    assert f"split {sd.name} equivalent to the glued category along i^!" in ids


def test_product_detected():
    pr = catalog.build_product()
    checks = semidirect_suite(pr)
    assert not failing(checks)
    assert any(c.id.endswith("norm invertible gives a product") for c in checks)


def test_rec21_is_not_split(rec21):
    checks = semidirect_suite(rec21)
    assert not failing(checks)
    assert not any("glued" in c.id or "product" in c.id for c in checks)
