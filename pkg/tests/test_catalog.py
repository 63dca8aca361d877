import pytest

from recolle import catalog
from recolle.catalog import (QUAD_FREE, QUAD_VECT, SIGMA2, VECT, classify_iso_classes, counterexample_witness,
                             involution, one_plus, space, trivial_involution, with_involution)
from recolle.functorics import exactness_profile
from recolle.gf2 import BitMatrix, all_matrices


def involutions(n):
    return [t for t in all_matrices(n, n) if (t @ t) == BitMatrix.identity(n)]


def test_loop_coordinate_is_one_plus_t():
    for n in range(3):
        for t in involutions(n):
            x = with_involution(n, t)
            assert involution(x) == t
            assert SIGMA2.check_relations(x)
            assert x.maps[0] == one_plus(t)


def test_i_low_star_of_f2(rec21):
    v = rec21.i_low_star(space(1))
    assert v.dims == (1, 0)


def test_j_shriek_of_trivial_involution(rec21):
    # 1 + T = 0, so V_T = F_2, induced H = 0 and P is the identity quotient
    a = rec21.j_low_shriek(trivial_involution())
    assert a.dims == (1, 1)
    assert a.arrow("H").is_zero() and a.arrow("P") == BitMatrix.identity(1)


@pytest.mark.parametrize("key", ["rec21", "rec22"])
def test_j_star_j_shriek_and_j_star_j_star_are_identity_on_values(key, request):
    rec = request.getfixturevalue(key)
    for x in SIGMA2.enumerate((3,)):
        assert rec.j_up_star(rec.j_low_shriek(x)) == x
        assert rec.j_up_star(rec.j_low_star(x)) == x


@pytest.mark.parametrize("key", ["rec21", "rec22"])
def test_functor_values_satisfy_relations(key, request):
    rec = request.getfixturevalue(key)
    for x in rec.objects_a2((3,)):
        assert rec.a.is_object(rec.j_low_shriek(x)) and rec.a.is_object(rec.j_low_star(x))
    for v in rec.objects_a1((3,)):
        assert rec.a.is_object(rec.i_low_star(v))
    for a in rec.objects_a((2, 2)):
        assert SIGMA2.is_object(rec.j_up_star(a))


def test_j_shriek_lands_in_ph_zero_subcategory(rec22):
    for x in SIGMA2.enumerate((3,)):
        a = rec22.j_low_shriek(x)
        assert (a.arrow("P") @ a.arrow("H")).is_zero()


def test_retraction_splits_i_low_star(rec21):
    for v in VECT.enumerate((3,)):
        assert rec21.r(rec21.i_low_star(v)) == v
    assert exactness_profile(rec21.r, rec21.objects_a((2, 2))).exact


def test_counterexample_certificate():
    w, cert = counterexample_witness()
    assert w.dims == (2, 1)
    assert cert["relations_hold"] and cert["PH_nonzero"]
    assert cert["PH"] == [[0, 0], [1, 0]]
    assert not cert["valid_in_quad_vect"] and not cert["isomorph_found"]
    assert cert["candidates_scanned"] == len(QUAD_VECT.enumerate_dims((2, 1)))
    # HP = 0, so both cubic relations hold
    assert (w.arrow("H") @ w.arrow("P")).is_zero()


def test_classify_counts():
    free = classify_iso_classes(QUAD_FREE, (2, 2))
    vect = classify_iso_classes(QUAD_VECT, (2, 2))
    assert free[(1, 1)] == vect[(1, 1)] == 3
    assert free[(2, 1)] > vect[(2, 1)]
    for n in range(3):
        assert free[(0, n)] == vect[(0, n)] and free[(n, 0)] == vect[(n, 0)]


def test_example_registry():
    assert catalog.example("quad-free") is catalog.build_rec_2_1()
    assert catalog.example("quad-vect") is catalog.build_rec_2_2()
    with pytest.raises(KeyError):
        catalog.example("nope")


def test_inclusion_functor_is_identity_on_diagrams():
    incl = catalog.inclusion_functor()
    for x in QUAD_VECT.enumerate((2, 1)):
        assert incl(x).maps == x.maps and QUAD_FREE.is_object(incl(x))


def test_invariants_and_coinvariants_of_trivial_and_free():
    inv, coinv = catalog.invariants_functor(), catalog.coinvariants_functor()
    t = trivial_involution()
    free = SIGMA2.indecomposable_projective("x")
    assert inv(t).dims == coinv(t).dims == (1,)
    assert inv(free).dims == coinv(free).dims == (1,)
    assert exactness_profile(inv, SIGMA2.iso_class_reps((3,))).left_exact
    assert exactness_profile(coinv, SIGMA2.iso_class_reps((3,))).right_exact
