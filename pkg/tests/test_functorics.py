import pytest

from recolle.functorics import (EXACT, LEFT, NONE, RIGHT, Functor, check_adjunction, check_functor, compose,
                                derived_left, derived_left_map, derived_right, exactness_profile, homology,
                                identity_functor, pad_resolution)
from recolle.repcat.reps import rep_category

QF = rep_category("quad_free")
VECT = rep_category("vect")


def test_identity_functor_is_exact_and_has_no_higher_derived():
    ident = identity_functor(QF)
    prof = exactness_profile(ident, QF.iso_class_reps((2, 1)), samples=20)
    assert prof.exact and prof.agrees_with(EXACT)
    for m in QF.iso_class_reps((1, 1)):
        assert QF.is_zero_object(derived_left(ident, m, 1))
        assert QF.is_isomorphic(derived_left(ident, m, 0), m)


def test_compose_exactness_rules(rec21):
    assert compose(rec21.i_up_star, rec21.j_low_shriek).exactness == RIGHT
    assert compose(rec21.i_up_shriek, rec21.j_low_star).exactness == LEFT
    assert compose(rec21.i_up_star, rec21.j_low_star).exactness == NONE
    assert compose(rec21.j_up_star, rec21.i_low_star).exactness == EXACT
    with pytest.raises(ValueError):
        compose(rec21.i_up_star, rec21.i_up_star)


def test_unknown_exactness_rejected():
    with pytest.raises(ValueError):
        Functor("x", VECT, VECT, lambda o: o, lambda f: f, "sideways")


@pytest.mark.parametrize("name,left,right", [("i_up_star", False, True), ("i_up_shriek", True, False),
                                             ("j_up_star", True, True), ("r", True, True)])
def test_exactness_profile_of_recollement_functors(rec21, name, left, right):
    prof = exactness_profile(getattr(rec21, name), rec21.objects_a((2, 2)), samples=50)
    assert (prof.left_exact, prof.right_exact) == (left, right)
    assert prof.agrees_with(getattr(rec21, name).exactness)
    if not left:
        assert prof.left_witness is not None


def test_derived_values_on_i_star_of_f2(rec21, rec22):
    f2 = VECT.object((1,))
    for rec, l2 in ((rec21, 0), (rec22, 1)):
        m = rec.i_low_star(f2)
        assert VECT.dims(derived_left(rec.i_up_star, m, 0)) == (1,)
        assert VECT.dims(derived_left(rec.i_up_star, m, 1)) == (0,)
        assert VECT.dims(derived_left(rec.i_up_star, m, 2)) == (l2,)


def test_derived_right_of_left_exact_functor_in_degree_zero(rec21):
    for m in rec21.objects_a((1, 2)):
        assert VECT.dims(derived_right(rec21.i_up_shriek, m, 0)) == VECT.dims(rec21.i_up_shriek(m))


def test_homology_of_exact_pair_vanishes():
    m = QF.iso_class_reps((2, 2))[-1]
    res = QF.resolution(m, 2)
    h = homology(QF, res[1], res[0])
    assert QF.is_zero_object(h.obj)


@pytest.mark.parametrize("key", ["adj_i_star", "adj_i_shriek", "adj_j_shriek", "adj_j_star"])
def test_recollement_adjunctions(rec21, key):
    adj = getattr(rec21, key)
    objs = {rec21.a: rec21.objects_a((1, 2)), rec21.a1: rec21.objects_a1((2,)),
            rec21.a2: rec21.objects_a2((2,))}
    checks = check_adjunction(adj, objs[adj.left.source], objs[adj.left.target], samples=30)
    assert all(c.passed for c in checks), [c.to_json() for c in checks if not c.passed]


def test_adjunction_check_rejects_wrong_partner(rec21):
    """``(j^*, j_!)`` is not an adjunction: reuse ``(j^*, j_*)`` data with ``j_!`` substituted."""
    from recolle.functorics import Adjunction
    adj = rec21.adj_j_star
    bad = Adjunction(adj.left, rec21.j_low_shriek, adj.unit, adj.counit, "bad")
    checks = check_adjunction(bad, rec21.objects_a((1, 1)), rec21.objects_a2((2,)), samples=10)
    assert not all(c.passed for c in checks)


def test_check_functor_on_recollement_functors(rec21):
    for f in rec21.functors.values():
        objs = {rec21.a: rec21.objects_a((1, 1)), rec21.a1: rec21.objects_a1((2,)),
                rec21.a2: rec21.objects_a2((2,))}[f.source]
        assert all(c.passed for c in check_functor(f, objs, samples=30))


def test_dual_functor_round_trip(rec21):
    d = rec21.i_up_star.dual()
    assert d.dual() is rec21.i_up_star
    assert d.exactness == LEFT


def test_derived_functor_does_not_depend_on_the_resolution(rec22):
    """Padding the minimal resolution with ``P --id--> P`` leaves ``L_n`` unchanged."""
    cat = rec22.a
    p = cat.indecomposable_projective("v2")
    for m in rec22.objects_a((2, 2))[:12]:
        res = cat.resolution(m, 4)
        for degree in range(2):
            padded = pad_resolution(cat, res, degree, p)
            for n in range(3):
                assert (cat.is_morphism(padded[n]) and
                        VECT.dims(derived_left(rec22.i_up_star, m, n, padded))
                        == VECT.dims(derived_left(rec22.i_up_star, m, n)))


def test_derived_map_preserves_identities_and_zero(rec22):
    cat = rec22.a
    for m in rec22.objects_a((2, 1)):
        for n in range(3):
            value = derived_left(rec22.i_up_star, m, n)
            assert derived_left_map(rec22.i_up_star, cat.identity(m), n) == VECT.identity(value)
            assert derived_left_map(rec22.i_up_star, cat.zero_morphism(m, m), n).is_zero()
