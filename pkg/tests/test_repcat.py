import itertools

import pytest
from hypothesis import given, strategies as st

from recolle.gf2 import BitMatrix, all_matrices
from recolle.repcat.category import Undecided
from recolle.repcat.quiver import QUAD_FREE, BoundQuiver, Arrow, word
from recolle.repcat.reps import Rep, make_rep, rep_category

SIGMA2 = rep_category("sigma2")
QF = rep_category("quad_free")
QV = rep_category("quad_vect")
VECT = rep_category("vect")
SMALL = {SIGMA2: (3,), QF: (2, 1), QV: (2, 1)}


def brute_hom_dim(cat, a: Rep, b: Rep) -> int:
    """Count tuples of vertex maps commuting with every arrow."""
    vi = cat.quiver.vertex_index
    spaces = [list(all_matrices(db, da)) for da, db in zip(a.dims, b.dims)]
    count = 0
    for comps in itertools.product(*spaces):
        if all(comps[vi[arr.target]] @ ma == mb @ comps[vi[arr.source]]
               for arr, ma, mb in zip(cat.quiver.arrows, a.maps, b.maps)):
            count += 1
    return count.bit_length() - 1


def objects(cat, bound):
    return list(cat.enumerate(bound))


@pytest.mark.parametrize("cat", [SIGMA2, QF, QV])
def test_hom_dim_matches_brute_force(cat):
    reps = cat.iso_class_reps(SMALL[cat])
    for a, b in itertools.product(reps, repeat=2):
        if cat.total_dim(a) * cat.total_dim(b) <= 6:
            assert cat.hom_dim(a, b) == brute_hom_dim(cat, a, b)


def test_relations_filter_enumeration():
    assert all(QV.check_relations(r) for r in QV.enumerate((2, 2)))
    assert len(QF.enumerate_dims((1, 1))) == len(QV.enumerate_dims((1, 1))) == 3
    assert len(QV.enumerate_dims((2, 1))) < len(QF.enumerate_dims((2, 1)))
    with pytest.raises(ValueError):
        QV.object((2, 1), {"H": BitMatrix.from_rows([[1, 0]]), "P": BitMatrix.from_rows([[0], [1]])})


@pytest.mark.parametrize("cat,dims,count", [(SIGMA2, (1,), 1), (SIGMA2, (2,), 2), (SIGMA2, (3,), 2),
                                            (QF, (1, 1), 3), (QV, (1, 1), 3), (QF, (2, 1), 4), (QV, (2, 1), 3)])
def test_iso_class_counts(cat, dims, count):
    reps = cat.iso_classes(cat.enumerate_dims(dims))
    assert len(reps) == count


@pytest.mark.parametrize("cat", [SIGMA2, QF])
def test_iso_classes_partition_into_orbits(cat):
    for dims in cat.dim_vectors(SMALL[cat]):
        objs = cat.enumerate_dims(dims)
        reps = cat.iso_classes(objs)
        orbits = [cat.orbit(r) for r in reps]
        assert sum(len(o) for o in orbits) == len(objs)
        assert set().union(*orbits) == set(objs) if orbits else not objs


@pytest.mark.parametrize("cat", [SIGMA2, QF])
def test_isomorphism_search_agrees_with_orbits(cat):
    objs = list(cat.enumerate_dims((2,) if cat is SIGMA2 else (1, 1)))
    for a, b in itertools.product(objs, repeat=2):
        iso = cat.find_isomorphism(a, b)
        assert (iso is not None) == (b in cat.orbit(a))
        if iso is not None:
            assert iso.is_iso() and cat.is_morphism(iso)


def test_automorphism_search_refuses_over_budget():
    p = QF.indecomposable_projective("v1")
    with pytest.raises(Undecided):
        QF.automorphism_generators(p, budget=0)
    assert QF.automorphism_generators(p)


@pytest.mark.parametrize("cat", [SIGMA2, QF, QV])
def test_projectives_represent_evaluation(cat):
    for p, v in zip(cat.indecomposable_projectives(), cat.slots):
        for m in cat.iso_class_reps(SMALL[cat]):
            assert cat.hom_dim(p, m) == m.dim(v)


def test_projective_dimensions():
    assert SIGMA2.indecomposable_projective("x").dims == (2,)
    # paths out of v1: e, H, PH (HPH = 0); with PH = 0 only e, H survive
    assert QF.indecomposable_projective("v1").dims == (2, 1)
    assert QF.indecomposable_projective("v2").dims == (1, 2)
    assert QV.indecomposable_projective("v1").dims == (1, 1)
    assert QV.indecomposable_projective("v2").dims == (1, 2)


@pytest.mark.parametrize("cat", [SIGMA2, QF, QV])
def test_projective_cover_is_epi_from_projective(cat):
    for m in cat.iso_class_reps(SMALL[cat]):
        cover = cat.projective_cover(m)
        assert cover.is_epi() and cat.is_morphism(cover)


@pytest.mark.parametrize("cat", [SIGMA2, QF])
def test_resolution_is_exact(cat):
    for m in cat.iso_class_reps(SMALL[cat]):
        res = cat.resolution(m, 3)
        assert res[0].target == m and res[0].is_epi()
        for f, g in zip(res[1:], res):
            assert (g @ f).is_zero() and cat.exact_at(f, g)


@st.composite
def qf_morphisms(draw):
    objs = QF.iso_class_reps((2, 2))
    a, b = draw(st.sampled_from(objs)), draw(st.sampled_from(objs))
    hs = QF.hom(a, b)
    return hs.element(draw(st.integers(0, (1 << hs.dim) - 1)))


@given(qf_morphisms())
def test_kernel_cokernel_image(f):
    k, ki = QF.kernel(f)
    c, cp = QF.cokernel(f)
    assert ki.is_mono() and (f @ ki).is_zero()
    assert cp.is_epi() and (cp @ f).is_zero()
    assert QF.exact_at(ki, f) and QF.exact_at(f, cp)
    im, e, m = QF.image(f)
    assert m @ e == f and e.is_epi() and m.is_mono()
    assert QF.total_dim(k) + QF.total_dim(im) == QF.total_dim(f.source)


@given(qf_morphisms())
def test_hom_is_closed_under_addition(f):
    hs = QF.hom(f.source, f.target)
    for g in list(hs)[:4]:
        assert QF.is_morphism(f + g)
    assert hs.element(hs.coordinates(f)) == f


def test_direct_sum_universal():
    a, b = QF.iso_class_reps((1, 1))[1:3]
    bp = QF.direct_sum([a, b])
    assert bp.obj.dims == tuple(x + y for x, y in zip(a.dims, b.dims))
    for i, j in itertools.product(range(2), repeat=2):
        comp = bp.projections[i] @ bp.injections[j]
        assert comp == (QF.identity([a, b][i]) if i == j else QF.zero_morphism([a, b][j], [a, b][i]))


def test_duality_swaps_hom():
    d = QF.dual()
    reps = QF.iso_class_reps((1, 2))
    for a, b in itertools.product(reps, repeat=2):
        assert QF.hom_dim(a, b) == d.hom_dim(QF.dualize(b), QF.dualize(a))


def test_rep_json_round_trip():
    for r in QF.enumerate((1, 2)):
        assert QF.from_json(QF.to_json(r)) == r


def test_quiver_validation():
    with pytest.raises(ValueError):
        BoundQuiver("bad", ("a",), (Arrow("x", "a", "b"),), (), 1)
    assert word("PHP") == ("P", "H", "P")
    assert QUAD_FREE.paths("v1", "v1", 2)


def test_vect_has_one_object_per_dimension():
    assert [r.dims for r in VECT.iso_class_reps((3,))] == [(0,), (1,), (2,), (3,)]
    assert make_rep(VECT.quiver, (2,)).dims == (2,)
