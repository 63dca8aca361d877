import itertools

import pytest
from hypothesis import given, strategies as st

from recolle.recollement.extensions import ext_oracle_check
from recolle.repcat.ext import (baer_classes, baer_equal, enumerate_extensions, ext1_by_enumeration, ext_group,
                                is_extension, is_split, map_extension, pullback_extension, pushout_extension,
                                split_extension)
from recolle.repcat.reps import rep_category

SIGMA2 = rep_category("sigma2")
QF = rep_category("quad_free")
QV = rep_category("quad_vect")


def simple(cat, v):
    return cat.simple(v)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_ext_of_simple_over_dual_numbers_is_one_dimensional(n):
    s = SIGMA2.simple("x")
    assert ext_group(SIGMA2, s, s, n).dim == 1


@pytest.mark.parametrize("cat", [SIGMA2, QF, QV])
def test_projectives_have_no_higher_ext(cat):
    for p in cat.indecomposable_projectives():
        for m in cat.iso_class_reps((2,) * len(cat.slots)):
            assert ext_group(cat, p, m, 1).dim == 0
            assert ext_group(cat, p, m, 2).dim == 0


@pytest.mark.parametrize("cat", [SIGMA2, QF, QV])
def test_ext_zero_is_hom(cat):
    reps = cat.iso_class_reps((1,) * len(cat.slots))
    for a, b in itertools.product(reps, repeat=2):
        assert ext_group(cat, a, b, 0).dim == cat.hom_dim(a, b)


def test_negative_degree_rejected():
    s = SIGMA2.simple("x")
    with pytest.raises(ValueError):
        ext_group(SIGMA2, s, s, -1)


@pytest.mark.parametrize("cat,total", [(SIGMA2, 3), (QF, 2), (QV, 3)])
def test_resolution_ext_matches_baer_count(cat, total):
    check = ext_oracle_check(cat, total)
    assert check.passed, check.witness


def test_enumerated_extensions_are_extensions():
    s = QF.simple("v1")
    t = QF.simple("v2")
    exts = list(enumerate_extensions(QF, s, t))
    assert exts and all(is_extension(QF, e) for e in exts)
    classes = baer_classes(QF, exts)
    assert len(classes) == 1 << ext_group(QF, s, t, 1).dim
    assert sum(1 for e in classes if is_split(QF, e)) == 1


def test_split_extension_is_split_and_baer_trivial():
    a, b = QF.simple("v1"), QF.simple("v2")
    e = split_extension(QF, a, b)
    assert is_extension(QF, e) and is_split(QF, e)
    nonsplit = [x for x in enumerate_extensions(QF, a, b) if not is_split(QF, x)]
    assert nonsplit and not baer_equal(QF, e, nonsplit[0])


def test_pullback_and_pushout_by_identity_preserve_class():
    a, b = QF.simple("v2"), QF.simple("v1")
    for e in enumerate_extensions(QF, a, b):
        back = pullback_extension(QF, e, QF.identity(a))
        out = pushout_extension(QF, e, QF.identity(b))
        assert is_extension(QF, back) and is_extension(QF, out)
        assert baer_equal(QF, back, e) and baer_equal(QF, out, e)


def test_pullback_by_zero_splits():
    s = SIGMA2.simple("x")
    for e in enumerate_extensions(SIGMA2, s, s):
        z = SIGMA2.zero_morphism(s, s)
        assert is_split(SIGMA2, pullback_extension(SIGMA2, e, z))
        assert is_split(SIGMA2, pushout_extension(SIGMA2, e, z))


def test_exact_functor_maps_extensions(rec21):
    s = SIGMA2.simple("x")
    for e in enumerate_extensions(SIGMA2, s, s):
        # j_! is only right exact, but on these sequences the middle stays exact in quad_free
        image = map_extension(rec21.j_up_star, map_extension(rec21.j_low_star, e))
        assert is_extension(SIGMA2, image)


@given(st.integers(0, 3), st.integers(0, 3))
def test_baer_count_is_a_power_of_two(i, j):
    reps = SIGMA2.iso_class_reps((2,))
    top, bottom = reps[i % len(reps)], reps[j % len(reps)]
    n = ext1_by_enumeration(SIGMA2, top, bottom)
    assert n & (n - 1) == 0
