"""Vanishing identities for composites and derived functors, and essential images."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from recolle.functorics import derived_left, derived_right
from recolle.recollement.bundle import Recollement
from recolle.report import Check, Tally, witness_of


def _vanishes(t: Tally, cat, value, witness) -> None:
    t.record(cat.is_zero_object(value), witness)


def vanishing_suite(rec: Recollement, bound_a2=None, bound_a1=None, max_degree: int = 3) -> list[Check]:
    """Objectwise vanishing of composites and low derived functors.

    The identification of ``L1 i^*`` on ``j_!*`` with ``i^!j_!`` (and its dual)
    is checked dimensionwise only.
    """
    a1, a2 = rec.a1, rec.a2
    xs = rec.objects_a2(bound_a2)
    vs = rec.objects_a1(bound_a1)
    out: list[Check] = []

    composites = Tally("vanishing i^*j_! = 0")
    composites_dual = Tally("vanishing i^!j_* = 0")
    middle = Tally("vanishing i^* and i^! on j_!*")
    for x in xs:
        w = lambda: witness_of(a2, x)
        _vanishes(composites, a1, rec.i_up_star(rec.j_low_shriek(x)), w)
        _vanishes(composites_dual, a1, rec.i_up_shriek(rec.j_low_star(x)), w)
        m, _, _ = rec.j_shriek_star(x)
        middle.record(a1.is_zero_object(rec.i_up_star(m)) and a1.is_zero_object(rec.i_up_shriek(m)), w)
    out += [composites.result(), composites_dual.result(), middle.result()]

    for n in range(1, max_degree + 1):
        left = Tally(f"vanishing j^*L{n}j_! = 0")
        right = Tally(f"vanishing j^*R{n}j_* = 0")
        for x in xs:
            w = lambda: witness_of(a2, x)
            _vanishes(left, a2, rec.j_up_star(derived_left(rec.j_low_shriek, x, n)), w)
            _vanishes(right, a2, rec.j_up_star(derived_right(rec.j_low_star, x, n)), w)
        out += [left.result(), right.result()]

    on_i = Tally("vanishing L1i^* i_* = 0")
    on_i_dual = Tally("vanishing R1i^! i_* = 0")
    for v in vs:
        w = lambda: witness_of(a1, v)
        iv = rec.i_low_star(v)
        _vanishes(on_i, a1, derived_left(rec.i_up_star, iv, 1), w)
        _vanishes(on_i_dual, a1, derived_right(rec.i_up_shriek, iv, 1), w)
    out += [on_i.result(), on_i_dual.result()]

    on_j = Tally("vanishing L1i^* j_! = 0")
    on_j_dual = Tally("vanishing R1i^! j_* = 0")
    mid = Tally("vanishing L1i^* j_!* matches i^!j_! dimensionwise",
                detail="dimensionwise")
    mid_dual = Tally("vanishing R1i^! j_!* matches i^*j_* dimensionwise",
                     detail="dimensionwise")
    for x in xs:
        w = lambda: witness_of(a2, x)
        _vanishes(on_j, a1, derived_left(rec.i_up_star, rec.j_low_shriek(x), 1), w)
        _vanishes(on_j_dual, a1, derived_right(rec.i_up_shriek, rec.j_low_star(x), 1), w)
        m, _, _ = rec.j_shriek_star(x)
        mid.record(a1.dims(derived_left(rec.i_up_star, m, 1))
                   == a1.dims(rec.i_up_shriek(rec.j_low_shriek(x))), w)
        mid_dual.record(a1.dims(derived_right(rec.i_up_shriek, m, 1))
                        == a1.dims(rec.i_up_star(rec.j_low_star(x))), w)
    out += [on_j.result(), on_j_dual.result(), mid.result(), mid_dual.result()]
    return out


# ---- essential images of j_!, j_*, j_!*

@dataclass
class ImageMembership:
    in_j_shriek: bool
    in_j_star: bool
    in_j_shriek_star: bool
    agrees: bool
    """Whether the vanishing criteria agree with the round-trip reconstruction."""


def essential_image_test(rec: Recollement, obj: Any) -> ImageMembership:
    """Membership of ``obj`` in the images of ``j_!``, ``j_*`` and ``j_!*``.

    Decided by vanishing of ``i^*``, ``i^!``, ``L1 i^*`` and ``R1 i^!``, and
    cross-checked by testing ``j_?(j^*A) ≅ A``.  May raise Undecided.
    """
    a, a1 = rec.a, rec.a1
    zero = a1.is_zero_object
    star, shriek = zero(rec.i_up_star(obj)), zero(rec.i_up_shriek(obj))
    in_mid = star and shriek
    in_shriek = star and zero(derived_left(rec.i_up_star, obj, 1))
    in_star = shriek and zero(derived_right(rec.i_up_shriek, obj, 1))
    x = rec.j_up_star(obj)
    agrees = (
        in_shriek == a.is_isomorphic(rec.j_low_shriek(x), obj)
        and in_star == a.is_isomorphic(rec.j_low_star(x), obj)
        and in_mid == a.is_isomorphic(rec.j_shriek_star(x)[0], obj)
    )
    return ImageMembership(in_shriek, in_star, in_mid, agrees)


def essential_image_suite(rec: Recollement, bound_a=None) -> list[Check]:
    """Criteria versus reconstruction on every representative, plus the round trips."""
    a = rec.a
    t = Tally("essential image criteria agree with reconstruction")
    counts = {"j_!": 0, "j_*": 0, "j_!*": 0}
    for obj in rec.objects_a(bound_a):
        m = essential_image_test(rec, obj)
        counts["j_!"] += m.in_j_shriek
        counts["j_*"] += m.in_j_star
        counts["j_!*"] += m.in_j_shriek_star
        t.record(m.agrees, lambda: witness_of(a, obj))
    t.dims = counts
    trips = Tally("essential image contains j_!X, j_*X and j_!*X")
    for x in rec.objects_a2():
        ms = [essential_image_test(rec, rec.j_low_shriek(x)).in_j_shriek,
              essential_image_test(rec, rec.j_low_star(x)).in_j_star,
              essential_image_test(rec, rec.j_shriek_star(x)[0]).in_j_shriek_star]
        trips.record(all(ms), lambda: witness_of(rec.a2, x))
    return [t.result(), trips.result()]
