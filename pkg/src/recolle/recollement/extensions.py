"""Ext^1 comparisons: oracle agreement, pushforward along i_*, restriction along j^*."""

from __future__ import annotations

import itertools
from typing import Any

from recolle.functorics import derived_left
from recolle.recollement.bundle import Recollement
from recolle.repcat.ext import (ExtClass, enumerate_extensions, ext1_by_enumeration, ext_group,
                                is_extension, is_split, map_extension, pullback_extension)
from recolle.repcat.reps import RepCategory
from recolle.report import Check, Tally, guarded, witness_of


def _reps_up_to_total(cat: RepCategory, total: int) -> list:
    bound = (total,) * len(cat.slots)
    return [r for r in cat.iso_class_reps(bound) if cat.total_dim(r) <= total]


def ext_oracle_check(cat: RepCategory, total: int) -> Check:
    """Resolution-based ``dim Ext^1`` against the Baer-class count, for every
    pair of representatives whose dimensions add up to at most ``total``."""
    reps = _reps_up_to_total(cat, total)
    t = Tally(f"ext oracle {cat.quiver.name} total dim {total}")
    for m, n in itertools.product(reps, repeat=2):
        if cat.total_dim(m) + cat.total_dim(n) > total:
            continue
        expected = 1 << ext_group(cat, m, n, 1).dim
        guarded(t, lambda: ext1_by_enumeration(cat, m, n) == expected,
                witness=lambda: witness_of(cat, m, n))
    return t.result()


# ---- pushforward along i_*

def ext1_pushforward(rec: Recollement, e: ExtClass, obj: Any) -> ExtClass:
    """``Ext^1(i^*A, V) -> Ext^1(A, i_*V)``: apply ``i_*`` and pull back along ``A -> i_*i^*A``."""
    if e.top != rec.i_up_star(obj):
        raise ValueError("extension top must be i^*A")
    pushed = map_extension(rec.i_low_star, e)
    return pullback_extension(rec.a, pushed, rec.to_i_star(obj))


def ext_pushforward_suite(rec: Recollement, bound_a=None, bound_a1=(2,)) -> list[Check]:
    """Pushforward validity and injectivity, and the five-term dimension bounds.

    With ``e_1 = dim Ext^1(i^*A, V)``, ``e = dim Ext^1(A, i_*V)`` and
    ``h = dim Hom(L1 i^*A, V)``, exactness of the five-term sequence forces
    ``e_1 <= e <= e_1 + h``.
    """
    a, a1 = rec.a, rec.a1
    valid = Tally("ext pushforward is an extension and preserves non-splitness")
    bounds = Tally("ext five-term dimension bounds")
    for obj in rec.objects_a(bound_a):
        top = rec.i_up_star(obj)
        l1 = derived_left(rec.i_up_star, obj, 1)
        for v in rec.objects_a1(bound_a1):
            w = lambda: witness_of(a, obj) + witness_of(a1, v)
            if isinstance(a1, RepCategory):
                for e in enumerate_extensions(a1, top, v):
                    out = ext1_pushforward(rec, e, obj)
                    valid.record(is_extension(a, out) and (is_split(a1, e) or not is_split(a, out)), w)
            e1 = ext_group(a1, top, v, 1).dim
            ea = ext_group(a, obj, rec.i_low_star(v), 1).dim
            h = a1.hom_dim(l1, v)
            bounds.record(e1 <= ea <= e1 + h, w)
    return [valid.result(), bounds.result()]


# ---- restriction along j^*

def ext1_restriction_mono_check(rec: Recollement, bound_a=None) -> Check:
    """For ``i^*A = 0``, ``i^!B = 0`` and ``j^*A, j^*B`` nonzero, every
    non-split extension of ``A`` by ``B`` stays non-split under ``j^*``."""
    a, a1, a2 = rec.a, rec.a1, rec.a2
    t = Tally("ext restriction along j^* is injective")
    if not isinstance(a, RepCategory):
        t.detail = "skipped: extensions are enumerated for representation categories only"
        return t.result()
    objs = rec.objects_a(bound_a)
    tops = [o for o in objs if a1.is_zero_object(rec.i_up_star(o)) and not a2.is_zero_object(rec.j_up_star(o))]
    bottoms = [o for o in objs if a1.is_zero_object(rec.i_up_shriek(o)) and not a2.is_zero_object(rec.j_up_star(o))]
    for top, bottom in itertools.product(tops, bottoms):
        for e in enumerate_extensions(a, top, bottom):
            if is_split(a, e):
                continue
            t.record(not is_split(a2, map_extension(rec.j_up_star, e)),
                     lambda: witness_of(a, top, bottom, e.middle))
    return t.result()
