"""Morphisms of ``A`` as a linear extension over the triples ``(Im eta_B, i^!B, e_B)``."""

from __future__ import annotations

import collections
from dataclasses import dataclass
from typing import Any

from recolle.gf2 import LinearSpan
from recolle.recollement.bundle import Recollement
from recolle.repcat.category import Morphism, iso_budget
from recolle.repcat.ext import ExtClass
from recolle.report import Check, Tally, witness_of


@dataclass(frozen=True)
class GObject:
    """``(A, U, e)`` with ``A`` in ``Ker i^!`` and ``e`` an extension of ``A`` by ``i_*U``."""

    a: Any
    u: Any
    e: ExtClass


def to_g(rec: Recollement, b: Any) -> GObject:
    """``B -> (Im eta_B, i^!B, [0 -> i_*i^!B -> B -> Im eta_B -> 0])``."""
    im, epi, _ = rec.a.image(rec.eta(b))
    incl = rec.from_i_shriek(b)
    return GObject(im, rec.i_up_shriek(b), ExtClass(incl.source, im, b, incl, epi))


def induced_pair(rec: Recollement, f: Morphism) -> tuple[Morphism, Morphism]:
    """``f`` on ``Im eta`` and on ``i^!``."""
    _, e_src, _ = rec.a.image(rec.eta(f.source))
    _, e_tgt, _ = rec.a.image(rec.eta(f.target))
    return rec.a.factor_through_epi(e_src, e_tgt @ f), rec.i_up_shriek.map(f)


def torsor_dim(rec: Recollement, b: Any, b2: Any) -> int:
    """``dim Hom_{A'}(V, U')`` with ``V = i^*(B / i_*i^!B)`` and ``U' = i^!B'``."""
    quotient, _ = rec.a.cokernel(rec.from_i_shriek(b))
    return rec.a1.hom_dim(rec.i_up_star(quotient), rec.i_up_shriek(b2))


def fiber_sizes(rec: Recollement, b: Any, b2: Any, budget: int | None = None) -> list[int]:
    """Sizes of the nonempty fibers of ``Hom(B, B') -> Hom(Im eta_B, Im eta_B') x Hom(i^!B, i^!B')``.

    The map is linear, so each element's key is the XOR of the keys of its
    basis coordinates; within budget every element is visited (Gray-code
    order), beyond it each fiber is a coset of the kernel.
    """
    hs = rec.a.hom(b, b2)
    keys = [_pair_key(rec, f) for f in hs.basis]
    limit = iso_budget() if budget is None else budget
    if hs.dim > limit:
        rank = LinearSpan(keys).rank
        return [1 << (hs.dim - rank)] * (1 << rank)
    counts: dict = collections.Counter()
    key = 0
    counts[key] += 1
    for i in range(1, 1 << hs.dim):
        key ^= keys[(i & -i).bit_length() - 1]
        counts[key] += 1
    return sorted(counts.values())


def _pair_key(rec: Recollement, f: Morphism) -> int:
    g, h = induced_pair(rec, f)
    width = sum(c.nrows * c.ncols for c in g.comps)
    return g.flatten() | (h.flatten() << width)


def linear_extension_fiber_check(rec: Recollement, b: Any, b2: Any) -> bool:
    expected = 1 << torsor_dim(rec, b, b2)
    return all(n == expected for n in fiber_sizes(rec, b, b2))


def fiber_suite(rec: Recollement, bound_a=None) -> list[Check]:
    """Fiber cardinalities over all pairs of representatives, and the triple data."""
    a = rec.a
    objs = rec.objects_a(bound_a)
    t = Tally("linear extension fibers have size 2^dim Hom(V, U')")
    hist: dict = collections.Counter()
    for b in objs:
        for b2 in objs:
            expected = 1 << torsor_dim(rec, b, b2)
            sizes = fiber_sizes(rec, b, b2)
            hist[expected] += 1
            t.record(all(n == expected for n in sizes), lambda: witness_of(a, b, b2))
    t.dims = {str(k): v for k, v in sorted(hist.items())}
    triples = Tally("linear extension triple lies in Ker i^! with an exact sequence")
    for b in objs:
        g = to_g(rec, b)
        triples.record(rec.a1.is_zero_object(rec.i_up_shriek(g.a))
                       and a.is_short_exact(g.e.incl, g.e.proj), lambda: witness_of(a, b))
    return [t.result(), triples.result()]
