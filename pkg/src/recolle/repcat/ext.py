"""Ext groups from projective resolutions, and extensions as explicit short exact sequences."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from recolle.gf2 import BitMatrix, LinearSpan, NoSolution, all_matrices
from recolle.repcat.category import Category, Morphism, Undecided, iso_budget
from recolle.repcat.reps import Rep, RepCategory


@dataclass(frozen=True)
class ExtClass:
    """A short exact sequence ``0 -> bottom -> middle -> top -> 0``."""

    bottom: Any
    top: Any
    middle: Any
    incl: Morphism
    proj: Morphism


@dataclass(frozen=True)
class ExtGroup:
    degree: int
    dim: int
    cocycles: tuple[Morphism, ...]
    """Morphisms ``P_degree -> n`` whose classes form a basis."""


def is_extension(cat: Category, e: ExtClass) -> bool:
    return (e.incl.source == e.bottom and e.incl.target == e.middle
            and e.proj.source == e.middle and e.proj.target == e.top
            and cat.is_morphism(e.incl) and cat.is_morphism(e.proj)
            and cat.is_short_exact(e.incl, e.proj))


def split_extension(cat: Category, top: Any, bottom: Any) -> ExtClass:
    bp = cat.direct_sum([bottom, top])
    return ExtClass(bottom, top, bp.obj, bp.injections[0], bp.projections[1])


def is_split(cat: Category, e: ExtClass) -> bool:
    """Whether ``proj`` admits a section."""
    hs = cat.hom(e.top, e.middle)
    span = LinearSpan([(e.proj @ b).flatten() for b in hs.basis])
    return span.contains(cat.identity(e.top).flatten())


def _pair_flat(f: Morphism, g: Morphism) -> int:
    width = sum(c.nrows * c.ncols for c in f.comps)
    return f.flatten() | (g.flatten() << width)


def baer_equal(cat: Category, e1: ExtClass, e2: ExtClass, budget: int | None = None) -> bool:
    """Whether some isomorphism of middles fixes both ends.

    Solves the affine system ``phi ∘ incl1 = incl2``, ``proj2 ∘ phi = proj1``
    over ``Hom(middle1, middle2)``.  Any solution is an isomorphism by the
    five lemma; the solution set is still scanned if the first one is not.
    """
    if e1.bottom != e2.bottom or e1.top != e2.top:
        raise ValueError("extensions must share both ends")
    hs = cat.hom(e1.middle, e2.middle)
    span = LinearSpan([_pair_flat(b @ e1.incl, e2.proj @ b) for b in hs.basis])
    try:
        c0 = span.coordinates(_pair_flat(e2.incl, e1.proj))
    except NoSolution:
        return False
    if hs.element(c0).is_iso():
        return True
    rels = span.relations
    limit = iso_budget() if budget is None else budget
    if len(rels) > limit:
        raise Undecided("Baer equivalence search exceeds budget")
    for bits in range(1, 1 << len(rels)):
        c = c0
        for i, r in enumerate(rels):
            if (bits >> i) & 1:
                c ^= r
        if hs.element(c).is_iso():
            return True
    return False


def ext_group(cat: Category, m: Any, n: Any, degree: int) -> ExtGroup:
    """``Ext^degree(m, n)`` as cohomology of ``Hom(P_•, n)``."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    res = cat.resolution(m, degree + 1)
    p = [d.source for d in res]

    def cochain_images(k: int) -> tuple[list[Morphism], LinearSpan]:
        # d^k: Hom(P_k, n) -> Hom(P_{k+1}, n), f -> f ∘ d_{k+1}
        basis = cat.hom(p[k], n).basis
        return basis, LinearSpan([(f @ res[k + 1]).flatten() for f in basis])

    basis, span_k = cochain_images(degree)
    cycles = [_combine(cat, basis, rel, p[degree], n) for rel in span_k.relations]
    if degree == 0:
        boundary = LinearSpan([])
    else:
        prev = cat.hom(p[degree - 1], n).basis
        boundary = LinearSpan([(f @ res[degree]).flatten() for f in prev])
    reps = []
    acc = LinearSpan(boundary.vectors)
    for z in cycles:
        if not acc.contains(z.flatten()):
            reps.append(z)
            acc = LinearSpan(acc.vectors + [z.flatten()])
    return ExtGroup(degree, len(cycles) - boundary.rank, tuple(reps))


def _combine(cat: Category, basis: list[Morphism], coeffs: int, a: Any, b: Any) -> Morphism:
    out = cat.zero_morphism(a, b)
    i = 0
    while coeffs:
        if coeffs & 1:
            out = out + basis[i]
        coeffs >>= 1
        i += 1
    return out


def enumerate_extensions(cat: RepCategory, top: Rep, bottom: Rep) -> Iterator[ExtClass]:
    """Every extension whose middle is ``bottom ⊕ top`` as graded spaces.

    Middle arrow maps are block upper triangular ``[[N_a, c_a], [0, M_a]]``;
    every extension of ``top`` by ``bottom`` is Baer-equivalent to one of
    these.  Off-diagonal blocks run over all matrices.
    """
    q = cat.quiver
    vi = q.vertex_index
    dims = tuple(b + t for b, t in zip(bottom.dims, top.dims))
    shapes = [(bottom.dims[vi[a.target]], top.dims[vi[a.source]]) for a in q.arrows]
    incl = tuple(BitMatrix.vstack([BitMatrix.identity(b), BitMatrix.zeros(t, b)])
                 for b, t in zip(bottom.dims, top.dims))
    proj = tuple(BitMatrix.hstack([BitMatrix.zeros(t, b), BitMatrix.identity(t)])
                 for b, t in zip(bottom.dims, top.dims))
    for cs in itertools.product(*(list(all_matrices(*s)) for s in shapes)):
        maps = []
        for a, nm, mm, c in zip(q.arrows, bottom.maps, top.maps, cs):
            t_dim = top.dims[vi[a.target]]
            s_dim = bottom.dims[vi[a.source]]
            upper = BitMatrix.hstack([nm, c])
            lower = BitMatrix.hstack([BitMatrix.zeros(t_dim, s_dim), mm])
            maps.append(BitMatrix.vstack([upper, lower]))
        mid = Rep(q, dims, tuple(maps))
        if cat.check_relations(mid):
            yield ExtClass(bottom, top, mid, Morphism(bottom, mid, incl), Morphism(mid, top, proj))


def baer_classes(cat: Category, extensions) -> list[ExtClass]:
    """One representative per Baer class, in order of first appearance."""
    reps: list[ExtClass] = []
    for e in extensions:
        if not any(baer_equal(cat, e, r) for r in reps):
            reps.append(e)
    return reps


def ext1_by_enumeration(cat: RepCategory, top: Rep, bottom: Rep) -> int:
    """Number of Baer classes of extensions of ``top`` by ``bottom`` (brute force)."""
    return len(baer_classes(cat, enumerate_extensions(cat, top, bottom)))


def pullback_extension(cat: Category, e: ExtClass, g: Morphism) -> ExtClass:
    """``g^* e`` for ``g: top' -> e.top``."""
    bp = cat.direct_sum([e.middle, g.source])
    d = e.proj @ bp.projections[0] + g @ bp.projections[1]
    mid, k = cat.kernel(d)
    incl = cat.factor_through_mono(k, bp.injections[0] @ e.incl)
    return ExtClass(e.bottom, g.source, mid, incl, bp.projections[1] @ k)


def pushout_extension(cat: Category, e: ExtClass, h: Morphism) -> ExtClass:
    """``h_* e`` for ``h: e.bottom -> bottom'``."""
    bp = cat.direct_sum([e.middle, h.target])
    d = bp.injections[0] @ e.incl + bp.injections[1] @ h
    mid, q = cat.cokernel(d)
    proj = cat.factor_through_epi(q, e.proj @ bp.projections[0])
    return ExtClass(h.target, e.top, mid, q @ bp.injections[1], proj)


def map_extension(functor, e: ExtClass) -> ExtClass:
    """Image of an extension under an exact functor."""
    return ExtClass(functor(e.bottom), functor(e.top), functor(e.middle),
                    functor.map(e.incl), functor.map(e.proj))
