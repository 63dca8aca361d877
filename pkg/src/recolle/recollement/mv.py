"""The glued category of tuples ``(X, V, alpha: F X -> V, beta: V -> G X)`` with ``beta alpha = xi_X``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from recolle.functorics import (EXACT, LEFT, RIGHT, Adjunction, Functor, NatTrans, adjunction, compose,
                                exactness_profile)
from recolle.gf2 import BitMatrix, Subspace
from recolle.recollement.bundle import Recollement
from recolle.repcat.category import Biproduct, Category, Morphism


@dataclass(frozen=True)
class MVObject:
    x: Any
    v: Any
    alpha: Morphism
    beta: Morphism

    def __repr__(self) -> str:
        return f"MVObject(X={self.x!r}, V={self.v!r})"


class MVCategory(Category):
    """Objects factor ``xi_X: F X -> G X`` through an object of ``A'``.

    ``F`` must be right exact and ``G`` left exact.  ``g_adjoint`` is an
    adjunction ``G^* -| G`` used to build projectives; ``f_adjoint`` is an
    adjunction ``F -| F^!`` needed only for the opposite category (which is
    again of this form with ``G^op``, ``F^op`` and ``xi^op``).
    """

    def __init__(self, f: Functor, g: Functor, xi: NatTrans, g_adjoint: Adjunction | None = None,
                 f_adjoint: Adjunction | None = None, name: str | None = None):
        super().__init__()
        if f.source is not g.source or f.target is not g.target:
            raise ValueError("F and G must have the same source and target")
        if xi.source is not f or xi.target is not g:
            raise ValueError("xi must be a transformation F -> G")
        self.f, self.g, self.xi = f, g, xi
        self.a2, self.a1 = f.source, f.target
        self.g_adjoint, self.f_adjoint = g_adjoint, f_adjoint
        self.name = name or f"MV({xi.name}: {f.name} -> {g.name})"
        self.slots = tuple(f"X.{s}" for s in self.a2.slots) + tuple(f"V.{s}" for s in self.a1.slots)
        self._nx = len(self.a2.slots)
        self._dual: MVCategory | None = None
        self._reps_cache: dict[tuple[int, ...], list[MVObject]] = {}
        self._test_family: list[MVObject] | None = None

    def __repr__(self) -> str:
        return f"MVCategory({self.name})"

    # ---- helpers

    def split(self, f: Morphism) -> tuple[Morphism, Morphism]:
        """The pair ``(f_X, f_V)`` of a morphism."""
        a, b = f.source, f.target
        return (Morphism(a.x, b.x, f.comps[:self._nx]), Morphism(a.v, b.v, f.comps[self._nx:]))

    def pair(self, a: MVObject, b: MVObject, fx: Morphism, fv: Morphism) -> Morphism:
        return Morphism(a, b, fx.comps + fv.comps)

    def make(self, x: Any, v: Any, alpha: Morphism, beta: Morphism) -> MVObject:
        o = MVObject(x, v, alpha, beta)
        if not self.is_object(o):
            raise ValueError("beta ∘ alpha differs from xi_X")
        return o

    # ---- category surface

    def dims(self, obj: MVObject) -> tuple[int, ...]:
        return tuple(self.a2.dims(obj.x)) + tuple(self.a1.dims(obj.v))

    def zero_object(self) -> MVObject:
        x0, v0 = self.a2.zero_object(), self.a1.zero_object()
        return MVObject(x0, v0, self.a1.zero_morphism(self.f(x0), v0),
                        self.a1.zero_morphism(v0, self.g(x0)))

    def is_object(self, obj: Any) -> bool:
        if not isinstance(obj, MVObject):
            return False
        if not (self.a2.is_object(obj.x) and self.a1.is_object(obj.v)):
            return False
        al, be = obj.alpha, obj.beta
        if al.source != self.f(obj.x) or al.target != obj.v or be.source != obj.v or be.target != self.g(obj.x):
            return False
        if not (self.a1.is_morphism(al) and self.a1.is_morphism(be)):
            return False
        return be @ al == self.xi(obj.x)

    def hom_generators(self, a: MVObject, b: MVObject) -> list[tuple[BitMatrix, ...]]:
        zx = self.a2.zero_morphism(a.x, b.x).comps
        zv = self.a1.zero_morphism(a.v, b.v).comps
        gens = [h.comps + zv for h in self.a2.hom(a.x, b.x).basis]
        gens += [zx + h.comps for h in self.a1.hom(a.v, b.v).basis]
        return gens

    def hom_residual(self, a: MVObject, b: MVObject, comps: Sequence[BitMatrix]) -> int:
        fx = Morphism(a.x, b.x, tuple(comps[:self._nx]))
        fv = Morphism(a.v, b.v, tuple(comps[self._nx:]))
        left = fv @ a.alpha + b.alpha @ self.f.map(fx)
        right = self.g.map(fx) @ a.beta + b.beta @ fv
        shift = sum(c.nrows * c.ncols for c in left.comps)
        return left.flatten() | (right.flatten() << shift)

    def is_morphism(self, f: Morphism) -> bool:
        if not (isinstance(f.source, MVObject) and isinstance(f.target, MVObject)):
            return False
        return super().is_morphism(f)

    def kernel(self, f: Morphism) -> tuple[MVObject, Morphism]:
        a = f.source
        fx, fv = self.split(f)
        kx, ix = self.a2.kernel(fx)
        kv, iv = self.a1.kernel(fv)
        alpha = self.a1.factor_through_mono(iv, a.alpha @ self.f.map(ix))
        # G is left exact, so G(ix) is the kernel of G(fx) and beta restricts
        beta = self.a1.factor_through_mono(self.g.map(ix), a.beta @ iv)
        k = MVObject(kx, kv, alpha, beta)
        return k, self.pair(k, a, ix, iv)

    def cokernel(self, f: Morphism) -> tuple[MVObject, Morphism]:
        b = f.target
        fx, fv = self.split(f)
        cx, qx = self.a2.cokernel(fx)
        cv, qv = self.a1.cokernel(fv)
        # F is right exact, so F(qx) is the cokernel of F(fx) and alpha descends
        alpha = self.a1.factor_through_epi(self.f.map(qx), qv @ b.alpha)
        beta = self.a1.factor_through_epi(qv, self.g.map(qx) @ b.beta)
        c = MVObject(cx, cv, alpha, beta)
        return c, self.pair(b, c, qx, qv)

    def direct_sum(self, objs: Sequence[MVObject]) -> Biproduct:
        objs = list(objs)
        if not objs:
            z = self.zero_object()
            return Biproduct(z, (), ())
        bx = self.a2.direct_sum([o.x for o in objs])
        bv = self.a1.direct_sum([o.v for o in objs])
        fx, gx = self.f(bx.obj), self.g(bx.obj)
        alpha = self.a1.zero_morphism(fx, bv.obj)
        beta = self.a1.zero_morphism(bv.obj, gx)
        for o, ix, px, iv, pv in zip(objs, bx.injections, bx.projections, bv.injections, bv.projections):
            alpha = alpha + iv @ o.alpha @ self.f.map(px)
            beta = beta + self.g.map(ix) @ o.beta @ pv
        total = MVObject(bx.obj, bv.obj, alpha, beta)
        inj = tuple(self.pair(o, total, ix, iv)
                    for o, ix, iv in zip(objs, bx.injections, bv.injections))
        proj = tuple(self.pair(total, o, px, pv)
                     for o, px, pv in zip(objs, bx.projections, bv.projections))
        return Biproduct(total, inj, proj)

    def split_bound(self, bound: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        bound = tuple(bound)
        if len(bound) != len(self.slots):
            raise ValueError(f"{self.name} needs a bound with {len(self.slots)} entries")
        return bound[:self._nx], bound[self._nx:]

    def enumerate(self, bound: Sequence[int]) -> Iterator[MVObject]:
        """Objects over iso-class representatives of ``X`` and ``V``, with all ``alpha``, ``beta``.

        Every object is isomorphic to one of these, since ``(X, V)`` can be
        replaced by isomorphic representatives and the structure maps
        transported.
        """
        bx, bv = self.split_bound(bound)
        for x in self.a2.iso_class_reps(bx):
            fx, gx, xi = self.f(x), self.g(x), self.xi(x)
            for v in self.a1.iso_class_reps(bv):
                betas = list(self.a1.hom_elements(v, gx))
                for alpha in self.a1.hom_elements(fx, v):
                    for beta in betas:
                        if beta @ alpha == xi:
                            yield MVObject(x, v, alpha, beta)

    def iso_class_reps(self, bound: Sequence[int]) -> list[MVObject]:
        """Orbit representatives of ``Aut X x Aut V`` acting on the structure maps.

        With ``X`` and ``V`` fixed representatives, ``(g, h)`` sends
        ``(alpha, beta)`` to ``(h alpha F(g)^-1, G(g) beta h^-1)``; orbits are
        exactly the isomorphism classes.  Order follows :meth:`enumerate`.
        """
        key = tuple(bound)
        if key not in self._reps_cache:
            self._reps_cache[key] = list(self._orbit_reps(key))
        return self._reps_cache[key]

    def _orbit_reps(self, bound: tuple[int, ...]) -> Iterator[MVObject]:
        bx, bv = self.split_bound(bound)
        for x in self.a2.iso_class_reps(bx):
            fx, gx, xi = self.f(x), self.g(x), self.xi(x)
            moves = [(self.a1.inverse(self.f.map(g)), self.g.map(g))
                     for g in self.a2.automorphism_generators(x)]
            for v in self.a1.iso_class_reps(bv):
                vmoves = [(h, self.a1.inverse(h)) for h in self.a1.automorphism_generators(v)]
                betas = list(self.a1.hom_elements(v, gx))
                seen: set = set()
                for alpha in self.a1.hom_elements(fx, v):
                    for beta in betas:
                        if beta @ alpha != xi or (alpha, beta) in seen:
                            continue
                        yield MVObject(x, v, alpha, beta)
                        seen.add((alpha, beta))
                        frontier = [(alpha, beta)]
                        while frontier:
                            nxt = []
                            for al, be in frontier:
                                images = [(al @ fg_inv, gg @ be) for fg_inv, gg in moves]
                                images += [(h @ al, be @ h_inv) for h, h_inv in vmoves]
                                for im in images:
                                    if im not in seen:
                                        seen.add(im)
                                        nxt.append(im)
                            frontier = nxt

    def test_family(self) -> list[MVObject]:
        """Objects with every slot of dimension at most one, for iso screening."""
        if self._test_family is None:
            self._test_family = list(self.enumerate((1,) * len(self.slots)))
        return self._test_family

    # ---- projectives

    def j_shriek_obj(self, x: Any) -> MVObject:
        fx = self.f(x)
        return MVObject(x, fx, self.a1.identity(fx), self.xi(x))

    def r_star_obj(self, v: Any) -> MVObject:
        """``(G^* V, F G^* V ⊕ V, (1, 0), [xi_{G^* V}, eta_V])``."""
        if self.g_adjoint is None:
            raise NotImplementedError("G has no supplied left adjoint")
        gs = self.g_adjoint.left
        x = gs(v)
        fx = self.f(x)
        bp = self.a1.direct_sum([fx, v])
        alpha = bp.injections[0]
        beta = self.xi(x) @ bp.projections[0] + self.g_adjoint.unit(v) @ bp.projections[1]
        return MVObject(x, bp.obj, alpha, beta)

    def indecomposable_projectives(self) -> list[MVObject]:
        """Projective generators ``j_! P''`` and ``r^* P'``."""
        out = [self.j_shriek_obj(p) for p in self.a2.indecomposable_projectives()]
        if self.g_adjoint is not None:
            out += [self.r_star_obj(p) for p in self.a1.indecomposable_projectives()]
        return out

    def projective_cover(self, obj: MVObject) -> Morphism:
        """An epimorphism from a sum of generators, chosen greedily (not minimal)."""
        pieces: list[Morphism] = []
        dims = self.dims(obj)
        current = [Subspace.zero(d) for d in dims]
        for p in self.indecomposable_projectives():
            for b in self.hom(p, obj).basis:
                grown = [c + Subspace.span(d, m.columns()) for c, d, m in zip(current, dims, b.comps)]
                if any(g.dim > c.dim for g, c in zip(grown, current)):
                    pieces.append(b)
                    current = grown
            if all(c.dim == d for c, d in zip(current, dims)):
                break
        if not all(c.dim == d for c, d in zip(current, dims)):
            raise RuntimeError("generators do not cover the object; is G^* supplied?")
        bp = self.direct_sum([p.source for p in pieces])
        total = self.zero_morphism(bp.obj, obj)
        for p, pr in zip(pieces, bp.projections):
            total = total + p @ pr
        return total

    # ---- duality and serialization

    def dual(self) -> MVCategory:
        if self._dual is None:
            if self.f_adjoint is None:
                raise NotImplementedError("opposite category needs the right adjoint of F")
            fd, gd = self.g.dual(), self.f.dual()
            ga = self.f_adjoint.dual()      # F^op -| ... dualizes to (F^!)^op -| F^op
            fa = self.g_adjoint.dual() if self.g_adjoint is not None else None
            d = MVCategory(fd, gd, self.xi.dual(), ga, fa, self.name + "^op")
            d._dual = self
            self._dual = d
        return self._dual

    def dualize(self, obj: MVObject) -> MVObject:
        a1 = self.a1
        return MVObject(self.a2.dualize(obj.x), a1.dualize(obj.v),
                        a1.dualize_morphism(obj.beta), a1.dualize_morphism(obj.alpha))

    def to_json(self, obj: MVObject) -> dict:
        return {"X": self.a2.to_json(obj.x), "V": self.a1.to_json(obj.v),
                "alpha": [c.to_json() for c in obj.alpha.comps],
                "beta": [c.to_json() for c in obj.beta.comps]}


def zero_functor(source: Category, target: Category) -> Functor:
    z = target.zero_object()
    return Functor("0", source, target, lambda x: z,
                   lambda f: target.zero_morphism(z, z), EXACT)


def zero_transformation(f: Functor, g: Functor) -> NatTrans:
    return NatTrans("0", f, g, lambda x: g.target.zero_morphism(f(x), g(x)))


def zero_adjunction(g: Functor) -> Adjunction:
    """``0 -| G`` when ``G`` is the zero functor."""
    zero_left = zero_functor(g.target, g.source)
    return adjunction(zero_left, g,
                      lambda v: g.target.zero_morphism(v, g(zero_left(v))),
                      lambda x: g.source.zero_morphism(zero_left(g(x)), x), "0-G")


def zero_right_adjunction(f: Functor) -> Adjunction:
    """``F -| 0`` when ``F`` is the zero functor."""
    zero_right = zero_functor(f.target, f.source)
    return adjunction(f, zero_right,
                      lambda x: f.source.zero_morphism(x, zero_right(f(x))),
                      lambda v: f.target.zero_morphism(f(zero_right(v)), v), "F-0")


def mv_construct(f: Functor, g: Functor, xi: NatTrans, g_adjoint: Adjunction | None = None,
                 f_adjoint: Adjunction | None = None, name: str | None = None,
                 bound_a2: Sequence[int] | None = None, bound_a1: Sequence[int] | None = None,
                 audit: bool = True) -> Recollement:
    """The recollement of ``A(xi)``, with retraction ``r(X, V, alpha, beta) = V``.

    With ``audit`` the declared exactness of ``F`` (right) and ``G`` (left)
    is tested by :func:`recolle.functorics.exactness_profile` and a failure
    rejects the construction.
    """
    if audit:
        b2 = tuple(bound_a2) if bound_a2 else tuple(2 for _ in f.source.slots)
        objs = f.source.iso_class_reps(b2)
        if not exactness_profile(f, objs, samples=50).right_exact:
            raise ValueError(f"{f.name} is not right exact")
        if not exactness_profile(g, objs, samples=50).left_exact:
            raise ValueError(f"{g.name} is not left exact")
    cat = MVCategory(f, g, xi, g_adjoint, f_adjoint, name)
    a1, a2 = cat.a1, cat.a2

    def i_up_star(m: MVObject):
        return a1.cokernel(m.alpha)[0]

    def i_up_star_map(h: Morphism):
        _, hv = cat.split(h)
        _, qs = a1.cokernel(h.source.alpha)
        _, qt = a1.cokernel(h.target.alpha)
        return a1.factor_through_epi(qs, qt @ hv)

    def i_low_star(v):
        x0 = a2.zero_object()
        return MVObject(x0, v, a1.zero_morphism(f(x0), v), a1.zero_morphism(v, g(x0)))

    def i_low_star_map(h: Morphism):
        s, t = i_low_star(h.source), i_low_star(h.target)
        return cat.pair(s, t, a2.zero_morphism(s.x, t.x), h)

    def i_up_shriek(m: MVObject):
        return a1.kernel(m.beta)[0]

    def i_up_shriek_map(h: Morphism):
        _, hv = cat.split(h)
        _, ks = a1.kernel(h.source.beta)
        _, kt = a1.kernel(h.target.beta)
        return a1.factor_through_mono(kt, hv @ ks)

    def j_low_shriek(x):
        return cat.j_shriek_obj(x)

    def j_low_shriek_map(h: Morphism):
        return cat.pair(j_low_shriek(h.source), j_low_shriek(h.target), h, f.map(h))

    def j_up_star(m: MVObject):
        return m.x

    def j_up_star_map(h: Morphism):
        return cat.split(h)[0]

    def j_low_star(x):
        gx = g(x)
        return MVObject(x, gx, xi(x), a1.identity(gx))

    def j_low_star_map(h: Morphism):
        return cat.pair(j_low_star(h.source), j_low_star(h.target), h, g.map(h))

    def r_obj(m: MVObject):
        return m.v

    def r_map(h: Morphism):
        return cat.split(h)[1]

    F_i_up_star = Functor("i^*", cat, a1, i_up_star, i_up_star_map, RIGHT)
    F_i_low_star = Functor("i_*", a1, cat, i_low_star, i_low_star_map, EXACT)
    F_i_up_shriek = Functor("i^!", cat, a1, i_up_shriek, i_up_shriek_map, LEFT)
    F_j_low_shriek = Functor("j_!", a2, cat, j_low_shriek, j_low_shriek_map, RIGHT)
    F_j_up_star = Functor("j^*", cat, a2, j_up_star, j_up_star_map, EXACT)
    F_j_low_star = Functor("j_*", a2, cat, j_low_star, j_low_star_map, LEFT)
    F_r = Functor("r", cat, a1, r_obj, r_map, EXACT)

    def unit_i_star(m: MVObject) -> Morphism:
        t = i_low_star(i_up_star(m))
        _, q = a1.cokernel(m.alpha)
        return cat.pair(m, t, a2.zero_morphism(m.x, t.x), q)

    def counit_i_star(v) -> Morphism:
        s = F_i_up_star(F_i_low_star(v))
        return Morphism(s, v, a1.identity(v).comps)

    def unit_i_shriek(v) -> Morphism:
        t = F_i_up_shriek(F_i_low_star(v))
        return Morphism(v, t, a1.identity(v).comps)

    def counit_i_shriek(m: MVObject) -> Morphism:
        s = i_low_star(i_up_shriek(m))
        _, k = a1.kernel(m.beta)
        return cat.pair(s, m, a2.zero_morphism(s.x, m.x), k)

    def unit_j_shriek(x) -> Morphism:
        return a2.identity(x)

    def counit_j_shriek(m: MVObject) -> Morphism:
        return cat.pair(j_low_shriek(m.x), m, a2.identity(m.x), m.alpha)

    def unit_j_star(m: MVObject) -> Morphism:
        return cat.pair(m, j_low_star(m.x), a2.identity(m.x), m.beta)

    def counit_j_star(x) -> Morphism:
        return a2.identity(x)

    rec = Recollement(
        cat.name, a1, cat, a2,
        F_i_up_star, F_i_low_star, F_i_up_shriek, F_j_low_shriek, F_j_up_star, F_j_low_star,
        adjunction(F_i_up_star, F_i_low_star, unit_i_star, counit_i_star, "i^*-i_*"),
        adjunction(F_i_low_star, F_i_up_shriek, unit_i_shriek, counit_i_shriek, "i_*-i^!"),
        adjunction(F_j_low_shriek, F_j_up_star, unit_j_shriek, counit_j_shriek, "j_!-j^*"),
        adjunction(F_j_up_star, F_j_low_star, unit_j_star, counit_j_star, "j^*-j_*"),
        F_r,
        bound_a=tuple(bound_a2 or (2,) * len(a2.slots)) + tuple(bound_a1 or (2,) * len(a1.slots)),
        bound_a2=tuple(bound_a2 or (3,) * len(a2.slots)),
        bound_a1=tuple(bound_a1 or (3,) * len(a1.slots)),
    )
    return rec


def r_star(rec: Recollement, v: Any) -> Morphism:
    """``r^* V`` together with its epimorphism onto ``i_* V``.

    Only for recollements produced by :func:`mv_construct`.  The kernel of
    the returned epimorphism is ``j_! G^* V``.
    """
    cat = rec.a
    if not isinstance(cat, MVCategory):
        raise TypeError("r^* is defined for glued categories")
    obj = cat.r_star_obj(v)
    target = rec.i_low_star(v)
    bp = cat.a1.direct_sum([cat.f(obj.x), v])
    return cat.pair(obj, target, cat.a2.zero_morphism(obj.x, target.x), bp.projections[1])


def from_retraction(rec: Recollement, g_adjoint=None, f_adjoint=None,
                    name: str | None = None, retraction: Functor | None = None,
                    audit: bool = True) -> tuple[Recollement, Functor]:
    """``A(r N: r j_! -> r j_*)`` and the comparison ``E(A) = (j^*A, rA, r eps_A, r eta_A)``.

    ``g_adjoint`` and ``f_adjoint`` are callables producing the adjunctions
    ``G^* -| G`` and ``F -| F^!`` from the functors ``G = r j_*`` and
    ``F = r j_!``.  ``retraction`` defaults to the bundle's ``r``; ``i^*`` or
    ``i^!`` may be passed when they are exact.
    """
    r = retraction if retraction is not None else rec.r
    if r is None:
        raise ValueError("recollement has no retraction")
    f = compose(r, rec.j_low_shriek, f"{r.name}j_!")
    g = compose(r, rec.j_low_star, f"{r.name}j_*")
    f.exactness, g.exactness = RIGHT, LEFT
    xi = NatTrans("rN", f, g, lambda x: r.map(rec.norm(x)))
    mv = mv_construct(f, g, xi, g_adjoint(g) if g_adjoint else None,
                      f_adjoint(f) if f_adjoint else None, name or f"A(rN) of {rec.name}",
                      rec.bound_a2, rec.bound_a1, audit=audit)
    cat = mv.a

    def e_obj(a):
        return MVObject(rec.j_up_star(a), r(a), r.map(rec.epsilon(a)), r.map(rec.eta(a)))

    def e_map(h: Morphism):
        return cat.pair(e_obj(h.source), e_obj(h.target), rec.j_up_star.map(h), r.map(h))

    return mv, Functor("E", rec.a, cat, e_obj, e_map, EXACT)


__all__ = ["MVObject", "MVCategory", "mv_construct", "r_star", "from_retraction",
           "zero_functor", "zero_transformation", "zero_adjunction", "zero_right_adjunction"]
