"""The concrete recollements over GF(2) and the objects built from them.

``A'`` is finite vector spaces (quiver ``vect``), ``A''`` is vector spaces
with an involution ``T`` (quiver ``sigma2`` with loop ``u = 1 + T``, so
``uu = 0`` is ``T^2 = 1``), and ``A`` is diagrams ``V1 --H--> V2 --P--> V1``
with ``PHP = HPH = 0`` (``quad_free``), optionally also ``PH = 0``
(``quad_vect``).

The functor formulas below are written in terms of ``T``; the conversion to
the loop ``u`` happens in :func:`involution` and :func:`with_involution`.
In characteristic two ``1 - T = 1 + T = u``, so the invariants ``V^T`` and
coinvariants ``V_T`` are the kernel and cokernel of ``u``.
"""

from __future__ import annotations

from recolle.functorics import EXACT, LEFT, RIGHT, Adjunction, Functor, adjunction
from recolle.gf2 import BitMatrix, image_and_cokernel, kernel_basis, solve, solve_right
from recolle.recollement.bundle import Recollement
from recolle.recollement.mv import (from_retraction, mv_construct, zero_adjunction, zero_functor,
                                   zero_right_adjunction, zero_transformation)
from recolle.repcat.category import Morphism
from recolle.repcat.reps import Rep, RepCategory, make_rep, rep_category

VECT = rep_category("vect")
SIGMA2 = rep_category("sigma2")
QUAD_FREE = rep_category("quad_free")
QUAD_VECT = rep_category("quad_vect")

EXAMPLE_NAMES = {"quad-free": "quad_free", "quad-vect": "quad_vect"}


# ---- coordinates

def involution(x: Rep) -> BitMatrix:
    """``T = 1 + u`` of an object of ``A''``."""
    return x.maps[0] + BitMatrix.identity(x.dims[0])


def with_involution(v: int, t: BitMatrix) -> Rep:
    return make_rep(SIGMA2.quiver, (v,), {"u": t + BitMatrix.identity(v)})


def one_plus(t: BitMatrix) -> BitMatrix:
    return BitMatrix.identity(t.nrows) + t


def space(d: int) -> Rep:
    return make_rep(VECT.quiver, (d,))


def coker(m: BitMatrix) -> tuple[int, BitMatrix]:
    """Cokernel dimension and canonical projection of a matrix."""
    _, d, p = image_and_cokernel(m)
    return d, p


def ker(m: BitMatrix) -> tuple[int, BitMatrix]:
    """Kernel dimension and canonical inclusion of a matrix."""
    k = kernel_basis(m).inclusion()
    return k.ncols, k


def on_coker(f: BitMatrix, p_src: BitMatrix, p_tgt: BitMatrix) -> BitMatrix:
    """Map induced by ``f`` on cokernels presented by the projections."""
    return solve_right(p_src, p_tgt @ f)


def on_ker(f: BitMatrix, k_src: BitMatrix, k_tgt: BitMatrix) -> BitMatrix:
    """Restriction of ``f`` to kernels presented by the inclusions."""
    return solve(k_tgt, f @ k_src)


# ---- the six functors

class DiagramFunctors:
    """The six functors between ``vect``, a diagram category, and ``sigma2``."""

    def __init__(self, a: RepCategory):
        self.a = a

    def diagram(self, v1: int, h: BitMatrix, v2: int, p: BitMatrix) -> Rep:
        return make_rep(self.a.quiver, (v1, v2), {"H": h, "P": p})

    # i^*(V1,H,V2,P) = Coker P
    def i_up_star(self, a: Rep) -> Rep:
        return space(coker(a.arrow("P"))[0])

    def i_up_star_map(self, f: Morphism) -> Morphism:
        _, ps = coker(f.source.arrow("P"))
        _, pt = coker(f.target.arrow("P"))
        return Morphism(self.i_up_star(f.source), self.i_up_star(f.target),
                        (on_coker(f.comps[0], ps, pt),))

    # i_*(V) = (V, 0, 0, 0)
    def i_low_star(self, v: Rep) -> Rep:
        return self.diagram(v.dims[0], BitMatrix.zeros(0, v.dims[0]), 0, BitMatrix.zeros(v.dims[0], 0))

    def i_low_star_map(self, f: Morphism) -> Morphism:
        return Morphism(self.i_low_star(f.source), self.i_low_star(f.target),
                        (f.comps[0], BitMatrix.zeros(0, 0)))

    # i^!(V1,H,V2,P) = Ker H
    def i_up_shriek(self, a: Rep) -> Rep:
        return space(ker(a.arrow("H"))[0])

    def i_up_shriek_map(self, f: Morphism) -> Morphism:
        _, ks = ker(f.source.arrow("H"))
        _, kt = ker(f.target.arrow("H"))
        return Morphism(self.i_up_shriek(f.source), self.i_up_shriek(f.target),
                        (on_ker(f.comps[0], ks, kt),))

    # j_!(V,T) = (V_T, 1+T, V, p)
    def j_low_shriek(self, x: Rep) -> Rep:
        t = involution(x)
        n = one_plus(t)
        d, p = coker(n)
        h = solve_right(p, n)          # 1+T induced on V_T
        return self.diagram(d, h, x.dims[0], p)

    def j_low_shriek_map(self, f: Morphism) -> Morphism:
        _, ps = coker(one_plus(involution(f.source)))
        _, pt = coker(one_plus(involution(f.target)))
        g = f.comps[0]
        return Morphism(self.j_low_shriek(f.source), self.j_low_shriek(f.target),
                        (on_coker(g, ps, pt), g))

    # j^*(V1,H,V2,P) = (V2, HP - 1)
    def j_up_star(self, a: Rep) -> Rep:
        hp = a.arrow("H") @ a.arrow("P")
        return with_involution(a.dims[1], hp + BitMatrix.identity(a.dims[1]))

    def j_up_star_map(self, f: Morphism) -> Morphism:
        return Morphism(self.j_up_star(f.source), self.j_up_star(f.target), (f.comps[1],))

    # j_*(V,T) = (V^T, h, V, 1+T)
    def j_low_star(self, x: Rep) -> Rep:
        n = one_plus(involution(x))
        d, h = ker(n)
        p = solve(h, n)                # 1+T corestricted to V^T
        return self.diagram(d, h, x.dims[0], p)

    def j_low_star_map(self, f: Morphism) -> Morphism:
        _, ks = ker(one_plus(involution(f.source)))
        _, kt = ker(one_plus(involution(f.target)))
        g = f.comps[0]
        return Morphism(self.j_low_star(f.source), self.j_low_star(f.target),
                        (on_ker(g, ks, kt), g))

    # r(V1,H,V2,P) = V1
    def r(self, a: Rep) -> Rep:
        return space(a.dims[0])

    def r_map(self, f: Morphism) -> Morphism:
        return Morphism(self.r(f.source), self.r(f.target), (f.comps[0],))


def build_diagram_recollement(name: str, a: RepCategory) -> Recollement:
    d = DiagramFunctors(a)
    i_up_star = Functor("i^*", a, VECT, d.i_up_star, d.i_up_star_map, RIGHT)
    i_low_star = Functor("i_*", VECT, a, d.i_low_star, d.i_low_star_map, EXACT)
    i_up_shriek = Functor("i^!", a, VECT, d.i_up_shriek, d.i_up_shriek_map, LEFT)
    j_low_shriek = Functor("j_!", SIGMA2, a, d.j_low_shriek, d.j_low_shriek_map, RIGHT)
    j_up_star = Functor("j^*", a, SIGMA2, d.j_up_star, d.j_up_star_map, EXACT)
    j_low_star = Functor("j_*", SIGMA2, a, d.j_low_star, d.j_low_star_map, LEFT)

    def unit_i_star(x: Rep) -> Morphism:
        # A -> i_* i^* A: the quotient by Im P at V1, zero at V2
        _, p = coker(x.arrow("P"))
        return Morphism(x, i_low_star(i_up_star(x)), (p, BitMatrix.zeros(0, x.dims[1])))

    def counit_i_shriek(x: Rep) -> Morphism:
        # i_* i^! A -> A: inclusion of Ker H at V1
        _, k = ker(x.arrow("H"))
        return Morphism(i_low_star(i_up_shriek(x)), x, (k, BitMatrix.zeros(x.dims[1], 0)))

    def counit_j_shriek(x: Rep) -> Morphism:
        # j_! j^* A -> A: P induced on V2 / Im HP, identity at V2
        hp = x.arrow("H") @ x.arrow("P")
        _, q = coker(hp)
        src = j_low_shriek(j_up_star(x))
        return Morphism(src, x, (solve_right(q, x.arrow("P")), BitMatrix.identity(x.dims[1])))

    def unit_j_star(x: Rep) -> Morphism:
        # A -> j_* j^* A: H corestricted to Ker HP, identity at V2
        hp = x.arrow("H") @ x.arrow("P")
        _, k = ker(hp)
        tgt = j_low_star(j_up_star(x))
        return Morphism(x, tgt, (solve(k, x.arrow("H")), BitMatrix.identity(x.dims[1])))

    def ident(fun_obj):
        return lambda x: Morphism(x, fun_obj(x), tuple(BitMatrix.identity(n) for n in x.dims))

    def ident_back(fun_obj):
        return lambda x: Morphism(fun_obj(x), x, tuple(BitMatrix.identity(n) for n in x.dims))

    adj_i_star = adjunction(i_up_star, i_low_star, unit_i_star,
                            ident_back(lambda v: i_up_star(i_low_star(v))), "i^*-i_*")
    adj_i_shriek = adjunction(i_low_star, i_up_shriek, ident(lambda v: i_up_shriek(i_low_star(v))),
                              counit_i_shriek, "i_*-i^!")
    adj_j_shriek = adjunction(j_low_shriek, j_up_star, ident(lambda x: j_up_star(j_low_shriek(x))),
                              counit_j_shriek, "j_!-j^*")
    adj_j_star = adjunction(j_up_star, j_low_star, unit_j_star,
                            ident_back(lambda x: j_up_star(j_low_star(x))), "j^*-j_*")
    r = Functor("r", a, VECT, d.r, d.r_map, EXACT)
    return Recollement(name, VECT, a, SIGMA2, i_up_star, i_low_star, i_up_shriek,
                       j_low_shriek, j_up_star, j_low_star,
                       adj_i_star, adj_i_shriek, adj_j_shriek, adj_j_star, r)


_BUILT: dict[str, Recollement] = {}


def build_rec_2_1() -> Recollement:
    """Diagrams with ``PHP = HPH = 0``."""
    if "rec_2_1" not in _BUILT:
        _BUILT["rec_2_1"] = build_diagram_recollement("rec_2_1", QUAD_FREE)
    return _BUILT["rec_2_1"]


def build_rec_2_2() -> Recollement:
    """The same formulas on the full subcategory where also ``PH = 0``."""
    if "rec_2_2" not in _BUILT:
        _BUILT["rec_2_2"] = build_diagram_recollement("rec_2_2", QUAD_VECT)
    return _BUILT["rec_2_2"]


def example(name: str) -> Recollement:
    """Registry lookup by CLI name (``quad-free`` or ``quad-vect``)."""
    if name in ("quad-free", "quad_free", "rec_2_1"):
        return build_rec_2_1()
    if name in ("quad-vect", "quad_vect", "rec_2_2"):
        return build_rec_2_2()
    raise KeyError(f"unknown example {name!r}")


def trivial_involution() -> Rep:
    """``(F_2, T = id)``."""
    return with_involution(1, BitMatrix.identity(1))


def counterexample_object() -> Rep:
    """``(F_2^2, H = [1 0], F_2, P = (0,1)^T)``: satisfies ``PHP = HPH = 0`` but not ``PH = 0``."""
    return make_rep(QUAD_FREE.quiver, (2, 1), {
        "H": BitMatrix.from_rows([[1, 0]]),
        "P": BitMatrix.from_rows([[0], [1]]),
    })



# ---- the glued category built from the retraction

def trivial_action(v: Rep) -> Rep:
    """``(V, T = id)``: the functor ``A' -> A''`` adjoint to both invariants and coinvariants."""
    return with_involution(v.dims[0], BitMatrix.identity(v.dims[0]))


def trivial_action_functor(name: str) -> Functor:
    return Functor(name, VECT, SIGMA2, trivial_action,
                   lambda f: Morphism(trivial_action(f.source), trivial_action(f.target), f.comps), EXACT)


def invariants_adjunction(g: Functor) -> Adjunction:
    """``G^* -| G`` for ``G`` naturally equal to invariants ``X -> V^T``."""
    gs = trivial_action_functor("G^*")

    def unit(v: Rep) -> Morphism:
        return Morphism(v, g(gs(v)), (BitMatrix.identity(v.dims[0]),))

    def counit(x: Rep) -> Morphism:
        _, k = ker(one_plus(involution(x)))
        return Morphism(gs(g(x)), x, (k,))

    return adjunction(gs, g, unit, counit, "G^*-G")


def coinvariants_adjunction(f: Functor) -> Adjunction:
    """``F -| F^!`` for ``F`` naturally equal to coinvariants ``X -> V_T``."""
    fs = trivial_action_functor("F^!")

    def unit(x: Rep) -> Morphism:
        _, p = coker(one_plus(involution(x)))
        return Morphism(x, fs(f(x)), (p,))

    def counit(v: Rep) -> Morphism:
        return Morphism(f(fs(v)), v, (BitMatrix.identity(v.dims[0]),))

    return adjunction(f, fs, unit, counit, "F-F^!")


def build_mv_of(rec: Recollement):
    """``A(rN)`` for one of the diagram recollements and the comparison ``E`` into it."""
    key = f"mv:{rec.name}"
    if key not in _BUILT:
        _BUILT[key] = from_retraction(rec, invariants_adjunction, coinvariants_adjunction)
    return _BUILT[key]


# ---- semidirect and product recollements over (vect, sigma2)

def coinvariants_functor() -> Functor:
    """``X -> X_T``, right exact."""
    def obj(x: Rep) -> Rep:
        return space(coker(one_plus(involution(x)))[0])

    def mor(f: Morphism) -> Morphism:
        _, ps = coker(one_plus(involution(f.source)))
        _, pt = coker(one_plus(involution(f.target)))
        return Morphism(obj(f.source), obj(f.target), (on_coker(f.comps[0], ps, pt),))

    return Functor("coinv", SIGMA2, VECT, obj, mor, RIGHT)


def invariants_functor() -> Functor:
    """``X -> X^T``, left exact."""
    def obj(x: Rep) -> Rep:
        return space(ker(one_plus(involution(x)))[0])

    def mor(f: Morphism) -> Morphism:
        _, ks = ker(one_plus(involution(f.source)))
        _, kt = ker(one_plus(involution(f.target)))
        return Morphism(obj(f.source), obj(f.target), (on_ker(f.comps[0], ks, kt),))

    return Functor("inv", SIGMA2, VECT, obj, mor, LEFT)


def build_semidirect() -> Recollement:
    """``A(F -> 0)`` with ``F`` the coinvariants."""
    if "semidirect" not in _BUILT:
        f = coinvariants_functor()
        g = zero_functor(SIGMA2, VECT)
        _BUILT["semidirect"] = mv_construct(f, g, zero_transformation(f, g), zero_adjunction(g),
                                            coinvariants_adjunction(f), "semidirect by coinvariants")
    return _BUILT["semidirect"]


def build_product() -> Recollement:
    """``A(0 -> 0)``: pairs of an object of ``vect`` and one of ``sigma2``."""
    if "product" not in _BUILT:
        f = zero_functor(SIGMA2, VECT)
        g = zero_functor(SIGMA2, VECT)
        _BUILT["product"] = mv_construct(f, g, zero_transformation(f, g), zero_adjunction(g),
                                         zero_right_adjunction(f), "product")
    return _BUILT["product"]


# ---- the inclusion of the PH = 0 subcategory and the counterexample

def _as_quad_free(x: Rep) -> Rep:
    return make_rep(QUAD_FREE.quiver, x.dims, {"H": x.arrow("H"), "P": x.arrow("P")})


def inclusion_functor() -> Functor:
    """``quad_vect -> quad_free``, the identity on underlying diagrams."""
    return Functor("incl", QUAD_VECT, QUAD_FREE, _as_quad_free,
                   lambda f: Morphism(_as_quad_free(f.source), _as_quad_free(f.target), f.comps), EXACT)


def counterexample_witness() -> tuple[Rep, dict]:
    """The object outside the image of the inclusion, with a certificate.

    ``PH`` transforms as ``g1 (PH) g1^-1`` under an isomorphism ``(g1, g2)``,
    so ``PH != 0`` is preserved by isomorphisms; the exhaustive scan over
    ``quad_vect`` objects of the same dimensions corroborates it.
    """
    w = counterexample_object()
    ph = w.arrow("P") @ w.arrow("H")
    candidates = QUAD_VECT.enumerate_dims(w.dims)
    isomorphs = [c for c in candidates if QUAD_FREE.is_isomorphic(_as_quad_free(c), w)]
    cert = {
        "object": QUAD_FREE.to_json(w),
        "relations_hold": QUAD_FREE.check_relations(w),
        "PH": ph.to_rows(),
        "PH_nonzero": not ph.is_zero(),
        "valid_in_quad_vect": QUAD_VECT.check_relations(Rep(QUAD_VECT.quiver, w.dims, w.maps)),
        "candidates_scanned": len(candidates),
        "isomorph_found": bool(isomorphs),
    }
    return w, cert


def classify_iso_classes(cat: RepCategory, bound) -> dict[tuple[int, ...], int]:
    """Number of isomorphism classes per dimension vector up to ``bound``."""
    return {dims: len(cat.iso_classes(cat.enumerate_dims(dims))) for dims in cat.dim_vectors(bound)}
