"""Pre-hereditary recollements, comparison functors, r^*, and the split cases."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from recolle.functorics import Functor, derived_left, exactness_profile
from recolle.gf2 import LinearSpan
from recolle.recollement.bundle import Recollement
from recolle.recollement.mv import MVCategory, from_retraction, r_star, zero_adjunction, zero_right_adjunction
from recolle.repcat.category import Undecided
from recolle.report import Check, Tally, single, witness_of


# ---- pre-hereditary

@dataclass
class PrehereditaryVerdict:
    verdict: bool
    l2_dims: dict
    checks: list[Check] = field(default_factory=list)


def prehereditary_check(rec: Recollement, bound_a1=None, bound_a2=None) -> PrehereditaryVerdict:
    """``(L2 i^*)(i_*V) = 0`` for the indecomposable projectives ``V`` of ``A'``.

    When the verdict is true, ``L2 i^* i_* = 0`` is also checked on every
    representative of ``A'`` and ``L1 i^* j_* ≅ i^!j_!`` dimensionwise.
    """
    a1 = rec.a1
    dims = {}
    for p in a1.indecomposable_projectives():
        l2 = derived_left(rec.i_up_star, rec.i_low_star(p), 2)
        dims[str(a1.dims(p))] = list(a1.dims(l2))
    verdict = all(not any(d) for d in dims.values())
    checks = [single(f"prehereditary {rec.name}", True,
                     detail=f"verdict={str(verdict).lower()}", dims=dims)]
    if verdict:
        on_all = Tally(f"prehereditary {rec.name} L2i^* i_* = 0")
        for v in rec.objects_a1(bound_a1):
            on_all.record(a1.is_zero_object(derived_left(rec.i_up_star, rec.i_low_star(v), 2)),
                          lambda: witness_of(a1, v))
        dimwise = Tally(f"prehereditary {rec.name} L1i^* j_* matches i^!j_! dimensionwise",
                      detail="dimensionwise")
        for x in rec.objects_a2(bound_a2):
            dimwise.record(a1.dims(derived_left(rec.i_up_star, rec.j_low_star(x), 1))
                         == a1.dims(rec.i_up_shriek(rec.j_low_shriek(x))),
                         lambda: witness_of(rec.a2, x))
        checks += [on_all.result(), dimwise.result()]
    return PrehereditaryVerdict(verdict, dims, checks)


# ---- comparison functors

@dataclass
class ComparisonResult:
    commutes_with_structure: bool
    exact: bool
    left_admissible: bool
    equivalence_at_budget: bool | None
    """``None`` when essential surjectivity was undecided."""
    ker_i_star_equivalence: bool | None
    ker_i_shriek_equivalence: bool | None
    checks: list[Check]
    witness: Any = None

    def to_json(self) -> dict:
        return {"commutes_with_structure": self.commutes_with_structure, "exact": self.exact,
                "left_admissible": self.left_admissible,
                "equivalence_at_budget": self.equivalence_at_budget,
                "ker_i_star_equivalence": self.ker_i_star_equivalence,
                "ker_i_shriek_equivalence": self.ker_i_shriek_equivalence,
                "witness": self.witness}


def _fully_faithful(e: Functor, objs: list, tally: Tally) -> None:
    src, tgt = e.source, e.target
    for x in objs:
        for y in objs:
            hs = src.hom(x, y)
            images = LinearSpan([e.map(f).flatten() for f in hs.basis])
            tally.record(images.rank == hs.dim == tgt.hom_dim(e(x), e(y)),
                         lambda: witness_of(src, x, y))


def _essentially_surjective(e: Functor, objs: list, targets: list, tally: Tally) -> Any:
    """Every target is isomorphic to some ``E(x)``; returns the first missing target."""
    tgt = e.target
    images = [e(x) for x in objs]
    missing = None
    for t in targets:
        candidates = [m for m in images if tgt.dims(m) == tgt.dims(t)]
        try:
            found = any(tgt.is_isomorphic(m, t) for m in candidates)
        except Undecided:
            tally.unsure(lambda: witness_of(tgt, t))
            continue
        if not found and missing is None:
            missing = t
        tally.record(found, lambda: witness_of(tgt, t))
    return missing


def _verdict(t: Tally) -> bool | None:
    if t.failures:
        return False
    return None if t.undecided else True


def comparison_check(e: Functor, rec1: Recollement, rec2: Recollement,
                     bound_a=None, target_bound=None, bound_a2=None, bound_a1=None,
                     prefix: str = "comparison") -> ComparisonResult:
    """Commutation with the six functors (objectwise up to isomorphism),
    exactness, left admissibility, and equivalence at the budget, also
    restricted to ``Ker i^*`` and ``Ker i^!``.
    """
    a, b = rec1.a, rec2.a
    objs = rec1.objects_a(bound_a)
    targets = rec2.objects_a(target_bound or bound_a)
    xs = rec1.objects_a2(bound_a2)
    vs = rec1.objects_a1(bound_a1)
    checks: list[Check] = []

    commute = Tally(f"{prefix} commutes with the structural functors")
    for obj in objs:
        eo = e(obj)
        w = lambda: witness_of(a, obj)
        try:
            commute.record(rec1.a2.is_isomorphic(rec2.j_up_star(eo), rec1.j_up_star(obj))
                           and rec1.a1.is_isomorphic(rec2.i_up_star(eo), rec1.i_up_star(obj))
                           and rec1.a1.is_isomorphic(rec2.i_up_shriek(eo), rec1.i_up_shriek(obj)), w)
        except Undecided:
            commute.unsure(w)
    for x in xs:
        w = lambda: witness_of(rec1.a2, x)
        try:
            commute.record(b.is_isomorphic(e(rec1.j_low_shriek(x)), rec2.j_low_shriek(x))
                           and b.is_isomorphic(e(rec1.j_low_star(x)), rec2.j_low_star(x)), w)
        except Undecided:
            commute.unsure(w)
    for v in vs:
        w = lambda: witness_of(rec1.a1, v)
        try:
            commute.record(b.is_isomorphic(e(rec1.i_low_star(v)), rec2.i_low_star(v)), w)
        except Undecided:
            commute.unsure(w)
    checks.append(commute.result())

    prof = exactness_profile(e, objs, samples=50)
    exact = prof.right_exact and prof.left_exact
    checks.append(single(f"{prefix} is exact", exact,
                         witness=None if exact else (prof.right_witness or prof.left_witness)))

    adm = Tally(f"{prefix} is left admissible")
    for obj in objs:
        if rec1.a1.is_zero_object(rec1.i_up_shriek(obj)):
            adm.record(rec1.a1.dims(derived_left(rec1.i_up_star, obj, 1))
                       == rec2.a1.dims(derived_left(rec2.i_up_star, e(obj), 1)),
                       lambda: witness_of(a, obj))
    checks.append(adm.result())

    verdicts = {}
    witness = None
    for label, keep in (("", lambda o, r: True),
                        (" on Ker i^*", lambda o, r: r.a1.is_zero_object(r.i_up_star(o))),
                        (" on Ker i^!", lambda o, r: r.a1.is_zero_object(r.i_up_shriek(o)))):
        src = [o for o in objs if keep(o, rec1)]
        tgt = [t for t in targets if keep(t, rec2)]
        ff = Tally(f"{prefix}{label} fully faithful")
        _fully_faithful(e, src, ff)
        es = Tally(f"{prefix}{label} essentially surjective")
        missing = _essentially_surjective(e, src, tgt, es)
        if not label and missing is not None:
            witness = witness_of(b, missing)
            es.witness = witness
        checks += [ff.result(), es.result()]
        ok = _verdict(ff), _verdict(es)
        verdicts[label] = False if False in ok else (None if None in ok else True)

    return ComparisonResult(not commute.failures and not commute.undecided, exact,
                            not adm.failures, verdicts[""], verdicts[" on Ker i^*"],
                            verdicts[" on Ker i^!"], checks, witness)


# ---- r^* for glued categories

def r_star_checks(rec: Recollement, bound_a1=(2,), bound_a=None) -> list[Check]:
    """``r^* -| r`` on hom-set cardinalities, and ``0 -> j_!G^*V -> r^*V -> i_*V -> 0``."""
    cat = rec.a
    if not isinstance(cat, MVCategory) or cat.g_adjoint is None:
        return [single("r^* defined", False, detail="needs a glued category with G^*")]
    gs = cat.g_adjoint.left
    adj = Tally("r^* hom-set bijection")
    ses = Tally("r^* short exact sequence j_!G^* -> r^* -> i_*")
    objs = rec.objects_a(bound_a)
    for v in rec.objects_a1(bound_a1):
        epi = r_star(rec, v)
        rv = epi.source
        k, _ = cat.kernel(epi)
        ses.record(epi.is_epi() and cat.is_isomorphic(k, rec.j_low_shriek(gs(v)))
                   and cat.dims(rv) == tuple(p + q for p, q in zip(cat.dims(k), cat.dims(rec.i_low_star(v)))),
                   lambda: witness_of(rec.a1, v))
        for m in objs:
            adj.record(cat.hom_dim(rv, m) == rec.a1.hom_dim(v, rec.r(m)),
                       lambda: witness_of(rec.a1, v) + witness_of(cat, m))
    return [adj.result(), ses.result()]


# ---- the split cases

def vanishes_on(rec: Recollement, fun: Callable, cat, objs) -> tuple[bool, Any]:
    for x in objs:
        if not cat.is_zero_object(fun(x)):
            return False, x
    return True, None


def semidirect_suite(rec: Recollement, bound_a=None, bound_a2=None,
                     other_adjoint: Callable | None = None) -> list[Check]:
    """Exactness of ``i^*`` against ``i^!j_! = 0`` and of ``i^!`` against
    ``i^*j_* = 0``; when a vanishing holds, the glued category built with the
    exact functor as retraction is compared with ``rec``; when the norm is
    invertible throughout, the product decomposition is tested.

    Gluing along ``i^!`` makes ``G = i^!j_*`` vanish, and along ``i^*`` makes
    ``F = i^*j_!`` vanish; the vanishing side gets the zero adjunction and
    ``other_adjoint`` (if given) builds the adjunction of the remaining side.
    """
    a1, a2 = rec.a1, rec.a2
    objs = rec.objects_a(bound_a)
    xs = rec.objects_a2(bound_a2)
    out: list[Check] = []
    i_star_exact = exactness_profile(rec.i_up_star, objs).left_exact
    i_shriek_exact = exactness_profile(rec.i_up_shriek, objs).right_exact
    shriek_zero, w1 = vanishes_on(rec, lambda x: rec.i_up_shriek(rec.j_low_shriek(x)), a1, xs)
    star_zero, w2 = vanishes_on(rec, lambda x: rec.i_up_star(rec.j_low_star(x)), a1, xs)
    out.append(single(f"split {rec.name} i^* exact iff i^!j_! = 0", i_star_exact == shriek_zero,
                      detail=f"i^* exact={str(i_star_exact).lower()} i^!j_!=0={str(shriek_zero).lower()}",
                      witness=None if w1 is None else witness_of(a2, w1)))
    out.append(single(f"split {rec.name} i^! exact iff i^*j_* = 0", i_shriek_exact == star_zero,
                      detail=f"i^! exact={str(i_shriek_exact).lower()} i^*j_*=0={str(star_zero).lower()}",
                      witness=None if w2 is None else witness_of(a2, w2)))

    if star_zero and i_shriek_exact:
        mv, e = from_retraction(rec, zero_adjunction, other_adjoint,
                                retraction=rec.i_up_shriek, audit=False)
        out.append(_glued_equivalence(rec, mv, e, bound_a, bound_a2, "i^!"))
    if shriek_zero and i_star_exact:
        mv, e = from_retraction(rec, other_adjoint, zero_right_adjunction,
                                retraction=rec.i_up_star, audit=False)
        out.append(_glued_equivalence(rec, mv, e, bound_a, bound_a2, "i^*"))
    if all(rec.norm(x).is_iso() for x in xs):
        out.append(single(f"split {rec.name} norm invertible gives a product",
                          shriek_zero and star_zero and i_star_exact and i_shriek_exact
                          and _product_equivalent(rec, bound_a, bound_a2)))
    return out


def _glued_equivalence(rec, mv, e, bound_a, bound_a2, label) -> Check:
    res = comparison_check(e, rec, mv, bound_a, mv_bound_for(rec, bound_a), bound_a2,
                           prefix=f"split {rec.name} glued along {label}")
    return single(f"split {rec.name} equivalent to the glued category along {label}",
                  bool(res.equivalence_at_budget) and res.commutes_with_structure,
                  witness=res.witness)


def mv_bound_for(rec: Recollement, bound_a) -> tuple[int, ...]:
    """The bound on ``A`` rewritten for a glued category with slots ``(A'', A')``."""
    bound = tuple(bound_a or rec.bound_a)
    if isinstance(rec.a, MVCategory):
        return bound
    return (bound[-1], bound[0])


def _product_equivalent(rec: Recollement, bound_a, bound_a2) -> bool:
    mv, e = from_retraction(rec, zero_adjunction, zero_right_adjunction,
                            retraction=rec.i_up_star, audit=False)
    res = comparison_check(e, rec, mv, bound_a, mv_bound_for(rec, bound_a), bound_a2, prefix="product")
    return bool(res.equivalence_at_budget) and res.commutes_with_structure
