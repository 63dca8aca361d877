"""``Ker i^!`` as triples ``(X, V, alpha: V -> i^*j_*X)`` and ``Ker i^*`` as
triples ``(X, V, alpha: V -> i^!j_!X)``, with monic ``alpha``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from recolle.functorics import Functor, compose, derived_left
from recolle.gf2 import NoSolution
from recolle.recollement.bundle import Recollement
from recolle.repcat.category import Morphism, Undecided, iso_budget
from recolle.report import Check, Tally, witness_of


@dataclass(frozen=True)
class MTObject:
    x: Any
    v: Any
    alpha: Morphism


def t_functor(rec: Recollement) -> Functor:
    """``T = i^*j_*``."""
    return compose(rec.i_up_star, rec.j_low_star, "i^*j_*")


def t_dual_functor(rec: Recollement) -> Functor:
    """``T = i^!j_!``."""
    return compose(rec.i_up_shriek, rec.j_low_shriek, "i^!j_!")


def to_mt(rec: Recollement, obj: Any) -> MTObject:
    """``A -> (j^*A, i^*A, i^*eta_A)`` on ``Ker i^!``."""
    if not rec.a1.is_zero_object(rec.i_up_shriek(obj)):
        raise ValueError("object is not in Ker i^!")
    alpha = rec.i_up_star.map(rec.eta(obj))
    if not alpha.is_mono():
        raise ArithmeticError("i^*eta_A is not a monomorphism")
    return MTObject(rec.j_up_star(obj), rec.i_up_star(obj), alpha)


def from_mt(rec: Recollement, o: MTObject) -> Any:
    """Kernel of ``j_*X -> i_*i^*j_*X -> Coker(i_*alpha)``."""
    if not o.alpha.is_mono():
        raise ValueError("alpha must be a monomorphism")
    a = rec.a
    jx = rec.j_low_star(o.x)
    _, q = a.cokernel(rec.i_low_star.map(o.alpha))
    obj, _ = a.kernel(q @ rec.to_i_star(jx))
    return obj


def to_mt_dual(rec: Recollement, obj: Any) -> MTObject:
    """``A -> (j^*A, i^!Ker eps_A, i^!(Ker eps_A -> j_!j^*A))`` on ``Ker i^*``."""
    if not rec.a1.is_zero_object(rec.i_up_star(obj)):
        raise ValueError("object is not in Ker i^*")
    _, k = rec.a.kernel(rec.epsilon(obj))
    alpha = rec.i_up_shriek.map(k)
    return MTObject(rec.j_up_star(obj), alpha.source, alpha)


def from_mt_dual(rec: Recollement, o: MTObject) -> Any:
    """Cokernel of ``i_*V -> i_*i^!j_!X -> j_!X``."""
    if not o.alpha.is_mono():
        raise ValueError("alpha must be a monomorphism")
    m = rec.from_i_shriek(rec.j_low_shriek(o.x)) @ rec.i_low_star.map(o.alpha)
    obj, _ = rec.a.cokernel(m)
    return obj


def mt_isomorphic(rec: Recollement, t: Functor, o1: MTObject, o2: MTObject,
                  budget: int | None = None) -> bool:
    """Some isomorphism ``f: X1 -> X2`` with ``T(f) alpha1`` factoring as ``alpha2 phi``.

    ``phi`` is then unique and invertible, since both ``alpha`` are monic and
    the ``V`` have equal dimensions.
    """
    a1, a2 = rec.a1, rec.a2
    if a1.dims(o1.v) != a1.dims(o2.v) or a2.dims(o1.x) != a2.dims(o2.x):
        return False
    limit = iso_budget() if budget is None else budget
    if a2.hom(o1.x, o2.x).dim > limit:
        raise Undecided("isomorphism search in A'' exceeds budget")
    for f in a2.hom_elements(o1.x, o2.x):
        if not f.is_iso():
            continue
        try:
            phi = a1.factor_through_mono(o2.alpha, t.map(f) @ o1.alpha)
        except NoSolution:
            continue
        if a1.is_morphism(phi) and phi.is_iso():
            return True
    return False


def mt_objects(rec: Recollement, t: Functor, bound_a2=None, bound_a1=None) -> list[MTObject]:
    """Every triple over representatives of ``X`` and ``V`` with monic ``alpha``."""
    out = []
    for x in rec.objects_a2(bound_a2):
        tx = t(x)
        for v in rec.objects_a1(bound_a1):
            if rec.a1.total_dim(v) > rec.a1.total_dim(tx):
                continue
            for alpha in rec.a1.hom_elements(v, tx):
                if alpha.is_mono():
                    out.append(MTObject(x, v, alpha))
    return out


def mt_round_trip_suite(rec: Recollement, bound_a=None, bound_a2=None, bound_a1=None) -> list[Check]:
    """Both round trips of both equivalences, plus landing in the right kernel."""
    a, a1, a2 = rec.a, rec.a1, rec.a2
    out: list[Check] = []
    for label, t, to_, from_, kernel_of in (
            ("Ker i^!", t_functor(rec), to_mt, from_mt, rec.i_up_shriek),
            ("Ker i^*", t_dual_functor(rec), to_mt_dual, from_mt_dual, rec.i_up_star)):
        there = Tally(f"mt {label} object -> triple -> object")
        back = Tally(f"mt {label} triple -> object -> triple")
        lands = Tally(f"mt {label} reconstruction lies in the kernel")
        for obj in rec.objects_a(bound_a):
            if not a1.is_zero_object(kernel_of(obj)):
                continue
            w = lambda: witness_of(a, obj)
            try:
                rebuilt = from_(rec, to_(rec, obj))
            except ArithmeticError:
                there.fail(w)
                continue
            try:
                there.record(a.is_isomorphic(rebuilt, obj), w)
            except Undecided:
                there.unsure(w)
        for o in mt_objects(rec, t, bound_a2, bound_a1):
            w = lambda: witness_of(a2, o.x) + witness_of(a1, o.v, o.alpha)
            obj = from_(rec, o)
            lands.record(a1.is_zero_object(kernel_of(obj)), w)
            try:
                back.record(mt_isomorphic(rec, t, to_(rec, obj), o), w)
            except Undecided:
                back.unsure(w)
            except ArithmeticError:
                back.fail(w)
        out += [there.result(), back.result(), lands.result()]

    # the V-component of the Ker i^* triple is L1 i^*
    l1 = Tally("mt Ker i^* component is L1 i^*")
    for obj in rec.objects_a(bound_a):
        if a1.is_zero_object(rec.i_up_star(obj)):
            l1.record(a1.dims(to_mt_dual(rec, obj).v) == a1.dims(derived_left(rec.i_up_star, obj, 1)),
                      lambda: witness_of(a, obj))
    out.append(l1.result())
    return out
