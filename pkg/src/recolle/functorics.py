"""Additive functors, natural transformations, adjunctions and derived functors."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from recolle.gf2 import LinearSpan
from recolle.report import Check, Tally, witness_of
from recolle.repcat.category import Category, Morphism

RIGHT, LEFT, EXACT, NONE = "right", "left", "exact", "none"

_DUAL_EXACTNESS = {RIGHT: LEFT, LEFT: RIGHT, EXACT: EXACT, NONE: NONE}


class Functor:
    """An additive functor given by procedures on objects and morphisms.

    ``exactness`` is a declared contract (``right``, ``left``, ``exact`` or
    ``none``); :func:`exactness_profile` audits it.  Object and morphism
    images are memoized, so procedures must be pure.
    """

    def __init__(self, name: str, source: Category, target: Category,
                 on_object: Callable[[Any], Any],
                 on_morphism: Callable[[Morphism], Morphism],
                 exactness: str = NONE):
        if exactness not in _DUAL_EXACTNESS:
            raise ValueError(f"unknown exactness {exactness!r}")
        self.name = name
        self.source = source
        self.target = target
        self._on_object = on_object
        self._on_morphism = on_morphism
        self.exactness = exactness
        self._obj_cache: dict[Any, Any] = {}
        self._mor_cache: dict[Morphism, Morphism] = {}
        self._dual: Functor | None = None

    def __repr__(self) -> str:
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"

    def __call__(self, obj: Any) -> Any:
        out = self._obj_cache.get(obj)
        if out is None:
            out = self._on_object(obj)
            self._obj_cache[obj] = out
        return out

    def map(self, f: Morphism) -> Morphism:
        out = self._mor_cache.get(f)
        if out is None:
            out = self._on_morphism(f)
            self._mor_cache[f] = out
        return out

    @property
    def right_exact(self) -> bool:
        return self.exactness in (RIGHT, EXACT)

    @property
    def left_exact(self) -> bool:
        return self.exactness in (LEFT, EXACT)

    def dual(self) -> Functor:
        """The functor ``D ∘ F ∘ D`` between opposite categories."""
        if self._dual is None:
            src, tgt = self.source, self.target
            sd, td = src.dual(), tgt.dual()
            name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
            d = Functor(name, sd, td,
                        lambda y: tgt.dualize(self(sd.dualize(y))),
                        lambda g: tgt.dualize_morphism(self.map(sd.dualize_morphism(g))),
                        _DUAL_EXACTNESS[self.exactness])
            d._dual = self
            self._dual = d
        return self._dual


def identity_functor(cat: Category) -> Functor:
    return Functor("Id", cat, cat, lambda x: x, lambda f: f, EXACT)


def compose(g: Functor, f: Functor, name: str | None = None) -> Functor:
    """``g ∘ f``."""
    if f.target is not g.source:
        raise ValueError(f"cannot compose {g.name} after {f.name}")
    if f.exactness == EXACT:
        ex = g.exactness
    elif g.exactness == EXACT or g.exactness == f.exactness:
        ex = f.exactness
    else:
        ex = NONE
    return Functor(name or f"{g.name}{f.name}", f.source, g.target,
                   lambda x: g(f(x)), lambda m: g.map(f.map(m)), ex)


class NatTrans:
    """A natural transformation ``source -> target`` given componentwise."""

    def __init__(self, name: str, source: Functor, target: Functor,
                 component: Callable[[Any], Morphism]):
        if source.source is not target.source or source.target is not target.target:
            raise ValueError("functors of a natural transformation must share ends")
        self.name = name
        self.source = source
        self.target = target
        self._component = component
        self._cache: dict[Any, Morphism] = {}

    def __repr__(self) -> str:
        return f"NatTrans({self.name}: {self.source.name} -> {self.target.name})"

    def __call__(self, obj: Any) -> Morphism:
        out = self._cache.get(obj)
        if out is None:
            out = self._component(obj)
            self._cache[obj] = out
        return out

    def square_commutes(self, f: Morphism) -> bool:
        return self.target.map(f) @ self(f.source) == self(f.target) @ self.source.map(f)

    def is_well_typed(self, obj: Any) -> bool:
        c = self(obj)
        return (c.source == self.source(obj) and c.target == self.target(obj)
                and self.source.target.is_morphism(c))

    def dual(self) -> NatTrans:
        """``D(xi_{DY})``, a transformation ``target^op -> source^op``."""
        src = self.source.source.dual()
        tgt = self.source.target
        return NatTrans(self.name + "^op", self.target.dual(), self.source.dual(),
                        lambda y: tgt.dualize_morphism(self(src.dualize(y))))

    def whisker_left(self, f: Functor) -> NatTrans:
        """``xi F``: components ``xi_{F X}``."""
        return NatTrans(f"{self.name}{f.name}", compose(self.source, f), compose(self.target, f),
                        lambda x: self(f(x)))

    def whisker_right(self, g: Functor) -> NatTrans:
        """``G xi``: components ``G(xi_X)``."""
        return NatTrans(f"{g.name}{self.name}", compose(g, self.source), compose(g, self.target),
                        lambda x: g.map(self(x)))


def identity_nat(f: Functor) -> NatTrans:
    return NatTrans("id", f, f, lambda x: f.target.identity(f(x)))


@dataclass
class Adjunction:
    """``left ⊣ right`` with ``unit: Id -> right∘left`` and ``counit: left∘right -> Id``."""

    left: Functor
    right: Functor
    unit: NatTrans
    counit: NatTrans
    name: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            self.name = f"({self.left.name},{self.right.name})"

    def dual(self) -> Adjunction:
        return Adjunction(self.right.dual(), self.left.dual(),
                          self.counit.dual(), self.unit.dual(), self.name + "^op")


def adjunction(left: Functor, right: Functor,
               unit: Callable[[Any], Morphism], counit: Callable[[Any], Morphism],
               name: str = "") -> Adjunction:
    """Build an adjunction from component procedures."""
    ident_s = identity_functor(left.source)
    ident_t = identity_functor(left.target)
    u = NatTrans("unit", ident_s, compose(right, left), unit)
    c = NatTrans("counit", compose(left, right), ident_t, counit)
    return Adjunction(left, right, u, c, name)


# ---- derived functors

@dataclass
class Homology:
    """Homology ``ker(out) / im(inc)`` with the maps that present it."""

    obj: Any
    cycles: Any
    incl: Morphism   # cycles -> chain object
    quotient: Morphism   # cycles -> obj


def homology(cat: Category, inc: Morphism, out: Morphism) -> Homology:
    """Homology at the middle of ``A --inc--> B --out--> C`` (``out ∘ inc == 0``)."""
    z, k = cat.kernel(out)
    b = cat.factor_through_mono(k, inc)
    h, q = cat.cokernel(b)
    return Homology(h, z, k, q)


def _chain(functor: Functor, res: Sequence[Morphism], n: int) -> tuple[Morphism, Morphism]:
    """``(F d_{n+1}, F d_n)`` around ``F P_n``; ``F d_0`` is the map to zero."""
    t = functor.target
    inc = functor.map(res[n + 1])
    if n == 0:
        fp0 = functor(res[0].source)
        out = t.zero_morphism(fp0, t.zero_object())
    else:
        out = functor.map(res[n])
    return inc, out


def derived_left_homology(functor: Functor, m: Any, n: int,
                          resolution: Sequence[Morphism] | None = None) -> Homology:
    if n < 0:
        raise ValueError("degree must be non-negative")
    res = resolution if resolution is not None else functor.source.resolution(m, n + 1)
    inc, out = _chain(functor, res, n)
    return homology(functor.target, inc, out)


def derived_left(functor: Functor, m: Any, n: int,
                 resolution: Sequence[Morphism] | None = None) -> Any:
    """``L_n F(m)``: homology of ``F`` applied to a projective resolution of ``m``.

    ``resolution`` is ``[eps, d1, ..., d_k]`` with ``k > n``; by default the
    category's minimal resolution is used.
    """
    return derived_left_homology(functor, m, n, resolution).obj


def derived_right(functor: Functor, m: Any, n: int) -> Any:
    """``R^n F(m)``, computed as ``D L_n(D F D)(D m)``."""
    dual = functor.dual()
    h = derived_left(dual, functor.source.dualize(m), n)
    return functor.target.dual().dualize(h)


def lift(cat: Category, e: Morphism, g: Morphism) -> Morphism:
    """Some ``h`` with ``e ∘ h == g``, searched in ``Hom(g.source, e.source)``.

    Raises NoSolution when none exists.
    """
    hs = cat.hom(g.source, e.source)
    span = LinearSpan([(e @ b).flatten() for b in hs.basis])
    return hs.element(span.coordinates(g.flatten()))


def chain_lift(cat: Category, f: Morphism, res_a: Sequence[Morphism],
               res_b: Sequence[Morphism]) -> list[Morphism]:
    """Chain map ``f_k: P_k -> P'_k`` over ``f: a -> b`` between two resolutions."""
    lifts = [lift(cat, res_b[0], f @ res_a[0])]
    for k in range(1, min(len(res_a), len(res_b))):
        lifts.append(lift(cat, res_b[k], lifts[k - 1] @ res_a[k]))
    return lifts


def derived_left_map(functor: Functor, f: Morphism, n: int) -> Morphism:
    """``L_n F(f)``, induced on homology by a chain lift of ``f``."""
    src = functor.source
    ra = src.resolution(f.source, n + 1)
    rb = src.resolution(f.target, n + 1)
    lifts = chain_lift(src, f, ra, rb)
    ha = derived_left_homology(functor, f.source, n, ra)
    hb = derived_left_homology(functor, f.target, n, rb)
    t = functor.target
    on_cycles = t.factor_through_mono(hb.incl, functor.map(lifts[n]) @ ha.incl)
    return t.factor_through_epi(ha.quotient, hb.quotient @ on_cycles)


def pad_resolution(cat: Category, res: Sequence[Morphism], degree: int, q: Any) -> list[Morphism]:
    """Add ``q --id--> q`` in degrees ``degree + 1`` and ``degree`` (``degree ≥ 0``).

    The result is a non-minimal projective resolution of the same object
    when ``q`` is projective.
    """
    res = list(res)
    if degree + 2 >= len(res):
        raise ValueError("resolution too short to pad at this degree")
    p_lo = res[degree].source
    p_hi = res[degree + 1].source
    lo = cat.direct_sum([p_lo, q])
    hi = cat.direct_sum([p_hi, q])
    (i_lo, j_lo), (pr_lo, _) = lo.injections, lo.projections
    (i_hi, _), (pr_hi, qr_hi) = hi.injections, hi.projections
    out = list(res)
    out[degree] = res[degree] @ pr_lo
    out[degree + 1] = i_lo @ res[degree + 1] @ pr_hi + j_lo @ qr_hi
    out[degree + 2] = i_hi @ res[degree + 2]
    return out


# ---- audits

@dataclass
class ExactnessProfile:
    functor: str
    right_exact: bool
    left_exact: bool
    exact: bool
    exhaustive: bool
    tested: int
    right_witness: Any = None
    left_witness: Any = None

    def agrees_with(self, declared: str) -> bool:
        if declared == EXACT:
            return self.exact
        if declared == RIGHT:
            return self.right_exact
        if declared == LEFT:
            return self.left_exact
        return True

    def to_json(self) -> dict:
        out = {"functor": self.functor, "right_exact": self.right_exact,
               "left_exact": self.left_exact, "exact": self.exact,
               "exhaustive": self.exhaustive, "tested": self.tested}
        if self.right_witness is not None:
            out["right_witness"] = self.right_witness
        if self.left_witness is not None:
            out["left_witness"] = self.left_witness
        return out


def exactness_profile(functor: Functor, objects: Sequence[Any] | None = None,
                      total_dim: int = 4, samples: int = 200, seed: int = 0,
                      bound: Sequence[int] | None = None) -> ExactnessProfile:
    """Test ``F`` on the kernel and cokernel sequences of many morphisms.

    Every morphism between pairs of ``objects`` (iso-class representatives)
    whose total dimensions add up to at most ``total_dim`` is tested; then
    ``samples`` seeded random morphisms between arbitrary pairs.  A morphism
    ``f: A -> B`` is tested via ``0 -> Ker f -> A -> B`` (left) and
    ``A -> B -> Coker f -> 0`` (right), which together cover every short
    exact sequence.  ``exact`` is only claimed when the exhaustive part ran.
    """
    src, tgt = functor.source, functor.target
    if objects is None:
        if bound is None:
            raise ValueError("need objects or a bound")
        objects = src.iso_class_reps(bound)
    right_w = left_w = None
    tested = 0

    def test(f: Morphism) -> None:
        nonlocal right_w, left_w, tested
        tested += 1
        if left_w is None:
            _, k = src.kernel(f)
            fk, ff = functor.map(k), functor.map(f)
            if not (fk.is_mono() and tgt.exact_at(fk, ff)):
                left_w = witness_of(src, f)
        if right_w is None:
            _, q = src.cokernel(f)
            ff, fq = functor.map(f), functor.map(q)
            if not (fq.is_epi() and tgt.exact_at(ff, fq)):
                right_w = witness_of(src, f)

    small = [o for o in objects if src.total_dim(o) <= total_dim]
    for a, b in itertools.product(small, repeat=2):
        if src.total_dim(a) + src.total_dim(b) <= total_dim:
            for f in src.hom_elements(a, b):
                test(f)
    rng = random.Random(seed)
    objs = list(objects)
    if objs:
        for _ in range(samples):
            a, b = rng.choice(objs), rng.choice(objs)
            test(src.random_morphism(a, b, rng))
    r, l = right_w is None, left_w is None
    return ExactnessProfile(functor.name, r, l, r and l, True, tested, right_w, left_w)


def _composes_to_identity(cat: Category, obj: Any, composite: Callable[[], Morphism]) -> bool:
    """A triangle composite that is not even composable counts as a failure."""
    try:
        return composite() == cat.identity(obj)
    except ValueError:
        return False


def check_adjunction(adj: Adjunction, left_objects: Iterable[Any], right_objects: Iterable[Any],
                     samples: int = 200, seed: int = 0, hom_pairs: int | None = None,
                     prefix: str | None = None, hom_objects: tuple | None = None) -> list[Check]:
    """Triangle identities, naturality, and the hom-set bijection on samples.

    The bijection is tested as: ``g -> R(g) ∘ unit_X`` is injective on
    ``Hom(L X, A)`` and both sides have the same dimension, over pairs from
    ``hom_objects`` (default: the same object lists).
    """
    L, R = adj.left, adj.right
    cs, ct = L.source, L.target
    xs, as_ = list(left_objects), list(right_objects)
    prefix = prefix or f"adjunction {adj.name}"
    typed = Tally(f"{prefix} components")
    tri_l = Tally(f"{prefix} triangle at left")
    tri_r = Tally(f"{prefix} triangle at right")
    nat = Tally(f"{prefix} naturality")
    bij = Tally(f"{prefix} hom bijection")

    for x in xs:
        ok = adj.unit.is_well_typed(x)
        typed.record(ok, lambda: witness_of(cs, x))
        if ok:
            lx = L(x)
            tri_l.record(_composes_to_identity(ct, lx, lambda: adj.counit(lx) @ L.map(adj.unit(x))),
                         lambda: witness_of(cs, x))
    for a in as_:
        ok = adj.counit.is_well_typed(a)
        typed.record(ok, lambda: witness_of(ct, a))
        if ok:
            ra = R(a)
            tri_r.record(_composes_to_identity(cs, ra, lambda: R.map(adj.counit(a)) @ adj.unit(ra)),
                         lambda: witness_of(ct, a))

    rng = random.Random(seed)
    for cat, objs, trans in ((cs, xs, adj.unit), (ct, as_, adj.counit)):
        if not objs:
            continue
        for _ in range(samples):
            f = cat.random_morphism(rng.choice(objs), rng.choice(objs), rng)
            nat.record(trans.square_commutes(f), lambda: witness_of(cat, f))

    hx, ha = hom_objects if hom_objects is not None else (xs, as_)
    pairs = [(x, a) for x in hx for a in ha]
    if hom_pairs is not None and len(pairs) > hom_pairs:
        pairs = rng.sample(pairs, hom_pairs)
    for x, a in pairs:
        lhs = ct.hom(L(x), a)
        rhs_dim = cs.hom_dim(x, R(a))
        u = adj.unit(x)
        if lhs.dim and R.map(lhs.basis[0]).source != u.target:
            bij.fail(lambda: witness_of(cs, x) + witness_of(ct, a))
            continue
        images = LinearSpan([(R.map(g) @ u).flatten() for g in lhs.basis])
        bij.record(lhs.dim == rhs_dim and images.rank == lhs.dim,
                   lambda: witness_of(cs, x) + witness_of(ct, a))

    return [t.result() for t in (typed, tri_l, tri_r, nat, bij)]


def check_functor(functor: Functor, objects: Sequence[Any], samples: int = 200,
                  seed: int = 0, prefix: str | None = None) -> list[Check]:
    """Functoriality and additivity on seeded random morphisms."""
    src, tgt = functor.source, functor.target
    prefix = prefix or f"functor {functor.name}"
    well = Tally(f"{prefix} well defined")
    ident = Tally(f"{prefix} identities")
    comp = Tally(f"{prefix} composition")
    add = Tally(f"{prefix} additivity")
    rng = random.Random(seed)
    objs = list(objects)
    for x in objs:
        fx = functor(x)
        well.record(tgt.is_object(fx), lambda: witness_of(src, x))
        ident.record(functor.map(src.identity(x)) == tgt.identity(fx), lambda: witness_of(src, x))
    if objs:
        for _ in range(samples):
            a, b, c = (rng.choice(objs) for _ in range(3))
            f = src.random_morphism(a, b, rng)
            g = src.random_morphism(b, c, rng)
            h = src.random_morphism(a, b, rng)
            ff = functor.map(f)
            well.record(tgt.is_morphism(ff), lambda: witness_of(src, f))
            comp.record(functor.map(g @ f) == functor.map(g) @ ff, lambda: witness_of(src, f, g))
            add.record(functor.map(f + h) == ff + functor.map(h), lambda: witness_of(src, f, h))
    return [t.result() for t in (well, ident, comp, add)]
