"""Finite GF(2)-linear abelian categories with a faithful exact forgetful functor.

Every category here has a fixed tuple of *slots*; an object has a vector
space in each slot and a morphism is one matrix per slot.  Composition,
sums, and invertibility are slotwise.  Subclasses supply the linear
constraints defining morphisms, kernels, cokernels, projectives, and
enumeration; the homological machinery below is written once against that
surface.
"""

from __future__ import annotations

import os
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from recolle.gf2 import BitMatrix, LinearSpan, solve, solve_right

DEFAULT_ISO_BUDGET = 16


class Undecided(Exception):
    """An isomorphism question could not be settled within the search budget."""


def iso_budget() -> int:
    """Largest hom-space dimension scanned exhaustively (``RECOLLE_BUDGET``)."""
    raw = os.environ.get("RECOLLE_BUDGET")
    return int(raw) if raw else DEFAULT_ISO_BUDGET


@dataclass(frozen=True)
class Morphism:
    source: Any
    target: Any
    comps: tuple[BitMatrix, ...]

    def __matmul__(self, other: Morphism) -> Morphism:
        """Composition ``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return Morphism(other.source, self.target,
                        tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: Morphism) -> Morphism:
        if self.source != other.source or self.target != other.target:
            raise ValueError("cannot add morphisms with different ends")
        return Morphism(self.source, self.target,
                        tuple(a + b for a, b in zip(self.comps, other.comps)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def flatten(self) -> int:
        out = 0
        shift = 0
        for c in self.comps:
            out |= c.flatten() << shift
            shift += c.nrows * c.ncols
        return out

    def is_iso(self) -> bool:
        return all(c.is_invertible() for c in self.comps)

    def is_mono(self) -> bool:
        return all(c.rank() == c.ncols for c in self.comps)

    def is_epi(self) -> bool:
        return all(c.rank() == c.nrows for c in self.comps)

    def ranks(self) -> tuple[int, ...]:
        return tuple(c.rank() for c in self.comps)


@dataclass(frozen=True)
class Biproduct:
    obj: Any
    injections: tuple[Morphism, ...]
    projections: tuple[Morphism, ...]


@dataclass
class HomSpace:
    """A basis of ``Hom(source, target)`` with coordinate lookup."""

    source: Any
    target: Any
    basis: list[Morphism]
    zero: Morphism
    _span: LinearSpan | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs: int) -> Morphism:
        out = None
        i = 0
        while coeffs:
            if coeffs & 1:
                out = self.basis[i] if out is None else out + self.basis[i]
            coeffs >>= 1
            i += 1
        return out if out is not None else self.zero

    def coordinates(self, f: Morphism) -> int:
        if self._span is None:
            self._span = LinearSpan([b.flatten() for b in self.basis])
        return self._span.coordinates(f.flatten())

    def __iter__(self) -> Iterator[Morphism]:
        return iter(self.basis)


class Category(ABC):
    """Base class for the concrete categories (quiver representations, glued categories)."""

    name: str
    slots: tuple[str, ...]

    def __init__(self) -> None:
        self._hom_cache: dict[tuple[Any, Any], HomSpace] = {}
        self._res_cache: dict[Any, list[Morphism]] = {}

    # ---- to be supplied by subclasses

    @abstractmethod
    def dims(self, obj: Any) -> tuple[int, ...]: ...

    @abstractmethod
    def zero_object(self) -> Any: ...

    @abstractmethod
    def is_object(self, obj: Any) -> bool: ...

    @abstractmethod
    def hom_generators(self, a: Any, b: Any) -> list[tuple[BitMatrix, ...]]:
        """Slot-tuples spanning a space that contains ``Hom(a, b)``."""

    @abstractmethod
    def hom_residual(self, a: Any, b: Any, comps: Sequence[BitMatrix]) -> int:
        """Flattened defect of ``comps`` being a morphism; linear, zero iff it is one."""

    @abstractmethod
    def kernel(self, f: Morphism) -> tuple[Any, Morphism]: ...

    @abstractmethod
    def cokernel(self, f: Morphism) -> tuple[Any, Morphism]: ...

    @abstractmethod
    def direct_sum(self, objs: Sequence[Any]) -> Biproduct: ...

    @abstractmethod
    def enumerate(self, bound: Sequence[int]) -> Iterator[Any]: ...

    @abstractmethod
    def indecomposable_projectives(self) -> list[Any]: ...

    @abstractmethod
    def projective_cover(self, obj: Any) -> Morphism:
        """An epimorphism from a projective object onto ``obj``."""

    @abstractmethod
    def dual(self) -> Category: ...

    @abstractmethod
    def dualize(self, obj: Any) -> Any:
        """Vector-space dual, an object of ``self.dual()``."""

    @abstractmethod
    def to_json(self, obj: Any) -> dict: ...

    # ---- generic structure

    def total_dim(self, obj: Any) -> int:
        return sum(self.dims(obj))

    def is_zero_object(self, obj: Any) -> bool:
        return not any(self.dims(obj))

    def identity(self, obj: Any) -> Morphism:
        return Morphism(obj, obj, tuple(BitMatrix.identity(d) for d in self.dims(obj)))

    def zero_morphism(self, a: Any, b: Any) -> Morphism:
        return Morphism(a, b, tuple(BitMatrix.zeros(m, n)
                                    for n, m in zip(self.dims(a), self.dims(b))))

    def morphism(self, a: Any, b: Any, comps: Sequence[BitMatrix]) -> Morphism:
        f = Morphism(a, b, tuple(comps))
        if not self.is_morphism(f):
            raise ValueError(f"not a morphism in {self.name}")
        return f

    def is_morphism(self, f: Morphism) -> bool:
        da, db = self.dims(f.source), self.dims(f.target)
        if len(f.comps) != len(self.slots):
            return False
        for c, n, m in zip(f.comps, da, db):
            if c.shape != (m, n):
                return False
        return self.hom_residual(f.source, f.target, f.comps) == 0

    def hom(self, a: Any, b: Any) -> HomSpace:
        key = (a, b)
        hs = self._hom_cache.get(key)
        if hs is None:
            gens = self.hom_generators(a, b)
            span = LinearSpan([self.hom_residual(a, b, g) for g in gens])
            basis = []
            for rel in span.relations:
                comps = None
                i = 0
                r = rel
                while r:
                    if r & 1:
                        comps = list(gens[i]) if comps is None else [x + y for x, y in zip(comps, gens[i])]
                    r >>= 1
                    i += 1
                basis.append(Morphism(a, b, tuple(comps)))
            hs = HomSpace(a, b, basis, self.zero_morphism(a, b))
            self._hom_cache[key] = hs
        return hs

    def hom_dim(self, a: Any, b: Any) -> int:
        return self.hom(a, b).dim

    def hom_elements(self, a: Any, b: Any) -> Iterator[Morphism]:
        """Every element of ``Hom(a, b)`` (Gray-code order, starting at zero)."""
        basis = self.hom(a, b).basis
        cur = self.zero_morphism(a, b)
        yield cur
        for i in range(1, 1 << len(basis)):
            cur = cur + basis[(i & -i).bit_length() - 1]
            yield cur

    def random_morphism(self, a: Any, b: Any, rng: random.Random) -> Morphism:
        hs = self.hom(a, b)
        if not hs.basis:
            return self.zero_morphism(a, b)
        return hs.element(rng.getrandbits(hs.dim))

    def inverse(self, f: Morphism) -> Morphism:
        return Morphism(f.target, f.source, tuple(c.inverse() for c in f.comps))

    def factor_through_mono(self, m: Morphism, g: Morphism) -> Morphism:
        """``h`` with ``m ∘ h == g``; raises NoSolution if ``g`` does not factor."""
        return Morphism(g.source, m.source,
                        tuple(solve(mc, gc) for mc, gc in zip(m.comps, g.comps)))

    def factor_through_epi(self, e: Morphism, g: Morphism) -> Morphism:
        """``h`` with ``h ∘ e == g``; raises NoSolution if ``g`` does not factor."""
        return Morphism(e.target, g.target,
                        tuple(solve_right(ec, gc) for ec, gc in zip(e.comps, g.comps)))

    def image(self, f: Morphism) -> tuple[Any, Morphism, Morphism]:
        """``(I, e, m)`` with ``f == m ∘ e``, ``e`` epi and ``m`` mono."""
        _, q = self.cokernel(f)
        im, m = self.kernel(q)
        e = self.factor_through_mono(m, f)
        return im, e, m

    def coimage(self, f: Morphism) -> tuple[Any, Morphism, Morphism]:
        _, k = self.kernel(f)
        co, p = self.cokernel(k)
        m = self.factor_through_epi(p, f)
        return co, p, m

    def exact_at(self, f: Morphism, g: Morphism) -> bool:
        """Whether ``A --f--> B --g--> C`` is exact at ``B``."""
        if not (g @ f).is_zero():
            return False
        for fc, gc, d in zip(f.comps, g.comps, self.dims(f.target)):
            if fc.rank() != d - gc.rank():
                return False
        return True

    def is_short_exact(self, f: Morphism, g: Morphism) -> bool:
        return f.is_mono() and g.is_epi() and self.exact_at(f, g)

    def pullback(self, f: Morphism, g: Morphism) -> tuple[Any, Morphism, Morphism]:
        """Pullback of ``f: A -> C`` and ``g: B -> C``."""
        bp = self.direct_sum([f.source, g.source])
        d = f @ bp.projections[0] + g @ bp.projections[1]
        p, k = self.kernel(d)
        return p, bp.projections[0] @ k, bp.projections[1] @ k

    def pushout(self, f: Morphism, g: Morphism) -> tuple[Any, Morphism, Morphism]:
        """Pushout of ``f: C -> A`` and ``g: C -> B``."""
        bp = self.direct_sum([f.target, g.target])
        d = bp.injections[0] @ f + bp.injections[1] @ g
        q, c = self.cokernel(d)
        return q, c @ bp.injections[0], c @ bp.injections[1]

    def dualize_morphism(self, f: Morphism) -> Morphism:
        return Morphism(self.dualize(f.target), self.dualize(f.source),
                        tuple(c.T for c in f.comps))

    # ---- isomorphism

    def invariants(self, obj: Any) -> tuple:
        """Isomorphism invariants used to screen pairs before a hom search."""
        return (self.dims(obj), self.hom_dim(obj, obj),
                tuple(self.hom_dim(p, obj) for p in self.indecomposable_projectives()),
                tuple(self.hom_dim(obj, t) for t in self.test_family()),
                tuple(self.hom_dim(t, obj) for t in self.test_family()))

    def test_family(self) -> list[Any]:
        return []

    def find_isomorphism(self, a: Any, b: Any, budget: int | None = None) -> Morphism | None:
        """An isomorphism ``a -> b``, ``None`` if there is none; raises Undecided."""
        if self.dims(a) != self.dims(b):
            return None
        if a == b:
            return self.identity(a)
        hs = self.hom(a, b)
        limit = iso_budget() if budget is None else budget
        rng = random.Random(0)
        # isomorphisms are usually dense, so a few seeded draws settle most pairs
        for _ in range(32 if hs.dim else 0):
            f = hs.element(rng.getrandbits(hs.dim))
            if f.is_iso():
                return f
        if hs.dim <= limit:
            for f in self.hom_elements(a, b):
                if f.is_iso():
                    return f
            return None
        if self.invariants(a) != self.invariants(b):
            return None
        for _ in range(4096):
            f = hs.element(rng.getrandbits(hs.dim))
            if f.is_iso():
                return f
        raise Undecided(f"hom space of dimension {hs.dim} exceeds budget {limit}")

    def is_isomorphic(self, a: Any, b: Any, budget: int | None = None) -> bool:
        return self.find_isomorphism(a, b, budget) is not None

    def automorphism_generators(self, obj: Any, budget: int | None = None) -> list[Morphism]:
        """A small generating set of ``Aut(obj)``, found greedily; raises Undecided over budget."""
        key = ("aut", obj)
        if key in self._hom_cache:
            return self._hom_cache[key]
        hs = self.hom(obj, obj)
        limit = iso_budget() if budget is None else budget
        if hs.dim > limit:
            raise Undecided(f"endomorphism space of dimension {hs.dim} exceeds budget {limit}")
        one = self.identity(obj)
        group = {one}
        gens: list[Morphism] = []
        for f in self.hom_elements(obj, obj):
            if f in group or not f.is_iso():
                continue
            gens.append(f)
            frontier = list(group)
            while frontier:
                nxt = []
                for g in frontier:
                    for h in gens:
                        gh = h @ g
                        if gh not in group:
                            group.add(gh)
                            nxt.append(gh)
                frontier = nxt
        self._hom_cache[key] = gens
        return gens

    def iso_classes(self, objs: Iterable[Any]) -> list[Any]:
        """One representative per isomorphism class, keeping the first seen."""
        buckets: dict[tuple, list[Any]] = {}
        reps: list[Any] = []
        for obj in objs:
            key = self.invariants(obj)
            bucket = buckets.setdefault(key, [])
            if any(self.is_isomorphic(obj, r) for r in bucket):
                continue
            bucket.append(obj)
            reps.append(obj)
        return reps

    def enumerate_up_to(self, bound: Sequence[int]) -> list[Any]:
        """All objects with dimension vector componentwise at most ``bound``."""
        return list(self.enumerate(bound))

    def iso_class_reps(self, bound: Sequence[int]) -> list[Any]:
        return self.iso_classes(self.enumerate(bound))

    # ---- resolutions

    def resolution(self, obj: Any, length: int) -> list[Morphism]:
        """``[eps, d1, ..., d_length]`` with ``eps: P0 -> obj`` and ``d_k: P_k -> P_{k-1}``.

        Built by iterating :meth:`projective_cover` on kernels.
        """
        cached = self._res_cache.get(obj)
        if cached is not None and len(cached) > length:
            return cached[:length + 1]
        diffs = list(cached) if cached else [self.projective_cover(obj)]
        while len(diffs) <= length:
            prev = diffs[-1]
            _, k = self.kernel(prev)
            cover = self.projective_cover(k.source)
            diffs.append(k @ cover)
        self._res_cache[obj] = diffs
        return diffs[:length + 1]


def compose_all(*fs: Morphism) -> Morphism:
    """``fs[0] ∘ fs[1] ∘ ...``."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = f @ out
    return out
