"""Finite-dimensional representations of a bound quiver and their category."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from recolle.gf2 import (BitMatrix, Subspace, all_matrices, general_linear_group, image_and_cokernel,
                         kernel_basis, solve, solve_right)
from recolle.repcat.category import Biproduct, Category, Morphism
from recolle.repcat.quiver import QUIVERS, BoundQuiver, Path

RepMorphism = Morphism

# orbit sweeps are used for dedup only while the acting group stays this small
_ORBIT_LIMIT = 50_000


@dataclass(frozen=True)
class Rep:
    quiver: BoundQuiver
    dims: tuple[int, ...]
    maps: tuple[BitMatrix, ...]

    def dim(self, vertex: str) -> int:
        return self.dims[self.quiver.vertex_index[vertex]]

    def arrow(self, name: str) -> BitMatrix:
        return self.maps[self.quiver.arrow_index[name]]

    def path_map(self, path: Path, start: str | None = None) -> BitMatrix:
        if not path:
            return BitMatrix.identity(self.dim(start))
        out = self.arrow(path[0])
        for a in path[1:]:
            out = self.arrow(a) @ out
        return out

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.name,
            "dims": {v: d for v, d in zip(self.quiver.vertices, self.dims)},
            "arrows": {a.name: m.to_json() for a, m in zip(self.quiver.arrows, self.maps)},
        }

    @classmethod
    def from_json(cls, obj: dict, quiver: BoundQuiver | None = None) -> Rep:
        q = quiver or QUIVERS[obj["quiver"]]
        dims = tuple(int(obj["dims"].get(v, 0)) for v in q.vertices)
        maps = []
        for a in q.arrows:
            raw = obj.get("arrows", {}).get(a.name)
            shape = (dims[q.vertex_index[a.target]], dims[q.vertex_index[a.source]])
            m = BitMatrix.zeros(*shape) if raw is None else BitMatrix.from_json(raw)
            if m.shape != shape:
                raise ValueError(f"arrow {a.name} has shape {m.shape}, expected {shape}")
            maps.append(m)
        return cls(q, dims, tuple(maps))

    def __repr__(self) -> str:
        parts = ", ".join(f"{a.name}={m!r}" for a, m in zip(self.quiver.arrows, self.maps))
        return f"Rep({self.quiver.name}, dims={self.dims}{', ' + parts if parts else ''})"


def make_rep(quiver: BoundQuiver, dims: Sequence[int] | dict, maps: dict | None = None) -> Rep:
    """Build a representation from per-vertex dims and per-arrow matrices (missing ones zero)."""
    if isinstance(dims, dict):
        dims = [dims.get(v, 0) for v in quiver.vertices]
    dims = tuple(dims)
    maps = maps or {}
    out = []
    for a in quiver.arrows:
        shape = (dims[quiver.vertex_index[a.target]], dims[quiver.vertex_index[a.source]])
        m = maps.get(a.name)
        if m is None:
            m = BitMatrix.zeros(*shape)
        elif not isinstance(m, BitMatrix):
            m = BitMatrix.from_rows(m, shape[1])
        if m.shape != shape:
            raise ValueError(f"arrow {a.name}: shape {m.shape}, expected {shape}")
        out.append(m)
    return Rep(quiver, dims, tuple(out))


@lru_cache(maxsize=None)
def _gl(n: int) -> tuple[tuple[BitMatrix, BitMatrix], ...]:
    return tuple((g, g.inverse()) for g in general_linear_group(n))


class RepCategory(Category):
    """Representations of a bound quiver: the objects of the abelian categories at hand."""

    def __init__(self, quiver: BoundQuiver):
        super().__init__()
        self.quiver = quiver
        self.name = quiver.name
        self.slots = quiver.vertices
        self._enum_cache: dict[tuple[int, ...], tuple[Rep, ...]] = {}
        self._dual: RepCategory | None = None

    def __repr__(self) -> str:
        return f"RepCategory({self.name})"

    # ---- objects

    def dims(self, obj: Rep) -> tuple[int, ...]:
        return obj.dims

    def zero_object(self) -> Rep:
        return make_rep(self.quiver, [0] * len(self.slots))

    def object(self, dims, maps: dict | None = None) -> Rep:
        r = make_rep(self.quiver, dims, maps)
        if not self.check_relations(r):
            raise ValueError(f"{r!r} violates the relations of {self.name}")
        return r

    def check_relations(self, r: Rep) -> bool:
        for rel in self.quiver.relations:
            start = self.quiver.path_source(rel[0])
            total = None
            for p in rel:
                m = r.path_map(p, start)
                total = m if total is None else total + m
            if not total.is_zero():
                return False
        return True

    def is_object(self, obj) -> bool:
        if not isinstance(obj, Rep) or obj.quiver != self.quiver:
            return False
        q = self.quiver
        for a, m in zip(q.arrows, obj.maps):
            if m.shape != (obj.dim(a.target), obj.dim(a.source)):
                return False
        return self.check_relations(obj)

    # ---- morphisms

    def hom_generators(self, a: Rep, b: Rep) -> list[tuple[BitMatrix, ...]]:
        zeros = [BitMatrix.zeros(m, n) for n, m in zip(a.dims, b.dims)]
        gens = []
        for s, (n, m) in enumerate(zip(a.dims, b.dims)):
            for i in range(m):
                for j in range(n):
                    comps = list(zeros)
                    comps[s] = BitMatrix(m, n, tuple((1 << j) if r == i else 0 for r in range(m)))
                    gens.append(tuple(comps))
        return gens

    def hom_residual(self, a: Rep, b: Rep, comps: Sequence[BitMatrix]) -> int:
        vi = self.quiver.vertex_index
        out = 0
        shift = 0
        for arrow, ma, mb in zip(self.quiver.arrows, a.maps, b.maps):
            v, w = vi[arrow.source], vi[arrow.target]
            d = comps[w] @ ma + mb @ comps[v]
            out |= d.flatten() << shift
            shift += d.nrows * d.ncols
        return out

    def kernel(self, f: Morphism) -> tuple[Rep, Morphism]:
        incl = [kernel_basis(c).inclusion() for c in f.comps]
        vi = self.quiver.vertex_index
        maps = []
        for arrow, m in zip(self.quiver.arrows, f.source.maps):
            v, w = vi[arrow.source], vi[arrow.target]
            maps.append(solve(incl[w], m @ incl[v]))
        k = Rep(self.quiver, tuple(i.ncols for i in incl), tuple(maps))
        return k, Morphism(k, f.source, tuple(incl))

    def cokernel(self, f: Morphism) -> tuple[Rep, Morphism]:
        proj = [image_and_cokernel(c)[2] for c in f.comps]
        vi = self.quiver.vertex_index
        maps = []
        for arrow, m in zip(self.quiver.arrows, f.target.maps):
            v, w = vi[arrow.source], vi[arrow.target]
            maps.append(solve_right(proj[v], proj[w] @ m))
        c = Rep(self.quiver, tuple(p.nrows for p in proj), tuple(maps))
        return c, Morphism(f.target, c, tuple(proj))

    def direct_sum(self, objs: Sequence[Rep]) -> Biproduct:
        if not objs:
            z = self.zero_object()
            return Biproduct(z, (), ())
        dims = tuple(sum(o.dims[s] for o in objs) for s in range(len(self.slots)))
        maps = tuple(BitMatrix.block_diag([o.maps[k] for o in objs])
                     for k in range(len(self.quiver.arrows)))
        total = Rep(self.quiver, dims, maps)
        inj, proj = [], []
        offsets = [0] * len(self.slots)
        for o in objs:
            ic, pc = [], []
            for s, d in enumerate(o.dims):
                rows = [(1 << (r - offsets[s])) if offsets[s] <= r < offsets[s] + d else 0
                        for r in range(dims[s])]
                ic.append(BitMatrix(dims[s], d, tuple(rows)))
                pc.append(ic[-1].T)
                offsets[s] += d
            inj.append(Morphism(o, total, tuple(ic)))
            proj.append(Morphism(total, o, tuple(pc)))
        return Biproduct(total, tuple(inj), tuple(proj))

    # ---- enumeration

    def enumerate_dims(self, dims: Sequence[int]) -> tuple[Rep, ...]:
        """Every relation-satisfying representation with the given dimension vector.

        Arrow maps run over matrices in increasing flattened order, first
        arrow outermost.
        """
        dims = tuple(dims)
        cached = self._enum_cache.get(dims)
        if cached is not None:
            return cached
        vi = self.quiver.vertex_index
        shapes = [(dims[vi[a.target]], dims[vi[a.source]]) for a in self.quiver.arrows]
        out = []
        for maps in itertools.product(*(list(all_matrices(*s)) for s in shapes)):
            r = Rep(self.quiver, dims, tuple(maps))
            if self.check_relations(r):
                out.append(r)
        self._enum_cache[dims] = tuple(out)
        return self._enum_cache[dims]

    def dim_vectors(self, bound: Sequence[int]) -> list[tuple[int, ...]]:
        if len(bound) != len(self.slots):
            raise ValueError(f"{self.name} needs a bound with {len(self.slots)} entries")
        return list(itertools.product(*(range(b + 1) for b in bound)))

    def enumerate(self, bound: Sequence[int]) -> Iterator[Rep]:
        for dims in self.dim_vectors(bound):
            yield from self.enumerate_dims(dims)

    def orbit(self, r: Rep) -> set[Rep]:
        vi = self.quiver.vertex_index
        arrows = [(vi[a.source], vi[a.target]) for a in self.quiver.arrows]
        out = set()
        for gs in itertools.product(*(_gl(d) for d in r.dims)):
            maps = tuple(gs[w][0] @ m @ gs[v][1] for (v, w), m in zip(arrows, r.maps))
            out.add(Rep(self.quiver, r.dims, maps))
        return out

    def _group_order(self, dims: Sequence[int]) -> int:
        order = 1
        for d in dims:
            order *= len(_gl(d))
        return order

    def iso_classes(self, objs) -> list[Rep]:
        objs = list(objs)
        if any(self._group_order(o.dims) > _ORBIT_LIMIT for o in objs):
            return super().iso_classes(objs)
        seen: set[Rep] = set()
        reps = []
        for o in objs:
            if o in seen:
                continue
            reps.append(o)
            seen |= self.orbit(o)
        return reps

    # ---- projectives

    def indecomposable_projective(self, vertex: str) -> Rep:
        pb = self.quiver.projective_bases[vertex]
        dims = tuple(pb.dim(w) for w in self.slots)
        maps = tuple(pb.arrow_matrix(a) for a in self.quiver.arrows)
        return Rep(self.quiver, dims, maps)

    def indecomposable_projectives(self) -> list[Rep]:
        return [self.indecomposable_projective(v) for v in self.slots]

    def simple(self, vertex: str) -> Rep:
        return make_rep(self.quiver, [1 if w == vertex else 0 for w in self.slots])

    def test_family(self) -> list[Rep]:
        return [self.simple(v) for v in self.slots]

    def radical(self, r: Rep) -> tuple[Rep, Morphism]:
        """Sum of the images of all arrow maps, as a subrepresentation."""
        vi = self.quiver.vertex_index
        cols: list[list[int]] = [[] for _ in self.slots]
        for a, m in zip(self.quiver.arrows, r.maps):
            cols[vi[a.target]].extend(m.columns())
        incl = [Subspace.span(d, c).inclusion() for d, c in zip(r.dims, cols)]
        maps = tuple(solve(incl[vi[a.target]], m @ incl[vi[a.source]])
                     for a, m in zip(self.quiver.arrows, r.maps))
        rad = Rep(self.quiver, tuple(i.ncols for i in incl), maps)
        return rad, Morphism(rad, r, tuple(incl))

    def radical_series(self, r: Rep) -> tuple[tuple[int, ...], ...]:
        out = []
        cur = r
        while any(cur.dims):
            out.append(cur.dims)
            nxt, _ = self.radical(cur)
            if nxt.dims == cur.dims:
                break
            cur = nxt
        return tuple(out)

    def invariants(self, obj: Rep) -> tuple:
        return super().invariants(obj) + (self.radical_series(obj),)

    def map_from_projective(self, vertex: str, target: Rep, vector: int) -> Morphism:
        """The morphism ``P(vertex) -> target`` sending the trivial path to ``vector``."""
        pb = self.quiver.projective_bases[vertex]
        src = self.indecomposable_projective(vertex)
        comps = []
        for w in self.slots:
            cols = [target.path_map(p, vertex).apply(vector) for p in pb.basis[w]]
            comps.append(BitMatrix.from_columns(target.dim(w), cols))
        return Morphism(src, target, tuple(comps))

    def projective_cover(self, obj: Rep) -> Morphism:
        """Minimal projective cover: one copy of ``P(v)`` per basis vector of the top at ``v``."""
        rad, incl = self.radical(obj)
        pieces = []
        for s, v in enumerate(self.slots):
            im, _, proj = image_and_cokernel(incl.comps[s])
            pivots = set(im.pivots)
            lifts = [1 << c for c in range(obj.dims[s]) if c not in pivots]
            pieces.extend(self.map_from_projective(v, obj, x) for x in lifts)
        bp = self.direct_sum([p.source for p in pieces])
        total = self.zero_morphism(bp.obj, obj)
        for p, pr in zip(pieces, bp.projections):
            total = total + p @ pr
        return total

    def min_projective_resolution(self, obj: Rep, length: int) -> list[Morphism]:
        return self.resolution(obj, length)

    # ---- duality

    def dual(self) -> RepCategory:
        if self._dual is None:
            self._dual = RepCategory(self.quiver.opposite())
            self._dual._dual = self
        return self._dual

    def dualize(self, obj: Rep) -> Rep:
        return Rep(self.dual().quiver, obj.dims, tuple(m.T for m in obj.maps))

    def to_json(self, obj: Rep) -> dict:
        return obj.to_json()

    def from_json(self, obj: dict) -> Rep:
        r = Rep.from_json(obj, self.quiver)
        if not self.check_relations(r):
            raise ValueError("representation violates the relations")
        return r


_CATEGORIES: dict[str, RepCategory] = {}


def rep_category(name: str) -> RepCategory:
    """Shared category instance for a registered quiver (``quad_free``, ``sigma2``, ...)."""
    if name not in _CATEGORIES:
        _CATEGORIES[name] = RepCategory(QUIVERS[name])
    return _CATEGORIES[name]
